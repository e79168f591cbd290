//! The clock coupled to an external system: compatibility of Hamiltonians,
//! the no/weak/strong interaction taxonomy, duration measurement and energy
//! exchange.
//!
//! The composite is a literal sum `phi_C + psi`, kept as a direct-sum style
//! decomposition: the clock part, the projection of `psi` into the clock span
//! (the overlap coefficients), and the remainder living in the external
//! system's own basis. This follows the source construction rather than the
//! textbook tensor product; nothing here entangles the two parts.

use alloc::string::String;
use alloc::vec::Vec;

use crate::clock::{
    decay_report, hamiltonian_matrix, propagator_matrix, schroedinger_evolve, ClockParams,
    ClockState, DecayVerdict, OperatorMatrix,
};
use crate::eigen::unitary_exp;
use crate::error::ClockError;
use crate::linalg::{self, C64, CMatrix};
use crate::timeop::expectation;
use crate::DEFAULT_LEAKAGE_THRESHOLD;

/// External system `D`: a finite-dimensional Hamiltonian with a label.
#[derive(Clone, Debug)]
pub struct SystemD {
    hamiltonian: CMatrix,
    label: String,
}

impl SystemD {
    pub fn new(hamiltonian: CMatrix, label: impl Into<String>) -> Result<Self, ClockError> {
        if hamiltonian.dim() < 2 {
            return Err(ClockError::InvalidParams("external system needs dimension >= 2"));
        }
        let defect = hamiltonian.hermiticity_defect();
        if defect > 1e-12 * hamiltonian.max_abs().max(1.0) {
            return Err(ClockError::NotHermitian { defect });
        }
        Ok(SystemD { hamiltonian, label: label.into() })
    }

    /// Two-level system with energies `{0, gap}`.
    pub fn two_level(gap: f64) -> Self {
        let mut h = CMatrix::zeros(2);
        h[(1, 1)] = C64::new(gap, 0.0);
        SystemD { hamiltonian: h, label: String::from("two-level") }
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Isometric embedding of the truncated clock basis into D's state space,
/// stored as one D-space column per clock basis position.
#[derive(Clone, Debug)]
pub struct Embedding {
    d_dim: usize,
    cols: Vec<Vec<C64>>,
}

impl Embedding {
    pub fn new(d_dim: usize, cols: Vec<Vec<C64>>) -> Result<Self, ClockError> {
        if cols.is_empty() || cols.len() > d_dim {
            return Err(ClockError::InvalidParams("embedding needs 1..=d_dim columns"));
        }
        for col in &cols {
            if col.len() != d_dim {
                return Err(ClockError::DimensionMismatch { expected: d_dim, got: col.len() });
            }
        }
        // isometry check: columns orthonormal
        for (i, a) in cols.iter().enumerate() {
            for (j, b) in cols.iter().enumerate() {
                let ov = linalg::inner(a, b);
                let expect = if i == j { 1.0 } else { 0.0 };
                if (ov - C64::new(expect, 0.0)).norm() > 1e-10 {
                    return Err(ClockError::InvalidParams("embedding columns are not orthonormal"));
                }
            }
        }
        Ok(Embedding { d_dim, cols })
    }

    /// Clock basis position `p` goes to D basis vector `p`.
    pub fn canonical(d_dim: usize, clock_dim: usize) -> Result<Self, ClockError> {
        if clock_dim > d_dim {
            return Err(ClockError::DimensionMismatch { expected: clock_dim, got: d_dim });
        }
        let cols = (0..clock_dim)
            .map(|p| {
                let mut col = alloc::vec![C64::new(0.0, 0.0); d_dim];
                col[p] = C64::new(1.0, 0.0);
                col
            })
            .collect();
        Ok(Embedding { d_dim, cols })
    }

    pub fn clock_dim(&self) -> usize {
        self.cols.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Compatibility {
    pub compatible: bool,
    /// Interior max deviation of the restricted Hamiltonian from the clock's.
    pub defect: f64,
}

const COMPATIBILITY_TOL: f64 = 1e-8;

/// Does `H_D` restrict to the clock Hamiltonian along the embedding?
///
/// Computes the restriction `E^+ H_D E` and compares it entrywise against the
/// clock Hamiltonian on the interior block.
pub fn check_compatibility(
    system_d: &SystemD,
    embedding: &Embedding,
    params: &ClockParams,
) -> Result<Compatibility, ClockError> {
    if embedding.d_dim != system_d.dim() {
        return Err(ClockError::DimensionMismatch { expected: system_d.dim(), got: embedding.d_dim });
    }
    if embedding.clock_dim() != params.dim() {
        return Err(ClockError::DimensionMismatch {
            expected: params.dim(),
            got: embedding.clock_dim(),
        });
    }
    let h_c = hamiltonian_matrix(params);
    let h_cols: Vec<Vec<C64>> =
        embedding.cols.iter().map(|col| system_d.hamiltonian.mul_vec(col)).collect();
    let (lo, hi) = params.interior_range();
    let mut defect = 0.0f64;
    for r in lo..hi {
        for c in lo..hi {
            let restricted = linalg::inner(&embedding.cols[r], &h_cols[c]);
            defect = defect.max((restricted - h_c.matrix[(r, c)]).norm());
        }
    }
    Ok(Compatibility { compatible: defect < COMPATIBILITY_TOL, defect })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InteractionKind {
    NoInteraction,
    /// `warning` is set when the decay trend was inconclusive and the weak
    /// classification is provisional.
    Weak { warning: bool },
    Strong,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InteractionEvidence {
    pub verdict: DecayVerdict,
    pub overlap_magnitude: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InteractionClass {
    pub kind: InteractionKind,
    pub evidence: InteractionEvidence,
}

const NO_INTERACTION_MAG: f64 = 1e-12;

/// Classify the interaction from the trend of the overlap coefficients.
///
/// `trajectory(t, n)` gives the overlap coefficient at tick index `n` and
/// probe time `t`. Membership of the projection in the admissible span cannot
/// be decided at one truncation, so the verdict comes from the convergence
/// trend of the weighted norm over `n_list`.
pub fn classify_interaction(
    trajectory: impl Fn(f64, i64) -> C64,
    t_probe: &[f64],
    n_list: &[u32],
) -> Result<InteractionClass, ClockError> {
    if t_probe.is_empty() {
        return Err(ClockError::InsufficientData);
    }
    if n_list.len() < 3 {
        return Err(ClockError::InsufficientData);
    }
    let n_max = *n_list.last().unwrap() as i64;
    let mut magnitude = 0.0f64;
    for &t in t_probe {
        let mut m = 0.0;
        for n in -n_max..=n_max {
            m += trajectory(t, n).norm_sqr();
        }
        magnitude = magnitude.max(libm::sqrt(m));
    }
    if magnitude < NO_INTERACTION_MAG {
        return Ok(InteractionClass {
            kind: InteractionKind::NoInteraction,
            evidence: InteractionEvidence { verdict: DecayVerdict::Convergent, overlap_magnitude: magnitude },
        });
    }

    let mut any_divergent = false;
    let mut all_convergent = true;
    let mut worst = DecayVerdict::Convergent;
    for &t in t_probe {
        let rep = decay_report(|n| trajectory(t, n), n_list)?;
        match rep.verdict {
            DecayVerdict::Divergent => {
                any_divergent = true;
                worst = DecayVerdict::Divergent;
            }
            DecayVerdict::Undecided => {
                all_convergent = false;
                if worst != DecayVerdict::Divergent {
                    worst = DecayVerdict::Undecided;
                }
            }
            DecayVerdict::Convergent => {}
        }
    }
    let kind = if any_divergent {
        InteractionKind::Strong
    } else {
        InteractionKind::Weak { warning: !all_convergent }
    };
    Ok(InteractionClass {
        kind,
        evidence: InteractionEvidence { verdict: worst, overlap_magnitude: magnitude },
    })
}

/// The clock plus external-system description at one instant.
#[derive(Clone, Debug)]
pub struct CompositeState {
    pub clock_part: ClockState,
    /// Remainder of `psi` in D's own basis.
    pub d_part: Vec<C64>,
    /// Projection of `psi` into the clock span, as tick coefficients.
    pub overlap: Vec<C64>,
    pub t_stamp: f64,
}

impl CompositeState {
    pub fn new(
        clock_part: ClockState,
        d_part: Vec<C64>,
        overlap: Vec<C64>,
        t_stamp: f64,
    ) -> Result<Self, ClockError> {
        if overlap.len() != clock_part.coeffs().len() {
            return Err(ClockError::DimensionMismatch {
                expected: clock_part.coeffs().len(),
                got: overlap.len(),
            });
        }
        Ok(CompositeState { clock_part, d_part, overlap, t_stamp })
    }

    /// Composite with no external admixture in the clock span.
    pub fn uncoupled(clock_part: ClockState, d_part: Vec<C64>, t_stamp: f64) -> Self {
        let overlap = alloc::vec![C64::new(0.0, 0.0); clock_part.coeffs().len()];
        CompositeState { clock_part, d_part, overlap, t_stamp }
    }

    pub fn overlap_magnitude(&self) -> f64 {
        linalg::norm(&self.overlap)
    }
}

fn ensure_class_invariant(
    state: &CompositeState,
    class: &InteractionClass,
) -> Result<(), ClockError> {
    if class.kind == InteractionKind::NoInteraction
        && state.overlap_magnitude() >= NO_INTERACTION_MAG
    {
        return Err(ClockError::InvalidParams(
            "no-interaction composite must carry zero overlap coefficients",
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbedExpectation {
    /// `<chi|T|chi> / <chi|chi>` with `chi = phi_C + psi_C`. A stand-in for
    /// the disturbed clock's (undefined) own time operator; do not read more
    /// into it.
    pub value: f64,
    /// Deviation from the unperturbed clock expectation.
    pub degradation: f64,
}

/// Time expectation of the disturbed clock `C(psi)`.
pub fn perturbed_time_expectation(
    clock: &ClockState,
    overlap: &[C64],
    t_op: &OperatorMatrix,
) -> Result<PerturbedExpectation, ClockError> {
    if overlap.len() != clock.coeffs().len() {
        return Err(ClockError::DimensionMismatch {
            expected: clock.coeffs().len(),
            got: overlap.len(),
        });
    }
    let chi = ClockState::from_coeffs(*clock.params(), linalg::add_vec(clock.coeffs(), overlap))?;
    if !chi.is_interior() {
        return Err(ClockError::NotInterior { boundary_mass: chi.boundary_mass() });
    }
    let value = expectation(t_op, &chi)?.re;
    let clean = expectation(t_op, clock)?.re;
    Ok(PerturbedExpectation { value, degradation: value - clean })
}

/// Duration between two composite snapshots as read off the clock.
pub fn measure_duration(
    state1: &CompositeState,
    state2: &CompositeState,
    t_op: &OperatorMatrix,
    class: &InteractionClass,
) -> Result<f64, ClockError> {
    if state1.clock_part.params() != state2.clock_part.params() {
        return Err(ClockError::InvalidParams("composite snapshots must share clock parameters"));
    }
    match class.kind {
        InteractionKind::Strong => Err(ClockError::StrongInteraction),
        InteractionKind::NoInteraction => {
            ensure_class_invariant(state1, class)?;
            ensure_class_invariant(state2, class)?;
            let a = expectation(t_op, &state1.clock_part)?.re;
            let b = expectation(t_op, &state2.clock_part)?.re;
            Ok(libm::fabs(b - a))
        }
        InteractionKind::Weak { .. } => {
            let a = perturbed_time_expectation(&state1.clock_part, &state1.overlap, t_op)?;
            let b = perturbed_time_expectation(&state2.clock_part, &state2.overlap, t_op)?;
            Ok(libm::fabs(b.value - a.value))
        }
    }
}

/// Energy exchanged with the clock when the external admixture is switched on:
/// `<H>` on the normalized `phi_C + psi_C` minus `<H>` on `phi_C`.
pub fn energy_exchange(
    clock0: &ClockState,
    overlap0: &[C64],
    h_op: &OperatorMatrix,
) -> Result<f64, ClockError> {
    if overlap0.len() != clock0.coeffs().len() {
        return Err(ClockError::DimensionMismatch {
            expected: clock0.coeffs().len(),
            got: overlap0.len(),
        });
    }
    let chi = ClockState::from_coeffs(*clock0.params(), linalg::add_vec(clock0.coeffs(), overlap0))?;
    let with = expectation(h_op, &chi)?.re;
    let without = expectation(h_op, clock0)?.re;
    Ok(with - without)
}

/// Evolve the composite by `t`: clock part and overlap under the clock
/// propagator, the remainder under `exp(-i t H_D)`.
///
/// A weak-class evolution demands a compatibility witness: the embedding
/// along which `H_D` restricts to the clock Hamiltonian.
pub fn evolve_composite(
    state: &CompositeState,
    t: f64,
    system_d: &SystemD,
    class: &InteractionClass,
    embedding: Option<&Embedding>,
) -> Result<CompositeState, ClockError> {
    ensure_class_invariant(state, class)?;
    if let InteractionKind::Weak { .. } = class.kind {
        let emb = embedding.ok_or(ClockError::InvalidParams(
            "weak interaction requires a compatibility witness",
        ))?;
        let compat = check_compatibility(system_d, emb, state.clock_part.params())?;
        if !compat.compatible {
            return Err(ClockError::Incompatible { defect: compat.defect });
        }
    }
    if state.d_part.len() != system_d.dim() {
        return Err(ClockError::DimensionMismatch {
            expected: system_d.dim(),
            got: state.d_part.len(),
        });
    }

    let clock_part =
        schroedinger_evolve(&state.clock_part, t, DEFAULT_LEAKAGE_THRESHOLD)?.state;
    let g = propagator_matrix(t, state.clock_part.params());
    let overlap = g.matrix.mul_vec(&state.overlap);
    let defect = libm::fabs(linalg::norm_sqr(&overlap) - linalg::norm_sqr(&state.overlap));
    if defect > DEFAULT_LEAKAGE_THRESHOLD {
        return Err(ClockError::LeakageExceeded { defect, threshold: DEFAULT_LEAKAGE_THRESHOLD });
    }
    let d_part = unitary_exp(&system_d.hamiltonian, -t).mul_vec(&state.d_part);
    Ok(CompositeState { clock_part, d_part, overlap, t_stamp: state.t_stamp + t })
}
