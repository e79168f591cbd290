//! The maximal-energy obstruction: the unitary family `V(k) = exp(+ikT)`
//! and what the energy-shift identity `<H> -> <H> + k` runs into when the
//! prediction leaves the band `[-W, W]`.
//!
//! On a finite truncation `V(k)` always exists, so the untruncated statement
//! "no normalized state survives every shift" surfaces here in two measurable
//! ways: the measured energy is confined to the band (so large shifts force a
//! deviation of at least `|<H> + k| - W`), and the shifted state picks up
//! boundary mass and admissibility weight. Which `k` trivialize the domain in
//! the untruncated model is not decidable from the curves; they are reported
//! as evidence, not proof.

use alloc::vec::Vec;

use crate::clock::{weighted_norm, ClockState, OperatorKind, OperatorMatrix};
use crate::eigen::{hermitian_eigen, unitary_exp_from, Eigen};
use crate::error::ClockError;
use crate::timeop::expectation;

/// `V(k) = exp(+ikT)`. Exactly unitary at matrix level; the kind tag records
/// that it only approximates the untruncated object.
pub fn v_operator(k: f64, t_op: &OperatorMatrix) -> OperatorMatrix {
    let eig = hermitian_eigen(&t_op.matrix);
    OperatorMatrix { matrix: unitary_exp_from(&eig, k), kind: OperatorKind::UnitaryApprox }
}

fn shifted_state(state: &ClockState, k: f64, eig: &Eigen) -> Result<ClockState, ClockError> {
    let u = unitary_exp_from(eig, k);
    let coeffs = u.mul_vec(state.coeffs());
    ClockState::from_coeffs(*state.params(), coeffs)
}

#[derive(Clone, Copy, Debug)]
pub struct PauliShiftReport {
    pub k: f64,
    pub mean_h_before: f64,
    /// `mean_h_before + k` -- what the shift identity promises.
    pub predicted: f64,
    /// `<phi_k | H | phi_k>` -- what the truncation delivers.
    pub measured: f64,
    pub bound_w: f64,
    pub deviation: f64,
    /// Boundary mass of the shifted state.
    pub leakage_boundary_mass: f64,
    /// Admissibility weight of the shifted state.
    pub leakage_weighted_norm: f64,
}

/// Apply `V(k)` to an interior state and compare the measured energy against
/// the shift identity.
pub fn energy_shift_experiment(
    state: &ClockState,
    k: f64,
    t_op: &OperatorMatrix,
    h_op: &OperatorMatrix,
) -> Result<PauliShiftReport, ClockError> {
    if !state.is_interior() {
        return Err(ClockError::NotInterior { boundary_mass: state.boundary_mass() });
    }
    let state = state.normalized()?;
    let eig = hermitian_eigen(&t_op.matrix);
    let shifted = shifted_state(&state, k, &eig)?;
    let mean_h_before = expectation(h_op, &state)?.re;
    let measured = expectation(h_op, &shifted)?.re;
    let predicted = mean_h_before + k;
    Ok(PauliShiftReport {
        k,
        mean_h_before,
        predicted,
        measured,
        bound_w: state.params().band_edge(),
        deviation: libm::fabs(measured - predicted),
        leakage_boundary_mass: shifted.boundary_mass(),
        leakage_weighted_norm: weighted_norm(&shifted),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct LeakagePoint {
    pub k: f64,
    pub boundary_mass: f64,
    pub weighted_norm: f64,
}

/// Boundary mass and admissibility weight of `V(k) state` across a grid.
/// One eigensolve of `T` is shared by the whole sweep.
pub fn leakage_curve(
    state: &ClockState,
    k_grid: &[f64],
    t_op: &OperatorMatrix,
) -> Result<Vec<LeakagePoint>, ClockError> {
    if !state.is_interior() {
        return Err(ClockError::NotInterior { boundary_mass: state.boundary_mass() });
    }
    let state = state.normalized()?;
    let eig = hermitian_eigen(&t_op.matrix);
    let mut out = Vec::with_capacity(k_grid.len());
    for &k in k_grid {
        let shifted = shifted_state(&state, k, &eig)?;
        out.push(LeakagePoint {
            k,
            boundary_mass: shifted.boundary_mass(),
            weighted_norm: weighted_norm(&shifted),
        });
    }
    Ok(out)
}
