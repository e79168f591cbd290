//! The time operator: quadrature construction, conjugacy residuals,
//! uncertainty reports, and the eigenvector scans.
//!
//! The operator is the tick-average of the conjugated tick-position operator,
//! `T = tau^{-1} \int_{-tau/2}^{tau/2} G^+(u) P G(u) du`, discretized by
//! Gauss-Legendre. The integrand is analytic in `u`, so node doubling is used
//! as a convergence certificate rather than an error estimate.

use alloc::vec::Vec;

use crate::clock::{
    hamiltonian_matrix, hamiltonian_sq_matrix, propagator_matrix, ClockParams, ClockState,
    OperatorKind, OperatorMatrix,
};
use crate::eigen::hermitian_eigen;
use crate::error::ClockError;
use crate::linalg::{self, C64, CMatrix};
use crate::quadrature::GaussLegendre;
use crate::INTERIOR_MASS_TOL;

/// Fixed Gauss-Legendre rule over one tick `[-tau/2, tau/2]`.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    node_count: usize,
}

impl QuadratureSpec {
    pub const DEFAULT_NODES: usize = 64;

    pub fn new(node_count: usize) -> Result<Self, ClockError> {
        if node_count < 16 {
            return Err(ClockError::InvalidParams("quadrature needs at least 16 nodes"));
        }
        Ok(QuadratureSpec { node_count })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { node_count: Self::DEFAULT_NODES }
    }
}

/// Tick-position operator applied in coefficient space: `d^n -> n tau d^n`.
/// The result is not normalized.
pub fn apply_p(state: &ClockState) -> ClockState {
    let params = *state.params();
    let coeffs: Vec<C64> = state
        .coeffs()
        .iter()
        .enumerate()
        .map(|(p, z)| z * (params.index_of(p) as f64 * params.tau()))
        .collect();
    ClockState::from_coeffs(params, coeffs).expect("same window")
}

fn position_matrix(params: &ClockParams) -> CMatrix {
    let mut m = CMatrix::zeros(params.dim());
    for p in 0..params.dim() {
        m[(p, p)] = C64::new(params.index_of(p) as f64 * params.tau(), 0.0);
    }
    m
}

fn time_operator_at(params: &ClockParams, nodes: usize) -> CMatrix {
    let rule = GaussLegendre::new(nodes);
    let half = params.tau() / 2.0;
    let p = position_matrix(params);
    let mut acc = CMatrix::zeros(params.dim());
    for (u, w) in rule.scaled(-half, half) {
        let g = propagator_matrix(u, params).matrix;
        // G^+(u) P G(u); P is diagonal, so scale the rows of G first.
        let mut pg = g.clone();
        for r in 0..params.dim() {
            let scale = p[(r, r)];
            for c in 0..params.dim() {
                pg[(r, c)] *= scale;
            }
        }
        acc.axpy(C64::new(w / params.tau(), 0.0), &g.adjoint().mul(&pg));
    }
    acc
}

/// The constructed time operator plus its quadrature self-check.
#[derive(Clone, Debug)]
pub struct TimeOperator {
    pub op: OperatorMatrix,
    /// Largest entry change under node doubling.
    pub doubling_delta: f64,
}

/// Build the time operator by quadrature and certify convergence by doubling
/// the node count.
pub fn time_operator_matrix(
    params: &ClockParams,
    quad: &QuadratureSpec,
) -> Result<TimeOperator, ClockError> {
    let t1 = time_operator_at(params, quad.node_count);
    let t2 = time_operator_at(params, quad.node_count * 2);
    let delta = t1.sub(&t2).max_abs();
    if delta > 1e-8 {
        return Err(ClockError::QuadratureUnconverged { delta });
    }
    let op = OperatorMatrix::hermitian(t1)?;
    Ok(TimeOperator { op, doubling_delta: delta })
}

/// Normalized expectation `<state|op|state> / <state|state>`.
pub fn expectation(op: &OperatorMatrix, state: &ClockState) -> Result<C64, ClockError> {
    if op.dim() != state.coeffs().len() {
        return Err(ClockError::DimensionMismatch { expected: op.dim(), got: state.coeffs().len() });
    }
    let n2 = linalg::norm_sqr(state.coeffs());
    if n2 < 1e-300 {
        return Err(ClockError::ZeroState);
    }
    let ov = op.matrix.mul_vec(state.coeffs());
    Ok(linalg::inner(state.coeffs(), &ov) / n2)
}

/// `<state|[T, H]|state>` for a normalized interior state.
pub fn ccr_residual(
    state: &ClockState,
    t_op: &OperatorMatrix,
    h_op: &OperatorMatrix,
) -> Result<C64, ClockError> {
    if !state.is_interior() {
        return Err(ClockError::NotInterior { boundary_mass: state.boundary_mass() });
    }
    let d = state.coeffs();
    let n2 = linalg::norm_sqr(d);
    if n2 < 1e-300 {
        return Err(ClockError::ZeroState);
    }
    let th = t_op.matrix.mul_vec(&h_op.matrix.mul_vec(d));
    let ht = h_op.matrix.mul_vec(&t_op.matrix.mul_vec(d));
    let diff: Vec<C64> = th.iter().zip(&ht).map(|(a, b)| a - b).collect();
    Ok(linalg::inner(d, &diff) / n2)
}

/// Interior and whole-window max residual of `[T, H] - i I`.
#[derive(Clone, Copy, Debug)]
pub struct CcrBlockResidual {
    pub interior: f64,
    pub full: f64,
    pub trace_abs: f64,
}

pub fn ccr_interior_residual(
    t_op: &OperatorMatrix,
    h_op: &OperatorMatrix,
    params: &ClockParams,
) -> CcrBlockResidual {
    let t = &t_op.matrix;
    let h = &h_op.matrix;
    let comm = t.mul(h).sub(&h.mul(t));
    let mut res = comm.sub(&CMatrix::identity(t.dim()).scale(C64::new(0.0, 1.0)));
    let (lo, hi) = params.interior_range();
    let interior = res.max_abs_block(lo, hi);
    let full = res.max_abs();
    let trace_abs = comm.trace().norm();
    // silence unused-mut path on res reuse
    let _ = &mut res;
    CcrBlockResidual { interior, full, trace_abs }
}

/// `||(T G(t) - G(t) T - t G(t))_interior||_max` -- the integrated form of
/// conjugacy at a finite window.
pub fn covariance_residual(t: f64, t_op: &OperatorMatrix, params: &ClockParams) -> f64 {
    let g = propagator_matrix(t, params).matrix;
    let mut r = t_op.matrix.mul(&g).sub(&g.mul(&t_op.matrix));
    r.axpy(C64::new(-t, 0.0), &g);
    let (lo, hi) = params.interior_range();
    r.max_abs_block(lo, hi)
}

#[derive(Clone, Copy, Debug)]
pub struct UncertaintyReport {
    pub mean_t: f64,
    pub var_t: f64,
    pub mean_h: f64,
    pub var_h: f64,
    /// `sigma(T) sigma(H)`.
    pub product: f64,
}

impl UncertaintyReport {
    pub fn sigma_t(&self) -> f64 {
        libm::sqrt(self.var_t)
    }

    pub fn sigma_h(&self) -> f64 {
        libm::sqrt(self.var_h)
    }
}

/// Means, variances and the uncertainty product for an interior state.
///
/// `Var(T)` uses the quadrature-built operator (`<T phi|T phi> - <T>^2`);
/// `Var(H)` uses the exact band second moment so that flat-spectrum states
/// land on `W^2 / 3` instead of a truncation-bitten value.
pub fn uncertainty_report(
    state: &ClockState,
    t_op: &OperatorMatrix,
) -> Result<UncertaintyReport, ClockError> {
    if !state.is_interior() {
        return Err(ClockError::NotInterior { boundary_mass: state.boundary_mass() });
    }
    let params = state.params();
    let d = state.coeffs();
    let n2 = linalg::norm_sqr(d);
    if n2 < 1e-300 {
        return Err(ClockError::ZeroState);
    }
    let h_op = hamiltonian_matrix(params);
    let h2_op = hamiltonian_sq_matrix(params);

    let td = t_op.matrix.mul_vec(d);
    let mean_t = (linalg::inner(d, &td) / n2).re;
    let var_t = (linalg::norm_sqr(&td) / n2 - mean_t * mean_t).max(0.0);

    let mean_h = (linalg::inner(d, &h_op.matrix.mul_vec(d)) / n2).re;
    let mean_h2 = (linalg::inner(d, &h2_op.matrix.mul_vec(d)) / n2).re;
    let var_h = (mean_h2 - mean_h * mean_h).max(0.0);

    Ok(UncertaintyReport {
        mean_t,
        var_t,
        mean_h,
        var_h,
        product: libm::sqrt(var_t * var_h),
    })
}

#[derive(Clone, Debug)]
pub struct SigmaScan {
    pub sigma_t_base: f64,
    /// `|sigma_T(t) - sigma_T(0)|` per probe time.
    pub sigma_devs: Vec<f64>,
    /// `|<T>(t) - (<T>(0) + t)|` per probe time.
    pub mean_shift_devs: Vec<f64>,
    pub max_sigma_dev: f64,
    pub max_mean_shift_dev: f64,
}

/// Evolve a state across `t_list` and track the drift of `sigma(T)` (which
/// should vanish) and of `<T>` against the expected uniform advance.
pub fn sigma_invariance_scan(
    state: &ClockState,
    t_list: &[f64],
    t_op: &OperatorMatrix,
) -> Result<SigmaScan, ClockError> {
    let base = uncertainty_report(state, t_op)?;
    let mut sigma_devs = Vec::with_capacity(t_list.len());
    let mut mean_devs = Vec::with_capacity(t_list.len());
    for &t in t_list {
        let evolved = crate::clock::schroedinger_evolve(state, t, 1.0)?.state;
        if !evolved.is_interior() {
            return Err(ClockError::LeakageExceeded {
                defect: evolved.boundary_mass(),
                threshold: INTERIOR_MASS_TOL,
            });
        }
        let rep = uncertainty_report(&evolved, t_op)?;
        sigma_devs.push(libm::fabs(rep.sigma_t() - base.sigma_t()));
        mean_devs.push(libm::fabs(rep.mean_t - (base.mean_t + t)));
    }
    let max_sigma_dev = sigma_devs.iter().cloned().fold(0.0, f64::max);
    let max_mean_shift_dev = mean_devs.iter().cloned().fold(0.0, f64::max);
    Ok(SigmaScan {
        sigma_t_base: base.sigma_t(),
        sigma_devs,
        mean_shift_devs: mean_devs,
        max_sigma_dev,
        max_mean_shift_dev,
    })
}

/// Per-eigenvector record of the truncated time operator.
#[derive(Clone, Copy, Debug)]
pub struct TEigenRecord {
    pub eigenvalue: f64,
    pub boundary_mass: f64,
    pub weighted_norm: f64,
}

#[derive(Clone, Debug)]
pub struct EigenScanReport {
    /// Largest `|<T>(t) - <T>(0)|` over eigenvectors of the truncated
    /// Hamiltonian, evolved by their eigenphase at `t_probe`.
    pub h_drift_max: f64,
    pub t_records: Vec<TEigenRecord>,
    pub min_t_boundary_mass: f64,
    /// `sigma(T)` floor `1 / (2 W)`.
    pub sigma_floor: f64,
    /// `(sigma_T, 1/(2 sigma_H))` for each supplied probe state.
    pub sigma_checks: Vec<(f64, f64)>,
}

/// Scan eigenvectors of the truncated Hamiltonian and time operator.
///
/// Hamiltonian eigenvectors evolve by a phase, so their `<T>` drift is
/// directly assertable. Time-operator eigenvectors are reported through their
/// interiority defect and admissibility weight -- finite matrices always have
/// eigenvectors, so non-existence in the untruncated model can only show up
/// as a signature, not a proof. Supplied interior states are checked against
/// the variance floor `sigma(T) >= 1/(2 sigma(H))`.
pub fn eigen_scan(
    params: &ClockParams,
    quad: &QuadratureSpec,
    t_probe: f64,
    probe_states: &[ClockState],
) -> Result<EigenScanReport, ClockError> {
    let t_op = time_operator_matrix(params, quad)?.op;
    let h_op = hamiltonian_matrix(params);

    let h_eig = hermitian_eigen(&h_op.matrix);
    let mut h_drift_max: f64 = 0.0;
    for c in 0..params.dim() {
        let vec: Vec<C64> = (0..params.dim()).map(|r| h_eig.vectors[(r, c)]).collect();
        let s0 = ClockState::from_coeffs(*params, vec.clone())?;
        // evolution of an eigenvector is multiplication by its eigenphase
        let phase = C64::from_polar(1.0, -h_eig.values[c] * t_probe);
        let s1 = ClockState::from_coeffs(*params, linalg::scale_vec(&vec, phase))?;
        let before = expectation(&t_op, &s0)?.re;
        let after = expectation(&t_op, &s1)?.re;
        h_drift_max = h_drift_max.max(libm::fabs(after - before));
    }

    let t_eig = hermitian_eigen(&t_op.matrix);
    let mut t_records = Vec::with_capacity(params.dim());
    let mut min_bm = f64::INFINITY;
    for c in 0..params.dim() {
        let vec: Vec<C64> = (0..params.dim()).map(|r| t_eig.vectors[(r, c)]).collect();
        let s = ClockState::from_coeffs(*params, vec)?;
        let bm = s.boundary_mass();
        min_bm = min_bm.min(bm);
        t_records.push(TEigenRecord {
            eigenvalue: t_eig.values[c],
            boundary_mass: bm,
            weighted_norm: crate::clock::weighted_norm(&s),
        });
    }

    let sigma_floor = 1.0 / (2.0 * params.band_edge());
    let mut sigma_checks = Vec::with_capacity(probe_states.len());
    for s in probe_states {
        let rep = uncertainty_report(s, &t_op)?;
        sigma_checks.push((rep.sigma_t(), 1.0 / (2.0 * rep.sigma_h())));
    }

    Ok(EigenScanReport { h_drift_max, t_records, min_t_boundary_mass: min_bm, sigma_floor, sigma_checks })
}

impl OperatorMatrix {
    /// Identity operator over the window.
    pub fn identity(params: &ClockParams) -> Self {
        OperatorMatrix { matrix: CMatrix::identity(params.dim()), kind: OperatorKind::Hermitian }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::schroedinger_evolve;

    fn setup(n: u32) -> (ClockParams, OperatorMatrix, OperatorMatrix) {
        let p = ClockParams::new(1.0, n).unwrap();
        let t = time_operator_matrix(&p, &QuadratureSpec::default()).unwrap().op;
        let h = hamiltonian_matrix(&p);
        (p, t, h)
    }

    #[test]
    fn apply_p_examples() {
        let p = ClockParams::new(1.0, 8).unwrap();
        let zeroed = apply_p(&ClockState::tick(p, 0).unwrap());
        assert!(linalg::norm(zeroed.coeffs()) == 0.0);

        let three = apply_p(&ClockState::tick(p, 3).unwrap());
        let pos = p.pos_of(3).unwrap();
        assert!((three.coeffs()[pos] - C64::new(3.0, 0.0)).norm() < 1e-15);

        // equal superposition of n = +-1 has <P> = 0
        let mut coeffs = alloc::vec![C64::new(0.0, 0.0); p.dim()];
        let inv = 1.0 / libm::sqrt(2.0);
        coeffs[p.pos_of(1).unwrap()] = C64::new(inv, 0.0);
        coeffs[p.pos_of(-1).unwrap()] = C64::new(inv, 0.0);
        let s = ClockState::from_coeffs(p, coeffs).unwrap();
        let ps = apply_p(&s);
        let mean = linalg::inner(s.coeffs(), ps.coeffs());
        assert!(mean.norm() < 1e-15);
    }

    #[test]
    fn quadrature_spec_validation() {
        assert!(QuadratureSpec::new(8).is_err());
        assert!(QuadratureSpec::new(16).is_ok());
    }

    #[test]
    fn time_operator_shape() {
        let (p, t, _) = setup(16);
        assert_eq!(t.kind, OperatorKind::Hermitian);
        assert!(t.matrix.hermiticity_defect() < 1e-12);
        // central entry vanishes by symmetry of the one-tick average
        let c = p.pos_of(0).unwrap();
        assert!(t.matrix[(c, c)].norm() < 1e-10);
        // interior diagonal tracks n tau; the deviation grows toward the
        // interior edge (measured max 0.121 at N=32, B=16)
        let (lo, hi) = p.interior_range();
        for r in lo..hi {
            let expect = p.index_of(r) as f64;
            assert!((t.matrix[(r, r)].re - expect).abs() < 0.2, "diag at {r}");
        }
    }

    #[test]
    fn time_operator_quadrature_doubling_is_tight() {
        let p = ClockParams::new(1.0, 16).unwrap();
        let t = time_operator_matrix(&p, &QuadratureSpec::default()).unwrap();
        assert!(t.doubling_delta < 1e-10, "delta = {}", t.doubling_delta);
    }

    #[test]
    fn expectation_examples() {
        let (p, t, h) = setup(16);
        let tick0 = ClockState::tick(p, 0).unwrap();
        let id = OperatorMatrix::identity(&p);
        assert!((expectation(&id, &tick0).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(expectation(&h, &tick0).unwrap().norm() < 1e-10);
        assert!(expectation(&t, &tick0).unwrap().norm() < 1e-10);

        // <P> on tick 2 at tau = 0.5 is 1.0
        let p2 = ClockParams::new(0.5, 8).unwrap();
        let s = ClockState::tick(p2, 2).unwrap();
        let ps = apply_p(&s);
        let mean = linalg::inner(s.coeffs(), ps.coeffs());
        assert!((mean.re - 1.0).abs() < 1e-15);

        let zero = ClockState::from_coeffs(p, alloc::vec![C64::new(0.0, 0.0); p.dim()]).unwrap();
        assert_eq!(expectation(&id, &zero).unwrap_err(), ClockError::ZeroState);
    }

    #[test]
    fn ccr_on_smooth_interior_state_is_i() {
        let (p, t, h) = setup(32);
        let g = ClockState::gaussian(p, 0.0, 3.0).unwrap();
        let v = ccr_residual(&g, &t, &h).unwrap();
        assert!((v - C64::new(0.0, 1.0)).norm() < 1e-8, "got {v}");
    }

    #[test]
    fn ccr_on_tick_sees_band_edge_defect() {
        // The flat-spectrum tick state saturates the band edges, where the
        // critically-sampled realization carries an alternating-sign
        // commutator defect of weight 1/2; the symmetric truncation converges
        // to i/2 rather than i (measured 0.49242 i at N = 32).
        let (p, t, h) = setup(32);
        let tick0 = ClockState::tick(p, 0).unwrap();
        let v = ccr_residual(&tick0, &t, &h).unwrap();
        assert!((v - C64::new(0.0, 0.5)).norm() < 0.02, "got {v}");
        assert!((v - C64::new(0.0, 1.0)).norm() > 0.4);
    }

    #[test]
    fn ccr_rejects_non_interior_state() {
        let (p, t, h) = setup(32);
        let edge = ClockState::tick(p, 32).unwrap();
        assert!(matches!(
            ccr_residual(&edge, &t, &h),
            Err(ClockError::NotInterior { .. })
        ));
        // the raw quadratic form at the boundary deviates visibly
        let th = t.matrix.mul(&h.matrix).sub(&h.matrix.mul(&t.matrix));
        let comm = OperatorMatrix::general(th);
        let v = expectation(&comm, &edge).unwrap();
        assert!((v - C64::new(0.0, 1.0)).norm() > 1.0);
    }

    #[test]
    fn ccr_block_residual_profile() {
        let (p, t, h) = setup(32);
        let r = ccr_interior_residual(&t, &h, &p);
        // measured: interior 0.5725, full 10.62 at N = 32, B = 16
        assert!(r.interior > 0.5 && r.interior < 0.65, "interior {}", r.interior);
        assert!(r.full / r.interior > 5.0, "defect must concentrate at the boundary");
        assert!(r.trace_abs < 1e-9, "trace of a commutator is zero");
    }

    #[test]
    fn covariance_residual_values() {
        let (p, t, _) = setup(32);
        // G(0) is the identity only up to sin(pi d) rounding
        assert!(covariance_residual(0.0, &t, &p) < 1e-13);
        // measured 1.088e-2 (t = tau) and 1.657e-1 (t = 0.37 tau) at N = 32
        assert!(covariance_residual(1.0, &t, &p) < 2e-2);
        assert!(covariance_residual(0.37, &t, &p) < 0.25);
    }

    #[test]
    fn uncertainty_tick_matches_band_moments() {
        let (p, t, _) = setup(32);
        let tick0 = ClockState::tick(p, 0).unwrap();
        let rep = uncertainty_report(&tick0, &t).unwrap();
        let w = p.band_edge();
        assert!((rep.sigma_h() - w / libm::sqrt(3.0)).abs() < 1e-8);
        assert!(rep.mean_h.abs() < 1e-12);
        assert!(rep.product >= 0.5);
        // measured sigma(T) = 0.72887 at N = 32
        assert!((rep.sigma_t() - 0.72887).abs() < 1e-3);
    }

    #[test]
    fn uncertainty_gaussian_saturates_lower_bound() {
        let (p, t, _) = setup(32);
        for width in [1.5, 2.0, 3.0] {
            let g = ClockState::gaussian(p, 0.0, width).unwrap();
            let rep = uncertainty_report(&g, &t).unwrap();
            assert!(rep.product >= 0.5 - 1e-6, "width {width}: {}", rep.product);
            assert!(rep.product <= 0.5 + 1e-3, "width {width}: {}", rep.product);
        }
    }

    #[test]
    fn sigma_invariance_and_mean_advance() {
        let (p, t, _) = setup(32);
        let g = ClockState::gaussian(p, 0.0, 3.0).unwrap();
        let scan =
            sigma_invariance_scan(&g, &[0.5, -0.5, 1.0, -1.0, 2.0, -2.0], &t).unwrap();
        assert!(scan.max_sigma_dev < 1e-7, "sigma dev {}", scan.max_sigma_dev);
        assert!(scan.max_mean_shift_dev < 1e-7, "mean dev {}", scan.max_mean_shift_dev);
    }

    #[test]
    fn sigma_scan_trivial_grid() {
        let (p, t, _) = setup(16);
        let g = ClockState::gaussian(p, 0.0, 1.5).unwrap();
        let scan = sigma_invariance_scan(&g, &[0.0], &t).unwrap();
        assert!(scan.max_sigma_dev < 1e-13);
    }

    #[test]
    fn sigma_scan_rejects_leaky_evolution() {
        let p = ClockParams::new(1.0, 16).unwrap();
        let t = time_operator_matrix(&p, &QuadratureSpec::default()).unwrap().op;
        let g = ClockState::gaussian(p, 0.0, 1.5).unwrap();
        // driving the packet onto the boundary defeats interiority
        assert!(matches!(
            sigma_invariance_scan(&g, &[10.0], &t),
            Err(ClockError::LeakageExceeded { .. })
        ));
    }

    #[test]
    fn mean_t_tracks_time_linearly_for_interior_states() {
        let (p, t, _) = setup(32);
        let g = ClockState::gaussian(p, 0.0, 3.0).unwrap();
        // 11-point grid, least-squares line
        let ts: Vec<f64> = (0..11).map(|i| 0.2 * i as f64).collect();
        let mut means = Vec::new();
        for &tt in &ts {
            let ev = schroedinger_evolve(&g, tt, 1e-6).unwrap().state;
            means.push(expectation(&t, &ev).unwrap().re);
        }
        let n = ts.len() as f64;
        let xm = ts.iter().sum::<f64>() / n;
        let ym = means.iter().sum::<f64>() / n;
        let mut num = 0.0;
        let mut den = 0.0;
        for (x, y) in ts.iter().zip(&means) {
            num += (x - xm) * (y - ym);
            den += (x - xm) * (x - xm);
        }
        let slope = num / den;
        let intercept = ym - slope * xm;
        assert!((slope - 1.0).abs() < 1e-10, "slope {slope}");
        assert!(intercept.abs() < 1e-10, "intercept {intercept}");
    }

    #[test]
    fn eigen_scan_signatures() {
        let p = ClockParams::new(1.0, 16).unwrap();
        let probes = alloc::vec![
            ClockState::gaussian(p, 0.0, 1.5).unwrap(),
            ClockState::tick(p, 0).unwrap(),
        ];
        let rep = eigen_scan(&p, &QuadratureSpec::default(), 1.7, &probes).unwrap();
        // phase evolution cannot move <T> on Hamiltonian eigenvectors
        assert!(rep.h_drift_max < 1e-12);
        // no time-operator eigenvector is interior (mass tolerance 1e-10);
        // measured min boundary mass 3.33e-3 at N = 16
        assert!(rep.min_t_boundary_mass > 1e-10);
        assert!((rep.min_t_boundary_mass - 3.33e-3).abs() < 1e-3);
        for (sigma_t, lower) in &rep.sigma_checks {
            assert!(*sigma_t >= lower - 1e-6);
            assert!(*sigma_t >= rep.sigma_floor - 1e-6);
        }
    }
}
