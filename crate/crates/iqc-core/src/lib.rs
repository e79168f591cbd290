//! Numerical model of a band-limited quantum clock at finite truncation.
//!
//! The clock lives on a `2N+1`-dimensional window of its tick basis. Tick
//! states occupy the energy band `[-W, W]` with `W = pi / tau`, which makes
//! tick overlaps a normalized sinc kernel and pins the Hamiltonian matrix in
//! closed form. On top of that sit the tick-position operator, the
//! quadrature-built time operator, clock/system composites, and the
//! energy-shift experiments probing the maximal-energy obstruction.
//!
//! The crate is `no_std` (alloc only); everything user-facing lives in the
//! companion `iqc-lab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod clock;
pub mod composite;
pub mod eigen;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod quadrature;
pub mod timeop;

pub use clock::{
    decay_report, hamiltonian_matrix, hamiltonian_sq_matrix, overlap_kernel, propagator_matrix,
    schroedinger_evolve, weighted_norm, ClockParams, ClockState, DecayReport, DecayVerdict,
    EvolvedState, OperatorKind, OperatorMatrix,
};
pub use composite::{
    check_compatibility, classify_interaction, energy_exchange, evolve_composite,
    measure_duration, perturbed_time_expectation, Compatibility, CompositeState, Embedding,
    InteractionClass, InteractionEvidence, InteractionKind, PerturbedExpectation, SystemD,
};
pub use error::ClockError;
pub use linalg::{CMatrix, C64};
pub use pauli::{energy_shift_experiment, leakage_curve, v_operator, LeakagePoint, PauliShiftReport};
pub use timeop::{
    apply_p, ccr_interior_residual, ccr_residual, covariance_residual, eigen_scan, expectation,
    sigma_invariance_scan, time_operator_matrix, uncertainty_report, CcrBlockResidual,
    EigenScanReport, QuadratureSpec, SigmaScan, TimeOperator, UncertaintyReport,
};

/// Coefficient mass allowed outside the interior window before a state stops
/// counting as interior.
pub const INTERIOR_MASS_TOL: f64 = 1e-10;

/// Default norm-defect threshold for evolution under the truncated propagator.
pub const DEFAULT_LEAKAGE_THRESHOLD: f64 = 1e-6;
