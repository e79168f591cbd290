//! Experiment runner and report plumbing around `iqc-core`: flat key=value
//! configs, one function per experiment tag, and deterministic JSON / CSV
//! report emission.

pub mod config;
pub mod error;
pub mod experiments;
pub mod json;
pub mod report;

pub use config::ExperimentConfig;
pub use error::LabError;
pub use experiments::run;
pub use report::{ExperimentReport, Series, Verdict};
