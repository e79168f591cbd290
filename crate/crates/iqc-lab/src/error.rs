use std::fmt;

use iqc_core::ClockError;

/// Runner-level error with a machine-readable category and a process exit
/// code: config problems exit 2, experiment and IO failures exit 3.
#[derive(Debug)]
pub enum LabError {
    Config(String),
    Experiment(ClockError),
    Io(std::io::Error),
}

impl LabError {
    pub fn category(&self) -> &'static str {
        match self {
            LabError::Config(_) => "config",
            LabError::Experiment(_) => "experiment",
            LabError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => 2,
            LabError::Experiment(_) | LabError::Io(_) => 3,
        }
    }
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::Config(msg) => write!(f, "{msg}"),
            LabError::Experiment(e) => write!(f, "{e}"),
            LabError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LabError {}

impl From<ClockError> for LabError {
    fn from(e: ClockError) -> Self {
        LabError::Experiment(e)
    }
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e)
    }
}
