use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] stc_core::Error),
    #[error("output error: {0}")]
    Output(String),
    /// The reader closed the pipe; not reported.
    #[error("broken pipe")]
    BrokenPipe,
}

impl CliError {
    /// 1 for bad configuration or I/O, 2 for errors raised by the physics.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(e) if is_config_error(e) => ExitCode::from(1),
            CliError::Core(_) => ExitCode::from(2),
            CliError::Config(_) | CliError::Output(_) => ExitCode::from(1),
            CliError::BrokenPipe => ExitCode::SUCCESS,
        }
    }
}

fn is_config_error(e: &stc_core::Error) -> bool {
    matches!(
        e,
        stc_core::Error::InvalidParameter(_)
            | stc_core::Error::NonUnitAxis { .. }
            | stc_core::Error::DimensionMismatch { .. }
    )
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::BrokenPipe
        } else {
            CliError::Output(e.to_string())
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => io.into(),
            other => CliError::Output(format!("{other:?}")),
        }
    }
}
