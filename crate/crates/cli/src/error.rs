use std::fmt;

use gk_core::GkError;

#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or model; exit 2.
    Config(String),
    /// Integration diverged; exit 3.
    BlowUp(String),
    /// Fixture comparison exceeded tolerance; exit 1.
    FixtureMismatch(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::BlowUp(_) => 3,
            Self::FixtureMismatch(_) | Self::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Self::BlowUp(msg) => write!(f, "integration blew up: {msg}"),
            Self::FixtureMismatch(msg) => write!(f, "fixture mismatch: {msg}"),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<GkError> for CliError {
    fn from(e: GkError) -> Self {
        match e {
            GkError::BlowUp { time, .. } => {
                Self::BlowUp(format!("state exceeded bounds at t = {time}"))
            }
            GkError::Io(e) => Self::Io(e),
            other => Self::Config(other.to_string()),
        }
    }
}
