use serde_json::{json, Value};

use mpp_core::degeneration::DegenerationError;
use mpp_core::family::FamilyError;
use mpp_core::io::IoError;
use mpp_core::{GeometryError, PosetError};

/// Exit code 2 for rejected input, 3 for failed computations.
#[derive(Debug)]
pub enum CliError {
    Input {
        message: String,
        diagnostics: Vec<String>,
    },
    Compute {
        message: String,
        partial: Option<Value>,
    },
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        let message = message.into();
        CliError::Input {
            diagnostics: vec![message.clone()],
            message,
        }
    }

    pub fn compute(message: impl Into<String>) -> Self {
        CliError::Compute {
            message: message.into(),
            partial: None,
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Compute { .. } => 3,
        }
    }

    pub fn partial(&self) -> Option<&Value> {
        match self {
            CliError::Compute { partial, .. } => partial.as_ref(),
            CliError::Input { .. } => None,
        }
    }

    pub fn diagnostics(&self) -> Value {
        match self {
            CliError::Input {
                message,
                diagnostics,
            } => {
                json!({ "error": "input", "message": message, "diagnostics": diagnostics })
            }
            CliError::Compute { message, .. } => {
                json!({ "error": "computation", "message": message })
            }
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input { message, .. } | CliError::Compute { message, .. } => {
                f.write_str(message)
            }
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Invalid(msgs) => CliError::Input {
                message: IoError::Invalid(msgs.clone()).to_string(),
                diagnostics: msgs,
            },
            IoError::Family(f) => f.into(),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::compute(e.to_string())
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Geometry(g) => g.into(),
            FamilyError::TooLarge(..) => CliError::compute(e.to_string()),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<DegenerationError> for CliError {
    fn from(e: DegenerationError) -> Self {
        match e {
            DegenerationError::Family(f) => f.into(),
            DegenerationError::Geometry(g) => g.into(),
            DegenerationError::OutsideTarget(_) => CliError::compute(e.to_string()),
            other => CliError::input(other.to_string()),
        }
    }
}
