use padelab_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("capability error: {0}")]
    Capability(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Capability(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parameter { .. } | CoreError::Schedule(_) | CoreError::Grid(_) => CliError::Config(e.to_string()),
            CoreError::Capability(_) => CliError::Capability(e.to_string()),
            CoreError::Domain(_)
            | CoreError::InvariantViolation(_)
            | CoreError::NumericFailure { .. }
            | CoreError::PoleProximity { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Numeric(format!("serialization: {e}"))
    }
}
