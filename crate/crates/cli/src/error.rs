use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: Leibniz identity fails on ({}, {}, {}), defect [{}]", triple.0, triple.1, triple.2, defect.join(", "))]
    Validation {
        triple: (String, String, String),
        defect: Vec<String>,
    },

    #[error("{0}")]
    Io(String),

    #[error("unknown example {0:?}; expected one of dim5, heisenberg, abelian3")]
    UnknownExample(String),

    #[error(transparent)]
    Core(#[from] leibrack::Error),
}

impl CliError {
    /// Process exit code: 2 for input problems, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_)
            | CliError::Validation { .. }
            | CliError::Io(_)
            | CliError::UnknownExample(_) => 2,
            CliError::Core(leibrack::Error::Parse(_))
            | CliError::Core(leibrack::Error::InvalidConfig(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}
