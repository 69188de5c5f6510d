use qtopo_core::Error;

/// Failure of a run, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, `u` or output location: exit 2.
    Input(String),
    /// A numerical acceptance check failed: exit 1.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotUnitary { .. } | Error::NotHermitian { .. } | Error::Parameter(_) | Error::InsufficientData { .. } => {
                CliError::Input(e.to_string())
            }
            Error::Resolution(_) | Error::NotCommuting { .. } | Error::AmbiguousChart(_) | Error::Consistency(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}
