use std::fmt;

/// Failure of a CLI invocation, mapped to the process exit status.
#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments, configuration or input files.
    Usage(String),
    /// A verification check exceeded its tolerance.
    Tolerance(String),
    Numeric(ls_transform::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Tolerance(_) => 1,
            CliError::Numeric(e) if e.is_range_error() => 3,
            CliError::Numeric(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Tolerance(m) => write!(f, "verification failed: {m}"),
            CliError::Numeric(e) => write!(f, "numerical error: {e}"),
        }
    }
}

impl From<ls_transform::Error> for CliError {
    fn from(e: ls_transform::Error) -> Self {
        match e {
            ls_transform::Error::InvalidParameter(m) => CliError::Usage(m),
            e => CliError::Numeric(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
