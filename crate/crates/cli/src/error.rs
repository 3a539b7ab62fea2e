use std::fmt;

/// Everything a command can fail with, each mapped to a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or out-of-bounds sizes.
    Config(String),
    Io { path: String, source: std::io::Error },
    /// Input parsed as JSON but does not describe valid data.
    Input(typei_core::Error),
    /// Input is a well-formed table but not an automorphism.
    NotAnAutomorphism(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Input(_) => 1,
            CliError::NotAnAutomorphism(_) => 2,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Input(e) => write!(f, "{e}"),
            CliError::NotAnAutomorphism(m) => write!(f, "not an automorphism: {m}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            CliError::Input(e) => Some(e),
            _ => None,
        }
    }
}

impl From<typei_core::Error> for CliError {
    fn from(e: typei_core::Error) -> Self {
        CliError::Input(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
