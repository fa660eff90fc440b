//! Library side of the `cloudsig` command-line tool: file formats, SVG
//! rendering and the benchmark-table suites. The binary in `main.rs` is a
//! thin argument-parsing layer over these.

pub mod bench;
pub mod csvio;
pub mod model_file;
pub mod svg;

/// Process exit codes of the CLI: 0 ok, 2 usage/parse errors, 3 solver
/// failure, 4 geometric singularity.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<cloudsig_core::Error> for CliError {
    fn from(err: cloudsig_core::Error) -> Self {
        let code = match &err {
            cloudsig_core::Error::SolveFailed(_) => 3,
            cloudsig_core::Error::SingularPoint { .. } => 4,
            _ => 2,
        };
        CliError { code, message: err.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError { code: 2, message: err.to_string() }
    }
}
