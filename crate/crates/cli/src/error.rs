use thiserror::Error;

/// Errors that end a command with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", parse_message(*.line, .message))]
    Parse { line: usize, message: String },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] rft_core::Error),
}

fn parse_message(line: usize, message: &str) -> String {
    if line == 0 {
        format!("parse error: {message}")
    } else {
        format!("parse error at line {line}: {message}")
    }
}
