use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the command-line front end. Each maps to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Parameters or inputs outside an operation's contract.
    #[error("{0}")]
    Precondition(String),
    /// A verification found a defect (a witness colouring, an invalid output).
    #[error("{0}")]
    Defect(String),
    /// Malformed input text or structure.
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl CliError {
    /// 0 is reserved for success.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 1,
            CliError::Defect(_) => 2,
            CliError::Input(_) | CliError::Io { .. } | CliError::Json { .. } => 3,
        }
    }
}

impl From<sfchoice_core::Error> for CliError {
    fn from(e: sfchoice_core::Error) -> Self {
        use sfchoice_core::Error as E;
        match e {
            E::Parse { .. }
            | E::Arity { .. }
            | E::MultiEdge { .. }
            | E::SelfLoop { .. }
            | E::UnknownVertex { .. }
            | E::MissingTerminals => CliError::Input(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let parse = sfchoice_core::sp::parse_sp_expression("P(e,").unwrap_err();
        assert_eq!(CliError::from(parse).exit_code(), 3);
        let gate = sfchoice_core::adversary::build_gadget(3, 1, 1).unwrap_err();
        assert_eq!(CliError::from(gate).exit_code(), 1);
        assert_eq!(CliError::Defect("x".into()).exit_code(), 2);
    }
}
