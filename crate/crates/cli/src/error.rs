use ordtutte::{EvalError, GraphError, ReductionError, SymbolicError};

use crate::graph_file::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    /// Bad flags or inputs the engine rejects.
    #[error("{0}")]
    Input(String),
    /// A verification suite found a counterexample; the payload is the report.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 1 for a failed check, 2 for anything the user has to fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

macro_rules! input_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        })*
    };
}

input_from!(GraphError, SymbolicError, EvalError, ReductionError, serde_json::Error, std::fmt::Error);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Failed("FAIL lemma".into()).exit_code(), 1);
        assert_eq!(CliError::Input("bad".into()).exit_code(), 2);
        let parse = CliError::Parse {
            path: "g".into(),
            source: ParseError { line: 4, message: "oops".into() },
        };
        assert_eq!(parse.exit_code(), 2);
        assert_eq!(parse.to_string(), "g: line 4: oops");
    }
}
