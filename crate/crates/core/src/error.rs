use thiserror::Error;

use crate::graph::{EdgeId, SubgraphMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("no such edge: e{0}")]
    NoSuchEdge(EdgeId),
    #[error("self-adjacency undefined: e{0}")]
    SelfAdjacency(EdgeId),
    #[error("duplicate edge id e{0}")]
    DuplicateEdge(EdgeId),
    #[error("edge id {0} outside 1..=64")]
    EdgeIdOutOfRange(EdgeId),
    #[error("edge e{edge}: endpoint {vertex} out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        edge: EdgeId,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("bad ordering: {0}")]
    BadOrdering(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("malformed state sum: {0}")]
    Malformed(String),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    PolyParse { input: String, reason: String },
    #[error("position out of range: C[{k},{l}] needs 1 <= l <= k <= {n}")]
    Position { k: usize, l: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Failure while evaluating a state sum numerically.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no weight supplied for edge e{0}")]
    MissingWeight(EdgeId),
    #[error("{kind} undefined at argument {argument} (factor of e{edge} in term {mask})")]
    Undefined {
        mask: SubgraphMask,
        edge: EdgeId,
        kind: &'static str,
        argument: String,
    },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("singular input: {0}")]
    Singular(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<EvalError> for ReductionError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Undefined { .. } => ReductionError::Singular(e.to_string()),
            EvalError::Symbolic(s) => ReductionError::Symbolic(s),
            other => ReductionError::Invalid(other.to_string()),
        }
    }
}
