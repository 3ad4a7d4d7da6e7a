//! Exact engine for the ordering-dependent generalisation of the Tutte
//! polynomial, in which every contraction or deletion shifts the weights of
//! neighbouring edges by `ε` or `ε′` times the processed edge's weight.
//!
//! Two independent backends produce the same canonical [`StateSum`]:
//! [`recursion`] runs the contraction–deletion recurrence and [`closed_form`]
//! writes down each spanning-subgraph term directly. [`reductions`] holds the
//! random-cluster, chain-moment and constant-weight limits and [`gbm`] a
//! Monte Carlo check of the chain moments.

pub mod closed_form;
pub mod error;
pub mod gbm;
pub mod graph;
pub mod json;
pub mod recursion;
pub mod reductions;
pub mod scalar;
pub mod symbolic;

pub use error::{EvalError, GraphError, ReductionError, SymbolicError};
pub use graph::{Edge, EdgeId, EdgeOrdering, Multigraph, SubgraphMask};
pub use scalar::Scalar;
pub use symbolic::{Factor, FactorKind, LinForm, Poly2, StateSum, Term};

/// Which of the two constructions to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Recursive,
    Closed,
}

impl Backend {
    pub const ALL: [Backend; 2] = [Backend::Recursive, Backend::Closed];

    pub fn state_sum(self, g: &Multigraph, order: &EdgeOrdering) -> Result<StateSum, SymbolicError> {
        match self {
            Backend::Recursive => recursion::state_sum_recursive(g, order),
            Backend::Closed => closed_form::state_sum_closed(g, order),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Recursive => "recursive",
            Backend::Closed => "closed",
        }
    }
}
