//! Exact symbolic layer: polynomials in `ε, ε′`, linear forms in the edge
//! weights, and the canonical spanning-subgraph state sum.

mod eval;
mod linform;
mod poly2;
mod statesum;

pub use eval::{evaluate, FkWeights, FnWeights, GbmWeights, UnitWeights, WeightModel};
pub use linform::LinForm;
pub use poly2::Poly2;
pub use statesum::{Factor, FactorKind, StateSum, Term};
