//! Contraction–deletion backend: runs the two-branch recurrence with
//! line-graph weight shifts edge by edge along the ordering.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{GraphError, SymbolicError};
use crate::graph::{EdgeId, EdgeOrdering, Multigraph, SubgraphMask};
use crate::symbolic::{Factor, FactorKind, LinForm, Poly2, StateSum, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Contract,
    Delete,
}

impl Step {
    /// Memory symbol attached to the step: `ε` on contraction, `ε′` on deletion.
    pub fn symbol(self) -> Poly2 {
        match self {
            Step::Contract => Poly2::eps(),
            Step::Delete => Poly2::eps_prime(),
        }
    }
}

/// A node of the contraction–deletion tree.
#[derive(Debug, Clone, PartialEq)]
pub struct RecState {
    pub graph: Multigraph,
    /// Current weight of every surviving edge.
    pub weights: BTreeMap<EdgeId, LinForm>,
    pub factors: Vec<Factor>,
    pub mask: SubgraphMask,
}

impl RecState {
    /// Root state: each edge carries its own weight `λ_e`.
    pub fn root(graph: &Multigraph) -> Self {
        RecState {
            graph: graph.clone(),
            weights: graph.edge_ids().map(|id| (id, LinForm::weight(id))).collect(),
            factors: Vec::new(),
            mask: SubgraphMask::empty(),
        }
    }

    /// Child state after contracting or deleting `e`.
    pub fn step(&self, e: EdgeId, step: Step) -> Result<RecState, GraphError> {
        let weights = shift_weights(self, e, step)?;
        let kind = FactorKind::for_membership(step == Step::Contract);
        let mut factors = self.factors.clone();
        factors.push(Factor {
            edge: e,
            kind,
            arg: self.weights[&e].clone(),
        });
        let mut mask = self.mask;
        let graph = match step {
            Step::Contract => {
                mask.insert(e);
                self.graph.contract(e)?
            }
            Step::Delete => self.graph.delete(e)?,
        };
        Ok(RecState {
            graph,
            weights,
            factors,
            mask,
        })
    }
}

/// Weights of the edges surviving the removal of `e`: each neighbour `f` of
/// `e` (in the graph before removal) gains `ε_step · w(e)`.
pub fn shift_weights(
    st: &RecState,
    e: EdgeId,
    step: Step,
) -> Result<BTreeMap<EdgeId, LinForm>, GraphError> {
    let w_e = st.weights.get(&e).ok_or(GraphError::NoSuchEdge(e))?;
    let symbol = step.symbol();
    let mut out = BTreeMap::new();
    for (&f, w_f) in &st.weights {
        if f == e {
            continue;
        }
        let w = if st.graph.line_adjacency(f, e)? == 1 {
            w_f.axpy(&symbol, w_e)
        } else {
            w_f.clone()
        };
        out.insert(f, w);
    }
    Ok(out)
}

/// Walk one root-to-leaf path: step `k` contracts `σ(k)` iff it is in `mask`.
fn leaf(g: &Multigraph, order: &EdgeOrdering, mask: SubgraphMask) -> Result<Term, GraphError> {
    let mut st = RecState::root(g);
    for &e in order.ids() {
        let step = if mask.contains(e) {
            Step::Contract
        } else {
            Step::Delete
        };
        st = st.step(e, step)?;
    }
    debug_assert_eq!(st.graph.edge_count(), 0);
    Ok(Term {
        mask: st.mask,
        q_power: st.graph.vertex_count() as u32,
        factors: st.factors,
    })
}

/// Full contraction–deletion expansion along `order`, one leaf per subset of
/// edges, terminal value `q^m` on `E_m`.
pub fn state_sum_recursive(g: &Multigraph, order: &EdgeOrdering) -> Result<StateSum, SymbolicError> {
    order.check_covers(g)?;
    let terms = order
        .mask()
        .subsets()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|mask| leaf(g, order, mask))
        .collect::<Result<Vec<_>, _>>()?;
    StateSum::new(g.vertex_count(), order.clone(), terms).normalize()
}
