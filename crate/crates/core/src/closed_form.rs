//! Spanning-subgraph backend: builds every term directly from the coefficient
//! formula for the shifted weights, without running the recurrence.
//!
//! Positions are 1-based indices into the ordering, so for any `σ` the
//! identity-ordering formulas apply verbatim after relabelling; factors are
//! reported against the original edge ids.

use rayon::prelude::*;

use crate::error::{GraphError, SymbolicError};
use crate::graph::{EdgeOrdering, Multigraph, SubgraphMask};
use crate::symbolic::{Factor, FactorKind, LinForm, Poly2, StateSum, Term};

/// Line-graph adjacency of each reduced graph along the ordering, for one
/// spanning subgraph `B`. Layer `k` describes `G·1·…·k` and is only defined
/// between positions greater than `k`.
#[derive(Debug, Clone)]
pub struct AdjacencySequence {
    order: EdgeOrdering,
    mask: SubgraphMask,
    layers: Vec<Vec<u8>>,
}

impl AdjacencySequence {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn mask(&self) -> SubgraphMask {
        self.mask
    }

    pub fn ordering(&self) -> &EdgeOrdering {
        &self.order
    }

    /// `A^{(k)}_{mn}` for positions `m ≠ n`, both greater than `k`.
    pub fn get(&self, k: usize, m: usize, n: usize) -> Option<u8> {
        let len = self.len();
        if m == n || m <= k || n <= k || m > len || n > len {
            return None;
        }
        Some(self.layers[k][(m - 1) * len + (n - 1)])
    }

    fn at(&self, k: usize, m: usize, n: usize) -> u8 {
        self.get(k, m, n).expect("adjacency entry outside its layer")
    }

    /// `ε` if the edge at position `j` is in `B`, else `ε′`.
    pub fn memory_symbol(&self, j: usize) -> Poly2 {
        if self.mask.contains(self.order.at(j)) {
            Poly2::eps()
        } else {
            Poly2::eps_prime()
        }
    }
}

pub fn adjacency_sequence(
    g: &Multigraph,
    order: &EdgeOrdering,
    mask: SubgraphMask,
) -> Result<AdjacencySequence, GraphError> {
    let seq = g.reduced_sequence(order, mask)?;
    let len = order.len();
    let mut layers = Vec::with_capacity(len);
    for (k, graph) in seq.iter().take(len).enumerate() {
        let mut layer = vec![0u8; len * len];
        for m in k + 1..=len {
            for n in k + 1..=len {
                if m != n {
                    layer[(m - 1) * len + (n - 1)] =
                        graph.line_adjacency(order.at(m), order.at(n))?;
                }
            }
        }
        layers.push(layer);
    }
    Ok(AdjacencySequence {
        order: order.clone(),
        mask,
        layers,
    })
}

/// `C_{kl;B}`: sum over chains `l < j_1 < … < j_p < k` of the memory symbols
/// of `l, j_1, …, j_p` times the adjacencies along the chain, each taken in
/// the graph just before the lower endpoint is processed.
pub fn coefficient_c(k: usize, l: usize, adj: &AdjacencySequence) -> Result<Poly2, SymbolicError> {
    let n = adj.len();
    if l == 0 || l > k || k > n {
        return Err(SymbolicError::Position { k, l, n });
    }
    if k == l {
        return Ok(Poly2::one());
    }
    let inner = k - l - 1;
    let mut total = Poly2::zero();
    for sel in 0u64..(1u64 << inner) {
        let mut chain = Vec::with_capacity(inner + 2);
        chain.push(l);
        chain.extend((0..inner).filter(|b| sel >> b & 1 == 1).map(|b| l + 1 + b));
        chain.push(k);
        let connected = chain
            .windows(2)
            .all(|w| adj.at(w[0] - 1, w[1], w[0]) == 1);
        if !connected {
            continue;
        }
        let weight = chain[..chain.len() - 1]
            .iter()
            .fold(Poly2::one(), |acc, &j| &acc * &adj.memory_symbol(j));
        total += &weight;
    }
    Ok(total)
}

/// `λ̂_{k;B} = Σ_{l ≤ k} C_{kl;B} λ_{σ(l)}`.
pub fn hat_lambda(k: usize, adj: &AdjacencySequence) -> Result<LinForm, SymbolicError> {
    let mut out = LinForm::zero();
    for l in 1..=k {
        let c = coefficient_c(k, l, adj)?;
        out.add_scaled(&c, &LinForm::weight(adj.order.at(l)));
    }
    Ok(out)
}

fn term(g: &Multigraph, order: &EdgeOrdering, mask: SubgraphMask) -> Result<Term, SymbolicError> {
    let adj = adjacency_sequence(g, order, mask)?;
    let factors = (1..=order.len())
        .map(|j| {
            let edge = order.at(j);
            Ok(Factor {
                edge,
                kind: FactorKind::for_membership(mask.contains(edge)),
                arg: hat_lambda(j, &adj)?,
            })
        })
        .collect::<Result<Vec<_>, SymbolicError>>()?;
    Ok(Term {
        mask,
        q_power: g.spanning_subgraph(mask).component_count() as u32,
        factors,
    })
}

/// `Σ_B q^{k(B)} Π_j γ_B(λ̂_{j;B})` over all `2^n` spanning subgraphs.
pub fn state_sum_closed(g: &Multigraph, order: &EdgeOrdering) -> Result<StateSum, SymbolicError> {
    order.check_covers(g)?;
    let terms = order
        .mask()
        .subsets()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|mask| term(g, order, mask))
        .collect::<Result<Vec<_>, _>>()?;
    StateSum::new(g.vertex_count(), order.clone(), terms).normalize()
}

/// Checks `C_{k1;B} = ε¹_B Σ_{1<ℓ≤k} A^{(0)}_{ℓ1} C_{kℓ;B}` exactly.
pub fn lemma_ckl_check(
    g: &Multigraph,
    order: &EdgeOrdering,
    mask: SubgraphMask,
    k: usize,
) -> Result<bool, SymbolicError> {
    let adj = adjacency_sequence(g, order, mask)?;
    if k < 2 || k > adj.len() {
        return Err(SymbolicError::Position {
            k,
            l: 1,
            n: adj.len(),
        });
    }
    let lhs = coefficient_c(k, 1, &adj)?;
    let mut sum = Poly2::zero();
    for l in 2..=k {
        if adj.at(0, l, 1) == 1 {
            sum += &coefficient_c(k, l, &adj)?;
        }
    }
    Ok(lhs == &adj.memory_symbol(1) * &sum)
}
