use std::fmt;

use crate::error::SymbolicError;
use crate::graph::{EdgeId, EdgeOrdering, SubgraphMask};
use crate::symbolic::LinForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// Edge contracted, i.e. in the spanning subgraph.
    Alpha,
    /// Edge deleted.
    Beta,
}

impl FactorKind {
    pub fn for_membership(in_subgraph: bool) -> Self {
        if in_subgraph {
            FactorKind::Alpha
        } else {
            FactorKind::Beta
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FactorKind::Alpha => "alpha",
            FactorKind::Beta => "beta",
        }
    }
}

/// One opaque `α(arg)` or `β(arg)` factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub edge: EdgeId,
    pub kind: FactorKind,
    pub arg: LinForm,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.kind {
            FactorKind::Alpha => "α",
            FactorKind::Beta => "β",
        };
        write!(f, "{sym}({})", self.arg)
    }
}

/// `q^{q_power} Π factors`, the contribution of one spanning subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub mask: SubgraphMask,
    pub q_power: u32,
    pub factors: Vec<Factor>,
}

/// `q^k · α(…) · β(…)` in processing order.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.q_power)?;
        for factor in &self.factors {
            write!(f, " · {factor}")?;
        }
        Ok(())
    }
}

impl Term {
    /// Factors keyed by edge id, so two terms compare as commutative products.
    fn commutative_factors(&self) -> Vec<&Factor> {
        let mut fs: Vec<&Factor> = self.factors.iter().collect();
        fs.sort_by_key(|f| f.edge);
        fs
    }
}

/// Spanning-subgraph expansion of the ordering-dependent polynomial.
///
/// Equality of normalized state sums is the notion of polynomial identity used
/// throughout: `α` and `β` stay uninterpreted, so two factors only match when
/// their argument forms are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSum {
    vertex_count: usize,
    ordering: EdgeOrdering,
    terms: Vec<Term>,
}

impl StateSum {
    pub fn new(vertex_count: usize, ordering: EdgeOrdering, terms: Vec<Term>) -> Self {
        StateSum {
            vertex_count,
            ordering,
            terms,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.ordering.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn ordering(&self) -> &EdgeOrdering {
        &self.ordering
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, mask: SubgraphMask) -> Option<&Term> {
        self.terms.iter().find(|t| t.mask == mask)
    }

    /// Terms ascending by mask, factors in processing order. Idempotent.
    pub fn normalize(&self) -> Result<StateSum, SymbolicError> {
        let mut terms = self.terms.clone();
        terms.sort_by_key(|t| t.mask);
        if let Some(w) = terms.windows(2).find(|w| w[0].mask == w[1].mask) {
            return Err(SymbolicError::Malformed(format!(
                "duplicate subgraph {}",
                w[0].mask
            )));
        }
        for t in &mut terms {
            let mut keyed = Vec::with_capacity(t.factors.len());
            for f in t.factors.drain(..) {
                let pos = self.ordering.position(f.edge).ok_or_else(|| {
                    SymbolicError::Malformed(format!(
                        "factor for e{} not in the ordering",
                        f.edge
                    ))
                })?;
                keyed.push((pos, f));
            }
            keyed.sort_by_key(|(pos, _)| *pos);
            t.factors = keyed.into_iter().map(|(_, f)| f).collect();
        }
        Ok(StateSum {
            vertex_count: self.vertex_count,
            ordering: self.ordering.clone(),
            terms,
        })
    }

    /// Structural checks every backend output must pass: one term per
    /// spanning subgraph, one factor per edge, `α` exactly on the subgraph.
    pub fn validate(&self) -> Result<(), SymbolicError> {
        let n = self.edge_count();
        let all = self.ordering.mask();
        let bad = |msg: String| Err(SymbolicError::Malformed(msg));
        if self.terms.len() as u128 != 1u128 << n {
            return bad(format!("{} terms for {n} edges", self.terms.len()));
        }
        let mut masks: Vec<SubgraphMask> = self.terms.iter().map(|t| t.mask).collect();
        masks.sort();
        masks.dedup();
        if masks.len() != self.terms.len() {
            return bad("duplicate subgraph".into());
        }
        for t in &self.terms {
            if !t.mask.is_subset_of(all) {
                return bad(format!("subgraph {} has foreign edges", t.mask));
            }
            let edges = SubgraphMask::from_ids(t.factors.iter().map(|f| f.edge));
            if t.factors.len() != n || edges != all {
                return bad(format!("term {} does not have one factor per edge", t.mask));
            }
            if let Some(f) = t
                .factors
                .iter()
                .find(|f| f.kind != FactorKind::for_membership(t.mask.contains(f.edge)))
            {
                return bad(format!("term {}: e{} has the wrong kind", t.mask, f.edge));
            }
        }
        Ok(())
    }

    /// Substitute integer values for `ε`, `ε′` in every argument.
    pub fn specialize(&self, eps: i64, eps_prime: i64) -> StateSum {
        self.specialize_partial(Some(eps), Some(eps_prime))
    }

    /// Substitute whichever of `ε`, `ε′` is given; the other stays symbolic.
    pub fn specialize_partial(&self, eps: Option<i64>, eps_prime: Option<i64>) -> StateSum {
        StateSum {
            vertex_count: self.vertex_count,
            ordering: self.ordering.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mask: t.mask,
                    q_power: t.q_power,
                    factors: t
                        .factors
                        .iter()
                        .map(|f| Factor {
                            edge: f.edge,
                            kind: f.kind,
                            arg: f.arg.specialize_partial(eps, eps_prime),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Equality as polynomials in commuting `α(·)`, `β(·)`, `q`: ignores the
    /// processing order and the order of factors within a term.
    pub fn same_polynomial(&self, other: &StateSum) -> bool {
        fn key(s: &StateSum) -> Vec<(SubgraphMask, u32, Vec<&Factor>)> {
            let mut k: Vec<_> = s
                .terms
                .iter()
                .map(|t| (t.mask, t.q_power, t.commutative_factors()))
                .collect();
            k.sort_by_key(|(m, _, _)| *m);
            k
        }
        self.vertex_count == other.vertex_count
            && self.ordering.mask() == other.ordering.mask()
            && key(self) == key(other)
    }

    /// Product of state sums on disjoint edge sets, expressed in `ordering`,
    /// which must induce each factor's own ordering.
    pub fn product(&self, other: &StateSum, ordering: &EdgeOrdering) -> Result<StateSum, SymbolicError> {
        let (ma, mb) = (self.ordering.mask(), other.ordering.mask());
        if !ma.intersect(mb).is_empty() {
            return Err(SymbolicError::Malformed(
                "product of state sums sharing edges".into(),
            ));
        }
        if ordering.mask() != ma.union(mb)
            || ordering.induced(ma) != self.ordering
            || ordering.induced(mb) != other.ordering
        {
            return Err(SymbolicError::Malformed(
                "ordering does not induce the factors' orderings".into(),
            ));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Term {
                    mask: a.mask.union(b.mask),
                    q_power: a.q_power + b.q_power,
                    factors,
                });
            }
        }
        StateSum {
            vertex_count: self.vertex_count + other.vertex_count,
            ordering: ordering.clone(),
            terms,
        }
        .normalize()
    }

    /// Multiply by `q^delta`; `delta` may be negative as long as every
    /// exponent stays non-negative.
    pub fn shift_q(&self, delta: i64) -> Result<StateSum, SymbolicError> {
        let mut out = self.clone();
        for t in &mut out.terms {
            let p = t.q_power as i64 + delta;
            if p < 0 {
                return Err(SymbolicError::Malformed(format!(
                    "negative q exponent in term {}",
                    t.mask
                )));
            }
            t.q_power = p as u32;
        }
        Ok(out)
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&format!("{:<14} {t}\n", t.mask.to_string()));
        }
        out
    }
}
