//! Canonical JSON form of a [`StateSum`].
//!
//! Only integers and canonical polynomial strings appear, terms ascend by
//! subgraph mask and argument maps ascend by edge id, so the bytes are stable
//! across platforms and `render(parse(render(s))) == render(s)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::SymbolicError;
use crate::graph::{EdgeId, EdgeOrdering, SubgraphMask};
use crate::symbolic::{Factor, FactorKind, LinForm, Poly2, StateSum, Term};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSumDoc {
    pub n: usize,
    pub vertices: usize,
    pub ordering: Vec<EdgeId>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub subgraph: Vec<EdgeId>,
    pub q_power: u32,
    pub factors: Vec<FactorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub edge: EdgeId,
    pub kind: KindDoc,
    pub arg: BTreeMap<EdgeId, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Alpha,
    Beta,
}

impl From<FactorKind> for KindDoc {
    fn from(k: FactorKind) -> Self {
        match k {
            FactorKind::Alpha => KindDoc::Alpha,
            FactorKind::Beta => KindDoc::Beta,
        }
    }
}

impl From<KindDoc> for FactorKind {
    fn from(k: KindDoc) -> Self {
        match k {
            KindDoc::Alpha => FactorKind::Alpha,
            KindDoc::Beta => FactorKind::Beta,
        }
    }
}

impl StateSumDoc {
    pub fn from_state_sum(sum: &StateSum) -> Result<Self, SymbolicError> {
        let sum = sum.normalize()?;
        Ok(StateSumDoc {
            n: sum.edge_count(),
            vertices: sum.vertex_count(),
            ordering: sum.ordering().ids().to_vec(),
            terms: sum
                .terms()
                .iter()
                .map(|t| TermDoc {
                    subgraph: t.mask.ids().collect(),
                    q_power: t.q_power,
                    factors: t
                        .factors
                        .iter()
                        .map(|f| FactorDoc {
                            edge: f.edge,
                            kind: f.kind.into(),
                            arg: f.arg.terms().map(|(id, c)| (id, c.to_string())).collect(),
                        })
                        .collect(),
                })
                .collect(),
        })
    }

    pub fn to_state_sum(&self) -> Result<StateSum, SymbolicError> {
        let ordering = EdgeOrdering::new(self.ordering.clone())?;
        if ordering.len() != self.n {
            return Err(SymbolicError::Malformed(format!(
                "n = {} but ordering has {} edges",
                self.n,
                ordering.len()
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut factors = Vec::with_capacity(t.factors.len());
            for f in &t.factors {
                let mut arg = Vec::new();
                for (&id, text) in &f.arg {
                    arg.push((id, text.parse::<Poly2>()?));
                }
                factors.push(Factor {
                    edge: f.edge,
                    kind: f.kind.into(),
                    arg: LinForm::from_terms(arg),
                });
            }
            terms.push(Term {
                mask: SubgraphMask::from_ids(t.subgraph.iter().copied()),
                q_power: t.q_power,
                factors,
            });
        }
        StateSum::new(self.vertices, ordering, terms).normalize()
    }
}

/// Compact canonical JSON, no trailing newline.
pub fn render(sum: &StateSum) -> Result<String, SymbolicError> {
    let doc = StateSumDoc::from_state_sum(sum)?;
    Ok(serde_json::to_string(&doc).expect("state sum documents always serialize"))
}

pub fn parse(text: &str) -> Result<StateSum, SymbolicError> {
    let doc: StateSumDoc = serde_json::from_str(text)
        .map_err(|e| SymbolicError::Malformed(format!("json: {e}")))?;
    doc.to_state_sum()
}
