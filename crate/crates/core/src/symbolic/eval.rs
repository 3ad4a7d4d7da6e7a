use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::EvalError;
use crate::graph::EdgeId;
use crate::scalar::{Scalar, Wide};
use crate::symbolic::{FactorKind, LinForm, StateSum};

/// The pair of edge functions `(α, β)`. `None` means undefined at `x`.
pub trait WeightModel<S>: Sync {
    fn alpha(&self, x: &S) -> Option<S>;
    fn beta(&self, x: &S) -> Option<S>;

    fn gamma(&self, kind: FactorKind, x: &S) -> Option<S> {
        match kind {
            FactorKind::Alpha => self.alpha(x),
            FactorKind::Beta => self.beta(x),
        }
    }
}

/// Random-cluster weights `α(x) = x`, `β(x) = 1 - x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FkWeights;

impl<S: Scalar> WeightModel<S> for FkWeights {
    fn alpha(&self, x: &S) -> Option<S> {
        Some(x.clone())
    }

    fn beta(&self, x: &S) -> Option<S> {
        Some(S::one() - x.clone())
    }
}

/// `α = β = 1`: the state sum collapses to `Σ_B q^{k(B)}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitWeights;

impl<S: Scalar> WeightModel<S> for UnitWeights {
    fn alpha(&self, _: &S) -> Option<S> {
        Some(S::one())
    }

    fn beta(&self, _: &S) -> Option<S> {
        Some(S::one())
    }
}

/// Moment-function weights `α(x) = e^x / x`, `β(x) = -1 / x`; singular at 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct GbmWeights;

impl WeightModel<f64> for GbmWeights {
    fn alpha(&self, x: &f64) -> Option<f64> {
        (*x != 0.0).then(|| x.exp() / x)
    }

    fn beta(&self, x: &f64) -> Option<f64> {
        (*x != 0.0).then(|| -1.0 / x)
    }
}

impl WeightModel<Wide> for GbmWeights {
    fn alpha(&self, x: &Wide) -> Option<Wide> {
        (!x.is_zero()).then(|| x.exp() / x)
    }

    fn beta(&self, x: &Wide) -> Option<Wide> {
        (!x.is_zero()).then(|| -(Wide::ONE / x))
    }
}

/// Weight model from a pair of closures.
pub struct FnWeights<A, B> {
    pub alpha: A,
    pub beta: B,
}

impl<S, A, B> WeightModel<S> for FnWeights<A, B>
where
    A: Fn(&S) -> Option<S> + Sync,
    B: Fn(&S) -> Option<S> + Sync,
{
    fn alpha(&self, x: &S) -> Option<S> {
        (self.alpha)(x)
    }

    fn beta(&self, x: &S) -> Option<S> {
        (self.beta)(x)
    }
}

/// `Σ_B q^{k(B)} Π γ_B(arg)` at numeric `q`, `ε`, `ε′` and edge weights.
///
/// Term values are computed independently and summed in term order, so the
/// floating-point result does not depend on the thread count.
pub fn evaluate<S, W>(
    sum: &StateSum,
    q: &S,
    eps: &S,
    eps_prime: &S,
    lambdas: &BTreeMap<EdgeId, S>,
    weights: &W,
) -> Result<S, EvalError>
where
    S: Scalar,
    W: WeightModel<S> + ?Sized,
{
    let sum = sum.normalize()?;
    // Distinct factors are evaluated once; chain-like sums repeat them heavily.
    let distinct: BTreeSet<(FactorKind, &LinForm)> = sum
        .terms()
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| (f.kind, &f.arg)))
        .collect();
    let distinct: Vec<(FactorKind, &LinForm)> = distinct.into_iter().collect();
    let computed: Vec<Result<Option<S>, EvalError>> = distinct
        .par_iter()
        .map(|&(kind, arg)| {
            let x = arg
                .eval(eps, eps_prime, |id| lambdas.get(&id).cloned())
                .map_err(EvalError::MissingWeight)?;
            Ok(weights.gamma(kind, &x))
        })
        .collect();
    let mut table: BTreeMap<(FactorKind, &LinForm), Option<S>> = BTreeMap::new();
    for (key, value) in distinct.into_iter().zip(computed) {
        table.insert(key, value?);
    }
    let values: Vec<Result<S, EvalError>> = sum
        .terms()
        .par_iter()
        .map(|term| {
            let mut acc = q.powu(term.q_power);
            for f in &term.factors {
                let g = table[&(f.kind, &f.arg)].clone().ok_or_else(|| {
                    let x = f
                        .arg
                        .eval(eps, eps_prime, |id| lambdas.get(&id).cloned())
                        .map(|x| x.to_string())
                        .unwrap_or_default();
                    EvalError::Undefined {
                        mask: term.mask,
                        edge: f.edge,
                        kind: f.kind.name(),
                        argument: format!("{} = {x}", f.arg),
                    }
                })?;
                acc = acc * g;
            }
            Ok(acc)
        })
        .collect();
    values
        .into_iter()
        .try_fold(S::zero(), |acc, v| Ok(acc + v?))
}
