//! Specialisations of the ordering-dependent polynomial: the random-cluster
//! (Fortuin–Kasteleyn) limit, the integrated-GBM moment functions `s_n` on the
//! chain graph, the constant-weight `ε = ε′ = 1` deformation, and the
//! disjoint-union / one-point-join factorisation checks.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::error::{ReductionError, SymbolicError};
use crate::graph::{EdgeId, EdgeOrdering, Multigraph, SubgraphMask};
use crate::scalar::{narrow, wide, Scalar, Wide};
use crate::symbolic::{evaluate, FactorKind, FkWeights, GbmWeights, StateSum};
use crate::Backend;

/// Random-cluster instance: edge probabilities `p_e` and cluster weight `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct FkInstance {
    pub graph: Multigraph,
    pub p: BTreeMap<EdgeId, BigRational>,
    pub q: BigRational,
}

impl FkInstance {
    pub fn new(
        graph: Multigraph,
        p: BTreeMap<EdgeId, BigRational>,
        q: BigRational,
    ) -> Result<Self, ReductionError> {
        for id in graph.edge_ids() {
            match p.get(&id) {
                None => return Err(ReductionError::Invalid(format!("no p for e{id}"))),
                Some(v) if v < &BigRational::zero() || v > &BigRational::one() => {
                    return Err(ReductionError::Invalid(format!("p_e{id} = {v} outside [0, 1]")))
                }
                _ => {}
            }
        }
        Ok(FkInstance { graph, p, q })
    }
}

/// Direct random-cluster sum `Σ_A q^{k(A)} Π_{e∈A} p_e Π_{e∉A} (1 - p_e)`.
///
/// Has its own subset walk and component count; shares no code with either
/// backend.
pub fn fk_oracle(inst: &FkInstance) -> BigRational {
    let edges: Vec<(EdgeId, usize, usize)> =
        inst.graph.edges().iter().map(|e| (e.id, e.u, e.v)).collect();
    let nv = inst.graph.vertex_count();
    let mut total = BigRational::zero();
    for sel in 0u64..(1u64 << edges.len()) {
        let mut adj = vec![Vec::new(); nv];
        let mut weight = BigRational::one();
        for (i, &(id, u, v)) in edges.iter().enumerate() {
            let p = &inst.p[&id];
            if sel >> i & 1 == 1 {
                adj[u].push(v);
                adj[v].push(u);
                weight *= p;
            } else {
                weight *= BigRational::one() - p;
            }
        }
        let mut seen = vec![false; nv];
        let mut clusters = 0usize;
        for start in 0..nv {
            if seen[start] {
                continue;
            }
            clusters += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        total += weight * num_traits::pow(inst.q.clone(), clusters);
    }
    total
}

/// `P^{0,0}` with `α(x) = x`, `β(x) = 1 - x`, `λ_e = p_e`, along `order`.
pub fn fk_via_generalized_ordered(
    inst: &FkInstance,
    backend: Backend,
    order: &EdgeOrdering,
) -> Result<BigRational, ReductionError> {
    let sum = backend.state_sum(&inst.graph, order)?;
    let zero = BigRational::zero();
    Ok(evaluate(&sum, &inst.q, &zero, &zero, &inst.p, &FkWeights)?)
}

/// [`fk_via_generalized_ordered`] along the graph's own edge order.
pub fn fk_via_generalized(inst: &FkInstance, backend: Backend) -> Result<BigRational, ReductionError> {
    fk_via_generalized_ordered(inst, backend, &EdgeOrdering::of_graph(&inst.graph))
}

/// Memory parameters reproducing the `s_k` recurrence: the shift must ride
/// on the deletion (β) branch, which in the contraction-`ε` convention means
/// `ε = 0`, `ε′ = 1`.
pub const CHAIN_EPS: i64 = 0;
pub const CHAIN_EPS_PRIME: i64 = 1;

/// Chain `C_n` with weights `λ_1..λ_n`, `λ_n` on the free end.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainInstance {
    lambdas: Vec<f64>,
}

impl ChainInstance {
    pub fn new(lambdas: Vec<f64>) -> Result<Self, ReductionError> {
        if let Some(i) = lambdas.iter().position(|&l| l == 0.0 || !l.is_finite()) {
            return Err(ReductionError::Singular(format!(
                "λ{} = {} (α, β are singular at 0)",
                i + 1,
                lambdas[i]
            )));
        }
        Ok(ChainInstance { lambdas })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Vertices `0..=n`, edge `e_i = (i-1, i)`.
    pub fn graph(&self) -> Multigraph {
        let n = self.lambdas.len();
        Multigraph::new(n + 1, (1..=n).map(|i| (i as EdgeId, i - 1, i)))
            .expect("chain is well formed")
    }

    /// `(e_n, e_{n-1}, …, e_1)`: the free-end edge goes first, so deleting it
    /// pushes `λ_n` onto `λ_{n-1}`.
    pub fn ordering(&self) -> EdgeOrdering {
        EdgeOrdering::new((1..=self.lambdas.len() as EdgeId).rev().collect())
            .expect("chain ordering is a permutation")
    }

    fn wide_weights(&self) -> BTreeMap<EdgeId, Wide> {
        self.lambdas
            .iter()
            .enumerate()
            .map(|(i, &l)| (i as EdgeId + 1, wide(l)))
            .collect()
    }

    #[cfg(test)]
    fn weights(&self) -> BTreeMap<EdgeId, f64> {
        self.lambdas
            .iter()
            .enumerate()
            .map(|(i, &l)| (i as EdgeId + 1, l))
            .collect()
    }
}

/// `s_n(λ_1..λ_n)` from the chain state sum with `q = 1`,
/// `α(x) = e^x/x`, `β(x) = -1/x`, evaluated at [`crate::scalar::WIDE_BITS`] bits.
/// With mixed-sign weights the `2^n` terms cancel heavily, so an `f64` sum
/// would lose most of its digits.
pub fn s_n_wide_with(inst: &ChainInstance, backend: Backend) -> Result<Wide, ReductionError> {
    let sum = backend.state_sum(&inst.graph(), &inst.ordering())?;
    Ok(evaluate(
        &sum,
        &Wide::one(),
        &Wide::from_i64(CHAIN_EPS),
        &Wide::from_i64(CHAIN_EPS_PRIME),
        &inst.wide_weights(),
        &GbmWeights,
    )?)
}

/// [`s_n_wide_with`] rounded to the nearest `f64`.
pub fn s_n_with(inst: &ChainInstance, backend: Backend) -> Result<f64, ReductionError> {
    Ok(narrow(&s_n_wide_with(inst, backend)?))
}

pub fn s_n_via_generalized(inst: &ChainInstance) -> Result<f64, ReductionError> {
    s_n_with(inst, Backend::Recursive)
}

/// Relative residual of
/// `s_k = e^{λ_k}/λ_k · s_{k-1}(λ_1..λ_{k-1}) − 1/λ_k · s_{k-1}(λ_1..λ_{k-2}, λ_{k-1}+λ_k)`
/// with `k = n`. Every `s` value comes from the engine (`s_0 = 1` is the
/// edgeless chain); the combination is formed at wide precision. The merged
/// weight `λ_{k-1}+λ_k` is rounded to `f64` like any other input.
pub fn s_recurrence_residual(inst: &ChainInstance) -> Result<f64, ReductionError> {
    let l = inst.lambdas();
    let n = l.len();
    if n == 0 {
        return Err(ReductionError::Invalid("recurrence needs k >= 1".into()));
    }
    let s = |c: &ChainInstance| s_n_wide_with(c, Backend::Recursive);
    let lhs = s(inst)?;
    let kept = ChainInstance::new(l[..n - 1].to_vec())?;
    let merged = if n == 1 {
        kept.clone()
    } else {
        let mut m = l[..n - 1].to_vec();
        m[n - 2] += l[n - 1];
        ChainInstance::new(m)?
    };
    let last = wide(l[n - 1]);
    let rhs = last.exp() / &last * s(&kept)? - s(&merged)? / &last;
    let diff = lhs.clone() - rhs;
    Ok(if lhs.is_zero() {
        narrow(&diff).abs()
    } else {
        narrow(&(diff / lhs)).abs()
    })
}

pub fn s_recurrence_check(inst: &ChainInstance, tol: f64) -> Result<bool, ReductionError> {
    Ok(s_recurrence_residual(inst)? <= tol)
}

/// One term of the `ε = ε′ = 1`, `λ_j = λ` specialisation: each factor's
/// argument becomes `c · λ` for an integer `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantTerm {
    pub mask: SubgraphMask,
    pub q_power: u32,
    /// `(edge, kind, c)` in processing order.
    pub multipliers: Vec<(EdgeId, FactorKind, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantWeightReport {
    pub terms: Vec<ConstantTerm>,
    /// Per edge: its multiplier as an `α` argument when that is the same in
    /// every subgraph containing the edge, `None` otherwise.
    pub alpha_multipliers: BTreeMap<EdgeId, Option<i64>>,
    /// `c^B_e` independent of `B` for the `α` factors, i.e. the `β = 1`
    /// polynomial is a multivariate Tutte polynomial in relabelled weights.
    pub collapses: bool,
    /// Independence holds for `β` factors too.
    pub all_factors_independent: bool,
}

impl ConstantWeightReport {
    /// The `β = 1` polynomial `Σ_B q^{k(B)} Π_{e∈B} α(c^B_e λ)`, collected as
    /// `(q power, sorted α multipliers) → coefficient`.
    pub fn beta_one_polynomial(&self) -> BTreeMap<(u32, Vec<i64>), u64> {
        let mut out = BTreeMap::new();
        for t in &self.terms {
            let mut cs: Vec<i64> = t
                .multipliers
                .iter()
                .filter(|(_, k, _)| *k == FactorKind::Alpha)
                .map(|&(_, _, c)| c)
                .collect();
            cs.sort_unstable();
            *out.entry((t.q_power, cs)).or_insert(0) += 1;
        }
        out
    }
}

pub fn constant_weight_specialization(sum: &StateSum) -> ConstantWeightReport {
    let terms: Vec<ConstantTerm> = sum
        .terms()
        .iter()
        .map(|t| ConstantTerm {
            mask: t.mask,
            q_power: t.q_power,
            multipliers: t
                .factors
                .iter()
                .map(|f| (f.edge, f.kind, f.arg.substitute(1, 1).values().sum()))
                .collect(),
        })
        .collect();
    let mut alpha_seen: BTreeMap<EdgeId, BTreeSet<i64>> = BTreeMap::new();
    let mut all_seen: BTreeMap<EdgeId, BTreeSet<i64>> = BTreeMap::new();
    for t in &terms {
        for &(e, kind, c) in &t.multipliers {
            all_seen.entry(e).or_default().insert(c);
            if kind == FactorKind::Alpha {
                alpha_seen.entry(e).or_default().insert(c);
            }
        }
    }
    let alpha_multipliers: BTreeMap<EdgeId, Option<i64>> = sum
        .ordering()
        .ids()
        .iter()
        .map(|&e| {
            let set = alpha_seen.get(&e);
            let single = set.filter(|s| s.len() == 1).and_then(|s| s.first().copied());
            (e, single)
        })
        .collect();
    ConstantWeightReport {
        collapses: alpha_multipliers.values().all(Option::is_some),
        all_factors_independent: all_seen.values().all(|s| s.len() == 1),
        alpha_multipliers,
        terms,
    }
}

/// Evaluate the constant-weight specialisation numerically with `β = 1`.
pub fn constant_weight_value<S: Scalar>(
    report: &ConstantWeightReport,
    q: &S,
    lambda: &S,
    alpha: impl Fn(&S) -> S,
) -> S {
    report.terms.iter().fold(S::zero(), |acc, t| {
        let mut v = q.powu(t.q_power);
        for &(_, kind, c) in &t.multipliers {
            if kind == FactorKind::Alpha {
                v = v * alpha(&(S::from_i64(c) * lambda.clone()));
            }
        }
        acc + v
    })
}

/// Compares `P(G; σ)` with the product of its connected pieces' polynomials
/// taken along the induced orderings. Returns the two sides.
pub fn disjoint_union_sides(
    g: &Multigraph,
    order: &EdgeOrdering,
    backend: Backend,
) -> Result<(StateSum, StateSum), SymbolicError> {
    let whole = backend.state_sum(g, order)?;
    let empty = EdgeOrdering::new(Vec::new())?;
    let mut product: Option<StateSum> = None;
    let mut covered = SubgraphMask::empty();
    for (piece, _) in g.components() {
        let induced = order.induced(piece.edge_mask());
        let part = backend.state_sum(&piece, &induced)?;
        covered = covered.union(piece.edge_mask());
        product = Some(match product {
            None => part,
            Some(acc) => {
                let joint = order.induced(covered);
                acc.product(&part, &joint)?
            }
        });
    }
    let product = match product {
        Some(p) => p,
        None => backend.state_sum(&Multigraph::edgeless(0), &empty)?,
    };
    Ok((whole, product))
}

/// Identify vertex `v2` of `g2` with vertex `v1` of `g1`. Edge ids must be
/// disjoint; `g2`'s remaining vertices are placed after `g1`'s.
pub fn one_point_join(
    g1: &Multigraph,
    v1: usize,
    g2: &Multigraph,
    v2: usize,
) -> Result<Multigraph, ReductionError> {
    if v1 >= g1.vertex_count() || v2 >= g2.vertex_count() {
        return Err(ReductionError::Invalid("join vertex out of range".into()));
    }
    let base = g1.vertex_count();
    let place = |w: usize| match w {
        w if w == v2 => v1,
        w if w < v2 => base + w,
        w => base + w - 1,
    };
    Ok(Multigraph::new(
        base + g2.vertex_count() - 1,
        g1.edges()
            .iter()
            .map(|e| (e.id, e.u, e.v))
            .chain(g2.edges().iter().map(|e| (e.id, place(e.u), place(e.v)))),
    )?)
}

/// Outcome of comparing a one-point join with the product of its parts
/// divided by `q` (the rule the ordinary random-cluster sum obeys).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinComparison {
    pub symbolic_equal: bool,
    pub equal_at_zero_memory: bool,
}

pub fn one_point_join_check(
    (g1, o1, v1): (&Multigraph, &EdgeOrdering, usize),
    (g2, o2, v2): (&Multigraph, &EdgeOrdering, usize),
    backend: Backend,
) -> Result<JoinComparison, ReductionError> {
    let joined = one_point_join(g1, v1, g2, v2)?;
    let order = EdgeOrdering::new(o1.ids().iter().chain(o2.ids()).copied().collect())?;
    let whole = backend.state_sum(&joined, &order)?;
    let p1 = backend.state_sum(g1, o1)?;
    let p2 = backend.state_sum(g2, o2)?;
    let product = p1.product(&p2, &order)?.shift_q(-1)?;
    // The product keeps g1 and g2's separate vertex counts; only terms matter.
    let product = StateSum::new(whole.vertex_count(), order, product.terms().to_vec());
    Ok(JoinComparison {
        symbolic_equal: whole.same_polynomial(&product),
        equal_at_zero_memory: whole.specialize(0, 0).same_polynomial(&product.specialize(0, 0)),
    })
}

/// Looks for two orderings whose `ε = ε′ = 0` state sums differ. `None`
/// means every ordering gives the same polynomial.
pub fn ordering_invariance_counterexample(
    g: &Multigraph,
    backend: Backend,
) -> Result<Option<(EdgeOrdering, EdgeOrdering)>, SymbolicError> {
    let reference_order = EdgeOrdering::of_graph(g);
    let reference = backend.state_sum(g, &reference_order)?.specialize(0, 0);
    for order in EdgeOrdering::all_of(g) {
        let s = backend.state_sum(g, &order)?.specialize(0, 0);
        if !s.same_polynomial(&reference) {
            return Ok(Some((reference_order, order)));
        }
    }
    Ok(None)
}
