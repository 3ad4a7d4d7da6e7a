use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use ordtutte::closed_form::{adjacency_sequence, coefficient_c, lemma_ckl_check};
use ordtutte::gbm::{moment_vs_s_n, GbmParams, MomentReport};
use ordtutte::reductions::{
    disjoint_union_sides, fk_oracle, fk_via_generalized_ordered, ordering_invariance_counterexample,
    FkInstance,
};
use ordtutte::scalar::{narrow, ratio, wide, Scalar, Wide};
use ordtutte::symbolic::{evaluate, WeightModel};
use ordtutte::{json, Backend, EdgeId, EdgeOrdering, ReductionError, StateSum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{
    Cli, Command, ComputeArgs, EpsArg, GbmArgs, OutputArg, Suite, VerifyArgs, WeightArg,
};
use crate::error::CliError;
use crate::graph_file::GraphFile;

/// Exhaustive ordering checks cost `n! · 2^n` terms.
const MAX_ORDERING_EDGES: usize = 8;
/// Above this the `backends` suite checks only the file's ordering.
const ALL_ORDERINGS_UP_TO: usize = 6;

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Gbm(a) => gbm(a),
    }
}

pub fn load(path: &Path) -> Result<GraphFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    text.parse().map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn guard(edges: usize, max_edges: usize) -> Result<(), CliError> {
    if edges <= max_edges {
        return Ok(());
    }
    let terms = 1u128 << edges;
    let factors = terms * edges as u128;
    // Each factor renders to a few dozen bytes once arguments fill in.
    let mut size = (factors * 48) as f64;
    let mut unit = 0;
    while size >= 1024.0 && unit < 4 {
        size /= 1024.0;
        unit += 1;
    }
    let unit = ["B", "KiB", "MiB", "GiB", "TiB"][unit];
    Err(CliError::Input(format!(
        "refusing to expand {edges} edges (limit {max_edges}): {terms} terms, {factors} factors, \
         about {size:.1} {unit} of JSON; raise --max-edges to proceed"
    )))
}

fn symbolic_eps(arg: &EpsArg, flag: &str) -> Result<Option<i64>, CliError> {
    match arg {
        EpsArg::Symbolic => Ok(None),
        EpsArg::Value(v) if v.is_integer() => v.to_integer().to_i64().map(Some).ok_or_else(|| {
            CliError::Input(format!("{flag} {v} is too large"))
        }),
        EpsArg::Value(v) => Err(CliError::Input(format!(
            "{flag} {v}: symbolic expansion takes integers only; \
             evaluate with --alpha/--beta for rational values"
        ))),
    }
}

fn numeric_eps(arg: &EpsArg, flag: &str) -> Result<BigRational, CliError> {
    match arg {
        EpsArg::Value(v) => Ok(v.clone()),
        EpsArg::Symbolic => Err(CliError::Input(format!(
            "numeric evaluation needs a value for {flag}"
        ))),
    }
}

fn compute(a: &ComputeArgs) -> Result<String, CliError> {
    let file = load(&a.file)?;
    guard(file.graph.edge_count(), a.guard.max_edges)?;
    let backend = Backend::from(a.backend);
    let sum = backend.state_sum(&file.graph, &file.ordering)?;
    match (a.alpha, a.beta, &a.q) {
        (Some(alpha), Some(beta), Some(q)) => numeric(a, &file, &sum, Menu { alpha, beta }, q),
        _ => {
            let eps = symbolic_eps(&a.eps, "--eps")?;
            let eps_prime = symbolic_eps(&a.eps_prime, "--eps-prime")?;
            let sum = sum.specialize_partial(eps, eps_prime);
            Ok(match a.output {
                OutputArg::Json => json::render(&sum)? + "\n",
                OutputArg::Pretty => sum.pretty(),
            })
        }
    }
}

/// The fixed weight menu.
#[derive(Debug, Clone, Copy)]
struct Menu {
    alpha: WeightArg,
    beta: WeightArg,
}

impl Menu {
    fn needs_float(self) -> bool {
        self.alpha == WeightArg::Gbm || self.beta == WeightArg::Gbm
    }

    fn algebraic<S: Scalar>(choice: WeightArg, is_alpha: bool, x: &S) -> S {
        match (choice, is_alpha) {
            (WeightArg::Fk, true) => x.clone(),
            (WeightArg::Fk, false) => S::one() - x.clone(),
            (WeightArg::Unit, _) => S::one(),
            (WeightArg::Gbm, _) => unreachable!("gbm weights are evaluated in floating point"),
        }
    }
}

impl WeightModel<BigRational> for Menu {
    fn alpha(&self, x: &BigRational) -> Option<BigRational> {
        Some(Menu::algebraic(self.alpha, true, x))
    }

    fn beta(&self, x: &BigRational) -> Option<BigRational> {
        Some(Menu::algebraic(self.beta, false, x))
    }
}

impl WeightModel<Wide> for Menu {
    fn alpha(&self, x: &Wide) -> Option<Wide> {
        match self.alpha {
            WeightArg::Gbm => (!x.is_zero()).then(|| x.exp() / x),
            other => Some(Menu::algebraic(other, true, x)),
        }
    }

    fn beta(&self, x: &Wide) -> Option<Wide> {
        match self.beta {
            WeightArg::Gbm => (!x.is_zero()).then(|| -(Wide::ONE / x)),
            other => Some(Menu::algebraic(other, false, x)),
        }
    }
}

#[derive(Serialize)]
struct Value<T> {
    value: T,
}

fn rational_text(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn to_wide(v: &BigRational) -> Wide {
    wide(v.to_f64().unwrap_or(f64::NAN))
}

fn numeric(
    a: &ComputeArgs,
    file: &GraphFile,
    sum: &StateSum,
    menu: Menu,
    q: &BigRational,
) -> Result<String, CliError> {
    let lambdas = file.numeric_lambdas().map_err(|id| {
        CliError::Input(format!("e{id} has no weight; numeric evaluation needs one on every edge"))
    })?;
    let eps = numeric_eps(&a.eps, "--eps")?;
    let eps_prime = numeric_eps(&a.eps_prime, "--eps-prime")?;
    if menu.needs_float() {
        let lambdas: BTreeMap<EdgeId, Wide> = lambdas.iter().map(|(&id, l)| (id, to_wide(l))).collect();
        let v = evaluate(sum, &to_wide(q), &to_wide(&eps), &to_wide(&eps_prime), &lambdas, &menu)?;
        let v = narrow(&v);
        Ok(match a.output {
            OutputArg::Json => serde_json::to_string(&Value { value: v })? + "\n",
            OutputArg::Pretty => format!("{v}\n"),
        })
    } else {
        let v = evaluate(sum, q, &eps, &eps_prime, &lambdas, &menu)?;
        let text = rational_text(&v);
        Ok(match a.output {
            OutputArg::Json => serde_json::to_string(&Value { value: text })? + "\n",
            OutputArg::Pretty => format!("{text}\n"),
        })
    }
}

fn ids(order: &EdgeOrdering) -> String {
    order.ids().iter().map(|id| format!("e{id}")).collect::<Vec<_>>().join(" ")
}

/// First term where two state sums over the same edges disagree.
fn first_difference(a: &StateSum, b: &StateSum) -> String {
    for t in a.terms() {
        let other = b.term(t.mask);
        if other != Some(t) {
            let shown = other.map_or_else(|| "missing".to_string(), |o| o.to_string());
            return format!("subgraph {}\n  first:  {t}\n  second: {shown}\n", t.mask);
        }
    }
    "term lists differ in length or ordering\n".to_string()
}

fn verify(a: &VerifyArgs) -> Result<String, CliError> {
    let file = load(&a.file)?;
    let n = file.graph.edge_count();
    guard(n, a.guard.max_edges)?;
    let (g, order) = (&file.graph, &file.ordering);
    let mut out = String::new();
    let failed = match a.suite {
        Suite::Backends => {
            let orders: Vec<EdgeOrdering> = if n <= ALL_ORDERINGS_UP_TO {
                EdgeOrdering::all_of(g).collect()
            } else {
                vec![order.clone()]
            };
            let mut failure = None;
            for o in &orders {
                let r = Backend::Recursive.state_sum(g, o)?;
                let c = Backend::Closed.state_sum(g, o)?;
                if r != c {
                    failure = Some(format!("ordering {}\n{}", ids(o), first_difference(&r, &c)));
                    break;
                }
            }
            match failure {
                Some(dump) => Some(dump),
                None => {
                    writeln!(out, "PASS backends: {} ordering(s), {} terms each", orders.len(), 1u64 << n)?;
                    None
                }
            }
        }
        Suite::Lemma => {
            let mut failure = None;
            let mut checked = 0usize;
            'outer: for mask in g.edge_mask().subsets() {
                for k in 2..=n {
                    if !lemma_ckl_check(g, order, mask, k)? {
                        let adj = adjacency_sequence(g, order, mask)?;
                        failure = Some(format!(
                            "subgraph {mask}, k = {k}: C_k1 = {}\n",
                            coefficient_c(k, 1, &adj)?
                        ));
                        break 'outer;
                    }
                    checked += 1;
                }
            }
            if failure.is_none() {
                writeln!(out, "PASS lemma: {checked} (subgraph, k) pairs")?;
            }
            failure
        }
        Suite::Fk => {
            let p = fk_probabilities(&file, a.seed);
            let inst = FkInstance::new(g.clone(), p.clone(), a.q.clone())?;
            let want = fk_oracle(&inst);
            let mut failure = None;
            for b in Backend::ALL {
                let got = fk_via_generalized_ordered(&inst, b, order)?;
                if got != want {
                    let ps: Vec<String> =
                        p.iter().map(|(id, v)| format!("p{id}={}", rational_text(v))).collect();
                    failure = Some(format!(
                        "{} backend: {} but direct sum {} ({}, q={})\n",
                        b.name(),
                        rational_text(&got),
                        rational_text(&want),
                        ps.join(" "),
                        rational_text(&a.q)
                    ));
                    break;
                }
            }
            if failure.is_none() {
                writeln!(out, "PASS fk: value {} from both backends", rational_text(&want))?;
            }
            failure
        }
        Suite::Orderings => {
            if n > MAX_ORDERING_EDGES {
                return Err(CliError::Input(format!(
                    "orderings suite enumerates n! orderings; {n} edges exceeds {MAX_ORDERING_EDGES}"
                )));
            }
            let mut failure = None;
            for b in Backend::ALL {
                if let Some((x, y)) = ordering_invariance_counterexample(g, b)? {
                    let sx = b.state_sum(g, &x)?.specialize(0, 0);
                    let sy = b.state_sum(g, &y)?.specialize(0, 0);
                    failure = Some(format!(
                        "{} backend at zero memory:\n  ordering {}\n  ordering {}\n{}",
                        b.name(),
                        ids(&x),
                        ids(&y),
                        first_difference(&sx, &sy)
                    ));
                    break;
                }
            }
            if failure.is_none() {
                let count: u64 = (1..=n as u64).product();
                writeln!(out, "PASS orderings: {count} ordering(s) agree at zero memory")?;
            }
            failure
        }
        Suite::Factorization => {
            let pieces = g.components().len();
            let mut failure = None;
            for b in Backend::ALL {
                let (whole, product) = disjoint_union_sides(g, order, b)?;
                if whole != product {
                    failure = Some(format!(
                        "{} backend, {pieces} components\n{}",
                        b.name(),
                        first_difference(&whole, &product)
                    ));
                    break;
                }
            }
            if failure.is_none() {
                writeln!(out, "PASS factorization: {pieces} component(s), product matches")?;
            }
            failure
        }
    };
    match failed {
        None => Ok(out),
        Some(dump) => Err(CliError::Failed(format!("FAIL {}\n{dump}", a.suite.name()))),
    }
}

/// File weights when they are all probabilities, else seeded draws.
fn fk_probabilities(file: &GraphFile, seed: u64) -> BTreeMap<EdgeId, BigRational> {
    if let Ok(p) = file.numeric_lambdas() {
        let (zero, one) = (ratio(0, 1), ratio(1, 1));
        if p.values().all(|v| *v >= zero && *v <= one) {
            return p;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    file.graph
        .edge_ids()
        .map(|id| {
            let den = rng.random_range(1..=7);
            (id, ratio(rng.random_range(0..=den), den))
        })
        .collect()
}

#[derive(Serialize)]
struct GbmOutput<'a> {
    params: &'a GbmParams,
    #[serde(flatten)]
    report: &'a MomentReport,
}

fn gbm(a: &GbmArgs) -> Result<String, CliError> {
    let params = GbmParams {
        mu: a.mu,
        sigma: a.sigma,
        t: a.t,
        steps: a.steps,
        paths: a.paths,
        seed: a.seed,
    };
    let report = moment_vs_s_n(&params, a.n).map_err(|e| match e {
        ReductionError::Singular(why) => CliError::Input(format!("singular input: {why}")),
        other => CliError::from(other),
    })?;
    Ok(serde_json::to_string(&GbmOutput { params: &params, report: &report })? + "\n")
}
