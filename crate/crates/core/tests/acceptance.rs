//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use ordtutte::closed_form::lemma_ckl_check;
use ordtutte::gbm::{moment_vs_s_n, GbmParams, DEFAULT_SEED};
use ordtutte::reductions::{
    constant_weight_specialization, fk_oracle, fk_via_generalized_ordered,
    one_point_join_check, s_recurrence_residual, ChainInstance, FkInstance,
};
use ordtutte::scalar::ratio;
use ordtutte::{
    Backend, EdgeOrdering, Factor, FactorKind, LinForm, Multigraph, Poly2, StateSum, SubgraphMask,
};
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn both(g: &Multigraph, o: &EdgeOrdering) -> Result<(StateSum, StateSum), String> {
    let r = Backend::Recursive.state_sum(g, o).map_err(|e| e.to_string())?;
    let c = Backend::Closed.state_sum(g, o).map_err(|e| e.to_string())?;
    Ok((r, c))
}

/// Connected corpus with at most four edges plus 200 random 5 to 7 edge
/// graphs, each paired with the orderings to test.
fn equivalence_corpus() -> Vec<(Multigraph, Vec<EdgeOrdering>)> {
    let mut out: Vec<(Multigraph, Vec<EdgeOrdering>)> = connected_corpus(4)
        .into_iter()
        .map(|g| {
            let orders = EdgeOrdering::all_of(&g).collect();
            (g, orders)
        })
        .collect();
    let mut rng = rng(0x5eed_0002);
    for _ in 0..200 {
        let m = rng.random_range(5..=7);
        let v = rng.random_range(1..=6);
        let g = random_graph(&mut rng, v, m, 1);
        let o = random_ordering(&mut rng, &g);
        out.push((g, vec![o]));
    }
    out
}

fn lin(terms: &[(u32, Poly2)]) -> LinForm {
    LinForm::from_terms(terms.iter().cloned())
}

fn golden() -> Outcome {
    let start = Instant::now();
    let (g, o) = triangle_and_pair();
    let e = Poly2::eps();
    let ep = Poly2::eps_prime();
    let one = Poly2::one();
    let alphas = vec![
        lin(&[(1, one.clone())]),
        lin(&[(2, one.clone())]),
        lin(&[(3, one.clone()), (1, e.clone())]),
        lin(&[(4, one.clone()), (2, e.clone())]),
        lin(&[(5, one.clone()), (3, e.clone()), (1, &e * &(&one + &e))]),
    ];
    let betas = vec![
        lin(&[(1, one.clone())]),
        lin(&[(2, one.clone())]),
        lin(&[(3, one.clone()), (1, ep.clone())]),
        lin(&[(4, one.clone()), (2, ep.clone())]),
        lin(&[(5, one.clone()), (3, ep.clone()), (1, &ep * &(&one + &ep))]),
    ];
    let factors = |kind: FactorKind, args: &[LinForm]| -> Vec<Factor> {
        args.iter()
            .enumerate()
            .map(|(i, a)| Factor { edge: i as u32 + 1, kind, arg: a.clone() })
            .collect()
    };
    let expected_full = factors(FactorKind::Alpha, &alphas);
    let expected_empty = factors(FactorKind::Beta, &betas);

    // β = 1 lists for the triangle and the double edge: (q power, α multipliers).
    let tri: Vec<(u32, Vec<i64>)> = vec![
        (1, vec![1, 2, 4]),
        (1, vec![2, 4]),
        (1, vec![1, 2]),
        (1, vec![1, 4]),
        (2, vec![4]),
        (2, vec![1]),
        (2, vec![2]),
        (3, vec![]),
    ];
    let pair: Vec<(u32, Vec<i64>)> = vec![(1, vec![1, 2]), (1, vec![2]), (1, vec![1]), (2, vec![])];
    let mut expected_product: BTreeMap<(u32, Vec<i64>), u64> = BTreeMap::new();
    for (q1, a) in &tri {
        for (q2, b) in &pair {
            let mut cs: Vec<i64> = a.iter().chain(b).copied().collect();
            cs.sort_unstable();
            *expected_product.entry((q1 + q2, cs)).or_insert(0) += 1;
        }
    }

    let (r, c) = both(&g, &o)?;
    ensure(r == c, || "backends disagree".into())?;
    for (name, sum) in [("recursive", &r), ("closed", &c)] {
        ensure(sum.terms().len() == 32, || format!("{name}: {} terms", sum.terms().len()))?;
        let full = sum.term(g.edge_mask()).ok_or("no full-mask term")?;
        ensure(full.q_power == 2 && full.factors == expected_full, || {
            format!("{name}: full-mask term mismatch: q^{} {:?}", full.q_power, full.factors)
        })?;
        let empty = sum.term(SubgraphMask::empty()).ok_or("no empty-mask term")?;
        ensure(empty.q_power == 5 && empty.factors == expected_empty, || {
            format!("{name}: empty-mask term mismatch: q^{} {:?}", empty.q_power, empty.factors)
        })?;
        let got = constant_weight_specialization(sum).beta_one_polynomial();
        ensure(got == expected_product, || {
            format!("{name}: constant-weight specialisation {got:?}")
        })?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("32 terms, full and empty terms exact, constant-weight product exact".into())
}

fn backends(corpus: &[(Multigraph, Vec<EdgeOrdering>)]) -> Outcome {
    let start = Instant::now();
    let loops = corpus.iter().any(|(g, _)| g.edges().iter().any(|e| e.is_loop()));
    let parallel = corpus.iter().any(|(g, _)| {
        g.edges().iter().enumerate().any(|(i, a)| {
            g.edges()[i + 1..]
                .iter()
                .any(|b| (a.u.min(a.v), a.u.max(a.v)) == (b.u.min(b.v), b.u.max(b.v)) && !a.is_loop())
        })
    });
    ensure(loops && parallel, || "corpus lacks a loop or a parallel pair".into())?;
    let mut checked = 0usize;
    for (g, orders) in corpus {
        for o in orders {
            let (r, c) = both(g, o)?;
            ensure(r == c, || format!("differ on {g:?} with {o:?}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} graphs, {checked} (graph, ordering) pairs", corpus.len()))
}

fn lemma(corpus: &[(Multigraph, Vec<EdgeOrdering>)]) -> Outcome {
    let mut checked = 0usize;
    for (g, orders) in corpus {
        for o in orders {
            for mask in g.edge_mask().subsets() {
                for k in 2..=o.len() {
                    let ok = lemma_ckl_check(g, o, mask, k).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("fails on {g:?}, {o:?}, B = {mask}, k = {k}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (B, k) instances"))
}

fn fk(corpus: &[(Multigraph, Vec<EdgeOrdering>)]) -> Outcome {
    let mut rng = rng(0x5eed_0004);
    for i in 0..100 {
        let (g, orders) = &corpus[rng.random_range(0..corpus.len())];
        let p: BTreeMap<u32, BigRational> =
            g.edge_ids().map(|id| (id, random_probability(&mut rng))).collect();
        let q = ratio(rng.random_range(1..=9), rng.random_range(1..=3));
        let inst = FkInstance::new(g.clone(), p, q).map_err(|e| e.to_string())?;
        let o = &orders[rng.random_range(0..orders.len())];
        let want = fk_oracle(&inst);
        for b in Backend::ALL {
            let got = fk_via_generalized_ordered(&inst, b, o).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("instance {i} ({}): {got} != {want}", b.name()))?;
        }
    }
    let mut graphs = 0usize;
    for g in connected_corpus(5) {
        let reference = Backend::Recursive
            .state_sum(&g, &EdgeOrdering::of_graph(&g))
            .map_err(|e| e.to_string())?
            .specialize(0, 0);
        for o in EdgeOrdering::all_of(&g) {
            let (r, c) = both(&g, &o)?;
            for s in [r, c] {
                ensure(s.specialize(0, 0).same_polynomial(&reference), || {
                    format!("zero-memory sum depends on ordering: {g:?}, {o:?}")
                })?;
            }
        }
        graphs += 1;
    }
    Ok(format!("100 exact instances; {graphs} graphs order-free at zero memory"))
}

fn witness() -> Outcome {
    let g = triangle();
    let a = EdgeOrdering::new(vec![1, 3, 5]).map_err(|e| e.to_string())?;
    let b = EdgeOrdering::new(vec![3, 1, 5]).map_err(|e| e.to_string())?;
    for backend in Backend::ALL {
        let sa = backend.state_sum(&g, &a).map_err(|e| e.to_string())?;
        let sb = backend.state_sum(&g, &b).map_err(|e| e.to_string())?;
        ensure(!sa.same_polynomial(&sb), || "orderings agree symbolically".into())?;
        ensure(sa.specialize(0, 0).same_polynomial(&sb.specialize(0, 0)), || {
            "orderings disagree at zero memory".into()
        })?;
    }
    Ok("(e1, e3, e5) and (e3, e1, e5) differ; agree at zero memory".into())
}

fn factorization() -> Outcome {
    let mut rng = rng(0x5eed_0006);
    for i in 0..50 {
        let m1 = rng.random_range(1..=4);
        let m2 = rng.random_range(1..=4);
        let v1 = rng.random_range(1..=4);
        let v2 = rng.random_range(1..=4);
        let g1 = random_graph(&mut rng, v1, m1, 1);
        let g2 = random_graph(&mut rng, v2, m2, 1 + m1 as u32);
        let g = g1.disjoint_union(&g2).map_err(|e| e.to_string())?;
        let o = random_ordering(&mut rng, &g);
        for b in Backend::ALL {
            let whole = b.state_sum(&g, &o).map_err(|e| e.to_string())?;
            let s1 = b.state_sum(&g1, &o.induced(g1.edge_mask())).map_err(|e| e.to_string())?;
            let s2 = b.state_sum(&g2, &o.induced(g2.edge_mask())).map_err(|e| e.to_string())?;
            let product = s1.product(&s2, &o).map_err(|e| e.to_string())?;
            ensure(whole == product, || format!("pair {i} ({}): {g1:?} + {g2:?} under {o:?}", b.name()))?;
        }
    }
    let g1 = Multigraph::new(2, [(1, 0, 1)]).map_err(|e| e.to_string())?;
    let g2 = Multigraph::new(2, [(2, 0, 1)]).map_err(|e| e.to_string())?;
    let o1 = EdgeOrdering::of_graph(&g1);
    let o2 = EdgeOrdering::of_graph(&g2);
    for b in Backend::ALL {
        let cmp = one_point_join_check((&g1, &o1, 1), (&g2, &o2, 0), b).map_err(|e| e.to_string())?;
        ensure(!cmp.symbolic_equal, || "path of two edges factorises symbolically".into())?;
        ensure(cmp.equal_at_zero_memory, || "join rule fails at zero memory".into())?;
    }
    Ok("50 disjoint pairs exact; two-edge path join strictly differs".into())
}

/// Any contiguous block sum of `λ` feeds an `α` or `β` argument somewhere in
/// the recurrence, so draws with a near-zero block are rejected.
fn nonsingular(l: &[f64]) -> bool {
    (0..l.len()).all(|i| (i..l.len()).all(|j| l[i..=j].iter().sum::<f64>().abs() >= 0.1))
}

fn recurrence() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(0x5eed_0007);
    let mut worst = 0.0f64;
    let mut rejected = 0usize;
    for n in 1..=8usize {
        let mut accepted = 0;
        while accepted < 100 {
            let l: Vec<f64> = (0..n)
                .map(|_| {
                    let mag = rng.random_range(0.1..=3.0);
                    if rng.random_bool(0.5) { mag } else { -mag }
                })
                .collect();
            if !nonsingular(&l) {
                rejected += 1;
                continue;
            }
            accepted += 1;
            let inst = ChainInstance::new(l.clone()).map_err(|e| e.to_string())?;
            let rel = s_recurrence_residual(&inst).map_err(|e| e.to_string())?;
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("λ = {l:?}: relative residual {rel:e}"))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("800 vectors, worst relative residual {worst:.1e}, {rejected} draws rejected"))
}

fn gbm() -> Outcome {
    let start = Instant::now();
    let p = GbmParams { mu: 0.05, sigma: 0.2, t: 1.0, steps: 2_000, paths: 100_000, seed: DEFAULT_SEED };
    let r1 = moment_vs_s_n(&p, 1).map_err(|e| e.to_string())?;
    let analytic = ((p.mu * p.t).exp() - 1.0) / p.mu;
    ensure((r1.formula_value - analytic).abs() <= 1e-12 * analytic, || {
        format!("t s_1(tμ) = {} but (e^μt - 1)/μ = {analytic}", r1.formula_value)
    })?;
    let z_analytic = (r1.mc_mean - analytic).abs() / r1.mc_stderr;
    ensure(r1.z_score < 3.0 && z_analytic < 3.0, || format!("n = 1: {r1:?}"))?;
    let r2 = moment_vs_s_n(&p, 2).map_err(|e| e.to_string())?;
    ensure(r2.z_score < 3.0, || format!("n = 2: {r2:?}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("z(n=1) = {:.2}, z(n=2) = {:.2}", r1.z_score, r2.z_score))
}

fn main() -> ExitCode {
    let corpus = equivalence_corpus();
    let checks: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("golden five-edge state sum", Box::new(golden)),
        ("backend equivalence", Box::new(|| backends(&corpus))),
        ("first-column coefficient identity", Box::new(|| lemma(&corpus))),
        ("random-cluster limit", Box::new(|| fk(&corpus))),
        ("ordering dependence witness", Box::new(witness)),
        ("factorisation", Box::new(factorization)),
        ("chain moment recurrence", Box::new(recurrence)),
        ("integrated GBM moments", Box::new(gbm)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {took:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
