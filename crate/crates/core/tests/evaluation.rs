use std::collections::BTreeMap;

use num_rational::BigRational;
use ordtutte::reductions::{s_n_via_generalized, ChainInstance};
use ordtutte::scalar::{ratio, Scalar};
use ordtutte::symbolic::{evaluate, FkWeights, FnWeights, GbmWeights};
use ordtutte::{Backend, EdgeOrdering, EvalError, Multigraph};

fn single_edge() -> (Multigraph, EdgeOrdering) {
    let g = Multigraph::new(2, [(1, 0, 1)]).unwrap();
    let o = EdgeOrdering::of_graph(&g);
    (g, o)
}

#[test]
fn single_edge_random_cluster_value() {
    let (g, o) = single_edge();
    let s = Backend::Closed.state_sum(&g, &o).unwrap();
    let zero = ratio(0, 1);
    let v = evaluate(&s, &ratio(2, 1), &zero, &zero, &BTreeMap::from([(1, ratio(1, 3))]), &FkWeights)
        .unwrap();
    // q·(1/3) + q²·(2/3) at q = 2.
    assert_eq!(v, ratio(10, 3));
}

#[test]
fn double_edge_constant_weight_value() {
    // Two parallel edges, ε = ε′ = 1, α(x) = x, β = 1, λ = 1:
    // q[α(λ)α(2λ) + α(2λ) + α(λ) + q] = q(5 + q).
    let g = Multigraph::new(2, [(2, 0, 1), (4, 0, 1)]).unwrap();
    let o = EdgeOrdering::of_graph(&g);
    let s = Backend::Recursive.state_sum(&g, &o).unwrap();
    let weights = FnWeights {
        alpha: |x: &BigRational| Some(x.clone()),
        beta: |_: &BigRational| Some(BigRational::one()),
    };
    let one = ratio(1, 1);
    let lambdas = BTreeMap::from([(2, one.clone()), (4, one.clone())]);
    for q in 1..5 {
        let v = evaluate(&s, &ratio(q, 1), &one, &one, &lambdas, &weights).unwrap();
        assert_eq!(v, ratio(q * (5 + q), 1));
    }
}

#[test]
fn float_and_rational_evaluations_agree() {
    let g = Multigraph::new(3, [(1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 0, 0)]).unwrap();
    let o = EdgeOrdering::new(vec![3, 1, 4, 2]).unwrap();
    let s = Backend::Closed.state_sum(&g, &o).unwrap();
    let ratios = BTreeMap::from([(1, ratio(1, 5)), (2, ratio(2, 5)), (3, ratio(1, 2)), (4, ratio(3, 4))]);
    let floats: BTreeMap<u32, f64> = BTreeMap::from([(1, 0.2), (2, 0.4), (3, 0.5), (4, 0.75)]);
    let exact = evaluate(&s, &ratio(3, 2), &ratio(1, 3), &ratio(-1, 2), &ratios, &FkWeights).unwrap();
    let approx = evaluate(&s, &1.5, &(1.0 / 3.0), &-0.5, &floats, &FkWeights).unwrap();
    let exact_f = num_traits::ToPrimitive::to_f64(&exact).unwrap();
    assert!((exact_f - approx).abs() < 1e-12, "{exact_f} vs {approx}");
}

#[test]
fn missing_weight_is_reported() {
    let (g, o) = single_edge();
    let s = Backend::Closed.state_sum(&g, &o).unwrap();
    let err = evaluate(&s, &1.0, &0.0, &0.0, &BTreeMap::new(), &FkWeights).unwrap_err();
    assert!(matches!(err, EvalError::MissingWeight(1)), "{err}");
}

#[test]
fn singular_argument_names_the_term() {
    // Deleting e1 first shifts e2's argument to λ2 + λ1 = 0.
    let g = Multigraph::new(3, [(1, 0, 1), (2, 1, 2)]).unwrap();
    let o = EdgeOrdering::of_graph(&g);
    let s = Backend::Recursive.state_sum(&g, &o).unwrap();
    let lambdas = BTreeMap::from([(1, 1.0), (2, -1.0)]);
    let err = evaluate(&s, &1.0, &0.0, &1.0, &lambdas, &GbmWeights).unwrap_err();
    match &err {
        EvalError::Undefined { mask, edge, .. } => {
            assert!(mask.is_empty());
            assert_eq!(*edge, 2);
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn chain_moment_survives_cancellation() {
    // s_3 by the direct recurrence in f64 with well-separated weights.
    let l: [f64; 3] = [1.5, -0.7, 2.2];
    let s1 = |a: f64| (a.exp() - 1.0) / a;
    let s2 = |a: f64, b: f64| b.exp() / b * s1(a) - s1(a + b) / b;
    let want = l[2].exp() / l[2] * s2(l[0], l[1]) - s2(l[0], l[1] + l[2]) / l[2];
    let got = s_n_via_generalized(&ChainInstance::new(l.to_vec()).unwrap()).unwrap();
    assert!(((got - want) / want).abs() < 1e-12, "{got} vs {want}");
}
