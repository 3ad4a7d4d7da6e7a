#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use ordtutte::graph::{EdgeId, EdgeOrdering, Multigraph};
use ordtutte::scalar::ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Triangle `{e1, e3, e5}` plus double edge `{e2, e4}`, processed `e1..e5`.
pub fn triangle_and_pair() -> (Multigraph, EdgeOrdering) {
    let g = Multigraph::new(5, [(1, 0, 1), (2, 3, 4), (3, 1, 2), (4, 3, 4), (5, 2, 0)]).unwrap();
    let o = EdgeOrdering::new(vec![1, 2, 3, 4, 5]).unwrap();
    (g, o)
}

pub fn triangle() -> Multigraph {
    Multigraph::new(3, [(1, 0, 1), (3, 1, 2), (5, 2, 0)]).unwrap()
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut label: Vec<usize> = (0..v).collect();
    loop {
        let mut changed = false;
        for &(a, b) in edges {
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    label.iter().all(|&l| l == 0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

fn multisets(pool: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for i in start..pool {
        cur.push(i);
        multisets(pool, size, i, cur, out);
        cur.pop();
    }
}

/// Every connected multigraph (loops allowed) with at most `max_edges`
/// edges, one representative per isomorphism class, edges labelled `1..m`.
pub fn connected_corpus(max_edges: usize) -> Vec<Multigraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 1..=max_edges + 1 {
        let perms = permutations(v);
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a..v).map(move |b| (a, b)))
            .collect();
        for m in v.saturating_sub(1)..=max_edges {
            let mut choices = Vec::new();
            multisets(pairs.len(), m, 0, &mut Vec::new(), &mut choices);
            for choice in choices {
                let edges: Vec<(usize, usize)> = choice.iter().map(|&i| pairs[i]).collect();
                if !connected(v, &edges) {
                    continue;
                }
                let canon = canonical(&edges, &perms);
                if seen.insert((v, canon.clone())) {
                    out.push(
                        Multigraph::new(
                            v,
                            canon
                                .iter()
                                .enumerate()
                                .map(|(i, &(a, b))| (i as EdgeId + 1, a, b)),
                        )
                        .unwrap(),
                    );
                }
            }
        }
    }
    out
}

/// Random multigraph with `edges` edges labelled `first_id..`, endpoints
/// uniform on `vertices` vertices (loops and parallels allowed).
pub fn random_graph(rng: &mut impl Rng, vertices: usize, edges: usize, first_id: EdgeId) -> Multigraph {
    Multigraph::new(
        vertices,
        (0..edges).map(|i| {
            (
                first_id + i as EdgeId,
                rng.random_range(0..vertices),
                rng.random_range(0..vertices),
            )
        }),
    )
    .unwrap()
}

pub fn random_ordering(rng: &mut impl Rng, g: &Multigraph) -> EdgeOrdering {
    let mut ids: Vec<EdgeId> = g.edge_ids().collect();
    ids.shuffle(rng);
    EdgeOrdering::new(ids).unwrap()
}

/// Random rational in `[0, 1]` with denominator at most 7.
pub fn random_probability(rng: &mut impl Rng) -> BigRational {
    let den = rng.random_range(1..=7);
    ratio(rng.random_range(0..=den), den)
}
