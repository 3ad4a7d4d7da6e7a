//! Graph families shared by the benchmarks in `benches/`.

use ordtutte::{EdgeOrdering, Multigraph};

/// A cycle on `edges.div_ceil(2)` vertices with chords and a loop filling
/// the remaining edges, so every size mixes cycles, multi-edges and loops.
pub fn mixed(edges: u32) -> (Multigraph, EdgeOrdering) {
    let n = (edges as usize).div_ceil(2).max(2);
    let mut list = Vec::with_capacity(edges as usize);
    for id in 1..=edges {
        let k = (id - 1) as usize;
        let e = if k < n {
            (id, k, (k + 1) % n)
        } else if id == edges {
            (id, 0, 0)
        } else {
            (id, k % n, (k + n / 2) % n)
        };
        list.push(e);
    }
    let g = Multigraph::new(n, list).expect("ids are in range");
    let o = EdgeOrdering::of_graph(&g);
    (g, o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for m in 1..=14 {
            let (g, o) = mixed(m);
            assert_eq!(g.edge_count(), m as usize);
            assert_eq!(o.len(), m as usize);
        }
    }
}
