//! Edge-labelled multigraphs with contraction, deletion and line-graph adjacency.
//!
//! Edge labels are the original ids and never change under reduction, so a
//! partially reduced graph can always be indexed by the edges it still holds.

use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::GraphError;

/// Original edge label. Valid ids are `1..=MAX_EDGE_ID`.
pub type EdgeId = u32;

/// Largest edge id a [`SubgraphMask`] can hold.
pub const MAX_EDGE_ID: EdgeId = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn touches(&self, vertex: usize) -> bool {
        self.u == vertex || self.v == vertex
    }

    fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

/// Undirected multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (EdgeId, usize, usize)>,
    {
        let mut seen = SubgraphMask::empty();
        let mut out = Vec::new();
        for (id, u, v) in edges {
            if id == 0 || id > MAX_EDGE_ID {
                return Err(GraphError::EdgeIdOutOfRange(id));
            }
            if seen.contains(id) {
                return Err(GraphError::DuplicateEdge(id));
            }
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: id,
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            seen.insert(id);
            out.push(Edge { id, u, v });
        }
        Ok(Multigraph {
            vertex_count,
            edges: out,
        })
    }

    /// Edgeless graph `E_m`.
    pub fn edgeless(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_some()
    }

    pub fn edge_mask(&self) -> SubgraphMask {
        SubgraphMask::from_ids(self.edge_ids())
    }

    fn require(&self, id: EdgeId) -> Result<&Edge, GraphError> {
        self.edge(id).ok_or(GraphError::NoSuchEdge(id))
    }

    /// `G - e`: drop the edge, keep every vertex.
    pub fn delete(&self, id: EdgeId) -> Result<Multigraph, GraphError> {
        self.require(id)?;
        Ok(Multigraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().filter(|e| e.id != id).copied().collect(),
        })
    }

    /// `G / e`: merge the endpoints of `e` into the lower-indexed one and drop `e`.
    ///
    /// Contracting a loop is the same as deleting it. Loops created by the
    /// merge are kept.
    pub fn contract(&self, id: EdgeId) -> Result<Multigraph, GraphError> {
        let edge = *self.require(id)?;
        if edge.is_loop() {
            return self.delete(id);
        }
        let keep = edge.u.min(edge.v);
        let gone = edge.u.max(edge.v);
        let remap = |w: usize| match w {
            w if w == gone => keep,
            w if w > gone => w - 1,
            w => w,
        };
        let edges = self
            .edges
            .iter()
            .filter(|e| e.id != id)
            .map(|e| Edge {
                id: e.id,
                u: remap(e.u),
                v: remap(e.v),
            })
            .collect();
        Ok(Multigraph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// 0/1 entry of the line-graph adjacency matrix. Parallel edges give 1, not 2.
    pub fn line_adjacency(&self, e: EdgeId, f: EdgeId) -> Result<u8, GraphError> {
        if e == f {
            return Err(GraphError::SelfAdjacency(e));
        }
        let a = self.require(e)?;
        let b = self.require(f)?;
        Ok(u8::from(a.shares_vertex(b)))
    }

    /// Connected components of `(V, E)`; isolated vertices count once each.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.vertex_count);
        let mut count = self.vertex_count;
        for e in &self.edges {
            if uf.union(e.u, e.v) {
                count -= 1;
            }
        }
        count
    }

    /// Spanning subgraph `(V, B)`.
    pub fn spanning_subgraph(&self, mask: SubgraphMask) -> Multigraph {
        Multigraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .filter(|e| mask.contains(e.id))
                .copied()
                .collect(),
        }
    }

    /// Graphs `G, G·1, G·1·2, …` where step `k` contracts `σ(k)` if it lies in
    /// `mask` and deletes it otherwise. The result has `n + 1` entries.
    pub fn reduced_sequence(
        &self,
        order: &EdgeOrdering,
        mask: SubgraphMask,
    ) -> Result<Vec<Multigraph>, GraphError> {
        order.check_covers(self)?;
        let mut seq = Vec::with_capacity(order.len() + 1);
        seq.push(self.clone());
        for &id in order.ids() {
            let cur = seq.last().expect("sequence starts non-empty");
            let next = if mask.contains(id) {
                cur.contract(id)?
            } else {
                cur.delete(id)?
            };
            seq.push(next);
        }
        Ok(seq)
    }

    /// Split into connected pieces, each relabelled onto its own vertex range.
    /// Returns `(piece, original vertices)` pairs; isolated vertices become
    /// single-vertex edgeless pieces.
    pub fn components(&self) -> Vec<(Multigraph, Vec<usize>)> {
        let mut uf = UnionFind::<usize>::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        let labels = uf.into_labeling();
        let mut roots: Vec<usize> = Vec::new();
        for &r in &labels {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots
            .into_iter()
            .map(|root| {
                let verts: Vec<usize> = (0..self.vertex_count)
                    .filter(|&w| labels[w] == root)
                    .collect();
                let local = |w: usize| verts.iter().position(|&x| x == w).unwrap();
                let edges = self
                    .edges
                    .iter()
                    .filter(|e| labels[e.u] == root)
                    .map(|e| Edge {
                        id: e.id,
                        u: local(e.u),
                        v: local(e.v),
                    })
                    .collect();
                (
                    Multigraph {
                        vertex_count: verts.len(),
                        edges,
                    },
                    verts,
                )
            })
            .collect()
    }

    /// Disjoint union; vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Multigraph) -> Result<Multigraph, GraphError> {
        let shift = self.vertex_count;
        Multigraph::new(
            self.vertex_count + other.vertex_count,
            self.edges
                .iter()
                .map(|e| (e.id, e.u, e.v))
                .chain(other.edges.iter().map(|e| (e.id, e.u + shift, e.v + shift))),
        )
    }
}

/// Processing order `σ`: position 1 is processed first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeOrdering(Vec<EdgeId>);

impl EdgeOrdering {
    pub fn new(ids: Vec<EdgeId>) -> Result<Self, GraphError> {
        let mut seen = SubgraphMask::empty();
        for &id in &ids {
            if id == 0 || id > MAX_EDGE_ID {
                return Err(GraphError::EdgeIdOutOfRange(id));
            }
            if seen.contains(id) {
                return Err(GraphError::BadOrdering(format!("edge {id} listed twice")));
            }
            seen.insert(id);
        }
        Ok(EdgeOrdering(ids))
    }

    /// The order in which the graph stores its edges.
    pub fn of_graph(g: &Multigraph) -> Self {
        EdgeOrdering(g.edge_ids().collect())
    }

    /// Every permutation of the graph's edges, starting from its own order.
    pub fn all_of(g: &Multigraph) -> impl Iterator<Item = EdgeOrdering> {
        let base: Vec<EdgeId> = g.edge_ids().collect();
        let mut idx: Option<Vec<usize>> = Some((0..base.len()).collect());
        std::iter::from_fn(move || {
            let cur = idx.take()?;
            let out = EdgeOrdering(cur.iter().map(|&i| base[i]).collect());
            idx = next_permutation(cur);
            Some(out)
        })
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Edge at 1-based position `k`.
    pub fn at(&self, k: usize) -> EdgeId {
        self.0[k - 1]
    }

    /// 1-based position of `id`.
    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.0.iter().position(|&x| x == id).map(|p| p + 1)
    }

    pub fn mask(&self) -> SubgraphMask {
        SubgraphMask::from_ids(self.0.iter().copied())
    }

    /// Restriction to the edges in `keep`, preserving relative order.
    pub fn induced(&self, keep: SubgraphMask) -> EdgeOrdering {
        EdgeOrdering(self.0.iter().copied().filter(|&id| keep.contains(id)).collect())
    }

    pub fn check_covers(&self, g: &Multigraph) -> Result<(), GraphError> {
        if self.len() != g.edge_count() || self.mask() != g.edge_mask() {
            return Err(GraphError::BadOrdering(format!(
                "ordering {:?} is not a permutation of the graph's edges {:?}",
                self.0,
                g.edge_ids().collect::<Vec<_>>()
            )));
        }
        Ok(())
    }
}

fn next_permutation(mut p: Vec<usize>) -> Option<Vec<usize>> {
    let i = (1..p.len()).rev().find(|&i| p[i - 1] < p[i])?;
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1])?;
    p.swap(i - 1, j);
    p[i..].reverse();
    Some(p)
}

/// Spanning subgraph `B`, as a bitset with bit `id - 1` for edge `id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubgraphMask(u64);

impl SubgraphMask {
    pub fn empty() -> Self {
        SubgraphMask(0)
    }

    pub fn from_bits(bits: u64) -> Self {
        SubgraphMask(bits)
    }

    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(ids: I) -> Self {
        let mut m = SubgraphMask::empty();
        for id in ids {
            m.insert(id);
        }
        m
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    fn bit(id: EdgeId) -> u64 {
        debug_assert!((1..=MAX_EDGE_ID).contains(&id));
        1u64 << (id - 1)
    }

    pub fn contains(self, id: EdgeId) -> bool {
        (1..=MAX_EDGE_ID).contains(&id) && self.0 & Self::bit(id) != 0
    }

    pub fn insert(&mut self, id: EdgeId) {
        self.0 |= Self::bit(id);
    }

    pub fn union(self, other: SubgraphMask) -> SubgraphMask {
        SubgraphMask(self.0 | other.0)
    }

    pub fn intersect(self, other: SubgraphMask) -> SubgraphMask {
        SubgraphMask(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: SubgraphMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Edge ids in ascending order.
    pub fn ids(self) -> impl Iterator<Item = EdgeId> {
        let bits = self.0;
        (1..=MAX_EDGE_ID).filter(move |&id| bits & (1u64 << (id - 1)) != 0)
    }

    /// Every subset of `self`, in ascending integer order.
    pub fn subsets(self) -> impl Iterator<Item = SubgraphMask> {
        let ids: Vec<EdgeId> = self.ids().collect();
        (0u64..(1u64 << ids.len())).map(move |sel| {
            SubgraphMask::from_ids(
                ids.iter()
                    .enumerate()
                    .filter(|(i, _)| sel >> i & 1 == 1)
                    .map(|(_, &id)| id),
            )
        })
    }
}

impl fmt::Display for SubgraphMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.ids().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "e{id}")?;
        }
        f.write_str("}")
    }
}
