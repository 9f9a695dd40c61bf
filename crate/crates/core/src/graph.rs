//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one `u64` row per vertex, which caps graphs at
//! [`MAX_VERTICES`] vertices. Every routine in the crate that works with
//! vertex sets uses the same masks.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Vertex set as a bitmask over ids `0..64`.
pub type VertexSet = u64;

/// Iterates over the members of a vertex mask in ascending order.
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

pub fn mask_of(vertices: &[usize]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | (1u64 << v))
}

#[inline]
pub(crate) fn full_mask(n: usize) -> VertexSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list; repeated pairs collapse to one edge.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let edge_count = adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2;
        Ok(Self { n, adj, edge_count })
    }

    /// Builds a graph directly from adjacency rows. Rows must be symmetric
    /// and loop-free.
    pub(crate) fn from_rows(adj: Vec<VertexSet>) -> Self {
        debug_assert!(!adj.is_empty() && adj.len() <= MAX_VERTICES);
        debug_assert!(adj.iter().enumerate().all(|(v, row)| row & (1 << v) == 0));
        let edge_count = adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2;
        Self {
            n: adj.len(),
            adj,
            edge_count,
        }
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edge_list(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edge_list(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidConfig(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::from_edge_list(n, &edges)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Self::from_edge_list(n, &[])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex_mask(&self) -> VertexSet {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1 << v) != 0
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        members(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| members(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// True iff every pair of distinct vertices in `set` is adjacent.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        members(set).all(|v| (set & !(1 << v)) & !self.adj[v] == 0)
    }

    /// Vertices reachable from `start` inside `within`.
    pub(crate) fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components as ascending vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach(left.trailing_zeros() as usize, left);
            out.push(members(comp).collect());
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Subgraph induced by `vertices`; the new id `i` corresponds to `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Result<InducedSubgraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            if seen & (1 << v) != 0 {
                return Err(Error::InvalidConfig(format!("vertex {v} listed twice")));
            }
            seen |= 1 << v;
        }
        let rows = vertices
            .iter()
            .map(|&v| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.has_edge(v, w))
                    .fold(0u64, |acc, (j, _)| acc | (1 << j))
            })
            .collect();
        Ok(InducedSubgraph {
            graph: Graph::from_rows(rows),
            origin: vertices.to_vec(),
        })
    }

    /// `G \ S`: deletes `removed` and keeps the remaining vertices in ascending order.
    pub fn without(&self, removed: &[usize]) -> Result<InducedSubgraph> {
        for &v in removed {
            self.check_vertex(v)?;
        }
        let gone = mask_of(removed);
        let keep: Vec<usize> = members(self.vertex_mask() & !gone).collect();
        self.induced(&keep)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::from_edge_list(self.n + other.n, &edges)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n || mask_of(perm) != self.vertex_mask() {
            return Err(Error::InvalidConfig("not a permutation of the vertex set".into()));
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(self.n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// An induced subgraph together with the parent id of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub origin: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_parent(&self, v: usize) -> usize {
        self.origin[v]
    }

    pub fn lift_path(&self, path: &Path) -> Path {
        Path::new(path.vertices().iter().map(|&v| self.origin[v]).collect())
    }
}

/// Sequence of vertices; validity against a graph is checked by [`Path::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        Self(vertices)
    }

    pub fn single(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        Some((*self.0.first()?, *self.0.last()?))
    }

    pub fn has_endpoint(&self, v: usize) -> bool {
        self.endpoints().is_some_and(|(a, b)| a == v || b == v)
    }

    pub fn mask(&self) -> VertexSet {
        mask_of(&self.0)
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Checks the sequence is non-empty, in range, repetition-free, and
    /// that consecutive vertices are adjacent.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        let mut seen = 0u64;
        for &v in &self.0 {
            if v >= g.n() {
                return Err(Error::InvalidPath(format!("vertex {v} out of range")));
            }
            if seen & (1 << v) != 0 {
                return Err(Error::InvalidPath(format!("vertex {v} repeated")));
            }
            seen |= 1 << v;
        }
        if let Some(w) = self.0.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::InvalidPath(format!("{}-{} is not an edge", w[0], w[1])));
        }
        Ok(())
    }
}

impl From<Vec<usize>> for Path {
    fn from(v: Vec<usize>) -> Self {
        Path(v)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}
