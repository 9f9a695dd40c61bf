//! All-pairs hop distances and the shortest-path predicates built on them.

use crate::error::Result;
use crate::graph::{members, Graph, Path};

/// Distance between vertices in different components. Larger than any
/// reachable hop count and far from overflow when added to one.
pub const INFINITE: u32 = 1 << 30;

/// All-pairs hop distances, computed once and shared read-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Largest distance over all pairs; [`INFINITE`] when disconnected.
    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// Largest finite distance, i.e. the maximum diameter over components.
    pub fn max_finite(&self) -> u32 {
        self.dist.iter().copied().filter(|&d| d < INFINITE).max().unwrap_or(0)
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

/// Breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = vec![INFINITE; n * n];
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut level = 0;
        while frontier != 0 {
            level += 1;
            let mut next = 0u64;
            for v in members(frontier) {
                next |= g.neighbor_mask(v);
            }
            next &= !seen;
            for v in members(next) {
                row[v] = level;
            }
            seen |= next;
            frontier = next;
        }
    }
    let diameter = dist.iter().copied().max().unwrap_or(0);
    DistanceMatrix { n, dist, diameter }
}

/// True iff the path's length equals the distance between its endpoints.
pub fn is_isometric_path(g: &Graph, d: &DistanceMatrix, p: &Path) -> Result<bool> {
    p.validate(g)?;
    let (a, b) = p.endpoints().expect("validated path is non-empty");
    Ok(p.length() as u32 == d.get(a, b))
}

/// True iff no two non-consecutive path vertices are adjacent.
pub fn is_induced_path(g: &Graph, p: &Path) -> Result<bool> {
    p.validate(g)?;
    let vs = p.vertices();
    Ok((0..vs.len()).all(|i| (i + 2..vs.len()).all(|j| !g.has_edge(vs[i], vs[j]))))
}
