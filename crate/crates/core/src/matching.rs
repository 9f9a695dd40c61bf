//! Maximum-cardinality matchings in general graphs (Edmonds' blossom
//! algorithm) and the matching-to-partition construction.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{members, Graph, Path, VertexSet};
use crate::solver::IsometricPathPartition;

/// A set of pairwise vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    saturated: VertexSet,
}

impl Matching {
    pub fn empty() -> Self {
        Self {
            edges: Vec::new(),
            saturated: 0,
        }
    }

    /// Validates `edges` against `g`: each pair must be an edge and no two
    /// pairs may share an endpoint.
    pub fn from_edges(g: &Graph, edges: &[(usize, usize)]) -> Result<Self> {
        let mut saturated = 0u64;
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!("{u}-{v} is not an edge")));
            }
            let both = (1u64 << u) | (1u64 << v);
            if saturated & both != 0 {
                return Err(Error::InvalidMatching(format!(
                    "edge {u}-{v} shares an endpoint with another matching edge"
                )));
            }
            saturated |= both;
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        Ok(Self {
            edges: norm,
            saturated,
        })
    }

    fn from_mates(mate: &[Option<usize>]) -> Self {
        let mut edges = Vec::new();
        let mut saturated = 0u64;
        for (u, m) in mate.iter().enumerate() {
            if let Some(v) = *m {
                saturated |= 1 << u;
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Self { edges, saturated }
    }

    fn mates(&self, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    /// Matching edges with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn saturated(&self) -> VertexSet {
        self.saturated
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.saturated & (1 << v) != 0
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.saturated == g.vertex_mask()
    }

    /// Maps vertex ids through `origin` (e.g. from an induced subgraph to its parent).
    pub fn lift(&self, origin: &[usize]) -> Matching {
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (origin[u], origin[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        let saturated = edges.iter().fold(0u64, |acc, &(u, v)| acc | 1 << u | 1 << v);
        Matching { edges, saturated }
    }

    fn check_in(&self, g: &Graph) -> Result<()> {
        Matching::from_edges(g, &self.edges).map(|_| ())
    }
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, mate: Vec<Option<usize>>) -> Self {
        let n = g.n();
        Self {
            g,
            mate,
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Default::default(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("matched outer vertex has a tree parent"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            let m = self.mate[b].expect("walk towards the root stays on matched vertices");
            b = self.parent[m].expect("matched outer vertex has a tree parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom path vertices are matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom path vertices have tree parents");
        }
    }

    /// Grows an alternating tree from `root`; returns the exposed endpoint
    /// of an augmenting path if one exists.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in members(self.g.neighbor_mask(v)) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: Option<usize>) {
        while let Some(x) = v {
            let p = self.parent[x].expect("augmenting path vertex has a parent");
            let next = self.mate[p];
            self.mate[x] = Some(p);
            self.mate[p] = Some(x);
            v = next;
        }
    }

    fn run(mut self, order: &[usize]) -> Vec<Option<usize>> {
        for &root in order {
            if self.mate[root].is_none() {
                if let Some(end) = self.find_path(root) {
                    self.augment(Some(end));
                }
            }
        }
        self.mate
    }
}

/// Maximum matching, grown from the empty matching.
pub fn maximum_matching(g: &Graph) -> Matching {
    let order: Vec<usize> = (0..g.n()).collect();
    Matching::from_mates(&Blossom::new(g, vec![None; g.n()]).run(&order))
}

/// Maximum matching obtained by augmenting `initial` until no augmenting
/// path remains. Different starting matchings reach different maximum
/// matchings.
pub fn maximum_matching_from(g: &Graph, initial: &Matching) -> Result<Matching> {
    initial.check_in(g)?;
    let order: Vec<usize> = (0..g.n()).collect();
    Ok(Matching::from_mates(
        &Blossom::new(g, initial.mates(g.n())).run(&order),
    ))
}

/// A maximum matching grown from a random greedy matching and a random root order.
pub fn random_maximum_matching<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Matching {
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(rng);
    let mut taken = 0u64;
    let mut greedy = Vec::new();
    for (u, v) in edges {
        if taken & (1 << u | 1 << v) == 0 && rng.gen_bool(0.5) {
            taken |= 1 << u | 1 << v;
            greedy.push((u, v));
        }
    }
    let initial = Matching::from_edges(g, &greedy).expect("greedy edges are disjoint");
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    Matching::from_mates(&Blossom::new(g, initial.mates(g.n())).run(&order))
}

/// Matching number ν(G).
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).size()
}

/// Vertices not covered by `m`.
pub fn unsaturated_vertices(g: &Graph, m: &Matching) -> Result<Vec<usize>> {
    m.check_in(g)?;
    Ok(members(g.vertex_mask() & !m.saturated).collect())
}

/// Each matching edge as a two-vertex path plus each unsaturated vertex as
/// a singleton; always an isometric path partition of size `n - |m|`.
pub fn matching_ipp(g: &Graph, m: &Matching) -> Result<IsometricPathPartition> {
    let singles = unsaturated_vertices(g, m)?;
    let mut paths: Vec<Path> = m.edges.iter().map(|&(u, v)| Path::new(vec![u, v])).collect();
    paths.extend(singles.into_iter().map(Path::single));
    Ok(IsometricPathPartition::new(paths))
}

/// A perfect matching of `G \ u`, expressed in the ids of `g`, if one exists.
pub fn perfect_matching_avoiding(g: &Graph, u: usize) -> Result<Option<Matching>> {
    g.check_vertex(u)?;
    if g.n() % 2 == 0 {
        return Ok(None);
    }
    if g.n() == 1 {
        return Ok(Some(Matching::empty()));
    }
    let sub = g.without(&[u])?;
    let m = maximum_matching(&sub.graph);
    Ok(m.is_perfect(&sub.graph).then(|| m.lift(&sub.origin)))
}

/// True iff `v` is adjacent to exactly one endpoint of the edge `e`.
pub fn is_mixed_on_edge(g: &Graph, v: usize, e: (usize, usize)) -> Result<bool> {
    g.check_vertex(v)?;
    let (a, b) = e;
    if !g.has_edge(a, b) {
        return Err(Error::InvalidMatching(format!("{a}-{b} is not an edge")));
    }
    if v == a || v == b {
        return Err(Error::InvalidConfig(format!("vertex {v} is an endpoint of {a}-{b}")));
    }
    Ok(g.has_edge(v, a) != g.has_edge(v, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::decode_graph6;
    use crate::fixtures::hexagon_pendants;

    /// Exhaustive maximum over all subsets of edges.
    pub(crate) fn brute_force_nu(g: &Graph) -> usize {
        fn go(edges: &[(usize, usize)], used: u64) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(u, v), rest)) => {
                    let skip = go(rest, used);
                    if used & (1 << u | 1 << v) == 0 {
                        skip.max(1 + go(rest, used | 1 << u | 1 << v))
                    } else {
                        skip
                    }
                }
            }
        }
        go(&g.edges().collect::<Vec<_>>(), 0)
    }

    #[test]
    fn small_examples() {
        assert_eq!(maximum_matching(&Graph::complete(3).unwrap()).size(), 1);
        let c4 = Graph::cycle(4).unwrap();
        let m = maximum_matching(&c4);
        assert!(m.is_perfect(&c4));
        let g = hexagon_pendants();
        assert_eq!(brute_force_nu(&g), 5);
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 5);
        assert!(m.is_perfect(&g));
    }

    #[test]
    fn agrees_with_brute_force_on_corpus() {
        for n in 1..=7 {
            for line in crate::corpus::bundled_connected(n).unwrap() {
                let g = decode_graph6(line).unwrap();
                let m = maximum_matching(&g);
                Matching::from_edges(&g, m.edges()).unwrap();
                assert_eq!(m.size(), brute_force_nu(&g), "{line}");
            }
        }
    }

    #[test]
    fn unsaturated() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(unsaturated_vertices(&k3, &maximum_matching(&k3)).unwrap().len(), 1);
        let c4 = Graph::cycle(4).unwrap();
        assert!(unsaturated_vertices(&c4, &maximum_matching(&c4)).unwrap().is_empty());
        let p3 = Graph::path(3).unwrap();
        let m = Matching::from_edges(&p3, &[(0, 1)]).unwrap();
        assert_eq!(unsaturated_vertices(&p3, &m).unwrap(), vec![2]);
        let bogus = Matching::from_edges(&Graph::complete(3).unwrap(), &[(0, 2)]).unwrap();
        assert!(unsaturated_vertices(&p3, &bogus).is_err());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        let p3 = Graph::path(3).unwrap();
        assert!(Matching::from_edges(&p3, &[(0, 2)]).is_err());
        assert!(Matching::from_edges(&p3, &[(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn matching_partitions() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(matching_ipp(&k3, &maximum_matching(&k3)).unwrap().len(), 2);
        let e4 = Graph::edgeless(4).unwrap();
        let ipp = matching_ipp(&e4, &Matching::empty()).unwrap();
        assert_eq!(ipp.len(), 4);
        assert!(ipp.paths().iter().all(|p| p.vertex_count() == 1));
        let c4 = Graph::cycle(4).unwrap();
        let ipp = matching_ipp(&c4, &maximum_matching(&c4)).unwrap();
        assert_eq!(ipp.len(), 2);
        assert!(ipp.paths().iter().all(|p| p.vertex_count() == 2));
    }

    #[test]
    fn avoiding() {
        let c5 = Graph::cycle(5).unwrap();
        for u in 0..5 {
            let m = perfect_matching_avoiding(&c5, u).unwrap().unwrap();
            assert_eq!(m.size(), 2);
            assert!(!m.is_saturated(u));
        }
        let c4 = Graph::cycle(4).unwrap();
        assert!(perfect_matching_avoiding(&c4, 0).unwrap().is_none());
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(perfect_matching_avoiding(&k5, 3).unwrap().unwrap().size(), 2);
        assert!(perfect_matching_avoiding(&k5, 5).is_err());
        let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(perfect_matching_avoiding(&star, 1).unwrap().is_none());
    }

    #[test]
    fn mixed_on_edge() {
        let p3 = Graph::path(3).unwrap();
        assert!(is_mixed_on_edge(&p3, 0, (1, 2)).unwrap());
        let k3 = Graph::complete(3).unwrap();
        assert!(!is_mixed_on_edge(&k3, 0, (1, 2)).unwrap());
        let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_mixed_on_edge(&two, 0, (2, 3)).unwrap());
        assert!(is_mixed_on_edge(&p3, 1, (1, 2)).is_err());
        assert!(is_mixed_on_edge(&p3, 1, (0, 2)).is_err());
    }

    #[test]
    fn random_matchings_are_maximum() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = hexagon_pendants();
        for _ in 0..50 {
            let m = random_maximum_matching(&g, &mut rng);
            Matching::from_edges(&g, m.edges()).unwrap();
            assert_eq!(m.size(), 5);
        }
        let start = Matching::from_edges(&g, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(maximum_matching_from(&g, &start).unwrap().size(), 5);
    }
}
