//! Biconnected components, the block-cut tree, and block-graph recognition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{mask_of, members, Graph, VertexSet};

/// Blocks and cut vertices of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Vertex sets sorted ascending; the list is sorted lexicographically.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    /// Edges `(block index, cut vertex)` of the block-cut tree.
    pub block_cut_tree: Vec<(usize, usize)>,
    /// Blocks containing exactly one cut vertex.
    pub leaf_block_indices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn block_mask(&self, i: usize) -> VertexSet {
        mask_of(&self.blocks[i])
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    /// Cut vertices inside block `i`.
    pub fn cut_vertices_of(&self, i: usize) -> Vec<usize> {
        self.blocks[i]
            .iter()
            .copied()
            .filter(|&v| self.is_cut_vertex(v))
            .collect()
    }

    /// Index of the block whose vertex set is exactly `set`.
    pub fn find_block(&self, set: VertexSet) -> Option<usize> {
        (0..self.blocks.len()).find(|&i| self.block_mask(i) == set)
    }
}

struct Lowpoint<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Vec<usize>>,
    cuts: VertexSet,
}

impl Lowpoint<'_> {
    fn dfs(&mut self, v: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        let mut children = 0;
        for w in self.g.neighbors(v) {
            if Some(w) == parent {
                continue;
            }
            if self.disc[w] == 0 {
                children += 1;
                self.stack.push((v, w));
                self.dfs(w, Some(v));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent.is_some() || children > 1 {
                        self.cuts |= 1 << v;
                    }
                    let mut set = 0u64;
                    while let Some((a, b)) = self.stack.pop() {
                        set |= 1 << a | 1 << b;
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    self.blocks.push(members(set).collect());
                }
            } else if self.disc[w] < self.disc[v] {
                self.stack.push((v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        // A root with no children only happens for K1.
        if parent.is_none() && children == 0 {
            self.blocks.push(vec![v]);
        }
    }
}

/// Lowpoint depth-first decomposition of a connected graph.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    g.require_connected()?;
    let n = g.n();
    let mut lp = Lowpoint {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cuts: 0,
    };
    lp.dfs(0, None);
    let mut blocks = lp.blocks;
    blocks.sort();
    let cut_vertices: Vec<usize> = members(lp.cuts).collect();
    let mut block_cut_tree = Vec::new();
    let mut leaf_block_indices = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let cuts_here: Vec<usize> = b.iter().copied().filter(|&v| lp.cuts & (1 << v) != 0).collect();
        if cuts_here.len() == 1 {
            leaf_block_indices.push(i);
        }
        block_cut_tree.extend(cuts_here.into_iter().map(|c| (i, c)));
    }
    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
        block_cut_tree,
        leaf_block_indices,
    })
}

/// Connected with no cut vertex. K1 and K2 count as biconnected.
pub fn is_biconnected(g: &Graph) -> bool {
    match block_decomposition(g) {
        Ok(d) => d.cut_vertices.is_empty(),
        Err(_) => false,
    }
}

/// Every block induces a complete graph.
pub fn is_block_graph(g: &Graph) -> Result<bool> {
    let d = block_decomposition(g)?;
    Ok((0..d.blocks.len()).all(|i| g.is_clique(d.block_mask(i))))
}

/// Number of blocks with an even vertex count.
pub fn count_even_blocks(d: &BlockDecomposition) -> usize {
    d.blocks.iter().filter(|b| b.len() % 2 == 0).count()
}

/// Maximum cardinality search order: each step picks the unvisited vertex
/// with the most visited neighbors (ties to the lowest id).
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = members(g.vertex_mask() & !visited)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited |= 1 << v;
        order.push(v);
        for w in members(g.neighbor_mask(v) & !visited) {
            weight[w] += 1;
        }
    }
    order
}

/// Checks that `order` is a perfect elimination ordering: for every vertex,
/// its neighbors later in the order form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later = members(g.neighbor_mask(v))
            .filter(|&w| pos[w] > pos[v])
            .fold(0u64, |acc, w| acc | 1 << w);
        // Tarjan–Yannakakis: the earliest later neighbor must see all others.
        match members(later).min_by_key(|&w| pos[w]) {
            None => true,
            Some(p) => (later & !(1 << p)) & !g.neighbor_mask(p) == 0,
        }
    })
}

/// No induced cycle of length four or more.
pub fn is_chordal(g: &Graph) -> bool {
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    is_perfect_elimination_ordering(g, &peo)
}

/// An induced diamond (K4 minus an edge), if any, as a sorted 4-set.
pub fn find_induced_diamond(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let set = [a, b, c, d];
                    let edges = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| g.has_edge(set[i], set[j]))
                        .count();
                    if edges == 5 {
                        return Some(set);
                    }
                }
            }
        }
    }
    None
}

/// Chordal with no induced diamond.
pub fn is_diamond_free_chordal(g: &Graph) -> Result<bool> {
    g.require_connected()?;
    Ok(is_chordal(g) && find_induced_diamond(g).is_none())
}

/// Checks `clique` is a leaf-clique of `g` and returns its unique cut vertex.
pub fn leaf_clique_cut_vertex(g: &Graph, clique: &[usize]) -> Result<usize> {
    for &v in clique {
        g.check_vertex(v)?;
    }
    let d = block_decomposition(g)?;
    let set = mask_of(clique);
    let idx = d
        .find_block(set)
        .ok_or_else(|| Error::NotLeafClique(format!("{clique:?} is not a block")))?;
    if !g.is_clique(set) {
        return Err(Error::NotLeafClique(format!("{clique:?} is not a clique")));
    }
    match d.cut_vertices_of(idx).as_slice() {
        [v] => Ok(*v),
        cuts => Err(Error::NotLeafClique(format!(
            "block {clique:?} contains {} cut vertices, expected exactly one",
            cuts.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bowtie, clique_with_pendant, diamond};

    /// Articulation points by deleting each vertex and testing connectivity.
    fn brute_force_cuts(g: &Graph) -> Vec<usize> {
        (0..g.n())
            .filter(|&v| g.n() > 1 && !g.without(&[v]).unwrap().graph.is_connected())
            .collect()
    }

    #[test]
    fn path_blocks() {
        let d = block_decomposition(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(d.cut_vertices, vec![1]);
        assert_eq!(d.leaf_block_indices, vec![0, 1]);
        assert_eq!(count_even_blocks(&d), 2);
    }

    #[test]
    fn complete_and_trivial() {
        let d = block_decomposition(&Graph::complete(5).unwrap()).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert!(d.cut_vertices.is_empty());
        let d = block_decomposition(&Graph::complete(1).unwrap()).unwrap();
        assert_eq!(d.blocks, vec![vec![0]]);
        let d = block_decomposition(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1]]);
        assert!(block_decomposition(&Graph::edgeless(2).unwrap()).is_err());
    }

    #[test]
    fn bowtie_blocks() {
        let g = bowtie();
        assert_eq!(brute_force_cuts(&g), vec![2]);
        let d = block_decomposition(&g).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(d.cut_vertices, vec![2]);
        assert_eq!(d.leaf_block_indices.len(), 2);
        assert_eq!(count_even_blocks(&d), 0);
        assert!(is_block_graph(&g).unwrap());
        assert!(is_diamond_free_chordal(&g).unwrap());
    }

    #[test]
    fn biconnectivity() {
        assert!(is_biconnected(&Graph::complete(2).unwrap()));
        assert!(!is_biconnected(&Graph::path(3).unwrap()));
        assert!(is_biconnected(&Graph::cycle(4).unwrap()));
        assert!(!is_biconnected(&Graph::edgeless(3).unwrap()));
    }

    #[test]
    fn block_graph_recognition() {
        assert!(!is_block_graph(&Graph::cycle(4).unwrap()).unwrap());
        let tree = Graph::from_edge_list(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert!(is_block_graph(&tree).unwrap());
        assert!(!is_diamond_free_chordal(&diamond()).unwrap());
        assert!(!is_diamond_free_chordal(&Graph::cycle(5).unwrap()).unwrap());
        assert!(is_chordal(&diamond()));
        assert_eq!(find_induced_diamond(&diamond()), Some([0, 1, 2, 3]));
    }

    #[test]
    fn pendant_even_block() {
        let d = block_decomposition(&clique_with_pendant(5)).unwrap();
        assert_eq!(count_even_blocks(&d), 1);
    }

    #[test]
    fn cut_vertices_match_brute_force_on_corpus() {
        for n in 1..=7 {
            for line in crate::corpus::bundled_connected(n).unwrap() {
                let g = crate::format::decode_graph6(line).unwrap();
                let d = block_decomposition(&g).unwrap();
                assert_eq!(d.cut_vertices, brute_force_cuts(&g), "{line}");
                // every edge lies in exactly one block
                for (u, v) in g.edges() {
                    let holders = (0..d.blocks.len())
                        .filter(|&i| d.block_mask(i) & (1 << u | 1 << v) == (1 << u | 1 << v))
                        .count();
                    assert_eq!(holders, 1, "{line}");
                }
                if !d.cut_vertices.is_empty() {
                    assert!(d.leaf_block_indices.len() >= 2, "{line}");
                }
                let total: usize = d.blocks.iter().map(|b| b.len() - 1).sum();
                assert_eq!(total, g.n() - 1, "{line}");
                // block-cut tree: nodes = blocks + cuts, edges = nodes - 1
                assert_eq!(d.block_cut_tree.len(), d.blocks.len() + d.cut_vertices.len() - 1);
            }
        }
    }

    #[test]
    fn leaf_cliques() {
        let g = clique_with_pendant(5);
        assert_eq!(leaf_clique_cut_vertex(&g, &[0, 1, 2, 3, 4]).unwrap(), 4);
        assert_eq!(leaf_clique_cut_vertex(&g, &[4, 5]).unwrap(), 4);
        assert!(leaf_clique_cut_vertex(&g, &[0, 1, 2]).is_err());
        assert!(leaf_clique_cut_vertex(&Graph::complete(3).unwrap(), &[0, 1, 2]).is_err());
        let c4_tail = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        assert!(leaf_clique_cut_vertex(&c4_tail, &[0, 1, 2, 3]).is_err());
    }
}
