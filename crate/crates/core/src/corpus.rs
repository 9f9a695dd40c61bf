//! Exhaustive corpora of small connected graphs, one per isomorphism class.
//!
//! Generation grows every connected graph on `n - 1` vertices by one vertex
//! joined to each non-empty neighbor set (every connected graph has a
//! vertex whose removal keeps it connected) and keeps one representative
//! per canonical form. Canonical forms come from individualization and
//! refinement of vertex partitions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::format::encode_graph6;
use crate::graph::{members, Graph, VertexSet};

/// Largest `n` shipped with the crate.
pub const BUNDLED_MAX_N: usize = 8;

/// Number of connected graphs on `n` vertices up to isomorphism, n = 1..=8.
pub const CONNECTED_COUNTS: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];

const BUNDLED: [&str; BUNDLED_MAX_N] = [
    include_str!("../data/connected_n1.g6"),
    include_str!("../data/connected_n2.g6"),
    include_str!("../data/connected_n3.g6"),
    include_str!("../data/connected_n4.g6"),
    include_str!("../data/connected_n5.g6"),
    include_str!("../data/connected_n6.g6"),
    include_str!("../data/connected_n7.g6"),
    include_str!("../data/connected_n8.g6"),
];

/// graph6 lines of every connected graph on exactly `n` vertices.
pub fn bundled_connected(n: usize) -> Result<Vec<&'static str>> {
    if n == 0 || n > BUNDLED_MAX_N {
        return Err(Error::InstanceTooLarge {
            what: "bundled corpus",
            n,
            max: BUNDLED_MAX_N,
        });
    }
    Ok(BUNDLED[n - 1].lines().filter(|l| !l.is_empty()).collect())
}

/// All bundled connected graphs with `1 <= n <= max_n`, by increasing `n`.
pub fn bundled_connected_up_to(max_n: usize) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(bundled_connected(n)?);
    }
    Ok(out)
}

/// Ordered partition of the vertices into cells.
type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbor counts into every cell until stable.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    loop {
        let masks: Vec<VertexSet> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect();
        let mut next: Partition = Vec::with_capacity(g.n());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key = masks.iter().map(|m| (g.neighbor_mask(v) & m).count_ones()).collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Upper-triangle adjacency bits (graph6 column order) under the labeling
/// that puts `order[i]` at position `i`.
fn code(g: &Graph, order: &[usize]) -> u64 {
    let mut out = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            out = out << 1 | g.has_edge(order[i], order[j]) as u64;
        }
    }
    out
}

fn all_twins(g: &Graph, cell: &[usize]) -> bool {
    cell.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        g.neighbor_mask(a) & !(1 << b) == g.neighbor_mask(b) & !(1 << a)
    })
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(u64, Vec<usize>)>) {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let c = code(g, &order);
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            *best = Some((c, order));
        }
        return;
    };
    let cell = &cells[target];
    // Pairwise twins are interchangeable: one branch covers all of them.
    let branches: &[usize] = if all_twins(g, cell) { &cell[..1] } else { cell };
    for &v in branches {
        let mut next = cells[..target].to_vec();
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(g, next, best);
    }
}

/// Canonical relabeling: isomorphic graphs map to identical graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    if g.n() > 11 {
        // the code packs n(n-1)/2 bits into a u64
        panic!("canonical_form supports at most 11 vertices");
    }
    let mut best = None;
    search(g, vec![(0..g.n()).collect()], &mut best);
    let (_, order) = best.expect("search reaches a leaf");
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    g.permuted(&perm).expect("order is a permutation")
}

/// graph6 lines of all connected graphs on `n` vertices (canonical labeling),
/// sorted. Exponential in `n`; meant for `n <= 8`.
pub fn generate_connected(n: usize) -> Result<Vec<String>> {
    if n == 0 || n > 10 {
        return Err(Error::InstanceTooLarge {
            what: "corpus generation",
            n,
            max: 10,
        });
    }
    let mut level: Vec<Graph> = vec![Graph::complete(1)?];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            let base: Vec<(usize, usize)> = g.edges().collect();
            for nbrs in 1u64..(1 << (size - 1)) {
                let mut edges = base.clone();
                edges.extend(members(nbrs).map(|v| (v, size - 1)));
                let h = canonical_form(&Graph::from_edge_list(size, &edges)?);
                let key = encode_graph6(&h)?;
                if seen.insert(key) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    let mut lines: Vec<String> = level.iter().map(encode_graph6).collect::<Result<_>>()?;
    lines.sort();
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::decode_graph6;

    #[test]
    fn bundled_counts() {
        for n in 1..=BUNDLED_MAX_N {
            assert_eq!(bundled_connected(n).unwrap().len(), CONNECTED_COUNTS[n - 1], "n={n}");
        }
        assert!(bundled_connected(0).is_err());
        assert!(bundled_connected(9).is_err());
    }

    #[test]
    fn bundled_graphs_are_connected_canonical_and_distinct() {
        for line in bundled_connected_up_to(7).unwrap() {
            let g = decode_graph6(line).unwrap();
            assert!(g.is_connected(), "{line}");
            assert_eq!(canonical_form(&g), g, "{line}");
        }
    }

    #[test]
    fn regeneration_matches_bundle() {
        for n in 1..=6 {
            let fresh = generate_connected(n).unwrap();
            assert_eq!(fresh, bundled_connected(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for line in bundled_connected(7).unwrap().iter().step_by(7) {
            let g = decode_graph6(line).unwrap();
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g.permuted(&perm).unwrap()), g);
        }
    }
}
