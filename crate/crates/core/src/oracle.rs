//! Brute-force isometric path partition number, independent of the
//! branch-and-bound solver: its own distance table, its own test for
//! "this vertex set is an isometric path", and a plain dynamic program
//! over all set partitions.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest instance the oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 10;

const FAR: usize = usize::MAX / 2;

fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![FAR; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for v in 0..n {
            if g.has_edge(u, v) {
                row[v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// True iff the vertex set `set` is the vertex set of some isometric path:
/// the induced subgraph is a path and its ends are exactly `|set| - 1` apart.
fn is_isometric_path_set(g: &Graph, dist: &[Vec<usize>], set: &[usize]) -> bool {
    let k = set.len();
    if k == 1 {
        return true;
    }
    let mut ends = Vec::new();
    let mut edges = 0;
    for &u in set {
        let deg = set.iter().filter(|&&w| g.has_edge(u, w)).count();
        match deg {
            0 => return false,
            1 => ends.push(u),
            2 => {}
            _ => return false,
        }
        edges += deg;
    }
    // degrees <= 2 with k - 1 edges and two ends: a path iff connected,
    // and a set at distance k - 1 apart through k vertices is connected.
    edges / 2 == k - 1 && ends.len() == 2 && dist[ends[0]][ends[1]] == k - 1
}

/// Exact ipp(g) by exhaustive search over partitions of `V(g)` into
/// isometric-path vertex sets.
pub fn ipp_bruteforce_oracle(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::InstanceTooLarge {
            what: "brute-force oracle",
            n,
            max: ORACLE_MAX_VERTICES,
        });
    }
    let dist = floyd_warshall(g);
    let full = (1usize << n) - 1;
    let qualifies: Vec<bool> = (0..=full)
        .map(|s| {
            let set: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            !set.is_empty() && is_isometric_path_set(g, &dist, &set)
        })
        .collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // every subset of `rest`, each joined with the lowest vertex
        let mut sub = rest;
        loop {
            let part = sub | low;
            if qualifies[part] {
                let cand = best[mask ^ part].saturating_add(1);
                if cand < best[mask] {
                    best[mask] = cand;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(best[full])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bowtie, diamond, hexagon_pendants, hexagon_pendants_cut, star};

    #[test]
    fn small_values() {
        assert_eq!(ipp_bruteforce_oracle(&Graph::complete(5).unwrap()).unwrap(), 3);
        assert_eq!(ipp_bruteforce_oracle(&Graph::cycle(4).unwrap()).unwrap(), 2);
        assert_eq!(ipp_bruteforce_oracle(&diamond()).unwrap(), 2);
        assert_eq!(ipp_bruteforce_oracle(&Graph::complete(1).unwrap()).unwrap(), 1);
        assert_eq!(ipp_bruteforce_oracle(&star(3)).unwrap(), 2);
        assert_eq!(ipp_bruteforce_oracle(&bowtie()).unwrap(), 3);
        assert_eq!(ipp_bruteforce_oracle(&Graph::path(3).unwrap()).unwrap(), 1);
        assert_eq!(ipp_bruteforce_oracle(&Graph::complete(6).unwrap()).unwrap(), 3);
    }

    #[test]
    fn pendant_hexagon_pair() {
        assert_eq!(ipp_bruteforce_oracle(&hexagon_pendants()).unwrap(), 2);
        assert_eq!(ipp_bruteforce_oracle(&hexagon_pendants_cut()).unwrap(), 3);
    }

    #[test]
    fn disconnected_input_sums() {
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(ipp_bruteforce_oracle(&g).unwrap(), 3);
    }

    #[test]
    fn rejects_large() {
        assert!(ipp_bruteforce_oracle(&Graph::path(11).unwrap()).is_err());
    }
}
