//! Named fixture graphs used by tests, the CLI, and the demo.

use crate::format::parse_edge_list;
use crate::graph::Graph;

/// Edge-list text of the hexagon-with-four-pendants graph (ipp 2).
pub const HEXAGON_PENDANTS: &str = include_str!("../fixtures/hexagon_pendants.edges");
/// Edge-list text of the same graph with one hexagon vertex removed (ipp 3).
pub const HEXAGON_PENDANTS_CUT: &str = include_str!("../fixtures/hexagon_pendants_cut.edges");

pub fn hexagon_pendants() -> Graph {
    parse_edge_list(HEXAGON_PENDANTS).expect("bundled fixture parses")
}

pub fn hexagon_pendants_cut() -> Graph {
    parse_edge_list(HEXAGON_PENDANTS_CUT).expect("bundled fixture parses")
}

/// Two triangles sharing vertex 2.
pub fn bowtie() -> Graph {
    Graph::from_edge_list(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
}

/// K4 minus the edge 0-3.
pub fn diamond() -> Graph {
    Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Star with `leaves` leaves around center 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edge_list(leaves + 1, &edges).unwrap()
}

/// `K_k` on ids `0..k` plus a pendant vertex `k` attached to vertex `k - 1`.
pub fn clique_with_pendant(k: usize) -> Graph {
    let mut edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    edges.push((k - 1, k));
    Graph::from_edge_list(k + 1, &edges).unwrap()
}

/// Looks up a fixture by name.
pub fn by_name(name: &str) -> Option<Graph> {
    Some(match name {
        "hexagon_pendants" => hexagon_pendants(),
        "hexagon_pendants_cut" => hexagon_pendants_cut(),
        "bowtie" => bowtie(),
        "diamond" => diamond(),
        _ => return None,
    })
}
