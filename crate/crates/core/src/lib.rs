//! Isometric path partitions of small graphs.
//!
//! An isometric path partition (IPP) splits the vertex set into shortest
//! paths. This crate computes minimum IPPs exactly, builds the partition
//! induced by a maximum matching (which gives `ipp(G) <= |V| - ν(G)`), and
//! decides from the block structure which connected graphs meet that bound.

pub mod blocks;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod extremal;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod solver;

pub use blocks::{
    block_decomposition, count_even_blocks, is_biconnected, is_block_graph,
    is_diamond_free_chordal, BlockDecomposition,
};
pub use distance::{all_pairs_distances, is_induced_path, is_isometric_path, DistanceMatrix, INFINITE};
pub use error::{Error, Result};
pub use extremal::{
    classify, classify_components, construct_minimum_ipp_extremal, peel_odd_leaf_clique,
    reduce_leaf_clique_pair, ExtremalityCertificate, Verdict,
};
pub use format::{decode_graph6, encode_graph6, parse_edge_list};
pub use graph::{Graph, InducedSubgraph, Path};
pub use matching::{
    is_mixed_on_edge, matching_ipp, maximum_matching, perfect_matching_avoiding,
    unsaturated_vertices, Matching,
};
pub use oracle::ipp_bruteforce_oracle;
pub use solver::{
    enumerate_isometric_paths, find_v_extendable_ipp, ipp_by_components, ipp_exact,
    ipp_lower_bound, solve_whole_graph, verify_ipp, IsometricPathPartition, IppSolution, SolveError,
    SolverConfig,
};
