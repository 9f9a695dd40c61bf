//! Block-level decision of `ipp(G) = |V(G)| - ν(G)` with checkable
//! certificates, minimum partitions for extremal graphs, and the
//! leaf-clique reductions.
//!
//! A connected graph is extremal exactly when every block is an odd
//! complete graph, or all blocks but one are, and the remaining block is
//! even and itself extremal. Only that one block ever needs an exact solve.

use serde::Serialize;

use crate::blocks::{block_decomposition, find_induced_diamond, leaf_clique_cut_vertex};
use crate::distance::all_pairs_distances;
use crate::error::{Error, Result};
use crate::graph::{mask_of, members, Graph, InducedSubgraph, Path};
use crate::matching::{matching_ipp, maximum_matching, perfect_matching_avoiding, Matching};
use crate::solver::{
    ipp_exact, solve_whole_graph, verify_ipp, IsometricPathPartition, SolveError, SolverConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Extremal,
    NotExtremal,
    /// The exceptional block could not be solved within budget.
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateCase {
    AllOddComplete,
    OneEvenBlock,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSummary {
    pub vertices: Vec<usize>,
    pub odd: bool,
    pub complete: bool,
}

/// Evidence that the exceptional even block `B` has `ipp(B) = |V(B)| - ν(B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SubCertificate {
    EvenComplete,
    Cycle4,
    Diamond,
    /// Exact-solver transcript, in the ids of the classified graph.
    Solved {
        minimum_ipp: IsometricPathPartition,
        maximum_matching: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Violation {
    /// Indices (into `blocks`) of the blocks that are not odd complete graphs.
    SeveralExceptionalBlocks { blocks: Vec<usize> },
    /// The single exceptional block is odd, hence not complete.
    OddNonCompleteBlock { block: usize },
    /// The exceptional even block has a partition beating its own bound.
    EvenBlockBelowBound {
        block: usize,
        ipp: IsometricPathPartition,
        bound: usize,
    },
}

/// Result of [`classify`]; every field is re-checkable with [`recheck`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalityCertificate {
    pub verdict: Verdict,
    pub case: CertificateCase,
    pub blocks: Vec<BlockSummary>,
    pub exceptional_block: Option<Vec<usize>>,
    pub sub_certificate: Option<SubCertificate>,
    pub violation: Option<Violation>,
    /// A partition of the whole graph smaller than `n - ν`, computed on request.
    pub witness_ipp: Option<IsometricPathPartition>,
    /// `(lower, upper)` on ipp of the exceptional block when undecided.
    pub block_bounds: Option<(usize, usize)>,
}

impl ExtremalityCertificate {
    pub fn is_extremal(&self) -> bool {
        self.verdict == Verdict::Extremal
    }

    /// Maps vertex ids through `origin`.
    pub fn lift(&self, origin: &[usize]) -> Self {
        let map = |vs: &[usize]| {
            let mut out: Vec<usize> = vs.iter().map(|&v| origin[v]).collect();
            out.sort_unstable();
            out
        };
        let mut cert = self.clone();
        for b in &mut cert.blocks {
            b.vertices = map(&b.vertices);
        }
        cert.exceptional_block = self.exceptional_block.as_deref().map(map);
        if let Some(SubCertificate::Solved { minimum_ipp, maximum_matching }) = &mut cert.sub_certificate {
            *minimum_ipp = minimum_ipp.lift(origin);
            *maximum_matching = maximum_matching
                .iter()
                .map(|&(u, v)| (origin[u].min(origin[v]), origin[u].max(origin[v])))
                .collect();
        }
        if let Some(Violation::EvenBlockBelowBound { ipp, .. }) = &mut cert.violation {
            *ipp = ipp.lift(origin);
        }
        cert.witness_ipp = self.witness_ipp.as_ref().map(|w| w.lift(origin));
        cert
    }
}

fn is_c4(b: &Graph) -> bool {
    b.n() == 4 && b.edge_count() == 4 && (0..4).all(|v| b.degree(v) == 2)
}

fn is_diamond(b: &Graph) -> bool {
    b.n() == 4 && find_induced_diamond(b).is_some()
}

/// Decides extremality of a connected graph from its blocks.
pub fn classify(g: &Graph, cfg: &SolverConfig) -> Result<ExtremalityCertificate> {
    let d = block_decomposition(g)?;
    let blocks: Vec<BlockSummary> = d
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| BlockSummary {
            vertices: b.clone(),
            odd: b.len() % 2 == 1,
            complete: g.is_clique(d.block_mask(i)),
        })
        .collect();
    let exceptional: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| !(b.odd && b.complete))
        .map(|(i, _)| i)
        .collect();
    let mut cert = ExtremalityCertificate {
        verdict: Verdict::Extremal,
        case: CertificateCase::AllOddComplete,
        blocks,
        exceptional_block: None,
        sub_certificate: None,
        violation: None,
        witness_ipp: None,
        block_bounds: None,
    };
    match exceptional.as_slice() {
        [] => {}
        [i] => {
            let i = *i;
            cert.exceptional_block = Some(cert.blocks[i].vertices.clone());
            if cert.blocks[i].odd {
                cert.verdict = Verdict::NotExtremal;
                cert.case = CertificateCase::Violation;
                cert.violation = Some(Violation::OddNonCompleteBlock { block: i });
                return Ok(cert);
            }
            cert.case = CertificateCase::OneEvenBlock;
            let sub = g.induced(&cert.blocks[i].vertices)?;
            decide_even_block(&sub, i, cfg, &mut cert)?;
        }
        many => {
            cert.verdict = Verdict::NotExtremal;
            cert.case = CertificateCase::Violation;
            cert.violation = Some(Violation::SeveralExceptionalBlocks {
                blocks: many.to_vec(),
            });
        }
    }
    Ok(cert)
}

fn decide_even_block(
    sub: &InducedSubgraph,
    index: usize,
    cfg: &SolverConfig,
    cert: &mut ExtremalityCertificate,
) -> Result<()> {
    let b = &sub.graph;
    if b.is_clique(b.vertex_mask()) {
        cert.sub_certificate = Some(SubCertificate::EvenComplete);
        return Ok(());
    }
    if is_c4(b) {
        cert.sub_certificate = Some(SubCertificate::Cycle4);
        return Ok(());
    }
    if is_diamond(b) {
        cert.sub_certificate = Some(SubCertificate::Diamond);
        return Ok(());
    }
    let matching = maximum_matching(b);
    let bound = b.n() - matching.size();
    match ipp_exact(b, cfg) {
        Ok(sol) if sol.size() < bound => {
            cert.verdict = Verdict::NotExtremal;
            cert.case = CertificateCase::Violation;
            cert.violation = Some(Violation::EvenBlockBelowBound {
                block: index,
                ipp: sol.partition.lift(&sub.origin),
                bound,
            });
        }
        Ok(sol) if sol.proven => {
            cert.sub_certificate = Some(SubCertificate::Solved {
                minimum_ipp: sol.partition.lift(&sub.origin),
                maximum_matching: matching.lift(&sub.origin).edges().to_vec(),
            });
        }
        Ok(sol) => {
            cert.verdict = Verdict::Undecided;
            cert.block_bounds = Some((sol.lower_bound, sol.size()));
        }
        Err(SolveError::BudgetExhausted { lower, upper, incumbent, .. }) => {
            match incumbent {
                Some(inc) if inc.len() < bound => {
                    cert.verdict = Verdict::NotExtremal;
                    cert.case = CertificateCase::Violation;
                    cert.violation = Some(Violation::EvenBlockBelowBound {
                        block: index,
                        ipp: inc.lift(&sub.origin),
                        bound,
                    });
                }
                _ => {
                    cert.verdict = Verdict::Undecided;
                    cert.block_bounds = Some((lower, upper.unwrap_or(bound)));
                }
            }
        }
        Err(SolveError::Graph(e)) => return Err(e),
    }
    Ok(())
}

/// Solves the whole graph to attach a partition smaller than `n - ν` to a
/// NOT_EXTREMAL certificate.
pub fn attach_witness(
    g: &Graph,
    cert: &mut ExtremalityCertificate,
    cfg: &SolverConfig,
) -> std::result::Result<(), SolveError> {
    if cert.verdict != Verdict::NotExtremal {
        return Ok(());
    }
    let bound = g.n() - maximum_matching(g).size();
    let partition = match solve_whole_graph(g, cfg) {
        Ok(sol) => sol.partition,
        Err(SolveError::BudgetExhausted { incumbent: Some(inc), .. }) => inc,
        Err(e) => return Err(e),
    };
    if partition.len() < bound {
        cert.witness_ipp = Some(partition);
    }
    Ok(())
}

/// Per-component certificates plus the overall verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClassification {
    pub verdict: Verdict,
    pub components: Vec<(Vec<usize>, ExtremalityCertificate)>,
}

/// A graph is extremal iff each component is.
pub fn classify_components(g: &Graph, cfg: &SolverConfig) -> Result<ComponentClassification> {
    let mut components = Vec::new();
    for comp in g.components() {
        let sub = g.induced(&comp)?;
        let cert = classify(&sub.graph, cfg)?.lift(&sub.origin);
        components.push((comp, cert));
    }
    let verdict = if components.iter().any(|(_, c)| c.verdict == Verdict::NotExtremal) {
        Verdict::NotExtremal
    } else if components.iter().all(|(_, c)| c.verdict == Verdict::Extremal) {
        Verdict::Extremal
    } else {
        Verdict::Undecided
    };
    Ok(ComponentClassification {
        verdict,
        components,
    })
}

/// Re-checks a certificate against `g` using only decomposition, matching
/// and partition-verification routines (no exact solve).
pub fn recheck(g: &Graph, cert: &ExtremalityCertificate) -> std::result::Result<(), String> {
    let d = block_decomposition(g).map_err(|e| e.to_string())?;
    let listed: Vec<Vec<usize>> = cert.blocks.iter().map(|b| b.vertices.clone()).collect();
    if listed != d.blocks {
        return Err("block list differs from the decomposition".into());
    }
    for b in &cert.blocks {
        let mask = mask_of(&b.vertices);
        if b.odd != (b.vertices.len() % 2 == 1) || b.complete != g.is_clique(mask) {
            return Err(format!("block {:?} summary is wrong", b.vertices));
        }
    }
    let exceptional: Vec<usize> = (0..cert.blocks.len())
        .filter(|&i| !(cert.blocks[i].odd && cert.blocks[i].complete))
        .collect();
    let block_graph = |i: usize| g.induced(&cert.blocks[i].vertices).map_err(|e| e.to_string());
    match (cert.verdict, cert.case) {
        (Verdict::Extremal, CertificateCase::AllOddComplete) => {
            if !exceptional.is_empty() {
                return Err("a block is not odd complete".into());
            }
        }
        (Verdict::Extremal, CertificateCase::OneEvenBlock) => {
            let [i] = exceptional[..] else {
                return Err("expected exactly one exceptional block".into());
            };
            if cert.blocks[i].odd {
                return Err("exceptional block is odd".into());
            }
            let sub = block_graph(i)?;
            let b = &sub.graph;
            match &cert.sub_certificate {
                Some(SubCertificate::EvenComplete) if b.is_clique(b.vertex_mask()) => {}
                Some(SubCertificate::Cycle4) if is_c4(b) => {}
                Some(SubCertificate::Diamond) if is_diamond(b) => {}
                Some(SubCertificate::Solved { minimum_ipp, maximum_matching }) => {
                    let m = Matching::from_edges(g, maximum_matching).map_err(|e| e.to_string())?;
                    if m.saturated() & !mask_of(&cert.blocks[i].vertices) != 0 {
                        return Err("matching leaves the block".into());
                    }
                    let local: Vec<(usize, usize)> = maximum_matching
                        .iter()
                        .map(|&(u, v)| (local_id(&sub, u), local_id(&sub, v)))
                        .collect();
                    let lm = Matching::from_edges(b, &local).map_err(|e| e.to_string())?;
                    if lm.size() != crate::matching::matching_number(b) {
                        return Err("matching is not maximum".into());
                    }
                    let ipp = IsometricPathPartition::new(
                        minimum_ipp
                            .paths()
                            .iter()
                            .map(|p| Path::new(p.vertices().iter().map(|&v| local_id(&sub, v)).collect()))
                            .collect(),
                    );
                    verify_ipp(b, &all_pairs_distances(b), &ipp).map_err(|e| e.to_string())?;
                    if ipp.len() != b.n() - lm.size() {
                        return Err("recorded minimum partition does not meet the bound".into());
                    }
                }
                other => return Err(format!("sub-certificate {other:?} does not fit the block")),
            }
        }
        (Verdict::NotExtremal, CertificateCase::Violation) => match &cert.violation {
            Some(Violation::SeveralExceptionalBlocks { blocks }) => {
                if blocks.len() < 2 || *blocks != exceptional {
                    return Err("exceptional block list is wrong".into());
                }
            }
            Some(Violation::OddNonCompleteBlock { block }) => {
                if exceptional != [*block] || !cert.blocks[*block].odd {
                    return Err("odd exceptional block claim is wrong".into());
                }
            }
            Some(Violation::EvenBlockBelowBound { block, ipp, bound }) => {
                if exceptional != [*block] || cert.blocks[*block].odd {
                    return Err("even exceptional block claim is wrong".into());
                }
                let sub = block_graph(*block)?;
                let b = &sub.graph;
                if *bound != b.n() - crate::matching::matching_number(b) {
                    return Err("bound is wrong".into());
                }
                let local = IsometricPathPartition::new(
                    ipp.paths()
                        .iter()
                        .map(|p| Path::new(p.vertices().iter().map(|&v| local_id(&sub, v)).collect()))
                        .collect(),
                );
                verify_ipp(b, &all_pairs_distances(b), &local).map_err(|e| e.to_string())?;
                if local.len() >= *bound {
                    return Err("partition does not beat the bound".into());
                }
            }
            None => return Err("violation evidence missing".into()),
        },
        (Verdict::Undecided, _) => {}
        (v, c) => return Err(format!("inconsistent verdict {v:?} with case {c:?}")),
    }
    if let Some(w) = &cert.witness_ipp {
        verify_ipp(g, &all_pairs_distances(g), w).map_err(|e| e.to_string())?;
        if w.len() >= g.n() - crate::matching::matching_number(g) {
            return Err("witness does not beat the bound".into());
        }
    }
    Ok(())
}

fn local_id(sub: &InducedSubgraph, v: usize) -> usize {
    sub.origin.iter().position(|&o| o == v).unwrap_or(usize::MAX)
}

/// Minimum partition of a connected extremal graph: a perfect matching
/// when `n` is even; otherwise a perfect matching of `G - u` plus the
/// singleton `u`, with `u` the lowest id.
pub fn construct_minimum_ipp_extremal(
    g: &Graph,
    cert: &ExtremalityCertificate,
) -> Result<IsometricPathPartition> {
    if cert.verdict != Verdict::Extremal {
        return Err(Error::CertificateMismatch(format!(
            "verdict is {:?}, not EXTREMAL",
            cert.verdict
        )));
    }
    g.require_connected()?;
    if g.n() % 2 == 0 {
        let m = maximum_matching(g);
        if !m.is_perfect(g) {
            return Err(Error::CertificateMismatch("even graph has no perfect matching".into()));
        }
        matching_ipp(g, &m)
    } else {
        let u = 0;
        let m = perfect_matching_avoiding(g, u)?.ok_or_else(|| {
            Error::CertificateMismatch(format!("G - {u} has no perfect matching"))
        })?;
        matching_ipp(g, &m)
    }
}

/// `G - {x, y}` for two non-cut vertices of a leaf-clique. Lowers both
/// ipp and ν by exactly one.
pub fn reduce_leaf_clique_pair(
    g: &Graph,
    clique: &[usize],
    x: usize,
    y: usize,
) -> Result<InducedSubgraph> {
    let cut = leaf_clique_cut_vertex(g, clique)?;
    if x == y {
        return Err(Error::NotLeafClique("x and y must be distinct".into()));
    }
    for w in [x, y] {
        if w == cut {
            return Err(Error::NotLeafClique(format!("{w} is the cut vertex of the clique")));
        }
        if !clique.contains(&w) {
            return Err(Error::NotLeafClique(format!("{w} is not in the clique")));
        }
    }
    g.without(&[x, y])
}

/// Removes every vertex of an odd leaf-clique except its cut vertex.
pub fn peel_odd_leaf_clique(g: &Graph, clique: &[usize]) -> Result<InducedSubgraph> {
    let cut = leaf_clique_cut_vertex(g, clique)?;
    if clique.len() % 2 == 0 {
        return Err(Error::NotLeafClique(format!("{clique:?} is even")));
    }
    let gone: Vec<usize> = members(mask_of(clique) & !(1 << cut)).collect();
    g.without(&gone)
}
