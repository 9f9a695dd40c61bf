//! Isometric path enumeration and exact minimum isometric path partitions
//! by branch-and-bound over vertex bitsets.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::distance::{all_pairs_distances, DistanceMatrix, INFINITE};
use crate::error::Error;
use crate::graph::{Graph, Path, VertexSet};
use crate::matching::{matching_ipp, maximum_matching};

/// Vertex-disjoint isometric paths covering every vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IsometricPathPartition {
    paths: Vec<Path>,
}

impl IsometricPathPartition {
    pub fn new(paths: Vec<Path>) -> Self {
        Self { paths }
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn into_paths(self) -> Vec<Path> {
        self.paths
    }

    /// Maps vertex ids through `origin`.
    pub fn lift(&self, origin: &[usize]) -> Self {
        Self::new(
            self.paths
                .iter()
                .map(|p| Path::new(p.vertices().iter().map(|&v| origin[v]).collect()))
                .collect(),
        )
    }

    /// Path containing `v`, if any.
    pub fn path_of(&self, v: usize) -> Option<&Path> {
        self.paths.iter().find(|p| p.vertices().contains(&v))
    }

    /// Merges partitions of disjoint vertex sets.
    pub fn concat(parts: impl IntoIterator<Item = IsometricPathPartition>) -> Self {
        Self::new(parts.into_iter().flat_map(|p| p.paths).collect())
    }
}

impl fmt::Display for IsometricPathPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.paths.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Resource caps for the exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Shortest paths kept per unordered vertex pair.
    pub max_paths_per_pair: usize,
    /// Search-tree nodes per solve.
    pub node_budget: u64,
    /// Wall-clock cap per solve. `Duration::MAX` disables clock reads.
    pub time_budget: Duration,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_paths_per_pair: 10_000,
            node_budget: 10_000_000,
            time_budget: Duration::from_secs(60),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.max_paths_per_pair == 0 || self.node_budget == 0 || self.time_budget.is_zero() {
            return Err(Error::InvalidConfig("solver budgets must be positive".into()));
        }
        Ok(())
    }
}

/// Which budget stopped a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Budget {
    Nodes,
    Time,
    /// Path enumeration was truncated, so absence of a solution is unproven.
    PathCap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] Error),
    #[error("{budget:?} budget exhausted (lower bound {lower}, upper bound {upper:?})")]
    BudgetExhausted {
        budget: Budget,
        lower: usize,
        upper: Option<usize>,
        incumbent: Option<IsometricPathPartition>,
    },
}

/// Isometric paths of a graph, each reported once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEnumeration {
    pub paths: Vec<Path>,
    /// Set when some vertex pair had more shortest paths than the cap.
    pub overflow: bool,
}

/// All isometric paths up to reversal: the `n` singletons, then for each
/// pair `a < b` every shortest `a`-`b` path, starting at `a`.
pub fn enumerate_isometric_paths(
    g: &Graph,
    d: &DistanceMatrix,
    cfg: &SolverConfig,
) -> Result<PathEnumeration, Error> {
    g.require_connected()?;
    cfg.validate()?;
    Ok(enumerate_paths(g, d, cfg.max_paths_per_pair, None))
}

/// Enumeration without the connectivity requirement. Paths containing
/// `exclude_internal` as an internal vertex are skipped.
fn enumerate_paths(
    g: &Graph,
    d: &DistanceMatrix,
    cap: usize,
    exclude_internal: Option<usize>,
) -> PathEnumeration {
    let n = g.n();
    let mut paths: Vec<Path> = (0..n).map(Path::single).collect();
    let mut overflow = false;
    let mut stack = Vec::with_capacity(n);
    for a in 0..n {
        for b in a + 1..n {
            if d.get(a, b) >= INFINITE {
                continue;
            }
            stack.clear();
            stack.push(a);
            let mut found = 0;
            let complete = walk_geodesics(g, d, b, &mut stack, &mut |p| {
                if found == cap {
                    return false;
                }
                let internal_hit = exclude_internal
                    .is_some_and(|x| p[1..p.len() - 1].contains(&x));
                if !internal_hit {
                    paths.push(Path::new(p.to_vec()));
                }
                found += 1;
                true
            });
            overflow |= !complete;
        }
    }
    PathEnumeration { paths, overflow }
}

/// Depth-first traversal of the shortest-path predecessor structure towards
/// `target`. Returns false if `emit` asked to stop.
fn walk_geodesics(
    g: &Graph,
    d: &DistanceMatrix,
    target: usize,
    stack: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let x = *stack.last().expect("non-empty");
    if x == target {
        return emit(stack);
    }
    let want = d.get(x, target) - 1;
    for w in g.neighbors(x) {
        if d.get(w, target) == want {
            stack.push(w);
            let go_on = walk_geodesics(g, d, target, stack, emit);
            stack.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// `ceil(n / (diam + 1))`: no isometric path has more than `diam + 1` vertices.
pub fn ipp_lower_bound(g: &Graph, d: &DistanceMatrix) -> Result<usize, Error> {
    g.require_connected()?;
    Ok(g.n().div_ceil(d.diameter() as usize + 1))
}

/// Why a partition failed verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IppDefect {
    NotAPath { index: usize },
    NotIsometric { index: usize },
    Overlap { vertex: usize },
    MissingVertex { vertex: usize },
}

impl IppDefect {
    pub fn code(&self) -> &'static str {
        match self {
            IppDefect::NotAPath { .. } => "NOT_A_PATH",
            IppDefect::NotIsometric { .. } => "NOT_ISOMETRIC",
            IppDefect::Overlap { .. } => "OVERLAP",
            IppDefect::MissingVertex { .. } => "MISSING_VERTEX",
        }
    }
}

impl fmt::Display for IppDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IppDefect::NotAPath { index } => write!(f, "NOT_A_PATH (path #{index})"),
            IppDefect::NotIsometric { index } => write!(f, "NOT_ISOMETRIC (path #{index})"),
            IppDefect::Overlap { vertex } => write!(f, "OVERLAP (vertex {vertex})"),
            IppDefect::MissingVertex { vertex } => write!(f, "MISSING_VERTEX (vertex {vertex})"),
        }
    }
}

/// Checks that the paths are valid, isometric, pairwise disjoint and cover `V(g)`.
pub fn verify_ipp(
    g: &Graph,
    d: &DistanceMatrix,
    ipp: &IsometricPathPartition,
) -> Result<(), IppDefect> {
    let mut covered = 0u64;
    for (index, p) in ipp.paths().iter().enumerate() {
        if p.validate(g).is_err() {
            return Err(IppDefect::NotAPath { index });
        }
        let (a, b) = p.endpoints().expect("validated");
        if p.length() as u32 != d.get(a, b) {
            return Err(IppDefect::NotIsometric { index });
        }
        let m = p.mask();
        if covered & m != 0 {
            let vertex = (covered & m).trailing_zeros() as usize;
            return Err(IppDefect::Overlap { vertex });
        }
        covered |= m;
    }
    let missing = g.vertex_mask() & !covered;
    if missing != 0 {
        return Err(IppDefect::MissingVertex {
            vertex: missing.trailing_zeros() as usize,
        });
    }
    Ok(())
}

/// Outcome of an exact solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IppSolution {
    pub partition: IsometricPathPartition,
    /// False when path enumeration was truncated and the result could not
    /// be matched against the lower bound; the size is then an upper bound.
    pub proven: bool,
    /// `ceil(n / (diam + 1))`, summed over components.
    pub lower_bound: usize,
    pub nodes: u64,
    pub path_overflow: bool,
}

impl IppSolution {
    pub fn size(&self) -> usize {
        self.partition.len()
    }
}

const MEMO_LIMIT: usize = 1 << 21;
const CLOCK_INTERVAL: u64 = 1024;

struct Search {
    masks: Vec<VertexSet>,
    /// Candidate path indices per vertex, longest first.
    by_vertex: Vec<Vec<usize>>,
    /// Component masks with `diam + 1` of each.
    comps: Vec<(VertexSet, usize)>,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    /// Only solutions with fewer paths than this are recorded.
    best_len: usize,
    /// Stop as soon as a solution of this size is recorded.
    target: usize,
    memo: HashMap<VertexSet, usize>,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
    stopped: Option<Budget>,
}

impl Search {
    fn new(
        g: &Graph,
        d: &DistanceMatrix,
        paths: &[Path],
        cfg: &SolverConfig,
        best_len: usize,
        target: usize,
    ) -> Self {
        let masks: Vec<VertexSet> = paths.iter().map(Path::mask).collect();
        let mut by_vertex = vec![Vec::new(); g.n()];
        for (i, p) in paths.iter().enumerate() {
            for &v in p.vertices() {
                by_vertex[v].push(i);
            }
        }
        for list in &mut by_vertex {
            // stable: ties keep enumeration order
            list.sort_by_key(|&i| std::cmp::Reverse(masks[i].count_ones()));
        }
        let comps = g
            .components()
            .into_iter()
            .map(|c| {
                let mask = crate::graph::mask_of(&c);
                let diam = c
                    .iter()
                    .flat_map(|&u| c.iter().map(move |&v| (u, v)))
                    .map(|(u, v)| d.get(u, v))
                    .max()
                    .unwrap_or(0);
                (mask, diam as usize + 1)
            })
            .collect();
        let deadline = (cfg.time_budget != Duration::MAX)
            .then(|| Instant::now().checked_add(cfg.time_budget))
            .flatten();
        Self {
            masks,
            by_vertex,
            comps,
            chosen: Vec::new(),
            best: None,
            best_len,
            target,
            memo: HashMap::new(),
            nodes: 0,
            node_budget: cfg.node_budget,
            deadline,
            stopped: None,
        }
    }

    fn lower_bound(&self, uncovered: VertexSet) -> usize {
        self.comps
            .iter()
            .map(|&(mask, width)| ((uncovered & mask).count_ones() as usize).div_ceil(width))
            .sum()
    }

    fn done(&self) -> bool {
        self.stopped.is_some() || (self.best.is_some() && self.best_len <= self.target)
    }

    fn run(&mut self, uncovered: VertexSet) {
        if uncovered == 0 {
            if self.chosen.len() < self.best_len {
                self.best_len = self.chosen.len();
                self.best = Some(self.chosen.clone());
            }
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.stopped = Some(Budget::Nodes);
            return;
        }
        if self.nodes % CLOCK_INTERVAL == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.stopped = Some(Budget::Time);
                    return;
                }
            }
        }
        let depth = self.chosen.len();
        if depth + self.lower_bound(uncovered) >= self.best_len {
            return;
        }
        // A state reached before with no more paths was already explored
        // against an incumbent at least as weak as the current one.
        match self.memo.get(&uncovered) {
            Some(&seen) if seen <= depth => return,
            _ => {
                if self.memo.len() < MEMO_LIMIT || self.memo.contains_key(&uncovered) {
                    self.memo.insert(uncovered, depth);
                }
            }
        }
        let v = uncovered.trailing_zeros() as usize;
        for k in 0..self.by_vertex[v].len() {
            let idx = self.by_vertex[v][k];
            let mask = self.masks[idx];
            if mask & !uncovered != 0 {
                continue;
            }
            self.chosen.push(idx);
            self.run(uncovered & !mask);
            self.chosen.pop();
            if self.done() {
                return;
            }
        }
    }
}

/// Minimum isometric path partition of a connected graph.
///
/// The incumbent starts as the matching partition (size `n - ν`); the search
/// branches on the lowest uncovered vertex over every enumerated isometric
/// path containing it that lies entirely in the uncovered set, and prunes
/// with `ceil(uncovered / (diam + 1))`.
pub fn ipp_exact(g: &Graph, cfg: &SolverConfig) -> Result<IppSolution, SolveError> {
    g.require_connected()?;
    solve_whole_graph(g, cfg)
}

/// [`ipp_exact`] without the connectivity precondition: searches the
/// whole graph at once, bounding per component.
pub fn solve_whole_graph(g: &Graph, cfg: &SolverConfig) -> Result<IppSolution, SolveError> {
    cfg.validate()?;
    let d = all_pairs_distances(g);
    let enumeration = enumerate_paths(g, &d, cfg.max_paths_per_pair, None);
    let incumbent = matching_ipp(g, &maximum_matching(g))?;
    let mut search = Search::new(g, &d, &enumeration.paths, cfg, incumbent.len(), 0);
    let floor = search.lower_bound(g.vertex_mask());
    search.target = floor;
    if incumbent.len() > floor {
        search.run(g.vertex_mask());
    }
    let partition = match &search.best {
        Some(idx) => {
            IsometricPathPartition::new(idx.iter().map(|&i| enumeration.paths[i].clone()).collect())
        }
        None => incumbent,
    };
    if let Some(budget) = search.stopped {
        return Err(SolveError::BudgetExhausted {
            budget,
            lower: floor,
            upper: Some(partition.len()),
            incumbent: Some(partition),
        });
    }
    let proven = !enumeration.overflow || partition.len() == floor;
    Ok(IppSolution {
        partition,
        proven,
        lower_bound: floor,
        nodes: search.nodes,
        path_overflow: enumeration.overflow,
    })
}

/// Solves each component separately and concatenates the optima; the total
/// is optimal for the whole graph because no path crosses components.
pub fn ipp_by_components(g: &Graph, cfg: &SolverConfig) -> Result<IppSolution, SolveError> {
    let mut parts = Vec::new();
    let (mut proven, mut lower, mut nodes, mut overflow) = (true, 0, 0, false);
    for comp in g.components() {
        let sub = g.induced(&comp)?;
        let sol = ipp_exact(&sub.graph, cfg)?;
        proven &= sol.proven;
        lower += sol.lower_bound;
        nodes += sol.nodes;
        overflow |= sol.path_overflow;
        parts.push(sol.partition.lift(&sub.origin));
    }
    Ok(IppSolution {
        partition: IsometricPathPartition::concat(parts),
        proven,
        lower_bound: lower,
        nodes,
        path_overflow: overflow,
    })
}

/// Searches for an IPP of size at most ν(g) in which `v` is an endpoint of
/// its path. Returns `None` when provably none exists.
pub fn find_v_extendable_ipp(
    g: &Graph,
    v: usize,
    cfg: &SolverConfig,
) -> Result<Option<IsometricPathPartition>, SolveError> {
    g.check_vertex(v)?;
    g.require_connected()?;
    cfg.validate()?;
    let nu = maximum_matching(g).size();
    if nu == 0 {
        return Ok(None);
    }
    let d = all_pairs_distances(g);
    let enumeration = enumerate_paths(g, &d, cfg.max_paths_per_pair, Some(v));
    let mut search = Search::new(g, &d, &enumeration.paths, cfg, nu + 1, nu);
    search.run(g.vertex_mask());
    if let Some(idx) = search.best {
        return Ok(Some(IsometricPathPartition::new(
            idx.iter().map(|&i| enumeration.paths[i].clone()).collect(),
        )));
    }
    let budget = search
        .stopped
        .or(enumeration.overflow.then_some(Budget::PathCap));
    match budget {
        Some(budget) => Err(SolveError::BudgetExhausted {
            budget,
            lower: search.lower_bound(g.vertex_mask()),
            upper: None,
            incumbent: None,
        }),
        None => Ok(None),
    }
}
