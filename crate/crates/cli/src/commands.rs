use std::time::Instant;

use ippkit::solver::Budget;
use ippkit::{
    all_pairs_distances, classify, classify_components, extremal::attach_witness, ipp_exact,
    is_biconnected, maximum_matching, verify_ipp, Graph, IsometricPathPartition, SolveError,
    SolverConfig, Verdict,
};
use rayon::prelude::*;

use crate::input::InputGraph;
use crate::report::{Record, RunReport, Status};

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub solver: SolverConfig,
    pub jobs: usize,
    pub witness: bool,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            jobs: 1,
            witness: false,
            timing: false,
        }
    }
}

/// Maps `f` over `items` on `jobs` threads, keeping input order.
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(|| items.par_iter().map(&f).collect())
}

fn timed(opts: &RunOptions, f: impl FnOnce() -> Option<Record>) -> Option<Record> {
    let start = Instant::now();
    let mut record = f()?;
    if opts.timing {
        record.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Some(record)
}

/// Sum over components of `ceil(|C| / (diam(C) + 1))`.
pub fn component_lower_bound(g: &Graph) -> usize {
    g.components()
        .iter()
        .map(|c| {
            let sub = g.induced(c).expect("component ids are valid");
            let d = all_pairs_distances(&sub.graph);
            c.len().div_ceil(d.diameter() as usize + 1)
        })
        .sum()
}

/// Per-component solve that keeps partial results when a budget runs out.
pub struct ComponentSolve {
    pub partition: IsometricPathPartition,
    /// Sum of proven component optima and, elsewhere, component lower bounds.
    pub lower: usize,
    pub proven: bool,
    pub overflow: bool,
    pub budget: Option<Budget>,
}

pub fn solve_components(g: &Graph, cfg: &SolverConfig) -> Result<ComponentSolve, ippkit::Error> {
    let mut parts = Vec::new();
    let mut out = ComponentSolve {
        partition: IsometricPathPartition::default(),
        lower: 0,
        proven: true,
        overflow: false,
        budget: None,
    };
    for comp in g.components() {
        let sub = g.induced(&comp)?;
        match ipp_exact(&sub.graph, cfg) {
            Ok(sol) => {
                out.lower += if sol.proven { sol.size() } else { sol.lower_bound };
                out.proven &= sol.proven;
                out.overflow |= sol.path_overflow;
                if !sol.proven {
                    out.budget.get_or_insert(Budget::PathCap);
                }
                parts.push(sol.partition.lift(&sub.origin));
            }
            Err(SolveError::BudgetExhausted {
                budget,
                lower,
                incumbent,
                ..
            }) => {
                out.lower += lower;
                out.proven = false;
                out.budget.get_or_insert(budget);
                let inc = incumbent.expect("whole-graph solves keep an incumbent");
                parts.push(inc.lift(&sub.origin));
            }
            Err(SolveError::Graph(e)) => return Err(e),
        }
    }
    out.partition = IsometricPathPartition::concat(parts);
    Ok(out)
}

fn exact_record(input: &InputGraph, opts: &RunOptions) -> Record {
    let g = match &input.graph {
        Ok(g) => g,
        Err(e) => return Record::error(&input.id, e.clone()),
    };
    let nu = maximum_matching(g).size();
    let mut rec = Record::blank(&input.id, g, nu);
    let solved = match solve_components(g, &opts.solver) {
        Ok(s) => s,
        Err(e) => return Record::error(&input.id, e.to_string()),
    };
    if let Err(defect) = verify_ipp(g, &all_pairs_distances(g), &solved.partition) {
        rec.status = Status::Error;
        rec.invariant_failure = true;
        rec.error = Some(format!("solver returned an invalid partition: {}", defect.code()));
        return rec;
    }
    rec.path_overflow = solved.overflow;
    if solved.proven {
        rec.ipp = Some(solved.partition.len());
        rec.lower_bound = Some(component_lower_bound(g));
        rec.upper_bound = Some(g.n() - nu);
    } else {
        rec.status = Status::BoundsOnly;
        rec.lower_bound = Some(solved.lower);
        rec.upper_bound = Some(solved.partition.len());
        rec.budget_exhausted = solved.budget;
    }
    rec.partition = Some(solved.partition);
    rec
}

/// Minimum ipp of every input graph; components are solved separately.
pub fn cmd_exact(inputs: &[InputGraph], opts: &RunOptions) -> RunReport {
    let records = par_map(inputs, opts.jobs, |input| {
        timed(opts, || Some(exact_record(input, opts))).expect("always a record")
    });
    RunReport { records }
}

fn classify_record(input: &InputGraph, opts: &RunOptions) -> Record {
    let g = match &input.graph {
        Ok(g) => g,
        Err(e) => return Record::error(&input.id, e.clone()),
    };
    let nu = maximum_matching(g).size();
    let mut rec = Record::blank(&input.id, g, nu);
    let bound = g.n() - nu;
    let (verdict, witness, certificate) = if g.is_connected() {
        let mut cert = match classify(g, &opts.solver) {
            Ok(c) => c,
            Err(e) => return Record::error(&input.id, e.to_string()),
        };
        if opts.witness {
            if let Err(e) = attach_witness(g, &mut cert, &opts.solver) {
                return Record::error(&input.id, e.to_string());
            }
        }
        if let Err(why) = ippkit::extremal::recheck(g, &cert) {
            rec.status = Status::Error;
            rec.invariant_failure = true;
            rec.error = Some(format!("certificate failed its recheck: {why}"));
            return rec;
        }
        let witness = cert.witness_ipp.as_ref().map(IsometricPathPartition::len);
        (cert.verdict, witness, serde_json::to_value(&cert))
    } else {
        let mut cc = match classify_components(g, &opts.solver) {
            Ok(c) => c,
            Err(e) => return Record::error(&input.id, e.to_string()),
        };
        let mut witness = None;
        if opts.witness {
            for (comp, cert) in &mut cc.components {
                let sub = g.induced(comp).expect("component ids are valid");
                let mut local = classify(&sub.graph, &opts.solver).expect("classified above");
                if let Err(e) = attach_witness(&sub.graph, &mut local, &opts.solver) {
                    return Record::error(&input.id, e.to_string());
                }
                cert.witness_ipp = local.witness_ipp.map(|w| w.lift(&sub.origin));
            }
            if cc.verdict == Verdict::NotExtremal {
                witness = Some(bound - 1);
            }
        }
        (cc.verdict, witness, serde_json::to_value(&cc))
    };
    rec.verdict = Some(verdict);
    rec.certificate = Some(certificate.expect("certificates serialize"));
    rec.lower_bound = Some(component_lower_bound(g));
    match verdict {
        Verdict::Extremal => {
            rec.ipp = Some(bound);
            rec.upper_bound = Some(bound);
        }
        Verdict::NotExtremal => rec.upper_bound = Some(witness.unwrap_or(bound - 1)),
        Verdict::Undecided => {
            rec.status = Status::BoundsOnly;
            rec.upper_bound = Some(bound);
            rec.budget_exhausted = Some(Budget::Nodes);
        }
    }
    if rec.ipp.is_none() && rec.status == Status::Proven && rec.lower_bound == rec.upper_bound {
        rec.ipp = rec.upper_bound;
    }
    rec
}

/// Block-based extremality verdict per graph; no whole-graph solve unless
/// `witness` is set.
pub fn cmd_classify(inputs: &[InputGraph], opts: &RunOptions) -> RunReport {
    let records = par_map(inputs, opts.jobs, |input| {
        timed(opts, || Some(classify_record(input, opts))).expect("always a record")
    });
    RunReport { records }
}

fn survey_record(input: &InputGraph, opts: &RunOptions) -> Option<Record> {
    let g = match &input.graph {
        Ok(g) => g,
        Err(e) => return Some(Record::error(&input.id, e.clone())),
    };
    if g.n() % 2 != 0 || !g.is_connected() || !is_biconnected(g) {
        return None;
    }
    let rec = exact_record(input, opts);
    match rec.status {
        Status::Proven if rec.ipp == rec.upper_bound => Some(rec),
        Status::Proven => None,
        _ => Some(rec),
    }
}

/// Connected biconnected even graphs whose ipp meets `n - ν`. Graphs that
/// ran out of budget are reported as BOUNDS_ONLY.
pub fn cmd_survey(inputs: &[InputGraph], opts: &RunOptions) -> RunReport {
    let records = par_map(inputs, opts.jobs, |input| timed(opts, || survey_record(input, opts)))
        .into_iter()
        .flatten()
        .collect();
    RunReport { records }
}
