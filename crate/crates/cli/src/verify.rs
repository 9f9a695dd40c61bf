//! Cross-module invariant suites run over a graph6 corpus.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use ippkit::blocks::is_diamond_free_chordal;
use ippkit::graph::mask_of;
use ippkit::matching::maximum_matching_from;
use ippkit::oracle::ORACLE_MAX_VERTICES;
use ippkit::solver::solve_whole_graph;
use ippkit::{
    all_pairs_distances, block_decomposition, classify, classify_components,
    construct_minimum_ipp_extremal, count_even_blocks, encode_graph6, find_v_extendable_ipp,
    ipp_bruteforce_oracle, is_biconnected, is_block_graph, is_mixed_on_edge, maximum_matching,
    perfect_matching_avoiding, unsaturated_vertices, Graph, Matching, SolveError, SolverConfig,
    Verdict,
};
use serde::Serialize;

use crate::commands::{component_lower_bound, par_map, solve_components, RunOptions};
use crate::input::{parse_graph6_stream, InputGraph};
use crate::report::{EXIT_BUDGET, EXIT_INVARIANT, EXIT_OK, EXIT_PARSE};

pub const FAMILIES: [&str; 12] = [
    "matching-bound-sandwich",
    "oracle-agreement",
    "block-characterization",
    "component-additivity",
    "even-block-parity",
    "block-graph-equivalence",
    "block-graph-extremality",
    "unsaturated-not-mixed",
    "odd-extremal-structure",
    "extremal-construction",
    "v-extendable",
    "expected-values",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyResult {
    pub family: &'static str,
    pub status: FamilyStatus,
    pub checked: usize,
    pub counterexample: Option<String>,
    pub input_id: Option<String>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub graphs: usize,
    pub parse_errors: Vec<String>,
    pub budget_exhausted: usize,
    pub families: Vec<FamilyResult>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if !self.parse_errors.is_empty() {
            EXIT_PARSE
        } else if self.families.iter().any(|f| f.status == FamilyStatus::Fail) {
            EXIT_INVARIANT
        } else if self.budget_exhausted > 0 {
            EXIT_BUDGET
        } else {
            EXIT_OK
        }
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.parse_errors {
            out.push_str(&serde_json::json!({ "status": "ERROR", "error": e }).to_string());
            out.push('\n');
        }
        for f in &self.families {
            out.push_str(&serde_json::to_string(f).expect("results serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for e in &self.parse_errors {
            let _ = writeln!(out, "ERROR  {e}");
        }
        for f in &self.families {
            let status = match f.status {
                FamilyStatus::Pass => "PASS",
                FamilyStatus::Fail => "FAIL",
                FamilyStatus::Skip => "SKIP",
            };
            let _ = write!(out, "{status:<4}  {:<24} {:>7}", f.family, f.checked);
            if let Some(g6) = &f.counterexample {
                let _ = write!(
                    out,
                    "  counterexample {g6} ({}): {}",
                    f.input_id.as_deref().unwrap_or("?"),
                    f.detail.as_deref().unwrap_or("")
                );
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} graphs, {} budget-exhausted",
            self.graphs, self.budget_exhausted
        );
        out
    }
}

/// `None` means the family does not apply to this graph.
type Check = Option<Result<(), String>>;

struct GraphOutcome {
    checks: [Check; 12],
    budget: bool,
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn avoided_vertex_matchings(g: &Graph) -> Vec<Matching> {
    let mut out = vec![maximum_matching(g)];
    if g.n() > 1 {
        for u in 0..g.n() {
            let sub = g.without(&[u]).expect("vertex in range");
            let seed = maximum_matching(&sub.graph).lift(&sub.origin);
            out.push(maximum_matching_from(g, &seed).expect("seed is a matching"));
        }
    }
    out
}

fn check_graph(g: &Graph, annotation: Option<&str>, cfg: &SolverConfig) -> GraphOutcome {
    let mut checks: [Check; 12] = Default::default();
    let mut budget = false;
    let n = g.n();
    let nu = maximum_matching(g).size();
    let bound = n - nu;
    let connected = g.is_connected();

    let exact = match solve_components(g, cfg) {
        Ok(s) if s.proven => Some(s.partition.len()),
        Ok(_) => {
            budget = true;
            None
        }
        Err(e) => {
            checks[0] = Some(Err(e.to_string()));
            return GraphOutcome { checks, budget };
        }
    };

    if let Some(ipp) = exact {
        let lower = component_lower_bound(g);
        checks[0] = Some(ensure(lower <= ipp && ipp <= bound, || {
            format!("expected {lower} <= ipp {ipp} <= {bound}")
        }));
        if n <= ORACLE_MAX_VERTICES {
            let oracle = ipp_bruteforce_oracle(g).expect("size checked");
            checks[1] = Some(ensure(oracle == ipp, || format!("exact {ipp}, oracle {oracle}")));
        }
        if let Some(expected) = annotation {
            checks[11] = Some(match expected.parse::<usize>() {
                Ok(want) => ensure(want == ipp, || format!("expected {want}, solver gives {ipp}")),
                Err(_) => Err(format!("annotation {expected:?} is not an integer")),
            });
        }
    }
    let extremal = exact.map(|ipp| ipp == bound);

    if !connected {
        if let Some(ext) = extremal {
            checks[3] = Some(match (solve_whole_graph(g, cfg), classify_components(g, cfg)) {
                (Ok(whole), Ok(cc)) => ensure(whole.proven && whole.size() == exact.unwrap(), || {
                    format!("whole-graph {} vs component sum {}", whole.size(), exact.unwrap())
                })
                .and_then(|()| {
                    let conj = cc.components.iter().all(|(_, c)| c.is_extremal());
                    ensure(conj == ext && (cc.verdict == Verdict::Extremal) == ext, || {
                        format!("component verdicts {conj}, whole graph extremal {ext}")
                    })
                }),
                (Err(SolveError::BudgetExhausted { .. }), _) => {
                    budget = true;
                    return GraphOutcome { checks, budget };
                }
                (Err(e), _) => Err(e.to_string()),
                (_, Err(e)) => Err(e.to_string()),
            });
        }
        return GraphOutcome { checks, budget };
    }

    let d = block_decomposition(g).expect("connected");
    let even_blocks = count_even_blocks(&d);
    checks[4] = Some(ensure(n % 2 != even_blocks % 2, || {
        format!("n = {n} with {even_blocks} even blocks")
    }));
    let block_graph = is_block_graph(g).expect("connected");
    let dfc = is_diamond_free_chordal(g).expect("connected");
    checks[5] = Some(ensure(block_graph == dfc, || {
        format!("block graph {block_graph}, diamond-free chordal {dfc}")
    }));

    let cert = match classify(g, cfg) {
        Ok(c) => c,
        Err(e) => {
            checks[2] = Some(Err(e.to_string()));
            return GraphOutcome { checks, budget };
        }
    };
    if cert.verdict == Verdict::Undecided {
        budget = true;
    } else if let Some(ext) = extremal {
        checks[2] = Some(
            ensure(cert.is_extremal() == ext, || {
                format!("classify says {:?}, exact ipp says extremal = {ext}", cert.verdict)
            })
            .and_then(|()| ippkit::extremal::recheck(g, &cert)),
        );
        if block_graph {
            checks[6] = Some(ensure(ext == (even_blocks <= 1), || {
                format!("extremal = {ext} with {even_blocks} even blocks")
            }));
        }
    }

    if extremal == Some(true) {
        checks[7] = Some((|| {
            for m in avoided_vertex_matchings(g) {
                let unsat = unsaturated_vertices(g, &m).map_err(|e| e.to_string())?;
                ensure(unsat.len() <= 1, || format!("{} unsaturated vertices", unsat.len()))?;
                for &u in &unsat {
                    for &e in m.edges() {
                        let mixed = is_mixed_on_edge(g, u, e).map_err(|e| e.to_string())?;
                        ensure(!mixed, || format!("unsaturated {u} is mixed on {e:?}"))?;
                    }
                }
            }
            Ok(())
        })());
        if n % 2 == 1 {
            checks[8] = Some((|| {
                for u in 0..n {
                    let found = perfect_matching_avoiding(g, u).map_err(|e| e.to_string())?;
                    ensure(found.is_some(), || format!("G - {u} has no perfect matching"))?;
                }
                let odd_complete =
                    |b: &Vec<usize>| b.len() % 2 == 1 && g.is_clique(mask_of(b));
                ensure(d.blocks.iter().all(odd_complete), || {
                    "a block is not an odd complete graph".into()
                })
            })());
        }
        if cert.is_extremal() {
            checks[9] = Some(match construct_minimum_ipp_extremal(g, &cert) {
                Ok(p) => ippkit::verify_ipp(g, &all_pairs_distances(g), &p)
                    .map_err(|e| e.code().to_owned())
                    .and_then(|()| {
                        ensure(p.len() == bound, || format!("size {} instead of {bound}", p.len()))
                    }),
                Err(e) => Err(e.to_string()),
            });
        }
    }

    if is_biconnected(g) && exact.is_some_and(|ipp| ipp <= nu) {
        let dist = all_pairs_distances(g);
        let mut result = Ok(());
        for v in 0..n {
            if !matches!(perfect_matching_avoiding(g, v), Ok(Some(_))) {
                continue;
            }
            let step = match find_v_extendable_ipp(g, v, cfg) {
                Ok(Some(p)) => ippkit::verify_ipp(g, &dist, &p)
                    .map_err(|e| e.code().to_owned())
                    .and_then(|()| {
                        let ok = p.len() <= nu && p.path_of(v).is_some_and(|q| q.has_endpoint(v));
                        ensure(ok, || format!("{v} is not an endpoint or size exceeds {nu}"))
                    }),
                Ok(None) => Err(format!("no {v}-extendable partition")),
                Err(SolveError::BudgetExhausted { .. }) => {
                    budget = true;
                    continue;
                }
                Err(e) => Err(e.to_string()),
            };
            if step.is_err() {
                result = step;
                break;
            }
        }
        checks[10] = Some(result);
    }

    GraphOutcome { checks, budget }
}

/// Resolves `bundled:N` (connected graphs on 1..=N vertices) or reads files.
pub fn load_corpus(sources: &[String]) -> Result<Vec<InputGraph>> {
    let mut out = Vec::new();
    for source in sources {
        if let Some(n) = source.strip_prefix("bundled:") {
            let max: usize = n.parse().map_err(|_| anyhow::anyhow!("bad corpus size {n:?}"))?;
            let lines = ippkit::corpus::bundled_connected_up_to(max)?;
            out.extend(parse_graph6_stream(source, &lines.join("\n")));
        } else {
            out.extend(crate::input::load(std::slice::from_ref(source), Some(crate::input::Format::Graph6))?);
        }
    }
    if out.is_empty() {
        bail!("corpus is empty");
    }
    Ok(out)
}

pub fn cmd_verify(corpus: &[InputGraph], opts: &RunOptions) -> VerifyReport {
    let outcomes = par_map(corpus, opts.jobs, |input| match &input.graph {
        Ok(g) => Ok(check_graph(g, input.annotation.as_deref(), &opts.solver)),
        Err(e) => Err(format!("{}: {e}", input.id)),
    });
    let mut report = VerifyReport {
        graphs: corpus.len(),
        parse_errors: Vec::new(),
        budget_exhausted: 0,
        families: FAMILIES
            .iter()
            .map(|&family| FamilyResult {
                family,
                status: FamilyStatus::Skip,
                checked: 0,
                counterexample: None,
                input_id: None,
                detail: None,
            })
            .collect(),
    };
    for (input, outcome) in corpus.iter().zip(outcomes) {
        let outcome = match outcome {
            Ok(o) => o,
            Err(e) => {
                report.parse_errors.push(e);
                continue;
            }
        };
        report.budget_exhausted += usize::from(outcome.budget);
        for (fam, check) in report.families.iter_mut().zip(outcome.checks) {
            let Some(check) = check else { continue };
            fam.checked += 1;
            match check {
                Ok(()) if fam.status == FamilyStatus::Skip => fam.status = FamilyStatus::Pass,
                Ok(()) => {}
                Err(why) if fam.status != FamilyStatus::Fail => {
                    fam.status = FamilyStatus::Fail;
                    let g = input.graph.as_ref().expect("parsed");
                    fam.counterexample = encode_graph6(g).ok();
                    fam.input_id = Some(input.id.clone());
                    fam.detail = Some(why);
                }
                Err(_) => {}
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_passes() {
        let corpus = load_corpus(&["bundled:5".into()]).unwrap();
        let r = cmd_verify(&corpus, &RunOptions::default());
        assert_eq!(r.exit_code(), 0, "{}", r.to_table());
        let status = |name: &str| r.families.iter().find(|f| f.family == name).unwrap().status;
        assert_eq!(status("oracle-agreement"), FamilyStatus::Pass);
        assert_eq!(status("expected-values"), FamilyStatus::Skip);
    }

    #[test]
    fn corrupted_expectation_fails() {
        let corpus = parse_graph6_stream("c", "C~ 2\nBw 2\nC^ 9\n");
        let r = cmd_verify(&corpus, &RunOptions::default());
        let fam = r.families.iter().find(|f| f.family == "expected-values").unwrap();
        assert_eq!(fam.status, FamilyStatus::Fail);
        assert_eq!(fam.counterexample.as_deref(), Some("C^"));
        assert_eq!(fam.input_id.as_deref(), Some("c:3"));
        assert_eq!(r.exit_code(), EXIT_INVARIANT);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        assert!(load_corpus(&[]).is_err());
        assert!(load_corpus(&["bundled:0".into()]).is_err());
    }
}
