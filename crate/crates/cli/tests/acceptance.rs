//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use ippkit::blocks::leaf_clique_cut_vertex;
use ippkit::solver::solve_whole_graph;
use ippkit::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn corpus(max_n: usize) -> Vec<(&'static str, Graph)> {
    ippkit::corpus::bundled_connected_up_to(max_n)
        .unwrap()
        .into_iter()
        .map(|l| (l, decode_graph6(l).unwrap()))
        .collect()
}

fn nu(g: &Graph) -> usize {
    maximum_matching(g).size()
}

fn exact(g: &Graph) -> usize {
    let sol = ipp_exact(g, &cfg()).unwrap();
    assert!(sol.proven);
    sol.size()
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p = rng.gen_range(0.0..0.6);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

fn pendant_hexagons() -> Outcome {
    let start = Instant::now();
    let g = exact(&fixtures::hexagon_pendants());
    let h = exact(&fixtures::hexagon_pendants_cut());
    let took = start.elapsed();
    if g == 2 && h == 3 && took < Duration::from_secs(1) {
        Ok(format!("ipp(G) = {g}, ipp(H) = {h} in {took:.2?}"))
    } else {
        Err(format!("ipp(G) = {g}, ipp(H) = {h} in {took:.2?}"))
    }
}

fn block_characterization() -> Outcome {
    let check = |max_n: usize| -> Result<(usize, Duration), String> {
        let start = Instant::now();
        let graphs = corpus(max_n);
        for (line, g) in &graphs {
            let oracle = ipp_bruteforce_oracle(g).unwrap() == g.n() - nu(g);
            let cert = classify(g, &cfg()).map_err(|e| e.to_string())?;
            if cert.verdict == Verdict::Undecided || cert.is_extremal() != oracle {
                return Err(format!("{line}: classify {:?}, oracle extremal {oracle}", cert.verdict));
            }
        }
        Ok((graphs.len(), start.elapsed()))
    };
    let (n7, t7) = check(7)?;
    let (n8, t8) = check(8)?;
    if t7 > Duration::from_secs(120) || t8 > Duration::from_secs(1800) {
        return Err(format!("too slow: n<=7 {t7:.2?}, n<=8 {t8:.2?}"));
    }
    Ok(format!("{n7} graphs (n<=7) in {t7:.2?}, {n8} graphs (n<=8) in {t8:.2?}"))
}

fn sandwich() -> Outcome {
    let graphs = corpus(8);
    for (line, g) in &graphs {
        let lower = ipp_lower_bound(g, &all_pairs_distances(g)).unwrap();
        let ipp = exact(g);
        if !(lower <= ipp && ipp <= g.n() - nu(g)) {
            return Err(format!("{line}: {lower} <= {ipp} <= {} fails", g.n() - nu(g)));
        }
    }
    Ok(format!("{} graphs, zero violations", graphs.len()))
}

fn oracle_agreement() -> Outcome {
    let graphs = corpus(7);
    for (line, g) in &graphs {
        let (e, o) = (exact(g), ipp_bruteforce_oracle(g).unwrap());
        if e != o {
            return Err(format!("{line}: exact {e}, oracle {o}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..500 {
        let g = random_connected(&mut rng, 8 + i % 3);
        let (e, o) = (exact(&g), ipp_bruteforce_oracle(&g).unwrap());
        if e != o {
            return Err(format!("{}: exact {e}, oracle {o}", encode_graph6(&g).unwrap()));
        }
    }
    Ok(format!("{} corpus graphs and 500 random graphs, zero mismatches", graphs.len()))
}

fn components() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let k = rng.gen_range(2..=4);
        let parts: Vec<Graph> = (0..k)
            .map(|_| {
                let n = rng.gen_range(1..=6);
                random_connected(&mut rng, n)
            })
            .collect();
        let g = parts[1..].iter().fold(parts[0].clone(), |acc, p| acc.disjoint_union(p).unwrap());
        let g6 = encode_graph6(&g).unwrap();
        let whole = solve_whole_graph(&g, &cfg()).map_err(|e| format!("{g6}: {e}"))?;
        let sum: usize = parts.iter().map(|p| ipp_bruteforce_oracle(p).unwrap()).sum();
        if !whole.proven || whole.size() != sum {
            return Err(format!("{g6}: whole graph {}, component sum {sum}", whole.size()));
        }
        let extremal = whole.size() == g.n() - nu(&g);
        let conj = parts.iter().all(|p| classify(p, &cfg()).unwrap().is_extremal());
        let verdict = classify_components(&g, &cfg()).unwrap().verdict == Verdict::Extremal;
        if extremal != conj || verdict != conj {
            return Err(format!("{g6}: extremal {extremal}, conjunction {conj}"));
        }
    }
    Ok("200 random disconnected graphs".into())
}

fn parity() -> Outcome {
    let graphs = corpus(8);
    for (line, g) in &graphs {
        let even = count_even_blocks(&block_decomposition(g).unwrap());
        if g.n() % 2 == even % 2 {
            return Err(format!("{line}: n = {}, {even} even blocks", g.n()));
        }
    }
    Ok(format!("{} graphs, zero violations", graphs.len()))
}

fn block_graph_equivalence() -> Outcome {
    let graphs = corpus(8);
    let mut block_graphs = 0;
    for (line, g) in &graphs {
        let b = is_block_graph(g).unwrap();
        block_graphs += usize::from(b);
        if b != is_diamond_free_chordal(g).unwrap() {
            return Err(line.to_string());
        }
    }
    Ok(format!("{} graphs, {block_graphs} block graphs", graphs.len()))
}

fn block_graph_extremality() -> Outcome {
    let mut checked = 0;
    for (line, g) in corpus(8) {
        if !is_block_graph(&g).unwrap() {
            continue;
        }
        checked += 1;
        let extremal = ipp_bruteforce_oracle(&g).unwrap() == g.n() - nu(&g);
        let even = count_even_blocks(&block_decomposition(&g).unwrap());
        if extremal != (even <= 1) {
            return Err(format!("{line}: extremal {extremal}, {even} even blocks"));
        }
    }
    Ok(format!("{checked} block graphs"))
}

fn constructions() -> Outcome {
    let mut checked = 0;
    for (line, g) in corpus(8) {
        let bound = g.n() - nu(&g);
        if ipp_bruteforce_oracle(&g).unwrap() != bound {
            continue;
        }
        checked += 1;
        let cert = classify(&g, &cfg()).unwrap();
        let p = construct_minimum_ipp_extremal(&g, &cert).map_err(|e| format!("{line}: {e}"))?;
        verify_ipp(&g, &all_pairs_distances(&g), &p).map_err(|e| format!("{line}: {e:?}"))?;
        if p.len() != bound {
            return Err(format!("{line}: size {} instead of {bound}", p.len()));
        }
    }
    Ok(format!("{checked} extremal graphs"))
}

/// K3, K5, K7 glued at one vertex onto paths, cycles and C4.
fn leaf_clique_family() -> Vec<(Graph, Vec<usize>)> {
    let hosts = [
        Graph::path(2).unwrap(),
        Graph::path(3).unwrap(),
        Graph::path(4).unwrap(),
        Graph::cycle(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::cycle(6).unwrap(),
    ];
    let mut out = Vec::new();
    for k in [3, 5, 7] {
        for host in &hosts {
            let h = host.n();
            let mut clique: Vec<usize> = (h..h + k - 1).collect();
            clique.push(0);
            let mut edges: Vec<(usize, usize)> = host.edges().collect();
            for (i, &a) in clique.iter().enumerate() {
                edges.extend(clique[i + 1..].iter().map(|&b| (a, b)));
            }
            clique.sort_unstable();
            out.push((Graph::from_edge_list(h + k - 1, &edges).unwrap(), clique));
        }
    }
    out
}

fn leaf_clique_reduction() -> Outcome {
    let (mut graphs, mut pairs) = (0, 0);
    for (g, clique) in leaf_clique_family() {
        graphs += 1;
        let cut = leaf_clique_cut_vertex(&g, &clique).map_err(|e| e.to_string())?;
        let (ipp, m) = (exact(&g), nu(&g));
        for &x in &clique {
            for &y in clique.iter().filter(|&&y| y > x) {
                if x == cut || y == cut {
                    continue;
                }
                pairs += 1;
                let r = reduce_leaf_clique_pair(&g, &clique, x, y).unwrap();
                if exact(&r.graph) + 1 != ipp || nu(&r.graph) + 1 != m {
                    return Err(format!("{} with x={x}, y={y}", encode_graph6(&g).unwrap()));
                }
            }
        }
    }
    Ok(format!("{graphs} graphs, {pairs} pairs"))
}

fn v_extendable() -> Outcome {
    let mut checked = 0;
    for (line, g) in corpus(8) {
        let m = nu(&g);
        if !is_biconnected(&g) || exact(&g) > m {
            continue;
        }
        let d = all_pairs_distances(&g);
        for v in 0..g.n() {
            if perfect_matching_avoiding(&g, v).unwrap().is_none() {
                continue;
            }
            checked += 1;
            let p = find_v_extendable_ipp(&g, v, &cfg())
                .map_err(|e| format!("{line} v={v}: {e}"))?
                .ok_or_else(|| format!("{line} v={v}: none found"))?;
            let endpoint = p.path_of(v).is_some_and(|q| q.has_endpoint(v));
            if verify_ipp(&g, &d, &p).is_err() || p.len() > m || !endpoint {
                return Err(format!("{line} v={v}: invalid {p}"));
            }
        }
    }
    Ok(format!("{checked} (graph, vertex) pairs"))
}

fn survey_binary(stdin: &str) -> Result<Vec<String>, String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ippkit"))
        .args(["survey", "--format", "graph6", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit status {}", out.status));
    }
    let lines: Vec<&str> = stdin.lines().collect();
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let rec: serde_json::Value = serde_json::from_str(l).map_err(|e| e.to_string())?;
            let id = rec["input_id"].as_str().unwrap();
            let line: usize = id.rsplit(':').next().unwrap().parse().unwrap();
            Ok(lines[line - 1].to_owned())
        })
        .collect()
}

fn survey() -> Outcome {
    let canon = |g: &Graph| encode_graph6(&corpus::canonical_form(g)).unwrap();
    let four = corpus::bundled_connected(4).unwrap().join("\n");
    let got: BTreeSet<String> =
        survey_binary(&four)?.iter().map(|l| canon(&decode_graph6(l).unwrap())).collect();
    let want: BTreeSet<String> = [Graph::cycle(4).unwrap(), fixtures::diamond(), Graph::complete(4).unwrap()]
        .iter()
        .map(canon)
        .collect();
    if got != want {
        return Err(format!("reported {got:?}, expected {want:?}"));
    }
    let three = survey_binary(&corpus::bundled_connected(3).unwrap().join("\n"))?;
    let k6 = survey_binary(&encode_graph6(&Graph::complete(6).unwrap()).unwrap())?;
    if !three.is_empty() || k6.len() != 1 {
        return Err(format!("n=3 gave {three:?}, K6 gave {k6:?}"));
    }
    Ok("n=4 reports exactly C4, diamond, K4; n=3 reports nothing; K6 reported".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("pendant-hexagon fixtures", pendant_hexagons),
        ("block characterization (n<=8)", block_characterization),
        ("lower/matching bound sandwich", sandwich),
        ("exact solver vs brute-force oracle", oracle_agreement),
        ("disconnected graphs", components),
        ("even-block parity", parity),
        ("block graph = diamond-free chordal", block_graph_equivalence),
        ("block graphs: extremal iff <= 1 even block", block_graph_extremality),
        ("minimum partitions of extremal graphs", constructions),
        ("leaf-clique pair reduction", leaf_clique_reduction),
        ("v-extendable partitions", v_extendable),
        ("survey of connected 4-vertex graphs", survey),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
