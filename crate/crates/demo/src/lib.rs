//! Browser bindings. Every export takes graph text (graph6 or edge list)
//! and returns a JSON string; errors come back as `{"error": ...}`.

use std::f64::consts::TAU;
use std::time::Duration;

use ippkit::{
    block_decomposition, classify_components, decode_graph6, encode_graph6, maximum_matching,
    parse_edge_list, solve_whole_graph, Graph, SolveError, SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

pub const MAX_DEMO_VERTICES: usize = 24;

// No clock on wasm32-unknown-unknown, so only the node budget applies.
fn config() -> SolverConfig {
    SolverConfig {
        node_budget: 2_000_000,
        time_budget: Duration::MAX,
        ..SolverConfig::default()
    }
}

fn parse(text: &str) -> Result<Graph, String> {
    let first = text
        .lines()
        .map(|l| l.split_once('#').map_or(l, |(h, _)| h).trim())
        .find(|l| !l.is_empty())
        .ok_or("empty input")?;
    let numeric = first.split_whitespace().count() == 2
        && first.split_whitespace().all(|t| t.parse::<usize>().is_ok());
    let g = if numeric {
        parse_edge_list(text)
    } else {
        decode_graph6(first)
    }
    .map_err(|e| e.to_string())?;
    if g.n() > MAX_DEMO_VERTICES {
        return Err(format!("the demo accepts at most {MAX_DEMO_VERTICES} vertices"));
    }
    Ok(g)
}

#[derive(Serialize)]
struct Drawing {
    n: usize,
    edges: Vec<(usize, usize)>,
    positions: Vec<(f64, f64)>,
    graph6: String,
}

fn drawing(g: &Graph) -> Drawing {
    let n = g.n();
    let positions = (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64 - TAU / 4.0;
            (a.cos(), a.sin())
        })
        .collect();
    Drawing {
        n,
        edges: g.edges().collect(),
        positions,
        graph6: encode_graph6(g).unwrap_or_default(),
    }
}

fn error(message: impl ToString) -> String {
    json!({ "error": message.to_string() }).to_string()
}

/// Minimum isometric path partition with a circular layout.
pub fn solve_json(text: &str) -> String {
    let g = match parse(text) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let nu = maximum_matching(&g).size();
    let (partition, lower, proven) = match solve_whole_graph(&g, &config()) {
        Ok(sol) => (sol.partition.clone(), sol.lower_bound, sol.proven),
        Err(SolveError::BudgetExhausted {
            lower,
            incumbent: Some(inc),
            ..
        }) => (inc, lower, false),
        Err(e) => return error(e),
    };
    json!({
        "graph": drawing(&g),
        "nu": nu,
        "upper_bound": g.n() - nu,
        "lower_bound": lower,
        "ipp": partition.len(),
        "proven": proven,
        "paths": partition,
    })
    .to_string()
}

/// Block decomposition plus the extremality verdict and certificate.
pub fn classify_json(text: &str) -> String {
    let g = match parse(text) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let blocks: Value = if g.is_connected() {
        match block_decomposition(&g) {
            Ok(d) => json!({ "blocks": d.blocks, "cut_vertices": d.cut_vertices }),
            Err(e) => return error(e),
        }
    } else {
        Value::Null
    };
    match classify_components(&g, &config()) {
        Ok(cc) => json!({
            "graph": drawing(&g),
            "nu": maximum_matching(&g).size(),
            "verdict": cc.verdict,
            "structure": blocks,
            "components": cc.components,
        })
        .to_string(),
        Err(e) => error(e),
    }
}

/// Connected random graph on `n` vertices: a random tree plus each other
/// edge with probability `density`. Returned as graph6.
pub fn random_graph6(n: usize, density: f64, seed: u32) -> String {
    let n = n.clamp(1, MAX_DEMO_VERTICES);
    let density = if density.is_finite() { density.clamp(0.0, 1.0) } else { 0.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.into());
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edge_list(n, &edges).expect("ids in range");
    encode_graph6(&g).expect("n is small")
}

#[wasm_bindgen]
pub fn solve(text: &str) -> String {
    solve_json(text)
}

#[wasm_bindgen]
pub fn classify(text: &str) -> String {
    classify_json(text)
}

#[wasm_bindgen]
pub fn random_graph(n: usize, density: f64, seed: u32) -> String {
    random_graph6(n, density, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn solves_fixture_edge_list() {
        let text = ippkit::format::write_edge_list(&ippkit::fixtures::hexagon_pendants());
        let out = parsed(solve_json(&text));
        assert_eq!(out["ipp"], 2);
        assert_eq!(out["proven"], true);
        assert_eq!(out["graph"]["positions"].as_array().unwrap().len(), 10);
    }

    #[test]
    fn classifies_graph6() {
        let out = parsed(classify_json("Bw"));
        assert_eq!(out["verdict"], "EXTREMAL");
        let out = parsed(classify_json("C^"));
        assert_eq!(out["verdict"], "EXTREMAL");
        assert_eq!(out["structure"]["blocks"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn errors_are_json() {
        assert!(parsed(solve_json("")).get("error").is_some());
        assert!(parsed(classify_json("3 1\n0 9\n")).get("error").is_some());
    }

    #[test]
    fn random_graphs_are_connected_and_seeded() {
        for seed in 0..20 {
            let a = random_graph6(9, 0.2, seed);
            assert_eq!(a, random_graph6(9, 0.2, seed));
            assert!(decode_graph6(&a).unwrap().is_connected());
        }
        assert_eq!(decode_graph6(&random_graph6(500, 2.0, 1)).unwrap().n(), MAX_DEMO_VERTICES);
    }
}
