//! Reading graphs from graph6 streams, edge-list files and named fixtures.

use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use ippkit::{decode_graph6, fixtures, parse_edge_list, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Edgelist,
}

/// One parsed (or unparseable) graph with its position in the input.
#[derive(Debug, Clone)]
pub struct InputGraph {
    pub id: String,
    pub graph: Result<Graph, String>,
    /// Optional second token on a graph6 line, e.g. an expected ipp.
    pub annotation: Option<String>,
}

fn read_source(source: &str) -> Result<String> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(source).with_context(|| format!("reading {source}"))
    }
}

fn sniff(source: &str, text: &str) -> Format {
    match Path::new(source).extension().and_then(|e| e.to_str()) {
        Some("g6") => return Format::Graph6,
        Some("edges") | Some("el") => return Format::Edgelist,
        _ => {}
    }
    let first = text
        .lines()
        .map(|l| l.split_once('#').map_or(l, |(h, _)| h).trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.split_whitespace().count() == 2
            && l.split_whitespace().all(|t| t.parse::<usize>().is_ok()) =>
        {
            Format::Edgelist
        }
        _ => Format::Graph6,
    }
}

/// Parses graph6 text: one graph per non-empty line; `#` lines are comments.
pub fn parse_graph6_stream(source: &str, text: &str) -> Vec<InputGraph> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            let mut tokens = l.split_whitespace();
            let code = tokens.next().unwrap_or_default();
            let annotation = tokens.next().map(str::to_owned);
            let graph = if tokens.next().is_some() {
                Err("line has more than two fields".to_owned())
            } else {
                decode_graph6(code).map_err(|e| e.to_string())
            };
            InputGraph {
                id: format!("{source}:{}", i + 1),
                graph,
                annotation,
            }
        })
        .collect()
}

/// Loads every source in order. `fixture:NAME` selects a bundled fixture.
pub fn load(sources: &[String], format: Option<Format>) -> Result<Vec<InputGraph>> {
    let mut out = Vec::new();
    for source in sources {
        if let Some(name) = source.strip_prefix("fixture:") {
            let graph = fixtures::by_name(name).ok_or_else(|| format!("unknown fixture {name:?}"));
            out.push(InputGraph {
                id: source.clone(),
                graph,
                annotation: None,
            });
            continue;
        }
        let text = read_source(source)?;
        match format.unwrap_or_else(|| sniff(source, &text)) {
            Format::Graph6 => out.extend(parse_graph6_stream(source, &text)),
            Format::Edgelist => out.push(InputGraph {
                id: source.clone(),
                graph: parse_edge_list(&text).map_err(|e| e.to_string()),
                annotation: None,
            }),
        }
    }
    Ok(out)
}
