//! graph6 (short form) and plain edge-list text formats.
//!
//! graph6 reference: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Optional header some tools emit before graph6 data.
pub const GRAPH6_HEADER: &str = ">>graph6<<";

/// Largest vertex count expressible in the one-byte graph6 size field.
pub const GRAPH6_SHORT_MAX: usize = 62;

/// Decodes one graph6 line. Trailing line terminators are ignored.
pub fn decode_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (&first, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if !(63..=126).contains(&first) {
        return Err(Error::Graph6(format!("size byte {first} out of range 63..=126")));
    }
    if first == 126 {
        return Err(Error::Graph6(format!(
            "long-form header (more than {GRAPH6_SHORT_MAX} vertices) is not supported"
        )));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let bits = n * (n - 1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < needed {
        return Err(Error::Graph6(format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    if body.len() > needed {
        return Err(Error::Graph6(format!(
            "trailing garbage after {needed} data bytes"
        )));
    }
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!(
            "byte {} at offset {} out of range 63..=126",
            body[pos],
            pos + 1
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Encodes a graph in short-form graph6 (no header, no newline).
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_SHORT_MAX {
        return Err(Error::Graph6(format!(
            "{n} vertices exceeds the supported short form (at most {GRAPH6_SHORT_MAX})"
        )));
    }
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v` with 0-based ids. `#` starts a comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());

    let parse_pair = |lineno: usize, line: &str| -> Result<(usize, usize)> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::EdgeList {
                line: lineno,
                message: format!("expected two integers, found {:?}", line),
            });
        }
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::EdgeList {
                line: lineno,
                message: format!("{s:?} is not a non-negative integer"),
            })
        };
        Ok((num(fields[0])?, num(fields[1])?))
    };

    let (hline, header) = lines.next().ok_or(Error::EdgeList {
        line: 0,
        message: "missing header line \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(Error::EdgeList {
                line: lineno,
                message: format!("more than the {m} edges declared in the header"),
            });
        }
        let (u, v) = parse_pair(lineno, line)?;
        if u >= n || v >= n {
            return Err(Error::EdgeList {
                line: lineno,
                message: format!("vertex out of range for n = {n}"),
            });
        }
        if u == v {
            return Err(Error::EdgeList {
                line: lineno,
                message: format!("self-loop at vertex {u}"),
            });
        }
        edges.push((u, v));
        last_line = lineno;
    }
    if edges.len() != m {
        return Err(Error::EdgeList {
            line: last_line,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edge_list(n, &edges).map_err(|e| Error::EdgeList {
        line: hline,
        message: e.to_string(),
    })
}

/// Writes the edge-list format; `m` counts distinct edges.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
