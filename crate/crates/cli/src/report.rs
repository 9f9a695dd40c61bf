use std::fmt::Write as _;

use ippkit::solver::Budget;
use ippkit::IsometricPathPartition;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Proven,
    BoundsOnly,
    Error,
}

/// One output line per input graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub input_id: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub nu: Option<usize>,
    pub ipp: Option<usize>,
    pub lower_bound: Option<usize>,
    pub upper_bound: Option<usize>,
    pub status: Status,
    pub verdict: Option<ippkit::Verdict>,
    pub certificate: Option<serde_json::Value>,
    pub partition: Option<IsometricPathPartition>,
    pub path_overflow: bool,
    pub budget_exhausted: Option<Budget>,
    pub error: Option<String>,
    /// Set when a self-check on a computed result failed.
    #[serde(skip)]
    pub invariant_failure: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Record {
    pub fn error(input_id: &str, message: impl Into<String>) -> Self {
        Self {
            input_id: input_id.to_owned(),
            n: None,
            m: None,
            nu: None,
            ipp: None,
            lower_bound: None,
            upper_bound: None,
            status: Status::Error,
            verdict: None,
            certificate: None,
            partition: None,
            path_overflow: false,
            budget_exhausted: None,
            error: Some(message.into()),
            invariant_failure: false,
            elapsed_ms: None,
        }
    }

    pub fn blank(input_id: &str, g: &ippkit::Graph, nu: usize) -> Self {
        Self {
            n: Some(g.n()),
            m: Some(g.edge_count()),
            nu: Some(nu),
            status: Status::Proven,
            error: None,
            ..Record::error(input_id, "")
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunReport {
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        let failed = |r: &&Record| r.status == Status::Error;
        if self.records.iter().filter(failed).any(|r| !r.invariant_failure) {
            EXIT_PARSE
        } else if self.records.iter().any(|r| r.invariant_failure) {
            EXIT_INVARIANT
        } else if self.records.iter().any(|r| r.status == Status::BoundsOnly) {
            EXIT_BUDGET
        } else {
            EXIT_OK
        }
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let cell = |v: Option<usize>| v.map_or("-".to_owned(), |x| x.to_string());
        let rows: Vec<[String; 9]> = self
            .records
            .iter()
            .map(|r| {
                [
                    r.input_id.clone(),
                    cell(r.n),
                    cell(r.m),
                    cell(r.nu),
                    cell(r.ipp),
                    cell(r.lower_bound),
                    cell(r.upper_bound),
                    r.verdict
                        .map(|v| serde_json::to_value(v).unwrap().as_str().unwrap().to_owned())
                        .unwrap_or_else(|| "-".into()),
                    match r.status {
                        Status::Proven => "PROVEN".into(),
                        Status::BoundsOnly => "BOUNDS_ONLY".into(),
                        Status::Error => format!("ERROR: {}", r.error.as_deref().unwrap_or("")),
                    },
                ]
            })
            .collect();
        let header = ["input_id", "n", "m", "nu", "ipp", "lower", "upper", "verdict", "status"];
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row.iter()) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: Vec<&str>| {
            let last = cells.len() - 1;
            for (i, c) in cells.iter().enumerate() {
                if i == last {
                    let _ = write!(out, "{c}");
                } else {
                    let _ = write!(out, "{c:<w$}  ", w = widths[i]);
                }
            }
            out.push('\n');
        };
        line(header.to_vec());
        for row in &rows {
            line(row.iter().map(String::as_str).collect());
        }
        out
    }
}
