use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ippkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ippkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("ippkit-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn output_is_identical_across_runs_and_job_counts() {
    let corpus = ippkit::corpus::bundled_connected_up_to(6).unwrap().join("\n");
    let one = ippkit(&["classify", "--witness", "-"], &corpus);
    let again = ippkit(&["classify", "--witness", "-"], &corpus);
    let parallel = ippkit(&["classify", "--witness", "--jobs", "4", "-"], &corpus);
    assert!(one.status.success());
    assert_eq!(one.stdout, again.stdout);
    assert_eq!(one.stdout, parallel.stdout);
    let exact = ippkit(&["exact", "-"], &corpus);
    let exact_parallel = ippkit(&["exact", "--jobs", "3", "-"], &corpus);
    assert_eq!(exact.stdout, exact_parallel.stdout);
}

#[test]
fn edge_list_with_two_triangles() {
    let path = temp_file("k3k3.edges", "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    let out = ippkit(&["exact", &path], "");
    assert!(out.status.success());
    assert_eq!(records(&out)[0]["ipp"], 4);
}

#[test]
fn single_vertex_from_stdin() {
    let out = ippkit(&["exact", "-"], "@\n");
    assert_eq!(records(&out)[0]["ipp"], 1);
    assert_eq!(records(&out)[0]["input_id"], "-:1");
}

#[test]
fn parse_errors_carry_line_numbers_and_exit_2() {
    let out = ippkit(&["exact", "--format", "graph6", "-"], "C~\n# comment\nC~ 1 extra\n");
    assert_eq!(out.status.code(), Some(2));
    let recs = records(&out);
    assert_eq!(recs[0]["status"], "PROVEN");
    assert_eq!(recs[1]["input_id"], "-:3");
    assert_eq!(recs[1]["status"], "ERROR");
}

#[test]
fn bad_edge_list_reports_line() {
    let path = temp_file("bad.edges", "3 2\n0 1\n1 7\n");
    let out = ippkit(&["exact", &path], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(records(&out)[0]["error"].as_str().unwrap().contains("line 3"));
}

#[test]
fn exhausted_budget_exits_3() {
    let out = ippkit(&["exact", "--node-budget", "1", "fixture:hexagon_pendants"], "");
    assert_eq!(out.status.code(), Some(3));
    let rec = &records(&out)[0];
    assert_eq!(rec["status"], "BOUNDS_ONLY");
    assert_eq!(rec["budget_exhausted"], "NODES");
    assert!(rec["lower_bound"].as_u64() < rec["upper_bound"].as_u64());
}

#[test]
fn classify_examples() {
    let out = ippkit(&["classify", "fixture:bowtie", "fixture:hexagon_pendants", "fixture:diamond"], "");
    let recs = records(&out);
    assert_eq!(recs[0]["verdict"], "EXTREMAL");
    assert_eq!(recs[0]["certificate"]["case"], "ALL_ODD_COMPLETE");
    assert_eq!(recs[1]["verdict"], "NOT_EXTREMAL");
    assert_eq!(recs[1]["ipp"], serde_json::Value::Null);
    assert_eq!(recs[2]["verdict"], "EXTREMAL");
    assert_eq!(recs[2]["certificate"]["sub_certificate"]["kind"], "DIAMOND");
}

#[test]
fn classify_disconnected_lists_components() {
    let path = temp_file("bowtie-k2.edges", "7 7\n0 1\n1 2\n0 2\n2 3\n3 4\n2 4\n5 6\n");
    let out = ippkit(&["classify", &path], "");
    let rec = &records(&out)[0];
    assert_eq!(rec["verdict"], "EXTREMAL");
    assert_eq!(rec["certificate"]["components"].as_array().unwrap().len(), 2);
    assert_eq!(rec["ipp"], 4);
}

#[test]
fn verify_negative_control_fails_with_counterexample() {
    let path = temp_file("corrupt.g6", "C~ 2\nBw 2\nC^ 9\n");
    let out = ippkit(&["verify", &path], "");
    assert_eq!(out.status.code(), Some(4));
    let fam = records(&out)
        .into_iter()
        .find(|r| r["family"] == "expected-values")
        .unwrap();
    assert_eq!(fam["status"], "FAIL");
    assert_eq!(fam["counterexample"], "C^");
}

#[test]
fn verify_passes_on_bundled_corpus() {
    let out = ippkit(&["verify", "--table", "bundled:7"], "");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn empty_or_missing_corpus_is_an_error() {
    let path = temp_file("empty.g6", "");
    assert_eq!(ippkit(&["verify", &path], "").status.code(), Some(2));
    assert_eq!(ippkit(&["verify", "/nonexistent/corpus.g6"], "").status.code(), Some(2));
}

#[test]
fn table_output_has_header() {
    let out = ippkit(&["exact", "--table", "fixture:hexagon_pendants_cut"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("input_id"));
    assert!(text.lines().nth(1).unwrap().contains("PROVEN"));
}
