use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mcalc(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = mcalc(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn pipeline(stages: &[&[&str]]) -> String {
    stages.iter().fold(String::new(), |input, args| stdout(args, &input))
}

#[test]
fn teleport_in_paper_order() {
    let got = pipeline(&[&["library", "teleport"], &["standardize", "--paper-order"]]);
    let tokens: Vec<&str> = got.split_whitespace().collect();
    assert_eq!(tokens, ["X_3^{s_2}", "Z_3^{s_1}", "M_2^x", "M_1^x", "E_23", "E_12"]);
}

#[test]
fn cnot_pipeline_prints_the_cnot_matrix() {
    let got = pipeline(&[&["library", "cnot"], &["standardize"], &["simulate"]]);
    assert!(got.contains("deterministic: yes"), "{got}");
    let rows: Vec<Vec<f64>> = got
        .lines()
        .skip_while(|l| *l != "unitary:")
        .skip(1)
        .map(|l| {
            l.split_whitespace()
                .map(|z| z.split(['+', '-']).next().unwrap().parse().unwrap())
                .collect()
        })
        .collect();
    // control on the first input, which is the low index bit
    let expected = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ];
    assert_eq!(rows.len(), 4);
    for (r, e) in rows.iter().zip(expected) {
        for (x, y) in r.iter().zip(e) {
            assert!((x - y).abs() < 1e-9, "{got}");
        }
    }
}

#[test]
fn ghz_dependency_graph_has_two_layers() {
    let summary = pipeline(&[
        &["library", "ghz", "4"],
        &["standardize", "--extended"],
        &["graph", "--kind", "dependency"],
    ]);
    assert_eq!(summary.trim(), "depth: 2");
    let dot = pipeline(&[
        &["library", "ghz", "4"],
        &["standardize", "--extended"],
        &["graph", "--kind", "dependency", "--dot"],
    ]);
    assert!(dot.starts_with("digraph"), "{dot}");
}

#[test]
fn entanglement_graph_dot() {
    let dot = pipeline(&[&["library", "cnot"], &["graph", "--dot"]]);
    assert!(dot.starts_with("graph"), "{dot}");
    assert_eq!(dot.matches("--").count(), 3);
}

#[test]
fn standardizing_a_standard_file_is_identity() {
    let standard = pipeline(&[&["library", "rotation", "1/4 pi", "1/3 pi", "0.5"], &["standardize"]]);
    let out = mcalc(&["standardize", "--trace"], &standard);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), standard);
    assert!(out.stderr.is_empty());
}

#[test]
fn trace_goes_to_stderr() {
    let wild = stdout(&["library", "h"], "");
    let out = mcalc(&["standardize", "--trace"], &wild);
    assert!(out.status.success());
    // H is already standard, J∘H is not
    assert!(out.stderr.is_empty());
    let wild = stdout(&["library", "rx", "pi/4"], "");
    let out = mcalc(&["standardize", "--trace"], &wild);
    let trace = String::from_utf8(out.stderr).unwrap();
    assert!(trace.lines().count() > 0);
    assert!(
        trace.lines().all(|l| l.contains(" @ ") && l.contains(" => ")),
        "{trace}"
    );
}

#[test]
fn branches_report() {
    let doc = "pattern m { space: 1, 2; input: 1; output: 1; seq: M(2, 1/3 pi) }";
    let got = stdout(&["simulate", "--branches"], doc);
    assert!(got.contains("s_2=0 p=0.750000000000"), "{got}");
    assert!(got.contains("s_2=1 p=0.250000000000"), "{got}");
    assert!(got.contains("deterministic: yes"));
}

#[test]
fn nondeterministic_fragment() {
    let doc = "pattern frag { space: 1, 2; input: 1; output: 2; seq: E(1,2) M(1, 0) }";
    let got = stdout(&["simulate", "--input", "0.6,0.8"], doc);
    assert!(got.contains("branches: 2"));
    assert!(got.contains("deterministic: no"));
    assert!(!got.contains("unitary"));
}

#[test]
fn verify_against_builtin_and_matrix_file() {
    let rx = stdout(&["library", "rx", "pi/4"], "");
    assert!(stdout(&["verify", "--against", "rx:pi/4"], &rx).contains("match"));
    let out = mcalc(&["verify", "--against", "rz:pi/4"], &rx);
    assert_eq!(out.status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("mcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let h = dir.join("h.txt");
    std::fs::write(
        &h,
        "0.7071067811865476 0.7071067811865476\n0.7071067811865476 -0.7071067811865476\n",
    )
    .unwrap();
    let doc = stdout(&["library", "h"], "");
    assert!(stdout(&["verify", "--against", h.to_str().unwrap()], &doc).contains("match"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let parse_error = mcalc(&["validate"], "pattern broken { space: 1; ");
    assert_eq!(parse_error.status.code(), Some(2));
    let unknown = mcalc(
        &["validate"],
        "pattern x { space: 1; input: 1; output: 1; seq: X(1, s[3]) }",
    );
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("1:"));
    // qubit 2 is neither an output nor measured
    let invalid = mcalc(
        &["validate"],
        "pattern x { space: 1, 2; input: 1; output: 1; seq: E(1,2) }",
    );
    assert_eq!(invalid.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&invalid.stdout).contains("FAIL"));
    assert_eq!(mcalc(&["library", "nope"], "").status.code(), Some(2));
    assert_eq!(mcalc(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(
        mcalc(&["graph", "--kind", "dependency"], &stdout(&["library", "rx"], ""))
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn library_documents_round_trip_through_standardize() {
    let names = stdout(&["library"], "");
    for name in names.lines() {
        let doc = stdout(&["library", name], "");
        let once = stdout(&["standardize"], &doc);
        assert_eq!(stdout(&["standardize"], &once), once, "{name}");
    }
}

#[test]
fn theorems_pass() {
    let report = stdout(&["theorems"], "");
    assert!(report.lines().all(|l| !l.ends_with("FAIL")));
    assert!(report.contains("j(pi/4) no-dependency: EXEMPT (non-clifford)"));
}

#[test]
fn bench_is_deterministic() {
    let a = stdout(&["bench", "--sizes", "10,30", "--seeds", "3"], "");
    let b = stdout(&["bench", "--sizes", "10,30", "--seeds", "3"], "");
    assert_eq!(a, b);
    assert!(a.contains("fit: mean steps ="));
}
