use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hopt() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopt"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    hopt().args(args).output().unwrap()
}

fn stats_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn optimize_with_tmerge_matches_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.qc");
    let s = stats_of(&run(&[
        "optimize",
        p(&fixture("tof_3.qc")),
        "--pre",
        "tmerge",
        "-o",
        p(&out),
    ]));
    assert_eq!(
        (s["internal_h_count"].as_u64(), s["t_count"].as_u64()),
        (Some(2), Some(15))
    );
    let s = stats_of(&run(&["stats", p(&out)]));
    assert_eq!(s["t_count"], 15);
    assert!(run(&["verify", p(&fixture("tof_3.qc")), p(&out)]).status.success());
}

#[test]
fn optimize_modes() {
    let input = fixture("barenco_tof_3.qc");
    for (args, ih) in [
        (vec![], 3),
        (vec!["--fast"], 3),
        (vec!["--mode", "h"], 7),
        (vec!["--mode", "none"], 7),
    ] {
        let mut all = vec!["optimize", p(&input)];
        all.extend(args.iter().copied());
        let s = stats_of(&run(&all));
        assert!(s["internal_h_count"].as_u64().unwrap() <= ih, "{args:?}: {s}");
        assert_eq!(s["t_count"], 28);
    }
}

#[test]
fn empty_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.qc");
    let s = stats_of(&run(&["optimize", p(&fixture("empty.qc")), "-o", p(&out)]));
    for k in ["gate_count", "h_count", "internal_h_count", "t_count"] {
        assert_eq!(s[k], 0, "{k}");
    }
    let c = hopt::io::parse_qc(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(c.is_empty());
}

#[test]
fn stats_counts_body_lines() {
    let path = fixture("tof_4.qc");
    let text = std::fs::read_to_string(&path).unwrap();
    let body = text
        .lines()
        .skip_while(|l| *l != "BEGIN")
        .skip(1)
        .take_while(|l| *l != "END")
        .count();
    let s = stats_of(&run(&["stats", p(&path)]));
    assert_eq!(s["gate_count"].as_u64().unwrap() as usize, body);
    assert_eq!(s["t_count"], 35);
    assert_eq!(s["n_qubits"], 7);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.qc"), dir.path().join("b.qc"));
    for out in [&a, &b] {
        assert!(
            run(&["optimize", p(&fixture("tof_4.qc")), "--pre", "tmerge", "-o", p(out)])
                .status
                .success()
        );
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn verify_outcomes() {
    let empty = fixture("empty.qc");
    assert!(run(&["verify", p(&empty), p(&empty)]).status.success());

    let dir = tempfile::tempdir().unwrap();
    let other = dir.path().join("x.qc");
    std::fs::write(&other, ".v a\nBEGIN\nX a\nEND\n").unwrap();
    let out = run(&["verify", p(&empty), p(&other)]);
    assert_eq!(out.status.code(), Some(1));

    let bad = dir.path().join("bad.qc");
    std::fs::write(&bad, ".v a\nBEGIN\nFOO a\nEND\n").unwrap();
    let out = run(&["verify", p(&bad), p(&empty)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(run(&["optimize"]).status.code(), Some(2));
}

#[test]
fn wide_circuits_skip_dense_check() {
    let gf = fixture("gf2^16_mult.qc");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.qc");
    let s = stats_of(&run(&["optimize", p(&gf), "-o", p(&out)]));
    assert_eq!(
        (s["internal_h_count"].as_u64(), s["t_count"].as_u64()),
        (Some(0), Some(1792))
    );
    let v = run(&["verify", p(&gf), p(&out)]);
    assert!(v.status.success());
    assert!(String::from_utf8_lossy(&v.stderr).contains("dense check skipped"));
    let quiet = run(&["verify", p(&gf), p(&out), "--counts-only"]);
    assert!(quiet.status.success() && quiet.stderr.is_empty());
    assert_eq!(run(&["optimize", p(&gf), "--verify"]).status.code(), Some(2));
}

#[test]
fn optimize_with_verify_flag() {
    let s = stats_of(&run(&["optimize", p(&fixture("tof_3.qc")), "--verify"]));
    assert_eq!(s["internal_h_count"], 2);
}

#[test]
fn batch_mode_emits_one_record_per_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = hopt()
        .args(["optimize", p(&fixture("")), "-o", p(dir.path())])
        .env("HOPT_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 5);
    assert!(records
        .iter()
        .any(|r| r["file"].as_str().unwrap().ends_with("tof_3.qc") && r["internal_h_count"] == 2));
    assert!(dir.path().join("tof_4.qc").is_file());
}

#[test]
fn qasm_via_stdin_and_stdout() {
    let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[1];\nt q[1];\nh q[1];\ncx q[0],q[1];\nrz(pi/8) q[1];\n";
    let mut child = hopt()
        .args(["optimize", "-", "--format", "qasm", "-o", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(src.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("OPENQASM 2.0;"), "{text}");
    let c = hopt::io::parse_qasm2(&text).unwrap();
    let orig = hopt::io::parse_qasm2(src).unwrap();
    let (a, b) = (
        hopt::verify::dense_unitary(&c).unwrap(),
        hopt::verify::dense_unitary(&orig).unwrap(),
    );
    assert!(hopt::verify::equiv_up_to_phase(&a, &b, 1e-9));
    let s: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(s["t_count"], 1);
}
