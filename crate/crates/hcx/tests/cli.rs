//! End-to-end tests of the `hcx` binary: subcommand behavior, output
//! formats, and the documented exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nalgebra::{DMatrix, DVector};

use hcx::builder::{canned_example, CannedExample};
use hcx::convex::{ConvexScalar, TrslInstance};
use hcx::format::{self, CandidateFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hcx"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_example1(dir: &Path) -> PathBuf {
    let path = dir.join("example1.json");
    format::save(&canned_example(CannedExample::Example1), &path).unwrap();
    path
}

#[test]
fn solve_example1_reports_global_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example1(dir.path());
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("mu* = 5.631"), "{text}");
    assert!(text.contains("hard case: no"), "{text}");
    assert!(text.contains("certificate: Valid"), "{text}");
}

#[test]
fn local_example1_prints_four_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example1(dir.path());
    let out = run(&["local", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("candidate interval: (1.000000, 5.000000)"), "{text}");
    assert_eq!(text.matches("strict-local ").count(), 2, "{text}");
    assert_eq!(text.matches("rejected-necessary").count(), 2, "{text}");
    assert!(text.contains("4 root(s), 2 strict local non-global"), "{text}");
}

#[test]
fn local_zero_c_reports_precheck_reason() {
    let dir = tempfile::tempdir().unwrap();
    let inst = TrslInstance::new(
        DMatrix::from_diagonal(&DVector::from_vec(vec![-5.0, -1.0])),
        DVector::zeros(2),
        1.0,
        0.0,
        ConvexScalar::Quadratic { alpha: 1.0, beta: 0.0 },
    )
    .unwrap();
    let path = dir.path().join("zeroc.json");
    format::save(&inst, &path).unwrap();
    let out = run(&["local", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).contains("no local non-global minimizer (precheck: g1 = 0"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    for sub in ["solve", "local"] {
        let out = run(&[sub, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{sub} on malformed file");
    }
}

#[test]
fn convex_instance_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let inst = TrslInstance::new(
        DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0])),
        DVector::from_vec(vec![0.3, 0.4]),
        1.0,
        0.0,
        ConvexScalar::Quadratic { alpha: 1.0, beta: 0.0 },
    )
    .unwrap();
    let path = dir.path().join("convex.json");
    format::save(&inst, &path).unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn generate_bad_sequence_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("gen.json");
    let out = run(&["generate", "--mus", "3.5,3.1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn generate_from_explicit_sequence_then_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("d3.json");
    let out = run(&[
        "generate",
        "--d",
        "3",
        "--mus",
        "3.0,3.58,3.94,4.13,4.40,4.45",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["local", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("6 root(s), 3 strict local non-global"), "{text}");
}

#[test]
fn generate_random_then_solve_and_local() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("d2.json");
    let out = run(&["generate", "--d", "2", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["local", out_path.to_str().unwrap()]);
    assert!(stdout(&out).contains("4 root(s), 2 strict local non-global"), "{}", stdout(&out));
    let out = run(&["solve", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn generate_canned_is_deterministic_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    for (p, _) in [(&p1, 0), (&p2, 1)] {
        let out = run(&["generate", "--canned", "example2d3", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn save_load_save_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = write_example1(dir.path());
    let loaded = format::load(&p1).unwrap();
    let p2 = dir.path().join("resaved.json");
    format::save(&loaded, &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn sample_writes_exactly_n_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example1(dir.path());
    let csv_path = dir.path().join("curve.csv");
    let out = run(&[
        "sample",
        path.to_str().unwrap(),
        "--from",
        "1.05",
        "--to",
        "4.95",
        "--points",
        "2",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3, "header + 2 rows: {csv}");
    assert_eq!(lines[0], "mu,phi,psi,phi_d1,psi_d1,gap");
}

#[test]
fn sample_gap_brackets_the_four_roots() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example1(dir.path());
    let csv_path = dir.path().join("curve.csv");
    let out = run(&[
        "sample",
        path.to_str().unwrap(),
        "--from",
        "1.05",
        "--to",
        "4.95",
        "--points",
        "400",
        "--out",
        csv_path.to_str().unwrap(),
        "--log",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "mu,phi,psi,phi_d1,psi_d1,gap,ln_phi,ln_psi");
    let gaps: Vec<f64> = lines
        .map(|l| l.split(',').nth(5).unwrap().parse::<f64>().unwrap())
        .collect();
    let sign_changes = gaps.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
    assert_eq!(sign_changes, 4, "gap must bracket the four roots");
}

#[test]
fn verify_global_candidate_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example1(dir.path());
    let inst = canned_example(CannedExample::Example1);
    let sol = hcx::global::solve_global(&inst).unwrap();
    let cand = CandidateFile {
        schema_version: format::SCHEMA_VERSION,
        x: sol.x.iter().copied().collect(),
        y: vec![sol.y],
        mus: vec![sol.mu],
    };
    let cpath = dir.path().join("global.json");
    format::save_candidate(&cand, &cpath).unwrap();
    let out = run(&[
        "verify",
        path.to_str().unwrap(),
        "--candidate",
        cpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("mode: global"));
}

#[test]
fn verify_local_candidate_exits_0_and_fake_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example1(dir.path());
    let inst = canned_example(CannedExample::Example1);
    let roots = hcx::local::enumerate_roots(&inst, 4096).unwrap();
    let cand = hcx::local::materialize(&inst, &roots[1]).unwrap();
    let file = CandidateFile {
        schema_version: format::SCHEMA_VERSION,
        x: cand.x.iter().copied().collect(),
        y: vec![cand.y[0]],
        mus: vec![cand.mu],
    };
    let cpath = dir.path().join("local.json");
    format::save_candidate(&file, &cpath).unwrap();
    let out = run(&[
        "verify",
        path.to_str().unwrap(),
        "--candidate",
        cpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("strict-local-nonglobal"), "{}", stdout(&out));

    // a nearby non-KKT point must fail
    let fake = CandidateFile {
        schema_version: format::SCHEMA_VERSION,
        x: vec![cand.x[0] + 0.05, cand.x[1]],
        y: vec![cand.y[0]],
        mus: vec![cand.mu],
    };
    let fpath = dir.path().join("fake.json");
    format::save_candidate(&fake, &fpath).unwrap();
    let out = run(&[
        "verify",
        path.to_str().unwrap(),
        "--candidate",
        fpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn verify_rejected_root_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example1(dir.path());
    let inst = canned_example(CannedExample::Example1);
    let roots = hcx::local::enumerate_roots(&inst, 4096).unwrap();
    // root 3 (mu ~ 4.17) is a KKT point that fails the second-order test
    let cand = hcx::local::materialize(&inst, &roots[2]).unwrap();
    let file = CandidateFile {
        schema_version: format::SCHEMA_VERSION,
        x: cand.x.iter().copied().collect(),
        y: vec![cand.y[0]],
        mus: vec![cand.mu],
    };
    let cpath = dir.path().join("rejected.json");
    format::save_candidate(&file, &cpath).unwrap();
    let out = run(&[
        "verify",
        path.to_str().unwrap(),
        "--candidate",
        cpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not-local-min"), "{}", stdout(&out));
}
