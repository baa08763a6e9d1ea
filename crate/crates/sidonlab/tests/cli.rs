//! End-to-end tests driving the real binary: golden outputs, byte-level
//! determinism across runs, exit codes, and the piped-output JSON default.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sidonlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmpfile(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("sidonlab-it");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn construct_ellipse_golden() {
    let o = run(&["construct", "--kind", "ellipse", "--m", "2", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=4\n1\n4\n6\n9\na\n");
}

#[test]
fn construct_hyperbola_golden() {
    let o = run(&["construct", "--kind", "hyperbola", "--m", "3", "--format", "text"]);
    assert_eq!(stdout(&o), "n=6\n09\n15\n1e\n27\n2a\n33\n3c\n");
}

#[test]
fn cyclic_matches_ellipse_output() {
    let a = run(&["construct", "--kind", "cyclic", "--m", "2", "--format", "text"]);
    let b = run(&["construct", "--kind", "ellipse", "--m", "2", "--format", "text"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn piped_output_defaults_to_json() {
    let o = run(&["construct", "--kind", "lindstrom", "--m", "2"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"elements":["0","5","6","7"],"n":4,"size":4}"#
    );
}

#[test]
fn every_subcommand_is_deterministic() {
    let set = tmpfile("det.set", "n=4\n0\n1\n2\n4\n");
    let sbox = tmpfile("det.sbox", "n=3 m=3\n0\n1\n3\n4\n5\n6\n7\n2\n");
    let parity = tmpfile("det.pc", "rows=4 cols=4\n1\n2\n4\n8\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["construct", "--kind", "theorem2-ellipse", "--m", "4"],
        vec!["construct", "--kind", "goppa", "--m", "3"],
        vec!["check", "sidon", set.to_str().unwrap()],
        vec!["check", "thin", "--t", "2", set.to_str().unwrap()],
        vec!["check", "complete", set.to_str().unwrap()],
        vec!["extend", set.to_str().unwrap()],
        vec!["search", "max", "--n", "5", "--seed", "9"],
        vec!["search", "max", "--n", "8", "--mode", "random-restart", "--seed", "9"],
        vec!["sbox", "analyze", sbox.to_str().unwrap(), "--exact-nlv"],
        vec!["code", "from-sidon", set.to_str().unwrap()],
        vec!["code", "mindist", parity.to_str().unwrap()],
        vec!["verify", "orbits", "--m", "3"],
        vec!["verify", "theorem2", "--m", "4"],
        vec!["verify", "cyclic-ellipse", "--m", "4"],
        vec!["bounds", "--n", "8", "--m", "8", "--delta", "2"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic stdout for {args:?}");
        assert_eq!(a.status.code(), b.status.code(), "nondeterministic exit for {args:?}");
    }
}

#[test]
fn emitted_set_files_reparse_identically() {
    for args in [
        ["construct", "--kind", "theorem2-hyperbola", "--m", "5"],
        ["construct", "--kind", "cyclic", "--m", "4"],
    ] {
        let o = bin().args(args).args(["--format", "text"]).output().unwrap();
        let text = stdout(&o);
        // parse -> rewrite is the identity on emitted files
        let set = sidonlab::files::read_point_set(&text).unwrap();
        assert_eq!(sidonlab::files::write_point_set(&set), text);
        let f = tmpfile("reparse.set", &text);
        let o2 = run(&["check", "sidon", f.to_str().unwrap(), "--format", "text"]);
        assert_eq!(o2.status.code(), Some(0), "construction output must re-parse as Sidon");
    }
}

#[test]
fn check_exit_codes() {
    let good = tmpfile("good.set", "n=4\n0\n1\n2\n4\n");
    assert_eq!(run(&["check", "sidon", good.to_str().unwrap()]).status.code(), Some(0));
    let bad = tmpfile("bad.set", "n=2\n0\n1\n2\n3\n");
    let o = run(&["check", "sidon", bad.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: 0 + 1 = 2 + 3"));
    // full F_2^2 is 4-thin but not 2-thin
    assert_eq!(
        run(&["check", "thin", "--t", "4", bad.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", "thin", "--t", "2", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
    // usage / input errors
    assert_eq!(run(&["check", "sidon", "/nonexistent.set"]).status.code(), Some(2));
    assert_eq!(run(&["nope"]).status.code(), Some(2));
    let malformed = tmpfile("malformed.set", "n=4\nzz\n");
    assert_eq!(run(&["check", "sidon", malformed.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn extend_finds_unique_nucleus_extension() {
    let o = run(&["construct", "--kind", "ellipse", "--m", "4", "--format", "text"]);
    let f = tmpfile("e17.set", &stdout(&o));
    let o = run(&["extend", f.to_str().unwrap(), "--format", "text"]);
    assert_eq!(stdout(&o), "00\n");
    // completeness check agrees: exit 1 and lists the extension
    let o = run(&["check", "complete", f.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("extension: 00"));
}

#[test]
fn code_round_trip_via_files() {
    let o = run(&["construct", "--kind", "theorem2-ellipse", "--m", "4", "--format", "text"]);
    let set_file = tmpfile("rt.set", &stdout(&o));
    let o = run(&["code", "from-sidon", set_file.to_str().unwrap(), "--format", "text"]);
    assert!(o.status.success());
    let parity_text = stdout(&o);
    assert!(parity_text.starts_with("rows=8 cols=17\n"));
    let parity_file = tmpfile("rt.pc", &parity_text);
    let o = run(&["code", "mindist", parity_file.to_str().unwrap(), "--format", "text"]);
    assert_eq!(stdout(&o), "min_distance: >= 5\n");
    let o = run(&["code", "to-sidon", parity_file.to_str().unwrap(), "--format", "text"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&set_file).unwrap());
}

#[test]
fn code_distance_failure_is_input_error() {
    let dup = tmpfile("dup.pc", "rows=4 cols=3\n5\n5\n2\n");
    let o = run(&["code", "to-sidon", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("minimum distance 2"), "{err}");
}

#[test]
fn search_golden_n4() {
    let o = run(&["search", "max", "--n", "4", "--format", "json"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"exact":true,"mode":"exhaustive","n":4,"size":6,"witness":["0","1","2","4","8","f"]}"#
    );
}

#[test]
fn search_seed_env_fallback() {
    let a = bin()
        .args(["search", "max", "--n", "6", "--mode", "greedy"])
        .env("SIDONLAB_SEED", "41")
        .output()
        .unwrap();
    let b = run(&["search", "max", "--n", "6", "--mode", "greedy", "--seed", "41"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["search", "max", "--n", "6", "--mode", "greedy", "--seed", "42"]);
    assert_ne!(a.stdout, c.stdout, "different seeds should shuffle differently");
}

#[test]
fn sbox_analyze_cube() {
    let sbox = tmpfile("cube3.sbox", "n=3 m=3\n0\n1\n3\n4\n5\n6\n7\n2\n");
    let o = run(&["sbox", "analyze", sbox.to_str().unwrap(), "--exact-nlv", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.contains("delta: 2 (APN)"), "{text}");
    assert!(text.contains("nl1: 2"), "{text}");
    assert!(text.contains("nlv_exact: 4"), "{text}");
    assert!(text.contains("thm1_lower:"), "{text}");
}

#[test]
fn bounds_golden_json() {
    let o = run(&["bounds", "--n", "8", "--m", "8", "--delta", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["thm1_lower"]["approx"], "232.8726");
    assert_eq!(v["thm1_lower"]["ceil"], 233);
    assert_eq!(v["lmc_upper"]["floor"], 239);
    assert_eq!(v["carlet_lower"]["approx"], "228.3233");
    assert_eq!(v["apn_strong_lower"]["hypothesis"], "cited");
}

#[test]
fn verify_subcommands_pass() {
    for args in [
        ["verify", "orbits", "--m", "4"],
        ["verify", "curves", "--m", "4"],
        ["verify", "theorem2", "--m", "4"],
        ["verify", "cyclic-ellipse", "--m", "5"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
    // m < 4 is rejected for the curve lemmas
    assert_eq!(run(&["verify", "curves", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn theorem2_small_m_warns_on_stderr() {
    let o = run(&["construct", "--kind", "theorem2-ellipse", "--m", "2"]);
    assert!(o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("m >= 4"), "{err}");
}
