use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_idcodes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn idcodes")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn idcodes");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const C3: &str = "d 3 3\n0 1\n1 2\n2 0\n";
const C5: &str = "d 5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
const DIGON: &str = "d 2 2\n0 1\n1 0\n";
const TT3: &str = "d 3 3\n0 1\n0 2\n1 2\n";

#[test]
fn admits_exit_codes_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.dg", C5);
    let c3 = write(dir.path(), "c3.dg", C3);
    assert_eq!(code(&run(&["admits", "--input", c5.to_str().unwrap(), "--ell", "2"])), 0);

    let o = run(&["admits", "--input", c3.to_str().unwrap(), "--ell", "2", "--witness"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("X={0,1} Y={0,2}"), "{}", stdout(&o));

    let o = run(&["--machine", "admits", "--input", c3.to_str().unwrap(), "--ell", "1"]);
    assert_eq!((code(&o), stdout(&o)), (0, "yes\n".to_string()));
}

#[test]
fn stdin_input() {
    let o = run_stdin(&["girth", "--input", "-"], DIGON);
    assert_eq!((code(&o), stdout(&o)), (0, "2\n".to_string()));
    let o = run_stdin(&["girth", "--input", "-"], TT3);
    assert_eq!(stdout(&o), "infinite\n");
    let o = run_stdin(&["admits", "--input", "-", "--ell", "1"], DIGON);
    assert_eq!(code(&o), 1);
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(code(&run(&["admits", "--ell", "1"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["girth", "--input", "/nonexistent/file.dg"])), 2);
    assert_eq!(code(&run_stdin(&["girth", "--input", "-"], "d 3 1\n0 7\n")), 2);
    assert_eq!(code(&run_stdin(&["admits", "--input", "-", "--ell", "9"], C3)), 2);
    assert_eq!(code(&run_stdin(&["check", "--input", "-", "--ell", "1", "--code", "0,5"], C3)), 2);
    assert_eq!(code(&run(&["gen", "--family", "random", "--n", "4"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "prop1"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "theorem2iii"])), 2);
    assert_eq!(code(&run(&["--jobs", "0", "gen", "--family", "cycle", "--n", "3"])), 2);
    // --builtin and --pattern are mutually exclusive.
    assert_eq!(code(&run(&["match", "--input", "x", "--builtin", "TT3", "--pattern", "y"])), 2);
}

#[test]
fn check_command() {
    let o = run_stdin(&["check", "--input", "-", "--ell", "1", "--code", "0,1,2"], C3);
    assert_eq!(code(&o), 0);
    let o = run_stdin(&["check", "--input", "-", "--ell", "1", "--code", "0"], C3);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("X="));
}

#[test]
fn mincode_command() {
    let o = run_stdin(&["--machine", "mincode", "--input", "-", "--ell", "1"], C5);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("found 3 "), "{}", stdout(&o));
    let o = run_stdin(&["mincode", "--input", "-", "--ell", "1"], DIGON);
    assert_eq!(code(&o), 1);
    let o = run_stdin(&["mincode", "--input", "-", "--ell", "1", "--method", "greedy"], C5);
    assert_eq!(code(&o), 0);
}

#[test]
fn mincode_budget_exceeded_exits_3() {
    let petersen = stdout(&run(&["gen", "--family", "named", "--name", "petersen"]));
    let o = run_stdin(&["--machine", "mincode", "--input", "-", "--ell", "2", "--budget", "2"], &petersen);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("budget-exceeded "));
}

#[test]
fn subset_budget_exceeded_exits_3() {
    let o = run_stdin(&["admits", "--input", "-", "--ell", "3", "--subset-budget", "5"], C5);
    assert_eq!(code(&o), 3);
}

#[test]
fn twins_bound_lift() {
    let o = run_stdin(&["--machine", "twins", "--input", "-"], DIGON);
    assert_eq!(stdout(&o), "0 1\n");
    let o = run_stdin(&["--machine", "bound", "--input", "-"], C3);
    assert_eq!(stdout(&o), "2\n");
    let o = run_stdin(&["--machine", "bound", "--input", "-"], "d 3 0\n");
    assert_eq!(stdout(&o), "unbounded\n");
    let o = run_stdin(&["lift", "--input", "-"], "g 3 2\n0 1\n1 2\n");
    assert_eq!(stdout(&o), "d 3 4\n0 1\n1 0\n1 2\n2 1\n");
}

#[test]
fn match_command() {
    let dir = tempfile::tempdir().unwrap();
    let host = write(dir.path(), "host.dg", "d 4 4\n0 1\n0 2\n1 2\n2 3\n");
    let host = host.to_str().unwrap();
    let o = run(&["--machine", "match", "--input", host, "--builtin", "TT3"]);
    assert_eq!((code(&o), stdout(&o)), (0, "TT3 0,1,2\n".to_string()));
    let o = run_stdin(&["match", "--input", "-", "--builtin", "TT3"], C5);
    assert_eq!(code(&o), 1);
    let pat = write(dir.path(), "path.dg", "d 3 2\n0 1\n1 2\n");
    let o = run(&["--machine", "match", "--input", host, "--pattern", pat.to_str().unwrap(), "--all"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 3);
    assert_eq!(code(&run(&["match", "--input", host, "--builtin", "K9"])), 2);
}

#[test]
fn obstructions_round_trip_through_match() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("c12.cat");
    let o = run(&["--machine", "obstructions", "--d", "1", "--ell", "2", "--out", cat.to_str().unwrap()]);
    assert_eq!((code(&o), stdout(&o)), (0, "3\n".to_string()));
    let text = fs::read_to_string(&cat).unwrap();
    assert!(text.starts_with("catalog d=1 ell=2 provenance=derived\n"));
    let c = cat.to_str().unwrap();
    assert_eq!(code(&run_stdin(&["match", "--input", "-", "--pattern", c], C3)), 0);
    assert_eq!(code(&run_stdin(&["match", "--input", "-", "--pattern", c], C5)), 1);
    assert_eq!(code(&run(&["obstructions", "--d", "1", "--ell", "2", "--max-size", "3"])), 2);
}

#[test]
fn gen_streams_parse_back() {
    let o = run(&["gen", "--family", "all", "--n", "2"]);
    let text = stdout(&o);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 4);
    assert_eq!(blocks[0], "d 2 0");
    let o = run(&["--machine", "gen", "--family", "one-in-regular", "--n", "3"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.is_empty()).count(), 8);
    let o = run(&["--machine", "gen", "--family", "d-in-regular", "--n", "4", "--d", "2"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.is_empty()).count(), 81);
}

#[test]
fn random_gen_is_seeded() {
    let args = ["gen", "--family", "random", "--n", "7", "--seed", "9", "--samples", "3"];
    let a = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let other = run(&["gen", "--family", "random", "--n", "7", "--seed", "10", "--samples", "3"]);
    assert_ne!(stdout(&a), stdout(&other));
}

#[test]
fn verify_suites() {
    let o = run(&["--machine", "verify", "--suite", "remark2", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("suite=remark2 status=pass checked=69 "), "{}", stdout(&o));
    let o = run(&["verify", "--suite", "corollary3"]);
    assert_eq!(code(&o), 0);
    let o = run(&["--machine", "verify", "--suite", "prop1", "--samples", "50", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let o = run(&["verify", "--suite", "theorem3", "--n", "9"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_extended_suite_with_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write(dir.path(), "pats.cat", &format!("catalog d=2 ell=2 provenance=user\n\npattern TT3\n{TT3}"));
    let o = run(&["--machine", "verify", "--suite", "theorem2iii", "--n", "4", "--catalog", cat.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("suite=theorem2iii "), "{}", stdout(&o));
    assert!(matches!(code(&o), 0 | 1));
}

#[test]
fn machine_output_is_stable_across_job_counts() {
    let a = run(&["--machine", "--jobs", "1", "verify", "--suite", "theorem3", "--n", "5"]);
    let b = run(&["--machine", "--jobs", "3", "verify", "--suite", "theorem3", "--n", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
}
