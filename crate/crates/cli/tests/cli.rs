use std::io::Write;
use std::process::{Command, Stdio};

use jalg_cli::run;
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn jalg(args: &[&str], stdin: &str) -> Out {
    let mut argv = vec!["jalg"];
    argv.extend_from_slice(args);
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut o, &mut e);
    Out {
        code,
        stdout: String::from_utf8(o).unwrap(),
        stderr: String::from_utf8(e).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn emitted_catalogs_verify() {
    for spec in ["ball:2", "ball:3", "ball:6", "lieball:3", "lieball:5", "siegel:3", "d5"] {
        let emitted = jalg(&["catalog", spec, "--emit"], "");
        assert_eq!(emitted.code, 0, "{spec}");
        let v = jalg(&["verify", "-"], &emitted.stdout);
        assert_eq!(v.code, 0, "{spec}: {}", v.stdout);
        assert!(v.stdout.contains("axiom-realization-brackets PASS"), "{spec}");
    }
}

#[test]
fn emit_then_verify_through_a_pipe() {
    let bin = env!("CARGO_BIN_EXE_jalg");
    let emit = Command::new(bin).args(["catalog", "ball:3", "--emit"]).output().unwrap();
    assert!(emit.status.success());
    let mut child = Command::new(bin).args(["verify", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(&emit.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("checks passed\n"));
}

#[test]
fn stein_on_xi1p() {
    let dir = TempDir::new().unwrap();
    let sub = write(&dir, "xi1p.sub", "subspace xi1p in lieball3\nvector = xi1p\nend\n");
    let o = jalg(&["stein", "lieball:3", &sub], "");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().next(), Some("STEIN"));
    let sub = write(&dir, "heis.sub", "subspace h in lieball3\nvector = xi1\nvector = xi1p\n");
    let o = jalg(&["stein", "lieball:3", &sub], "");
    assert_eq!(o.stdout.lines().next(), Some("NOT-STEIN"));
}

#[test]
fn stein_reads_algebra_from_stdin() {
    let dir = TempDir::new().unwrap();
    let sub = write(&dir, "h.sub", "subspace h in ball3\nvector = 2*xi1\nvector = 2*xi1p + 2*xi2p\nvector = zeta\n");
    let alg = jalg(&["catalog", "ball:3", "--emit"], "").stdout;
    let o = jalg(&["stein", "-", &sub], &alg);
    assert_eq!(o.stdout.lines().next(), Some("STEIN"));
}

#[test]
fn totally_real_and_complete() {
    let dir = TempDir::new().unwrap();
    let sub = write(&dir, "eta.sub", "subspace e in lieball3\nvector = eta\n");
    let o = jalg(&["totally-real", "lieball:3", &sub], "");
    assert_eq!(o.code, 0, "{}", o.stdout);
    let o = jalg(&["complete", "lieball:3", &sub], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("STEP 1 normalize"), "{}", o.stdout);
    assert!(o.stdout.contains("COMPLETED dim 3"));
    let o = jalg(&["complete", "lieball:3", &sub, "--mode", "ball"], "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.starts_with("error:"));

    let sub = write(&dir, "xi1p.sub", "subspace x in lieball3\nvector = xi1p\n");
    let o = jalg(&["complete", "lieball:3", &sub], "");
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("NOT-APPLICABLE"));

    let sub = write(&dir, "bad.sub", "subspace x in ball2\nvector = xi1\nvector = xi1p\n");
    let o = jalg(&["totally-real", "ball:2", &sub], "");
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("CHECK totally-real FAIL"));
}

#[test]
fn normalizer_of_the_extended_group() {
    let dir = TempDir::new().unwrap();
    let sub = write(
        &dir,
        "ext.sub",
        "subspace ext in d5\nvector = xi31p + zeta3 + xi21\nvector = -xi31 + xi21p\nvector = zeta3 + zeta2\nvector = xi32\n",
    );
    let o = jalg(&["normalizer", "d5", &sub], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("# dim 5"), "{}", o.stdout);
    assert!(o.stdout.contains("# totally real: no"));
    // the output is itself a subspace file
    let text: String = o.stdout.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let n = write(&dir, "n.sub", &text);
    assert_eq!(jalg(&["totally-real", "d5", &n], "").code, 1);
}

#[test]
fn orbit_check_points_and_random() {
    let dir = TempDir::new().unwrap();
    let sub = write(&dir, "g.sub", "subspace g in d5\nvector = xi31\nvector = xi21p + xi31p\nvector = xi32 - zeta3\n");
    let pts = write(
        &dir,
        "p.pts",
        "point a dim 6\nz 1 = 0 1\nz 2 = 0 0\nz 3 = 0 0\nz 4 = 0 1\nz 5 = 0 0\nz 6 = 0 1\nend\n",
    );
    let o = jalg(&["orbit-check", "d5", &sub, "--points", &pts], "");
    assert!(o.stdout.contains("CHECK orbit-a"), "{}{}", o.stdout, o.stderr);
    let r1 = jalg(&["orbit-check", "d5", &sub, "--random", "5", "--seed", "3", "--minors"], "");
    let r2 = jalg(&["orbit-check", "d5", &sub, "--random", "5", "--seed", "3", "--minors"], "");
    assert_eq!(r1.stdout, r2.stdout);
    assert!(r1.stdout.contains("MINOR"));
    assert_eq!(jalg(&["orbit-check", "d5", &sub], "").code, 2);
    assert_eq!(jalg(&["orbit-check", "d5", &sub, "--random", "5"], "").code, 2);
    let short = write(&dir, "s.pts", "point a dim 2\nz 1 = 0 1\nz 2 = 0 0\nend\n");
    assert_eq!(jalg(&["orbit-check", "d5", &sub, "--points", &short], "").code, 2);
}

#[test]
fn outside_points_fail() {
    let dir = TempDir::new().unwrap();
    let sub = write(&dir, "g.sub", "subspace g in d5\nvector = xi31\n");
    let pts = write(
        &dir,
        "p.pts",
        "point out dim 6\nz 1 = 0 1\nz 2 = 0 0\nz 3 = 0 0\nz 4 = 0 -1\nz 5 = 0 0\nz 6 = 0 1\nend\n",
    );
    let o = jalg(&["orbit-check", "d5", &sub, "--points", &pts], "");
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("outside the domain"));
}

#[test]
fn malformed_files_exit_2_with_location() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "a.alg", "algebra t\ndim 2\nbasis a b\nbracket a b = 3*q\nend\n");
    let o = jalg(&["verify", &alg], "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("a.alg:4:"), "{}", o.stderr);

    let sub = write(&dir, "s.sub", "subspace s in ball2\nvector = 1/0*xi1\n");
    let o = jalg(&["stein", "ball:2", &sub], "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("s.sub:2:"), "{}", o.stderr);

    for garbage in ["", "\0\0\u{fffd}", "algebra\n", "end\n", "algebra x\ndim 99999999999999999999\n"] {
        let o = jalg(&["verify", "-"], garbage);
        assert_eq!(o.code, 2, "{garbage:?}");
        assert!(o.stderr.starts_with("error: <stdin>:"), "{:?}", o.stderr);
    }
    assert_eq!(jalg(&["verify", "/no/such/file"], "").code, 2);
    assert_eq!(jalg(&["catalog", "ball:1"], "").code, 2);
    assert_eq!(jalg(&["stein", "-", "-"], "").code, 2);
    assert_eq!(jalg(&["frobnicate"], "").code, 2);
}

#[test]
fn failing_axioms_exit_1() {
    let text = jalg(&["catalog", "ball:2", "--emit"], "").stdout.replace("lambda = -zeta", "lambda = zeta");
    let o = jalg(&["verify", "-"], &text);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("CHECK axiom-metric-positive FAIL"));
}

#[test]
fn paper_suite_filter() {
    let o = jalg(&["paper-suite", "--filter", "5.2"], "");
    assert_eq!(o.code, 0, "{}", o.stdout);
    for id in ["5.2-normalizer", "5.2-z0-dependent", "5.2-freeness-z0", "5.2-freeness-samples", "5.2-chain-center", "5.2-bezout-identity"] {
        assert!(o.stdout.contains(&format!("CHECK {id} PASS\n")), "{id}");
    }
    assert!(o.stdout.lines().filter(|l| l.starts_with("CHECK")).all(|l| l.starts_with("CHECK 5.2-")));
    let one = jalg(&["paper-suite", "--filter", "5.2-normalizer"], "");
    assert_eq!(one.stdout, "CHECK 5.2-normalizer PASS\n# 1 of 1 checks passed\n");
    assert_eq!(jalg(&["paper-suite", "--filter", "7"], "").code, 2);
}

#[test]
fn help_exits_zero() {
    let o = jalg(&["--help"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("paper-suite"));
}
