use std::io::Write;
use std::process::{Command, Stdio};

use semilocal::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};

fn run_with(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("semilocal").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn built(name: &str, extra: &[&str]) -> String {
    let mut args = vec!["build", name];
    args.extend_from_slice(extra);
    let (code, out, err) = run_with(&args, "");
    assert_eq!(code, EXIT_OK, "{err}");
    out
}

fn binary(args: &[&str], input: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_semilocal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

#[test]
fn check_passes_on_built_heisenberg() {
    let text = built("heisenberg", &[]);
    let (code, out, _) = run_with(&["--machine", "check"], &text);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.lines()
            .any(|l| l.starts_with("axioms=pass ") && l.ends_with(" failed=0")),
        "{out}"
    );
}

#[test]
fn human_output_uses_colons() {
    let text = built("idem", &[]);
    let (code, out, _) = run_with(&["center"], &text);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("center_dim: 2, nilradical_dim: 0"), "{out}");
}

#[test]
fn classify_reports_two_blocks_for_u3() {
    let text = built("u3", &[]);
    let (code, out, _) = run_with(&["--machine", "classify"], &text);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("blocks=2 semilocal=true local=false"), "{out}");
    assert!(out.contains("four_way_agreement=true"));
    assert!(out.contains("status=ok"));
}

#[test]
fn radicals_of_semidirect() {
    let text = built("semidirect", &[]);
    let (code, out, _) = run_with(&["--machine", "radicals"], &text);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("J_lower_bound_dims=[1,1,2]"), "{out}");
    assert!(out.contains("center_radical_identity=pass"));
}

#[test]
fn blocks_reconstruct_for_heisenberg_pair() {
    let text = built("heisenberg-pair", &[]);
    let (code, out, _) = run_with(&["--machine", "blocks"], &text);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("blocks=2 reconstructs=true"), "{out}");
}

#[test]
fn seed_and_samples_are_echoed() {
    let text = built("qxq", &[]);
    let (_, out, _) = run_with(&["--machine", "--seed", "9", "--samples", "5", "classify"], &text);
    assert!(out.contains("seed=9 samples=5"), "{out}");
}

#[test]
fn build_writes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vir.voa");
    let p = path.to_str().unwrap();
    let (code, _, _) = run_with(&["build", "virasoro", "--level", "4", "--charge", "-22/5", "-o", p], "");
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\ncharge -22/5\n"));
    let (code, _, _) = run_with(&["check", p], "");
    assert_eq!(code, EXIT_OK);
}

#[test]
fn corrupted_input_is_a_violation() {
    let text = built("heisenberg", &[]).replace("p 1 0 1 1 0 -> 0 1\n", "p 1 0 1 1 0 -> 0 3\n");
    let (code, out, _) = run_with(&["--machine", "check"], &text);
    assert_eq!(code, EXIT_VIOLATION);
    assert!(out.contains("axioms=fail"));
    let (code, _, err) = run_with(&["classify"], &text);
    assert_eq!(code, EXIT_VIOLATION);
    assert!(err.contains("axiom violation"), "{err}");
}

#[test]
fn bad_input_exits_with_two() {
    let (code, _, err) = run_with(&["check"], "name X\ncharge zero\n");
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, _) = run_with(&["build", "nothing"], "");
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = run_with(&["build", "lattice", "--level", "5"], "");
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = run_with(&["frobnicate"], "");
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = run_with(&["check", "/nonexistent/file.voa"], "");
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn binary_build_then_check() {
    let (code, text, _) = binary(&["build", "heisenberg", "--level", "3"], "");
    assert_eq!(code, 0);
    let (code, out, _) = binary(&["--machine", "check", "-"], &text);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("axioms=pass"));
}

#[test]
fn binary_classify_and_radicals() {
    let (_, text, _) = binary(&["build", "lattice"], "");
    let (code, out, _) = binary(&["--machine", "classify"], &text);
    assert_eq!(code, 0);
    assert!(out.starts_with("blocks=1 semilocal=true local=true"), "{out}");
    let (code, out, _) = binary(&["--machine", "radicals"], &text);
    assert_eq!(code, 0);
    assert!(out.contains("J_lower_bound_dims=[0,1,1]"), "{out}");
}

#[test]
fn binary_reports_input_errors() {
    let (code, _, err) = binary(&["check"], "garbage\n");
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "{err}");
}
