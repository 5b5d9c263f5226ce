//! End-to-end tests of the `rinehart` binary and the report layer.

use std::path::PathBuf;
use std::process::{Command, Output};

use rinehart::cli::{self, load, report, run_suites, Format, Status, Suite};
use rinehart::{CheckConfig, Poly, TopConnection};

fn rinehart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rinehart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_file(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn deterministic_part(s: &str) -> Vec<&str> {
    s.lines().filter(|l| !l.starts_with("time.")).collect()
}

#[test]
fn catalog_lists_every_entry() {
    let o = rinehart(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in [
        "coordinate-2d",
        "coordinate-3d",
        "nonabelian-dim2",
        "sl2",
        "heisenberg-dim3",
        "poisson-symplectic-2d",
        "poisson-linear-2d",
    ] {
        assert!(out.contains(name), "{name} missing from\n{out}");
    }
    let machine = stdout(&rinehart(&["catalog", "--format", "machine"]));
    assert!(machine.contains("catalog.sl2.rank=3"));
}

#[test]
fn passing_check_exits_zero() {
    let o = rinehart(&["check", "coordinate-2d"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: pass"));
}

#[test]
fn nonabelian_machine_report() {
    let o = rinehart(&["check", "nonabelian-dim2", "--format", "machine", "--trials", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for s in Suite::ALL {
        assert!(
            out.contains(&format!("suite.{s}.status=pass")),
            "{s} did not pass:\n{out}"
        );
    }
    assert!(out.contains("suite.homology.betti=0,1,1"));
    assert!(out.lines().all(|l| l.contains('=')));
    let lines: Vec<&str> = out.lines().collect();
    let last_fixed = lines.iter().rposition(|l| !l.starts_with("time.")).unwrap();
    assert!(
        lines[..last_fixed].iter().all(|l| !l.starts_with("time.")),
        "time lines must come last"
    );
}

#[test]
fn curved_connection_is_an_expected_failure() {
    let o = rinehart(&["check", "nonabelian-dim2-curved"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.contains("generator-square")).unwrap();
    assert!(line.contains("expected-fail") && line.contains("(expected)"), "{line}");
    let machine = stdout(&rinehart(&[
        "check",
        "nonabelian-dim2-curved",
        "--format",
        "machine",
        "--suite",
        "generator-square",
    ]));
    assert!(machine.contains("suite.generator-square.status=expected-fail"));
    assert!(machine.contains("suite.generator-square.exact=false"));
}

#[test]
fn machine_report_is_deterministic() {
    let args = ["check", "sl2", "--format", "machine", "--seed", "7", "--trials", "3"];
    let (a, b) = (stdout(&rinehart(&args)), stdout(&rinehart(&args)));
    assert_eq!(deterministic_part(&a), deterministic_part(&b));
    let other = stdout(&rinehart(&[
        "check", "sl2", "--format", "machine", "--seed", "8", "--trials", "3",
    ]));
    assert!(other.contains("seed=8"));
}

#[test]
fn suite_selection() {
    let o = rinehart(&[
        "check", "sl2", "--suite", "homology", "--suite", "axioms", "--format", "machine",
    ]);
    let out = stdout(&o);
    let statuses: Vec<_> = out.lines().filter(|l| l.ends_with(".status=pass")).collect();
    assert_eq!(statuses, ["suite.axioms.status=pass", "suite.homology.status=pass"]);
    let o = rinehart(&["check", "sl2", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));

    let path = write_file("suites.lr", "vars = 0\nrank = 2\nsuites = homology\n");
    let out = stdout(&rinehart(&["check", &path, "--format", "machine"]));
    assert!(out.contains("suite.homology.betti=1,2,1"));
    assert!(!out.contains("suite.axioms"));
}

#[test]
fn homology_subcommand() {
    let o = rinehart(&["homology", "sl2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 0 0 1"));
    let o = rinehart(&["homology", "nonabelian-dim2", "--format", "machine"]);
    assert!(stdout(&o).contains("betti=0,1,1"));
    let o = rinehart(&["homology", "coordinate-2d"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m = 2"));
    let o = rinehart(&["homology", "nonabelian-dim2-curved"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two_with_locations() {
    let path = write_file("bad.lr", "vars = 1\nrank = 1\nanchor[1][1] = x1 +* 2\n");
    let o = rinehart(&["check", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(&format!("{path}:3:")), "{}", stderr(&o));

    let path = write_file("jacobi.lr", "vars = 0\nrank = 3\nc[1][2][2] = 1\nc[2][3][1] = 1\n");
    let o = rinehart(&["check", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(1, 2, 3)"), "{}", stderr(&o));

    assert_eq!(rinehart(&["check", "no-such-algebra"]).status.code(), Some(2));
    assert_eq!(rinehart(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failures_print_a_witness_and_a_rerun_command() {
    // The loader refuses mismatched (r, gamma), so build one directly.
    let mut input = load("nonabelian-dim2").unwrap();
    input.top = TopConnection::new(vec![Poly::int(0, 1), Poly::int(0, 0)]);
    let config = CheckConfig::default().with_trials(4);
    let rep = run_suites(
        &input,
        "nonabelian-dim2",
        &[Suite::Intertwining, Suite::Axioms],
        &config,
    );
    assert_eq!(rep.exit_code(), 1);
    assert_eq!(rep.results[0].suite, Suite::Axioms);
    let failed = &rep.results[1];
    assert_eq!(failed.status, Status::Fail);
    let text = report(&rep, Format::Text);
    assert!(text.contains("witness:"), "{text}");
    assert!(text
        .contains("rerun:   rinehart check nonabelian-dim2 --suite intertwining --seed 0 --trials 4 --degree-bound 3"));
    let machine = report(&rep, Format::Machine);
    assert!(machine.contains("suite.intertwining.status=fail"));
    assert!(machine.contains("suite.intertwining.witness="));
    assert!(machine.contains("result=fail"));

    // rerunning the single suite reproduces the witness
    let again = cli::run_suite(&input, Suite::Intertwining, &config);
    assert_eq!(again.witness, failed.witness);
}
