use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use finsupp::report::Report;

fn problems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn finsupp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsupp")).args(args).output().expect("binary runs")
}

fn problem_path(name: &str) -> String {
    problems().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// A problem file in a fresh temporary directory.
fn scratch(text: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.toml");
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    let s = path.to_string_lossy().into_owned();
    (dir, s)
}

#[test]
fn rees_of_p2_has_two_valuations() {
    let o = finsupp(&["rees", &problem_path("setting610.toml"), "--ideal", "P2", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let Report::Rees { valuations, .. } = serde_json::from_str(&stdout(&o)).unwrap() else { panic!("wrong report") };
    let vectors: Vec<Vec<i64>> = valuations.into_iter().map(|v| v.vector).collect();
    assert_eq!(vectors, vec![vec![1, 1, 1], vec![2, 3, 4]]);
}

#[test]
fn same_rees_blowup_has_one_singular_point() {
    let o = finsupp(&["blowup", &problem_path("samerees.toml"), "--ideal", "I", "--normalized"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("regular: false, singular points: 1"), "{}", stdout(&o));

    let o = finsupp(&["blowup", &problem_path("samerees.toml"), "--ideal", "MI"]);
    assert!(stdout(&o).contains("regular: true, singular points: 0"));
}

#[test]
fn every_command_round_trips_through_json() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["basepoints", "twobranches.toml", "--ideal", "I"],
        vec!["factorize", "twobranches.toml", "--ideal", "J"],
        vec!["rees", "samerees.toml", "--ideal", "I"],
        vec!["special", "setting610.toml", "--chain", "R2"],
        vec!["blowup", "samerees.toml", "--ideal", "I"],
        vec!["blowup", "setting610.toml", "--gamma", "Chain"],
        vec!["chart", "samerees.toml", "--ideal", "I", "--at", "y^3", "--saturate"],
        vec!["conditions", "twobranches.toml", "--ideal", "I", "--max-k", "3"],
        vec!["models-count", "setting610.toml", "--tree", "Chain"],
    ];
    for run in runs {
        let file = problem_path(run[1]);
        let mut args = run.clone();
        args[1] = &file;
        args.push("--json");
        let first = finsupp(&args);
        assert_eq!(first.status.code(), Some(0), "{run:?}: {}", stderr(&first));
        let text = stdout(&first);
        let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{run:?}: {e}"));
        assert_eq!(format!("{}\n", report.to_json()), text, "{run:?}");
        assert_eq!(finsupp(&args).stdout, first.stdout, "{run:?} is not deterministic");
    }
}

#[test]
fn conditions_use_file_bound() {
    let o = finsupp(&["conditions", &problem_path("twobranches.toml"), "--ideal", "I", "--json"]);
    let Report::Conditions { bound, conditions, .. } = serde_json::from_str(&stdout(&o)).unwrap() else { panic!() };
    assert_eq!(bound, 4);
    assert!(!conditions.product_divides);
    assert!(conditions.each_special_divides);
}

#[test]
fn parse_errors_exit_one_with_position() {
    let (_dir, path) = scratch("dimension = 3\n[ideals]\nA = \"x^2, w\"\n");
    let o = finsupp(&["rees", &path, "--ideal", "A"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3, column 11"), "{}", stderr(&o));
}

#[test]
fn unknown_names_and_files_exit_one() {
    let o = finsupp(&["rees", &problem_path("setting610.toml"), "--ideal", "Nope"]);
    assert_eq!(o.status.code(), Some(1));
    let o = finsupp(&["rees", "/nonexistent/problem.toml", "--ideal", "m"]);
    assert_eq!(o.status.code(), Some(1));
    let o = finsupp(&["rees"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mathematical_errors_exit_two() {
    let (_dir, path) = scratch("dimension = 3\n[ideals]\nA = \"x, y\"\n");
    for cmd in ["blowup", "basepoints", "factorize"] {
        let o = finsupp(&[cmd, &path, "--ideal", "A"]);
        assert_eq!(o.status.code(), Some(2), "{cmd}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn paper_examples_pass() {
    let o = finsupp(&["paper-examples", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let Report::PaperExamples { failed, passed, .. } = serde_json::from_str(&stdout(&o)).unwrap() else { panic!() };
    assert_eq!(failed, 0);
    assert!(passed > 0);
}
