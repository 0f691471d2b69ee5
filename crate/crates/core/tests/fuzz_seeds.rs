//! Replays the checked-in fuzz corpus through the parsers.

use std::fs;
use std::path::PathBuf;

use finsupp::notation::{
    default_variables, format_chain, format_monomial, parse_chain, parse_generators, parse_monomial,
};
use finsupp::problem::parse_problem;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| String::from_utf8_lossy(&fs::read(e.unwrap().path()).unwrap()).into_owned())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn monomial_seeds_round_trip() {
    for text in seeds("parse_monomial") {
        for dim in 2..=4 {
            let vars = default_variables(dim);
            if let Ok(e) = parse_monomial(&text, &vars) {
                assert_eq!(parse_monomial(&format_monomial(&e, &vars), &vars).unwrap(), e);
            }
            let _ = parse_generators(&text, &vars);
        }
    }
}

#[test]
fn chain_seeds_round_trip() {
    let vars = default_variables(3);
    for text in seeds("parse_chain") {
        if let Ok(d) = parse_chain(&text, &vars) {
            assert_eq!(parse_chain(&format_chain(&d, &vars), &vars).unwrap(), d);
        }
    }
}

#[test]
fn problem_seeds_parse_or_fail_cleanly() {
    let parsed = seeds("parse_problem").iter().filter(|t| parse_problem(t).is_ok()).count();
    assert!(parsed >= 3);
}
