use finsupp::regressions::run_regression_checks;

#[test]
fn every_pinned_regression_passes() {
    let checks = run_regression_checks();
    for c in &checks {
        println!("{} {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.criterion, c.name, c.detail);
    }
    assert!(checks.iter().all(|c| c.passed));
}
