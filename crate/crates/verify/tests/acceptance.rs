use dlat_verify::{run_suite, Limits, Scope};

#[test]
fn acceptance_criteria() {
    let report = run_suite(Scope::All, &Limits::from_env());
    let mut failed = Vec::new();
    for c in &report.criteria {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:<12} {} ({} ms)", c.id, c.title, c.elapsed_ms);
        for case in c.cases.iter().filter(|k| !k.pass) {
            println!("     {}: {}", case.case, case.detail);
            failed.push(format!("{}/{}", c.id, case.case));
        }
    }
    let ids: Vec<&str> = report.criteria.iter().map(|c| c.id.as_str()).collect();
    let mut expected: Vec<String> = (1..=15).map(|i| i.to_string()).collect();
    expected.push("implications".into());
    assert_eq!(ids, expected);
    assert!(failed.is_empty(), "failing cases: {failed:?}");
}

#[test]
fn fast_scope_is_a_nonempty_subset() {
    let limits = Limits::from_env();
    let fast = run_suite(Scope::Fast, &limits);
    assert!(fast.pass);
    assert_eq!(fast.criteria.len(), 16);
    assert!(fast.criteria.iter().all(|c| !c.cases.is_empty()));
}
