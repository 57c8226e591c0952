use skewbrace::selftest::{criteria, run, Options};

#[test]
fn filter_selects_by_tag_and_name() {
    let tagged: Vec<u8> = criteria().iter().filter(|c| c.matches("covers")).map(|c| c.id).collect();
    assert_eq!(tagged, vec![7, 8, 9]);
    let out = run(&Options { filter: Some("s-groups".into()), corrupt: false });
    assert_eq!(out.len(), 1);
    assert!(out[0].passed, "{}", out[0]);
    assert!(out[0].to_string().starts_with("[PASS] 15 s-groups"));
}

#[test]
fn corrupted_fixtures_fail_by_name() {
    let out = run(&Options { filter: Some("bp-multiplier".into()), corrupt: true });
    assert_eq!(out.len(), 1);
    assert!(!out[0].passed);
    assert!(out[0].detail.contains("fixture bp:3 rejected"), "{}", out[0].detail);
}

#[test]
fn every_criterion_has_a_distinct_id() {
    let ids: Vec<u8> = criteria().iter().map(|c| c.id).collect();
    assert_eq!(ids, (1..=15).collect::<Vec<_>>());
}
