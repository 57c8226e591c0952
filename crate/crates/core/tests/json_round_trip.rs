use skewbrace::cohomology::schur_multiplier;
use skewbrace::corpus::corpus;
use skewbrace::covers::enumerate_covers;
use skewbrace::json::{
    brace_from_str, brace_to_json, extension_from_str, extension_to_json, factor_set_from_value, factor_set_to_json,
    multiplier_to_json,
};
use skewbrace::Error;

#[test]
fn braces_and_factor_sets_survive_serialization() {
    for (spec, q) in corpus(9) {
        let text = serde_json::to_string(&brace_to_json(&q)).unwrap();
        assert_eq!(brace_from_str(&text).unwrap(), q, "{spec}");
        let mult = schur_multiplier(&q).unwrap();
        for g in mult.representatives() {
            assert_eq!(&factor_set_from_value(&q, &factor_set_to_json(g)).unwrap(), g, "{spec}");
        }
        let doc = multiplier_to_json(&mult);
        assert_eq!(doc["multiplier"], serde_json::json!(mult.group().invariants()));
    }
}

#[test]
fn covers_survive_serialization() {
    let q = skewbrace::builder::parse_brace("trivial:cyclic:3").unwrap();
    for ext in enumerate_covers(&q).unwrap() {
        let text = extension_to_json(&ext).to_string();
        let back = extension_from_str(&text).unwrap();
        assert_eq!(back.brace(), ext.brace());
    }
}

#[test]
fn tampered_factor_sets_are_rejected() {
    let q = skewbrace::builder::parse_brace("c:9,3").unwrap();
    let g = schur_multiplier(&q).unwrap().representatives()[0].clone();
    let mut doc = factor_set_to_json(&g);
    let m = g.modulus();
    doc["mu"][1][2] = serde_json::json!((g.mu(1, 2) + 1) % m);
    assert!(matches!(factor_set_from_value(&q, &doc), Err(Error::InvalidCocycle(_))));
}
