//! A fixed list of small named braces used by the self-test and the
//! property suites.

use crate::brace::SkewBrace;
use crate::builder::parse_brace;

const SPECS: &[&str] = &[
    "point",
    "trivial:cyclic:2",
    "trivial:cyclic:3",
    "trivial:cyclic:4",
    "c:4,2",
    "bp:2",
    "trivial:klein:4",
    "trivial:cyclic:5",
    "trivial:cyclic:6",
    "trivial:s3",
    "almosttrivial:s3",
    "c:6,6",
    "trivial:cyclic:7",
    "trivial:cyclic:8",
    "c:8,2",
    "c:8,4",
    "trivial:abelian:2,4",
    "trivial:abelian:2,2,2",
    "trivial:dihedral:8",
    "almosttrivial:dihedral:8",
    "trivial:quaternion:8",
    "almosttrivial:quaternion:8",
    "prod:c:4,2|trivial:cyclic:2",
    "prod:bp:2|trivial:cyclic:2",
    "trivial:cyclic:9",
    "c:9,3",
    "bp:3",
    "op:bp:3",
    "trivial:abelian:3,3",
    "prod:c:3,3|c:3,3",
    "trivial:cyclic:10",
    "trivial:dihedral:10",
    "almosttrivial:dihedral:10",
    "trivial:cyclic:12",
    "c:12,6",
    "prod:c:3,3|c:4,2",
    "prod:c:3,3|bp:2",
    "trivial:dihedral:12",
    "almosttrivial:dihedral:12",
];

/// `(spec, brace)` pairs of order at most `max_order`, in increasing order.
pub fn corpus(max_order: usize) -> Vec<(&'static str, SkewBrace)> {
    SPECS
        .iter()
        .map(|&s| (s, parse_brace(s).expect("corpus spec parses")))
        .filter(|(_, q)| q.order() <= max_order)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_spec_builds() {
        let all = corpus(usize::MAX);
        assert_eq!(all.len(), SPECS.len());
        assert!(all.windows(2).all(|w| w[0].1.order() <= w[1].1.order()));
    }
}
