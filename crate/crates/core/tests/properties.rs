use proptest::prelude::*;
use proptest::sample::select;

use skewbrace::builder::{parse_brace, parse_group};
use skewbrace::cohomology::{h2b, schur_multiplier, BraceFactorSet};
use skewbrace::corpus::corpus;
use skewbrace::twisted::{linearizable, TwistedAlgebra};
use skewbrace::SkewBrace;

fn small() -> impl Strategy<Value = SkewBrace> {
    select(corpus(8).into_iter().map(|(_, q)| q).collect::<Vec<_>>())
}

fn with_elements() -> impl Strategy<Value = (SkewBrace, usize, usize, usize)> {
    select(corpus(12).into_iter().map(|(_, q)| q).collect::<Vec<_>>()).prop_flat_map(|q| {
        let n = q.order();
        (Just(q), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn brace_law_and_lambda((q, a, b, c) in with_elements()) {
        prop_assert_eq!(q.circ(a, q.add(b, c)), q.add(q.sub(q.circ(a, b), a), q.circ(a, c)));
        prop_assert_eq!(q.lambda(a, q.add(b, c)), q.add(q.lambda(a, b), q.lambda(a, c)));
        prop_assert_eq!(q.lambda(q.circ(a, b), c), q.lambda(a, q.lambda(b, c)));
        prop_assert_eq!(q.star(a, b), q.sub(q.lambda(a, b), b));
    }

    #[test]
    fn h2b_torsion_is_consistent(q in small(), m in 1u64..=6) {
        let h = h2b(&q, m);
        let g = h.group();
        prop_assert_eq!(g.killed_by(m), g.order());
        prop_assert_eq!(m % g.exponent(), 0);
        for c in h.generators() {
            prop_assert!(c.is_valid(&q));
            prop_assert!(!h.is_coboundary(&c).unwrap() || g.is_trivial());
        }
    }

    #[test]
    fn universal_coefficients(q in small(), m in 2u64..=6) {
        let ab = q.abelianization().unwrap().group;
        let mb = schur_multiplier(&q).unwrap().group().clone();
        prop_assert_eq!(h2b(&q, m).group().order(), ab.tensor_cyclic(m).order() * mb.tensor_cyclic(m).order());
    }

    #[test]
    fn multiplier_exponent_divides_square_order(q in small()) {
        let n = q.order() as u64;
        prop_assert_eq!((n * n) % schur_multiplier(&q).unwrap().group().exponent(), 0);
    }

    #[test]
    fn coboundaries_do_not_change_classes(q in small(), seed in prop::collection::vec(0u64..36, 12)) {
        let n = q.order();
        let m = (n * n) as u64;
        let mut h: Vec<u64> = seed.iter().cycle().take(n).map(|x| x % m).collect();
        h[0] = 0;
        let b = BraceFactorSet::coboundary(&q, m, &h);
        prop_assert!(linearizable(&TwistedAlgebra::new(&q, b.clone()).unwrap()).unwrap());
        let mult = schur_multiplier(&q).unwrap();
        for g in mult.representatives() {
            let g = g.widen(m).unwrap();
            let moved = g.add(&b).unwrap();
            prop_assert_eq!(mult.class_of(&moved).unwrap(), mult.class_of(&g).unwrap());
            prop_assert_eq!(
                linearizable(&TwistedAlgebra::new(&q, moved).unwrap()).unwrap(),
                linearizable(&TwistedAlgebra::new(&q, g).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn opposite_group_gives_the_same_multiplier() {
    for g in ["s3", "quaternion:8", "dihedral:8", "dihedral:10", "dihedral:12", "cyclic:6"] {
        let plain = schur_multiplier(&SkewBrace::trivial(&parse_group(g).unwrap())).unwrap();
        let op = schur_multiplier(&parse_brace(&format!("trivial:opposite:{g}")).unwrap()).unwrap();
        let almost = schur_multiplier(&parse_brace(&format!("almosttrivial:{g}")).unwrap()).unwrap();
        assert_eq!(plain.group(), op.group(), "{g}");
        assert_eq!(plain.group(), almost.group(), "{g}");
    }
}
