//! The twisted skew brace algebra on root-of-unity monomials `ζ^s e_a`,
//! with `ζ` a formal primitive `m`-th root of unity.

use serde::Serialize;

use crate::brace::SkewBrace;
use crate::cohomology::{h2b, multiplier_for, transgression_images, BraceFactorSet};
use crate::error::{Error, Result};
use crate::extension::AnnihilatorExtension;
use crate::linalg::{add_mod, neg_mod, SpanSolver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    pub exponent: u64,
    pub element: usize,
}

impl Monomial {
    pub fn basis(element: usize) -> Self {
        Monomial { exponent: 0, element }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Additive,
    Circle,
}

#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    brace: SkewBrace,
    cocycle: BraceFactorSet,
}

/// Outcome of an identity check over all basis triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub holds: bool,
    pub witness: Option<(usize, usize, usize)>,
}

impl RelationReport {
    fn from_witness(witness: Option<(usize, usize, usize)>) -> Self {
        RelationReport { holds: witness.is_none(), witness }
    }
}

impl TwistedAlgebra {
    pub fn new(brace: &SkewBrace, cocycle: BraceFactorSet) -> Result<Self> {
        if let Some(v) = cocycle.violation(brace) {
            return Err(Error::InvalidCocycle(v.to_string()));
        }
        Self::unchecked(brace, cocycle)
    }

    /// Accepts tables that may violate the cocycle identities, for testing
    /// which identities of the algebra survive.
    pub fn unchecked(brace: &SkewBrace, cocycle: BraceFactorSet) -> Result<Self> {
        if cocycle.order() != brace.order() {
            return Err(Error::MismatchedData(format!(
                "tables of order {} on a brace of order {}",
                cocycle.order(),
                brace.order()
            )));
        }
        Ok(TwistedAlgebra { brace: brace.clone(), cocycle })
    }

    pub fn brace(&self) -> &SkewBrace {
        &self.brace
    }

    pub fn cocycle(&self) -> &BraceFactorSet {
        &self.cocycle
    }

    pub fn modulus(&self) -> u64 {
        self.cocycle.modulus()
    }

    pub fn monomial(&self, exponent: u64, element: usize) -> Monomial {
        Monomial { exponent: exponent % self.modulus(), element }
    }

    pub fn product(&self, x: Monomial, y: Monomial, mode: Mode) -> Monomial {
        let m = self.modulus();
        let (twist, element) = match mode {
            Mode::Additive => (self.cocycle.alpha(x.element, y.element), self.brace.add(x.element, y.element)),
            Mode::Circle => (self.cocycle.mu(x.element, y.element), self.brace.circ(x.element, y.element)),
        };
        Monomial { exponent: add_mod(add_mod(x.exponent, y.exponent, m), twist, m), element }
    }

    pub fn inverse(&self, x: Monomial, mode: Mode) -> Monomial {
        let m = self.modulus();
        let a = x.element;
        let (twist, element) = match mode {
            Mode::Additive => {
                let b = self.brace.neg(a);
                (self.cocycle.alpha(a, b), b)
            }
            Mode::Circle => {
                let b = self.brace.inv(a);
                (self.cocycle.mu(a, b), b)
            }
        };
        Monomial { exponent: neg_mod(add_mod(x.exponent, twist, m), m), element }
    }

    /// First basis triple on which the product in `mode` fails to associate.
    pub fn associativity(&self, mode: Mode) -> RelationReport {
        let n = self.brace.order();
        let e = Monomial::basis;
        let witness = triples(n).find(|&(a, b, c)| {
            self.product(self.product(e(a), e(b), mode), e(c), mode)
                != self.product(e(a), self.product(e(b), e(c), mode), mode)
        });
        RelationReport::from_witness(witness)
    }

    /// Both sides of `e_a∘(e_b·e_c) = (e_a∘e_b)·e_a⁻¹·(e_a∘e_c)`.
    pub fn relation_sides(&self, a: usize, b: usize, c: usize) -> (Monomial, Monomial) {
        let e = Monomial::basis;
        let lhs = self.product(e(a), self.product(e(b), e(c), Mode::Additive), Mode::Circle);
        let ab = self.product(e(a), e(b), Mode::Circle);
        let ac = self.product(e(a), e(c), Mode::Circle);
        let inv = self.inverse(e(a), Mode::Additive);
        let rhs = self.product(self.product(ab, inv, Mode::Additive), ac, Mode::Additive);
        (lhs, rhs)
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

/// The brace relation of the twisted algebra on every basis triple.
pub fn brace_alg_relation_check(alg: &TwistedAlgebra) -> RelationReport {
    let witness = triples(alg.brace.order()).find(|&(a, b, c)| {
        let (l, r) = alg.relation_sides(a, b, c);
        l != r
    });
    RelationReport::from_witness(witness)
}

/// Whether the degree-one projective data of the algebra linearizes, which
/// happens exactly when its factor set is a coboundary.
pub fn linearizable(alg: &TwistedAlgebra) -> Result<bool> {
    h2b(&alg.brace, alg.modulus()).is_coboundary(&alg.cocycle)
}

/// Whether transgression `Hom(K, C×) → M_b(Q)` is onto.
pub fn lifting_property_check(ext: &AnnihilatorExtension) -> Result<bool> {
    let mult = multiplier_for(ext)?;
    let g = mult.group();
    if g.is_trivial() {
        return Ok(true);
    }
    let e = g.exponent();
    let images: Vec<Vec<u64>> =
        transgression_images(ext, &mult)?.iter().map(|x| g.embed(e, x)).collect();
    Ok(SpanSolver::new(e, g.rank(), &images).span_order() == g.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::Ideal;
    use crate::cohomology::schur_multiplier;
    use crate::extension::{build_extension, extension_from_ideal};
    use crate::group::GroupTable;
    use crate::linalg::FinAbGroup;

    fn c93_alg() -> TwistedAlgebra {
        let e = SkewBrace::c_nd(9, 3).unwrap();
        let ext = extension_from_ideal(&e, &Ideal::new(&e, vec![0, 3, 6]).unwrap(), None).unwrap();
        TwistedAlgebra::new(ext.base(), ext.cocycle()[0].clone()).unwrap()
    }

    #[test]
    fn products_and_inverses() {
        let alg = c93_alg();
        let e = Monomial::basis;
        assert_eq!(alg.product(e(1), e(2), Mode::Additive), Monomial { exponent: 1, element: 0 });
        let inv = alg.inverse(e(1), Mode::Circle);
        assert_eq!(inv.element, 2);
        assert_eq!(inv.exponent, neg_mod(alg.cocycle().mu(1, 2), 3));
        for mode in [Mode::Additive, Mode::Circle] {
            for a in 0..3 {
                let x = alg.monomial(2, a);
                assert_eq!(alg.product(x, alg.inverse(x, mode), mode), e(0));
                assert_eq!(alg.product(e(0), x, mode), x);
            }
            assert!(alg.associativity(mode).holds);
        }
        assert!(brace_alg_relation_check(&alg).holds);
        assert!(!linearizable(&alg).unwrap());
    }

    #[test]
    fn perturbation_breaks_the_relation() {
        let q = SkewBrace::c_nd(4, 2).unwrap();
        let mb = schur_multiplier(&q).unwrap();
        for g in mb.representatives() {
            let alg = TwistedAlgebra::new(&q, g.clone()).unwrap();
            assert!(brace_alg_relation_check(&alg).holds);
            assert!(!linearizable(&alg).unwrap());
            let mut bad = g.clone();
            bad.set_mu(1, 2, (g.mu(1, 2) + 1) % g.modulus());
            let report = brace_alg_relation_check(&TwistedAlgebra::unchecked(&q, bad).unwrap());
            assert!(!report.holds && report.witness.is_some());
        }
    }

    #[test]
    fn coboundaries_linearize() {
        let q = SkewBrace::b_p(2).unwrap();
        let alg = TwistedAlgebra::new(&q, BraceFactorSet::coboundary(&q, 4, &[0, 1, 3, 2])).unwrap();
        assert!(linearizable(&alg).unwrap());
        assert!(brace_alg_relation_check(&alg).holds);
    }

    #[test]
    fn lifting_property() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(3));
        let split = build_extension(&FinAbGroup::cyclic(3), &[BraceFactorSet::zero(3, 3)], &q).unwrap();
        assert!(!lifting_property_check(&split).unwrap());
        let e = SkewBrace::c_nd(9, 3).unwrap();
        let ext = extension_from_ideal(&e, &Ideal::new(&e, vec![0, 3, 6]).unwrap(), None).unwrap();
        assert!(lifting_property_check(&ext).unwrap());
    }
}
