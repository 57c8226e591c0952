//! Schur covers: construction, verification, enumeration up to isomorphism,
//! and the bound on their number.

use serde::Serialize;

use crate::brace::SkewBrace;
use crate::cohomology::{h2b, multiplier_for, schur_multiplier, transgression_images, BraceCohomology};
use crate::error::{Error, Result};
use crate::extension::{build_extension, AnnihilatorExtension};
use crate::iso::find_isomorphism;
use crate::linalg::{gcd, AbElement, FinAbGroup, SpanSolver};

/// Default cap on the number of cohomology classes visited by
/// [`enumerate_covers`].
pub const DEFAULT_CLASS_BUDGET: u128 = 1_000_000;

/// The three facts that together make an extension a Schur cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub kernel: FinAbGroup,
    pub multiplier: FinAbGroup,
    pub kernel_in_derived: bool,
    pub order_matches: bool,
    pub transgression_bijective: bool,
}

impl CoverCertificate {
    pub fn is_cover(&self) -> bool {
        self.kernel_in_derived && self.order_matches && self.transgression_bijective
    }
}

/// Order of the subgroup of `g` generated by `xs`.
fn span_order(g: &FinAbGroup, xs: &[AbElement]) -> u128 {
    if g.is_trivial() {
        return 1;
    }
    let e = g.exponent();
    let vecs: Vec<Vec<u64>> = xs.iter().map(|x| g.embed(e, x)).collect();
    SpanSolver::new(e, g.rank(), &vecs).span_order()
}

pub fn is_schur_cover(ext: &AnnihilatorExtension) -> Result<CoverCertificate> {
    let derived = ext.brace().commutator_ideal()?;
    let mult = multiplier_for(ext)?;
    let images = transgression_images(ext, &mult)?;
    let m = mult.group();
    let k = ext.kernel_group();
    let order_matches = k.order() == m.order();
    Ok(CoverCertificate {
        kernel: k.clone(),
        multiplier: m.clone(),
        kernel_in_derived: ext.inclusion().iter().all(|&u| derived.contains(u)),
        order_matches,
        transgression_bijective: order_matches && span_order(m, &images) == m.order(),
    })
}

/// A Schur cover built from torsion representatives of the multiplier's
/// invariant-factor generators.
pub fn build_schur_cover(q: &SkewBrace) -> Result<AnnihilatorExtension> {
    let mb = schur_multiplier(q)?;
    let ext = build_extension(mb.group(), mb.representatives(), q)?;
    let cert = is_schur_cover(&ext)?;
    if !cert.is_cover() {
        return Err(Error::Inconsistency(format!("constructed extension is not a Schur cover: {cert:?}")));
    }
    Ok(ext)
}

/// `∏ gcd(n_i, m_j)` over the invariant factors of `Q/Q'` and `M_b(Q)`.
pub fn cover_count_bound(q: &SkewBrace) -> Result<u128> {
    let ab = q.abelianization()?;
    let mb = schur_multiplier(q)?;
    Ok(ab
        .group
        .invariants()
        .iter()
        .flat_map(|&n| mb.group().invariants().iter().map(move |&m| gcd(n, m) as u128))
        .product())
}

pub fn enumerate_covers(q: &SkewBrace) -> Result<Vec<AnnihilatorExtension>> {
    enumerate_covers_with_budget(q, DEFAULT_CLASS_BUDGET)
}

/// Pairwise non-isomorphic Schur covers of `Q`, one per isomorphism class,
/// in the order they are first met while walking `⊕ H²_b(Q, Z/d_j)`.
pub fn enumerate_covers_with_budget(q: &SkewBrace, budget: u128) -> Result<Vec<AnnihilatorExtension>> {
    let mb = schur_multiplier(q)?;
    let k = mb.group().clone();
    let m = mb.modulus();
    let d = k.invariants().to_vec();

    let factors: Vec<BraceCohomology> = d.iter().map(|&di| h2b(q, di)).collect();
    let total: u128 = factors.iter().map(|h| h.group().order()).product();
    if total > budget {
        return Err(Error::TooLarge { what: "cohomology classes", requested: total, budget });
    }
    // Transgression images of the generators of each H²_b(Q, Z/d_j).
    let gen_images: Vec<Vec<AbElement>> = factors
        .iter()
        .map(|h| {
            h.generators()
                .iter()
                .map(|g| mb.class_of(&g.widen(m)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let elements: Vec<Vec<AbElement>> = factors.iter().map(|h| h.group().elements()).collect();

    let mut covers: Vec<AnnihilatorExtension> = Vec::new();
    let mut idx = vec![0usize; d.len()];
    'walk: loop {
        let classes: Vec<&AbElement> = idx.iter().zip(&elements).map(|(&i, els)| &els[i]).collect();
        let images: Vec<AbElement> = classes
            .iter()
            .zip(&gen_images)
            .map(|(c, imgs)| {
                c.0.iter()
                    .zip(imgs)
                    .fold(k.zero(), |acc, (&ci, img)| k.add(&acc, &k.scale(ci, img)))
            })
            .collect();
        if span_order(&k, &images) == k.order() {
            let cocycle: Vec<_> = classes.iter().zip(&factors).map(|(c, h)| h.representative(c)).collect();
            let ext = build_extension(&k, &cocycle, q)?;
            if !covers.iter().any(|c| find_isomorphism(c.brace(), ext.brace()).is_some()) {
                covers.push(ext);
            }
        }
        for (i, els) in idx.iter_mut().zip(&elements) {
            *i += 1;
            if *i < els.len() {
                continue 'walk;
            }
            *i = 0;
        }
        break;
    }
    Ok(covers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    #[test]
    fn covers_of_small_cyclic_groups() {
        for (p, bound) in [(2usize, 2u128), (3, 3)] {
            let q = SkewBrace::trivial(&GroupTable::cyclic(p));
            let covers = enumerate_covers(&q).unwrap();
            assert_eq!(covers.len(), 2);
            assert_eq!(cover_count_bound(&q).unwrap(), bound);
            let expected = [SkewBrace::c_nd(p * p, p).unwrap(), SkewBrace::b_p(p).unwrap()];
            for want in &expected {
                assert_eq!(covers.iter().filter(|c| find_isomorphism(c.brace(), want).is_some()).count(), 1);
            }
            for c in &covers {
                assert!(is_schur_cover(c).unwrap().is_cover());
            }
        }
    }

    #[test]
    fn point_and_bound() {
        let covers = enumerate_covers(&SkewBrace::point()).unwrap();
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].brace().order(), 1);
        assert_eq!(cover_count_bound(&SkewBrace::c_nd(4, 2).unwrap()).unwrap(), 4);
    }

    #[test]
    fn built_cover_and_split_negative() {
        let q = SkewBrace::c_nd(3, 3).unwrap();
        let cover = build_schur_cover(&q).unwrap();
        assert_eq!(cover.brace().order(), 9);
        let split = build_extension(
            &FinAbGroup::cyclic(3),
            &[crate::cohomology::BraceFactorSet::zero(3, 3)],
            &q,
        )
        .unwrap();
        let cert = is_schur_cover(&split).unwrap();
        assert!(cert.order_matches && !cert.transgression_bijective && !cert.is_cover());
    }

    #[test]
    fn budget_is_enforced() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(3));
        assert!(matches!(enumerate_covers_with_budget(&q, 5), Err(Error::TooLarge { .. })));
    }
}
