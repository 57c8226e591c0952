//! Maps between cohomology groups: δ into group cohomology, inflation,
//! restriction, transgression, and the five-term exactness check.

use super::factor_set::BraceFactorSet;
use super::h2::{
    group_h2, group_schur_multiplier_at, h2b, schur_multiplier, schur_multiplier_at, BraceMultiplier,
    GroupCohomology,
};
use super::system::brace_coboundary_generators;
use crate::brace::{BraceMorphism, SkewBrace};
use crate::error::{Error, Result};
use crate::extension::AnnihilatorExtension;
use crate::linalg::{gcd, kernel_mod, lcm, linear_kernel, mul_mod, AbElement, FinAbGroup, SpanSolver};

/// `Hom(Q, Z/m)` for a brace `Q`: generating characters as value vectors of
/// length `|Q|`, and the structure of the group they span.
pub fn characters(q: &SkewBrace, m: u64) -> Result<(Vec<Vec<u64>>, FinAbGroup)> {
    let ab = q.abelianization()?;
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (i, &e) in ab.group.invariants().iter().enumerate() {
        let g = gcd(e, m);
        if g == 1 {
            continue;
        }
        let step = m / g;
        gens.push(ab.coords.iter().map(|c| mul_mod(c.0[i], step, m)).collect());
        orders.push(g);
    }
    Ok((gens, FinAbGroup::from_cyclic_orders(&orders)))
}

/// `δ₊` and `δ∘` from `H²_b(Q, Z/m)` to the group cohomology of the two
/// underlying groups of `Q`.
#[derive(Clone, Debug)]
pub struct DeltaMaps {
    additive: GroupCohomology,
    circle: GroupCohomology,
}

impl DeltaMaps {
    pub fn new(q: &SkewBrace, m: u64) -> Self {
        DeltaMaps { additive: group_h2(q.add_group(), m), circle: group_h2(q.circ_group(), m) }
    }

    pub fn additive_target(&self) -> &FinAbGroup {
        self.additive.group()
    }

    pub fn circle_target(&self) -> &FinAbGroup {
        self.circle.group()
    }

    /// Coordinates of `(δ₊ c, δ∘ c)`.
    pub fn apply(&self, c: &BraceFactorSet) -> Result<(AbElement, AbElement)> {
        Ok((self.additive.class_of(&c.additive_part())?, self.circle.class_of(&c.circle_part())?))
    }
}

/// `δ₊` and `δ∘` of a single class over `Z/m`.
pub fn delta_maps(q: &SkewBrace, c: &BraceFactorSet) -> Result<(AbElement, AbElement)> {
    DeltaMaps::new(q, c.modulus()).apply(c)
}

/// The kernels `S = ker δ`, `S₊ = ker δ₊` and `S∘ = ker δ∘` of the maps from
/// `M_b(Q)` to the multipliers of the additive and circle groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaKernels {
    pub multiplier: FinAbGroup,
    pub additive_multiplier: FinAbGroup,
    pub circle_multiplier: FinAbGroup,
    pub s: FinAbGroup,
    pub s_add: FinAbGroup,
    pub s_circ: FinAbGroup,
}

pub fn delta_kernels(q: &SkewBrace) -> Result<DeltaKernels> {
    let mb = schur_multiplier(q)?;
    let m = mb.modulus();
    let ga = group_schur_multiplier_at(q.add_group(), m)?;
    let gc = group_schur_multiplier_at(q.circ_group(), m)?;
    let mut img_a = Vec::new();
    let mut img_c = Vec::new();
    for r in mb.representatives() {
        img_a.push(ga.class_of(&r.additive_part())?.0);
        img_c.push(gc.class_of(&r.circle_part())?.0);
    }
    let both: Vec<Vec<u64>> = img_a.iter().zip(&img_c).map(|(a, c)| [a.as_slice(), c].concat()).collect();
    let target: Vec<u64> = [ga.group().invariants(), gc.group().invariants()].concat();
    let g = mb.group();
    Ok(DeltaKernels {
        multiplier: g.clone(),
        additive_multiplier: ga.group().clone(),
        circle_multiplier: gc.group().clone(),
        s: linear_kernel(g, &target, &both).group().clone(),
        s_add: linear_kernel(g, ga.group().invariants(), &img_a).group().clone(),
        s_circ: linear_kernel(g, gc.group().invariants(), &img_c).group().clone(),
    })
}

/// Pulls a factor set on `Q` back along a surjection `B → Q`.
pub fn inflation(c: &BraceFactorSet, projection: &BraceMorphism) -> Result<BraceFactorSet> {
    if !projection.is_surjective() {
        return Err(Error::NotSurjective("inflation needs a surjective morphism".into()));
    }
    if projection.target_order() != c.order() {
        return Err(Error::MismatchedData(format!(
            "factor set over order {} but the projection lands in order {}",
            c.order(),
            projection.target_order()
        )));
    }
    Ok(c.pull_back(projection.map()))
}

/// Restriction of a character of `E` (values on every element) to `K`,
/// as the values on the canonical generators of `K`.
pub fn restriction(ext: &AnnihilatorExtension, character: &[u64]) -> Result<Vec<u64>> {
    if character.len() != ext.brace().order() {
        return Err(Error::MismatchedData(format!(
            "character with {} values on a brace of order {}",
            character.len(),
            ext.brace().order()
        )));
    }
    Ok((0..ext.kernel_group().rank()).map(|j| character[ext.kernel_generator(j)]).collect())
}

/// The class in `M_b(Q)` of `(φα, φμ)` for the character `φ` of `K` with
/// generator values `phi` in `Z/m`, `m` the multiplier modulus.
pub fn transgression(ext: &AnnihilatorExtension, mult: &BraceMultiplier, phi: &[u64]) -> Result<AbElement> {
    mult.class_of(&ext.push_forward(mult.modulus(), phi)?)
}

/// Images under transgression of the characters `e_j ↦ m/d_j`, which
/// generate `Hom(K, Z/m)` whenever every `d_j` divides `m`.
pub fn transgression_images(ext: &AnnihilatorExtension, mult: &BraceMultiplier) -> Result<Vec<AbElement>> {
    let m = mult.modulus();
    let k = ext.kernel_group();
    (0..k.rank())
        .map(|j| {
            let mut phi = vec![0u64; k.rank()];
            phi[j] = m / gcd(k.invariants()[j], m);
            transgression(ext, mult, &phi)
        })
        .collect()
}

/// `M_b(Q)` at a modulus large enough for the kernel of `ext` as well.
pub fn multiplier_for(ext: &AnnihilatorExtension) -> Result<BraceMultiplier> {
    let n = ext.base().order() as u64;
    schur_multiplier_at(ext.base(), lcm(n * n, ext.kernel_group().exponent()))
}

/// The elements `Σ c_i·domain_i` over all `c` with `Σ c_i·images_i` in the
/// span of `extra`, inside `(Z/m)^dim`.
fn preimage(m: u64, dim: usize, domain: &[Vec<u64>], images: &[Vec<u64>], extra: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if domain.is_empty() {
        return vec![];
    }
    let width = images.len() + extra.len();
    let nrows = images.first().or(extra.first()).map_or(0, Vec::len);
    let rows: Vec<Vec<u64>> = (0..nrows)
        .map(|r| images.iter().chain(extra).map(|v| v[r]).collect())
        .collect();
    let (sols, _) = kernel_mod(m, &rows, width);
    let mut out = Vec::with_capacity(sols.len());
    for c in sols {
        let mut v = vec![0u64; dim];
        for (d, &ci) in domain.iter().zip(&c) {
            for (o, &x) in v.iter_mut().zip(d) {
                *o = (*o + mul_mod(ci, x, m)) % m;
            }
        }
        out.push(v);
    }
    out
}

/// Order of `span(xs ∪ base) / span(base)`.
fn relative_order(m: u64, dim: usize, xs: &[Vec<u64>], base: &[Vec<u64>]) -> u128 {
    let all: Vec<Vec<u64>> = xs.iter().chain(base).cloned().collect();
    SpanSolver::new(m, dim, &all).span_order() / SpanSolver::new(m, dim, base).span_order()
}

/// Whether `span(a ∪ base) = span(b ∪ base)`.
fn same_subgroup(m: u64, dim: usize, a: &[Vec<u64>], b: &[Vec<u64>], base: &[Vec<u64>]) -> bool {
    let sa: Vec<Vec<u64>> = a.iter().chain(base).cloned().collect();
    let sb: Vec<Vec<u64>> = b.iter().chain(base).cloned().collect();
    let (ta, tb) = (SpanSolver::new(m, dim, &sa), SpanSolver::new(m, dim, &sb));
    b.iter().all(|v| ta.contains(v)) && a.iter().all(|v| tb.contains(v))
}

/// Exactness of the sequence at one of its terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionReport {
    pub position: &'static str,
    pub exact: bool,
    pub image_order: u128,
    pub kernel_order: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub modulus: u64,
    pub positions: Vec<PositionReport>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }
}

/// Checks exactness of
/// `0 → Hom(Q,A) → Hom(E,A) → Hom(K,A) → H²_b(Q,A) → H²_b(E,A)` for
/// `A = Z/m`, comparing images and kernels as explicit subgroups.
pub fn hochschild_serre_check(ext: &AnnihilatorExtension, m: u64) -> Result<ExactnessReport> {
    if m == 0 {
        return Err(Error::InvalidParameters("modulus must be positive".into()));
    }
    let q = ext.base();
    let e = ext.brace();
    let k = ext.kernel_group();
    let (nq, ne, r) = (q.order(), e.order(), k.rank());
    let pi = ext.projection().map();

    let (hom_q, _) = characters(q, m)?;
    let (hom_e, _) = characters(e, m)?;
    let inf1: Vec<Vec<u64>> = hom_q.iter().map(|h| pi.iter().map(|&x| h[x]).collect()).collect();
    let res: Vec<Vec<u64>> = hom_e.iter().map(|h| restriction(ext, h)).collect::<Result<_>>()?;
    let hom_k: Vec<Vec<u64>> = (0..r)
        .map(|j| {
            let mut v = vec![0u64; r];
            v[j] = m / gcd(k.invariants()[j], m);
            v
        })
        .collect();
    let tra: Vec<Vec<u64>> =
        hom_k.iter().map(|phi| ext.push_forward(m, phi).map(|c| c.to_vector())).collect::<Result<_>>()?;
    let dq = brace_coboundary_generators(q, m);
    let de = brace_coboundary_generators(e, m);
    let nq_dim = 2 * nq.saturating_sub(1).pow(2);

    let mut positions = Vec::with_capacity(4);

    let ker_inf1 = preimage(m, nq, &hom_q, &inf1, &[]);
    positions.push(PositionReport {
        position: "Hom(Q,A)",
        exact: ker_inf1.iter().all(|v| v.iter().all(|&x| x == 0)),
        image_order: 1,
        kernel_order: relative_order(m, nq, &ker_inf1, &[]),
    });

    let ker_res = preimage(m, ne, &hom_e, &res, &[]);
    positions.push(PositionReport {
        position: "Hom(E,A)",
        exact: same_subgroup(m, ne, &inf1, &ker_res, &[]),
        image_order: relative_order(m, ne, &inf1, &[]),
        kernel_order: relative_order(m, ne, &ker_res, &[]),
    });

    let ker_tra = preimage(m, r, &hom_k, &tra, &dq);
    positions.push(PositionReport {
        position: "Hom(K,A)",
        exact: same_subgroup(m, r, &res, &ker_tra, &[]),
        image_order: relative_order(m, r, &res, &[]),
        kernel_order: relative_order(m, r, &ker_tra, &[]),
    });

    let h = h2b(q, m);
    let cocycles = h.cocycle_generators();
    let pulled: Vec<Vec<u64>> = cocycles
        .iter()
        .map(|z| BraceFactorSet::from_vector(nq, m, z).pull_back(pi).to_vector())
        .collect();
    let ker_inf2 = preimage(m, nq_dim, cocycles, &pulled, &de);
    positions.push(PositionReport {
        position: "H2b(Q,A)",
        exact: same_subgroup(m, nq_dim, &tra, &ker_inf2, &dq),
        image_order: relative_order(m, nq_dim, &tra, &dq),
        kernel_order: relative_order(m, nq_dim, &ker_inf2, &dq),
    });

    Ok(ExactnessReport { modulus: m, positions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::Ideal;
    use crate::extension::{build_extension, extension_from_ideal};
    use crate::group::GroupTable;

    fn c93() -> AnnihilatorExtension {
        let e = SkewBrace::c_nd(9, 3).unwrap();
        extension_from_ideal(&e, &Ideal::new(&e, vec![0, 3, 6]).unwrap(), None).unwrap()
    }

    #[test]
    fn characters_of_cyclic_braces() {
        let (gens, g) = characters(&SkewBrace::trivial(&GroupTable::cyclic(6)), 4).unwrap();
        assert_eq!(g.invariants(), &[2]);
        assert_eq!(gens, vec![vec![0, 2, 0, 2, 0, 2]]);
        // characters of C_(9,3) factor through Z/3
        let (gens, g) = characters(&SkewBrace::c_nd(9, 3).unwrap(), 9).unwrap();
        assert_eq!(g.invariants(), &[3]);
        assert!(gens.iter().all(|h| h[3] == 0 && h[6] == 0));
    }

    #[test]
    fn restriction_to_derived_kernel_vanishes() {
        let ext = c93();
        let (gens, _) = characters(ext.brace(), 9).unwrap();
        for h in gens {
            assert_eq!(restriction(&ext, &h).unwrap(), vec![0]);
        }
    }

    #[test]
    fn transgression_of_c93_is_bijective() {
        let ext = c93();
        let mult = multiplier_for(&ext).unwrap();
        assert_eq!(mult.group().invariants(), &[3]);
        let imgs = transgression_images(&ext, &mult).unwrap();
        assert_eq!(mult.group().element_order(&imgs[0]), 3);
    }

    #[test]
    fn split_transgression_is_zero() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(3));
        let ext = build_extension(&FinAbGroup::cyclic(3), &[BraceFactorSet::zero(3, 3)], &q).unwrap();
        let mult = multiplier_for(&ext).unwrap();
        assert!(transgression_images(&ext, &mult).unwrap().iter().all(AbElement::is_zero));
        let rep = hochschild_serre_check(&ext, 3).unwrap();
        assert!(rep.all_exact(), "{rep:?}");
        assert_eq!(rep.positions[3].image_order, 1);
    }

    #[test]
    fn five_term_sequences_are_exact() {
        for m in [3, 9] {
            let rep = hochschild_serre_check(&c93(), m).unwrap();
            assert!(rep.all_exact(), "{rep:?}");
        }
        let b3 = SkewBrace::b_p(3).unwrap();
        let ann = b3.annihilator().unwrap();
        let ext = extension_from_ideal(&b3, &ann, None).unwrap();
        assert!(hochschild_serre_check(&ext, 3).unwrap().all_exact());
    }

    #[test]
    fn s_groups() {
        let k = delta_kernels(&SkewBrace::c_nd(9, 3).unwrap()).unwrap();
        assert_eq!(k.s.invariants(), &[3]);
        let k = delta_kernels(&SkewBrace::b_p(3).unwrap()).unwrap();
        assert_eq!(k.multiplier.invariants(), &[3, 3, 3]);
        assert_eq!(k.s_add.invariants(), &[3, 3]);
    }

    #[test]
    fn inflation_needs_surjection() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(2));
        let e = SkewBrace::trivial(&GroupTable::cyclic(4));
        let onto = BraceMorphism::new(&e, &q, vec![0, 1, 0, 1]).unwrap();
        let c = BraceFactorSet::from_fns(2, 2, |x, y| (x * y) as u64, |x, y| (x * y) as u64);
        let up = inflation(&c, &onto).unwrap();
        assert!(up.is_valid(&e));
        let zero = BraceMorphism::new(&e, &q, vec![0; 4]).unwrap();
        assert!(matches!(inflation(&c, &zero), Err(Error::NotSurjective(_))));
    }
}
