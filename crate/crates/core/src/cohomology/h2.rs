//! Second cohomology over `Z/m` and Schur multipliers.

use std::collections::BTreeMap;
use std::marker::PhantomData;

use super::factor_set::{BraceFactorSet, GroupFactorSet};
use super::system::{assemble_brace_cocycle_system, assemble_group_cocycle_system, CocycleSystem};
use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::linalg::{
    kernel_mod, mul_mod, neg_mod, quotient_structure, AbElement, FinAbGroup, SpanSolver, Subquotient,
};

/// A cochain type with a fixed coordinate layout.
pub trait Cocycle: Clone + std::fmt::Debug {
    const KIND: CohomologyKind;
    fn to_vector(&self) -> Vec<u64>;
    fn from_vector(n: usize, m: u64, v: &[u64]) -> Self;
    fn modulus(&self) -> u64;
    fn order(&self) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohomologyKind {
    Brace,
    Group,
}

impl Cocycle for BraceFactorSet {
    const KIND: CohomologyKind = CohomologyKind::Brace;
    fn to_vector(&self) -> Vec<u64> {
        BraceFactorSet::to_vector(self)
    }
    fn from_vector(n: usize, m: u64, v: &[u64]) -> Self {
        BraceFactorSet::from_vector(n, m, v)
    }
    fn modulus(&self) -> u64 {
        BraceFactorSet::modulus(self)
    }
    fn order(&self) -> usize {
        BraceFactorSet::order(self)
    }
}

impl Cocycle for GroupFactorSet {
    const KIND: CohomologyKind = CohomologyKind::Group;
    fn to_vector(&self) -> Vec<u64> {
        GroupFactorSet::to_vector(self)
    }
    fn from_vector(n: usize, m: u64, v: &[u64]) -> Self {
        GroupFactorSet::from_vector(n, m, v)
    }
    fn modulus(&self) -> u64 {
        GroupFactorSet::modulus(self)
    }
    fn order(&self) -> usize {
        GroupFactorSet::order(self)
    }
}

/// `Z²/B²` with generator representatives and a class-coordinate map.
#[derive(Clone, Debug)]
pub struct CohomologyGroup<C: Cocycle> {
    order: usize,
    modulus: u64,
    cocycles: Vec<Vec<u64>>,
    coboundaries: Vec<Vec<u64>>,
    quotient: Subquotient,
    _kind: PhantomData<C>,
}

pub type BraceCohomology = CohomologyGroup<BraceFactorSet>;
pub type GroupCohomology = CohomologyGroup<GroupFactorSet>;

impl<C: Cocycle> CohomologyGroup<C> {
    fn from_system(sys: CocycleSystem) -> Self {
        let m = sys.modulus;
        let (cocycles, _) = kernel_mod(m, &sys.constraints, sys.unknowns);
        let quotient = quotient_structure(m, sys.unknowns, &cocycles, &sys.coboundaries)
            .expect("coboundaries are cocycles");
        CohomologyGroup {
            order: sys.order,
            modulus: m,
            cocycles,
            coboundaries: sys.coboundaries,
            quotient,
            _kind: PhantomData,
        }
    }

    pub fn kind(&self) -> CohomologyKind {
        C::KIND
    }

    pub fn group(&self) -> &FinAbGroup {
        self.quotient.group()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the brace or group the cocycles live on.
    pub fn base_order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn generators(&self) -> Vec<C> {
        self.quotient
            .witnesses()
            .iter()
            .map(|w| C::from_vector(self.order, self.modulus, w))
            .collect()
    }

    /// Generators of the cocycle group `Z²`, as vectors.
    pub fn cocycle_generators(&self) -> &[Vec<u64>] {
        &self.cocycles
    }

    /// Generators of `B²`, as vectors.
    pub fn coboundary_generators(&self) -> &[Vec<u64>] {
        &self.coboundaries
    }

    pub fn quotient(&self) -> &Subquotient {
        &self.quotient
    }

    fn check(&self, c: &C) -> Result<()> {
        if c.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(c.modulus(), self.modulus));
        }
        if c.order() != self.order {
            return Err(Error::MismatchedData(format!(
                "cocycle over order {} in cohomology of order {}",
                c.order(),
                self.order
            )));
        }
        Ok(())
    }

    pub fn class_of(&self, c: &C) -> Result<AbElement> {
        self.check(c)?;
        self.quotient.coordinates(&c.to_vector())
    }

    pub fn is_coboundary(&self, c: &C) -> Result<bool> {
        Ok(self.class_of(c)?.is_zero())
    }

    pub fn representative(&self, class: &AbElement) -> C {
        C::from_vector(self.order, self.modulus, &self.quotient.representative(class))
    }
}

pub fn h2b(q: &SkewBrace, m: u64) -> BraceCohomology {
    CohomologyGroup::from_system(assemble_brace_cocycle_system(q, m))
}

pub fn group_h2(g: &GroupTable, m: u64) -> GroupCohomology {
    CohomologyGroup::from_system(assemble_group_cocycle_system(g, m))
}

/// Cocycles `(c(y) − c(x·y) + c(x))/e`, one per invariant factor `e` of the
/// abelianization, for each operation in `ops`, stacked in blocks.
fn connecting_vectors(
    n: usize,
    m: u64,
    ab: &crate::brace::Abelianization,
    ops: &[&dyn Fn(usize, usize) -> usize],
) -> Vec<Vec<u64>> {
    ab.group
        .invariants()
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let c = |x: usize| ab.coords[x].0[i] as i64;
            let mut v = Vec::with_capacity(ops.len() * (n - 1) * (n - 1));
            for op in ops {
                for x in 1..n {
                    for y in 1..n {
                        let t = c(y) - c(op(x, y)) + c(x);
                        debug_assert_eq!(t % e as i64, 0);
                        v.push((t / e as i64).rem_euclid(m as i64) as u64);
                    }
                }
            }
            v
        })
        .collect()
}

/// Generators of the kernel of `H²_b(Q, Z/m) → H²_b(Q, C×)`, as factor sets.
pub fn connecting_image(q: &SkewBrace, m: u64) -> Result<Vec<BraceFactorSet>> {
    let n = q.order();
    if n <= 1 {
        return Ok(vec![]);
    }
    let ab = q.abelianization()?;
    let add = |x, y| q.add(x, y);
    let circ = |x, y| q.circ(x, y);
    Ok(connecting_vectors(n, m, &ab, &[&add, &circ])
        .iter()
        .map(|v| BraceFactorSet::from_vector(n, m, v))
        .collect())
}

pub fn group_connecting_image(g: &GroupTable, m: u64) -> Result<Vec<GroupFactorSet>> {
    let n = g.order();
    if n <= 1 {
        return Ok(vec![]);
    }
    let ab = SkewBrace::trivial(g).abelianization()?;
    let op = |x, y| g.op(x, y);
    Ok(connecting_vectors(n, m, &ab, &[&op])
        .iter()
        .map(|v| GroupFactorSet::from_vector(n, m, v))
        .collect())
}

/// `H²(Z/m)/T ≅ H²(C×)[m]` with torsion-normalized generator representatives.
#[derive(Clone, Debug)]
pub struct MultiplierResult<C: Cocycle> {
    modulus: u64,
    representatives: Vec<C>,
    connecting: Vec<C>,
    cohomology: CohomologyGroup<C>,
    quotient: Subquotient,
}

pub type BraceMultiplier = MultiplierResult<BraceFactorSet>;
pub type GroupMultiplier = MultiplierResult<GroupFactorSet>;

impl<C: Cocycle> MultiplierResult<C> {
    fn build(cohomology: CohomologyGroup<C>, connecting: Vec<C>) -> Result<Self> {
        let m = cohomology.modulus;
        let dim = cohomology.dim();
        let t: Vec<Vec<u64>> = connecting.iter().map(Cocycle::to_vector).collect();
        let mut denominator = cohomology.coboundaries.clone();
        denominator.extend(t.iter().cloned());
        let quotient = quotient_structure(m, dim, &cohomology.cocycles, &denominator)?;

        // Shift each witness z by an element of B + T so that d·z = 0 exactly.
        let mut solvers: BTreeMap<u64, SpanSolver> = BTreeMap::new();
        let mut representatives = Vec::new();
        for (z, &d) in quotient.witnesses().iter().zip(quotient.group().invariants()) {
            let solver = solvers.entry(d).or_insert_with(|| {
                let scaled: Vec<Vec<u64>> = denominator
                    .iter()
                    .map(|g| g.iter().map(|&x| mul_mod(x, d, m)).collect())
                    .collect();
                SpanSolver::new(m, dim, &scaled)
            });
            let target: Vec<u64> = z.iter().map(|&x| neg_mod(mul_mod(x, d, m), m)).collect();
            let coeffs = solver.solve(&target).map_err(|_| {
                Error::Inconsistency("no torsion representative for a multiplier generator".into())
            })?;
            let mut rep = z.clone();
            for (g, &c) in denominator.iter().zip(&coeffs) {
                if c == 0 {
                    continue;
                }
                for (r, &x) in rep.iter_mut().zip(g) {
                    *r = (*r + mul_mod(c, x, m)) % m;
                }
            }
            debug_assert!(rep.iter().all(|&x| mul_mod(x, d, m) == 0));
            representatives.push(C::from_vector(cohomology.order, m, &rep));
        }
        Ok(MultiplierResult { modulus: m, representatives, connecting, cohomology, quotient })
    }

    pub fn group(&self) -> &FinAbGroup {
        self.quotient.group()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// One representative per invariant factor `d_i`, with every entry in
    /// `(m/d_i)·Z/m`.
    pub fn representatives(&self) -> &[C] {
        &self.representatives
    }

    /// Generators of the connecting image `T`.
    pub fn connecting(&self) -> &[C] {
        &self.connecting
    }

    pub fn cohomology(&self) -> &CohomologyGroup<C> {
        &self.cohomology
    }

    pub fn quotient(&self) -> &Subquotient {
        &self.quotient
    }

    /// Coordinates in the multiplier of the class of a `Z/m`-valued cocycle.
    pub fn class_of(&self, c: &C) -> Result<AbElement> {
        self.cohomology.check(c)?;
        self.quotient.coordinates(&c.to_vector())
    }

    /// Coordinates of a raw cocycle vector.
    pub fn class_of_vector(&self, v: &[u64]) -> Result<AbElement> {
        self.quotient.coordinates(v)
    }
}

/// `M_b(Q)` computed at modulus `|Q|²`.
pub fn schur_multiplier(q: &SkewBrace) -> Result<BraceMultiplier> {
    let n = q.order() as u64;
    schur_multiplier_at(q, n * n)
}

/// `M_b(Q)` computed at a modulus `m` that is a multiple of `|Q|²`.
pub fn schur_multiplier_at(q: &SkewBrace, m: u64) -> Result<BraceMultiplier> {
    let n = q.order() as u64;
    if !m.is_multiple_of(n * n) {
        return Err(Error::InvalidParameters(format!("modulus {m} is not a multiple of |Q|² = {}", n * n)));
    }
    MultiplierResult::build(h2b(q, m), connecting_image(q, m)?)
}

/// `M(G)` computed at modulus `|G|²`.
pub fn group_schur_multiplier(g: &GroupTable) -> Result<GroupMultiplier> {
    let n = g.order() as u64;
    group_schur_multiplier_at(g, n * n)
}

pub fn group_schur_multiplier_at(g: &GroupTable, m: u64) -> Result<GroupMultiplier> {
    let n = g.order() as u64;
    if !m.is_multiple_of(n) {
        return Err(Error::InvalidParameters(format!("modulus {m} is not a multiple of |G| = {n}")));
    }
    MultiplierResult::build(group_h2(g, m), group_connecting_image(g, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(g: &FinAbGroup) -> Vec<u64> {
        g.invariants().to_vec()
    }

    #[test]
    fn trivial_z2() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(2));
        let h = h2b(&q, 2);
        assert_eq!(inv(h.group()), vec![2, 2]);
        assert_eq!(h2b(&q, 4).group().order(), 4);
        assert!(h2b(&q, 1).group().is_trivial());
        let t = connecting_image(&q, 4).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].alpha(1, 1), t[0].mu(1, 1)), (1, 1));
        assert_eq!(connecting_image(&q, 2).unwrap()[0].alpha(1, 1), 1);
    }

    #[test]
    fn small_multipliers() {
        assert_eq!(inv(schur_multiplier(&SkewBrace::c_nd(4, 2).unwrap()).unwrap().group()), vec![2, 2]);
        assert_eq!(inv(schur_multiplier(&SkewBrace::c_nd(9, 3).unwrap()).unwrap().group()), vec![3]);
        assert!(schur_multiplier(&SkewBrace::point()).unwrap().group().is_trivial());
        assert!(group_schur_multiplier(&GroupTable::cyclic(6)).unwrap().group().is_trivial());
        assert_eq!(inv(group_schur_multiplier(&GroupTable::klein()).unwrap().group()), vec![2]);
    }

    #[test]
    fn representatives_are_torsion_cocycles() {
        let q = SkewBrace::c_nd(4, 2).unwrap();
        let mb = schur_multiplier(&q).unwrap();
        for (r, &d) in mb.representatives().iter().zip(mb.group().invariants()) {
            assert!(r.is_valid(&q));
            assert!(r.scale(d).is_zero());
        }
        for (i, r) in mb.representatives().iter().enumerate() {
            assert_eq!(mb.class_of(r).unwrap(), mb.group().generator(i));
        }
    }
}
