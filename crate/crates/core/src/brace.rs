//! Finite skew braces `(A, +, ∘)` given by two Cayley tables on `{0, …, n−1}`
//! sharing the identity `0`.


use crate::error::{Error, Operation, Result};
use crate::group::GroupTable;
use crate::linalg::{abelian_structure, is_prime, AbElement, FinAbGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewBrace {
    add: GroupTable,
    circ: GroupTable,
}

/// Validates a pair of tables as a skew brace, reporting the first failed
/// axiom: group axioms of `+`, then of `∘`, then the brace law.
pub fn validate_brace(add: &[Vec<usize>], circ: &[Vec<usize>]) -> Result<SkewBrace> {
    let add = GroupTable::from_rows(add, Operation::Add)?;
    let circ = GroupTable::from_rows(circ, Operation::Circ)?;
    SkewBrace::new(add, circ)
}

impl SkewBrace {
    pub fn new(add: GroupTable, circ: GroupTable) -> Result<Self> {
        if add.order() != circ.order() {
            return Err(Error::OrderMismatch { add: add.order(), circ: circ.order() });
        }
        let b = SkewBrace { add, circ };
        if let Some((a, x, y)) = b.brace_law_violation() {
            return Err(Error::BraceLawViolation { a, b: x, c: y });
        }
        Ok(b)
    }

    fn brace_law_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            let na = self.neg(a);
            for b in 0..n {
                let left_part = self.add(self.circ(a, b), na);
                for c in 0..n {
                    let lhs = self.circ(a, self.add(b, c));
                    let rhs = self.add(left_part, self.circ(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn trivial(g: &GroupTable) -> SkewBrace {
        SkewBrace { add: g.clone(), circ: g.clone() }
    }

    /// `x + y = xy`, `x ∘ y = yx`.
    pub fn almost_trivial(g: &GroupTable) -> SkewBrace {
        SkewBrace { add: g.clone(), circ: g.opposite() }
    }

    /// The one-element brace.
    pub fn point() -> SkewBrace {
        Self::trivial(&GroupTable::trivial())
    }

    /// `Z/n` with `x ∘ y = x + y + dxy`.
    pub fn c_nd(n: usize, d: usize) -> Result<SkewBrace> {
        if n == 0 || d == 0 || !n.is_multiple_of(d) {
            return Err(Error::InvalidParameters(format!("C_({n},{d}) needs d | n")));
        }
        if let Some((p, _)) =
            crate::linalg::factorize(n as u64).into_iter().find(|&(p, _)| !(d as u64).is_multiple_of(p))
        {
            return Err(Error::InvalidParameters(format!(
                "C_({n},{d}): prime {p} divides n but not d"
            )));
        }
        if n > crate::group::MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: crate::group::MAX_ORDER });
        }
        let add = GroupTable::cyclic(n);
        let circ = GroupTable::from_fn(n, |x, y| (x + y + d * x * y) % n, Operation::Circ)?;
        SkewBrace::new(add, circ)
    }

    /// `(Z/p)²` with `(x1,x2) ∘ (y1,y2) = (x1 + y1 + x2·y2, x2 + y2)`; the pair
    /// `(x1, x2)` has index `x1·p + x2`.
    pub fn b_p(p: usize) -> Result<SkewBrace> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let n = p * p;
        if n > crate::group::MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: crate::group::MAX_ORDER });
        }
        let split = |x: usize| (x / p, x % p);
        let add = GroupTable::from_fn(
            n,
            |x, y| {
                let ((x1, x2), (y1, y2)) = (split(x), split(y));
                ((x1 + y1) % p) * p + (x2 + y2) % p
            },
            Operation::Add,
        )?;
        let circ = GroupTable::from_fn(
            n,
            |x, y| {
                let ((x1, x2), (y1, y2)) = (split(x), split(y));
                ((x1 + y1 + x2 * y2) % p) * p + (x2 + y2) % p
            },
            Operation::Circ,
        )?;
        SkewBrace::new(add, circ)
    }

    /// Componentwise product; `(a, b)` has index `a·|B| + b`.
    pub fn direct_product(&self, other: &SkewBrace) -> Result<SkewBrace> {
        Ok(SkewBrace {
            add: self.add.direct_product(&other.add)?,
            circ: self.circ.direct_product(&other.circ)?,
        })
    }

    /// The opposite brace: `a +ᵒᵖ b = b + a`, same circle operation.
    pub fn opposite(&self) -> SkewBrace {
        SkewBrace { add: self.add.opposite(), circ: self.circ.clone() }
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add_group(&self) -> &GroupTable {
        &self.add
    }

    pub fn circ_group(&self) -> &GroupTable {
        &self.circ
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ.op(a, b)
    }

    /// Additive inverse `−a`.
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    /// Circle inverse `a′`.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.circ.inv(a)
    }

    /// `a − b = a + (−b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `λ_a(b) = −a + a∘b`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.add(self.neg(a), self.circ(a, b))
    }

    pub fn lambda_of(&self, a: usize) -> Vec<usize> {
        (0..self.order()).map(|b| self.lambda(a, b)).collect()
    }

    /// `a * b = −a + a∘b − b`.
    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.lambda(a, b), b)
    }

    /// `[a, b]₊ = a + b − a − b`.
    #[inline]
    pub fn add_commutator(&self, a: usize, b: usize) -> usize {
        self.sub(self.sub(self.add(a, b), a), b)
    }

    /// Additive subgroup generated by `gens`, sorted.
    pub fn additive_closure(&self, gens: &[usize]) -> Vec<usize> {
        self.add.generated(gens)
    }

    pub fn commutator_ideal(&self) -> Result<Ideal> {
        let n = self.order();
        let mut gens: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| [self.add_commutator(a, b), self.star(a, b)]))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        Ideal::new(self, self.additive_closure(&gens)).map_err(|e| {
            Error::Inconsistency(format!("commutator subgroup failed the ideal check: {e}"))
        })
    }

    pub fn socle(&self) -> Result<Ideal> {
        let n = self.order();
        let center = self.add.center();
        let members =
            center.into_iter().filter(|&a| (0..n).all(|b| self.lambda(a, b) == b)).collect();
        Ideal::new(self, members)
            .map_err(|e| Error::Inconsistency(format!("socle failed the ideal check: {e}")))
    }

    pub fn annihilator(&self) -> Result<Ideal> {
        let n = self.order();
        let soc = self.socle()?;
        let members = soc
            .members()
            .iter()
            .copied()
            .filter(|&a| (0..n).all(|b| self.circ(a, b) == self.circ(b, a)))
            .collect();
        Ideal::new(self, members)
            .map_err(|e| Error::Inconsistency(format!("annihilator failed the ideal check: {e}")))
    }

    /// Coset brace `A/I` on the minimal coset representatives, in increasing
    /// order, with the projection.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(SkewBrace, BraceMorphism)> {
        if ideal.parent_order() != self.order() {
            return Err(Error::NotAnIdeal("ideal of a different brace".into()));
        }
        Ideal::new(self, ideal.members().to_vec())?;
        let n = self.order();
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(a);
            for &i in ideal.members() {
                class[self.add(a, i)] = idx;
            }
        }
        let k = reps.len();
        let add = GroupTable::from_fn(k, |x, y| class[self.add(reps[x], reps[y])], Operation::Add)?;
        let circ =
            GroupTable::from_fn(k, |x, y| class[self.circ(reps[x], reps[y])], Operation::Circ)?;
        let q = SkewBrace::new(add, circ)?;
        let proj = BraceMorphism::new(self, &q, class)?;
        Ok((q, proj))
    }

    /// The sub-brace on a subset closed under both operations, relabelled by
    /// position in the sorted member list.
    pub fn sub_brace(&self, members: &[usize]) -> Result<SkewBrace> {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &a) in members.iter().enumerate() {
            pos[a] = i;
        }
        if members.first() != Some(&0) {
            return Err(Error::InvalidParameters("subset must start with the identity".into()));
        }
        let look = |x: usize| -> usize { pos[x] };
        for &a in members {
            for &b in members {
                if look(self.add(a, b)) == usize::MAX || look(self.circ(a, b)) == usize::MAX {
                    return Err(Error::InvalidParameters("subset is not a sub-brace".into()));
                }
            }
        }
        let k = members.len();
        let add = GroupTable::from_fn(k, |x, y| pos[self.add(members[x], members[y])], Operation::Add)?;
        let circ =
            GroupTable::from_fn(k, |x, y| pos[self.circ(members[x], members[y])], Operation::Circ)?;
        SkewBrace::new(add, circ)
    }

    pub fn abelianization(&self) -> Result<Abelianization> {
        let derived = self.commutator_ideal()?;
        let (q, proj) = self.quotient(&derived)?;
        let structure = abelian_structure(q.add_group())?;
        let coords = proj.map().iter().map(|&c| structure.coords[c].clone()).collect();
        Ok(Abelianization { group: structure.group, derived, coords })
    }

    pub fn bicyclic(&self) -> Bicyclicity {
        Bicyclicity {
            bicyclic: self.add.is_cyclic() && self.circ.is_cyclic(),
            add: abelian_structure(&self.add).ok().map(|s| s.group),
            circ: abelian_structure(&self.circ).ok().map(|s| s.group),
        }
    }

    pub fn is_bicyclic(&self) -> bool {
        self.add.is_cyclic() && self.circ.is_cyclic()
    }

    /// Per element, the pair (additive order, circle order).
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.order()).map(|a| (self.add.element_order(a), self.circ.element_order(a))).collect()
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.rows()
    }

    pub fn circ_rows(&self) -> Vec<Vec<usize>> {
        self.circ.rows()
    }
}

/// Invariant factors of both underlying groups, when abelian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicyclicity {
    pub bicyclic: bool,
    pub add: Option<FinAbGroup>,
    pub circ: Option<FinAbGroup>,
}

/// `A/A′` with the coordinates of every element's image.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub group: FinAbGroup,
    pub derived: Ideal,
    pub coords: Vec<AbElement>,
}

/// A verified ideal: an additive subgroup, normal in `(A,+)` and `(A,∘)`, and
/// stable under every `λ_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    parent_order: usize,
    members: Vec<usize>,
}

impl Ideal {
    pub fn new(a: &SkewBrace, mut members: Vec<usize>) -> Result<Ideal> {
        members.sort_unstable();
        members.dedup();
        let n = a.order();
        if members.first() != Some(&0) || members.last().is_some_and(|&x| x >= n) {
            return Err(Error::NotAnIdeal("must contain 0 and only elements of A".into()));
        }
        let mut is_member = vec![false; n];
        for &x in &members {
            is_member[x] = true;
        }
        for &i in &members {
            for &j in &members {
                if !is_member[a.add(i, j)] {
                    return Err(Error::NotAnIdeal(format!("{i} + {j} leaves the subset")));
                }
            }
        }
        for x in 0..n {
            for &i in &members {
                if !is_member[a.sub(a.add(x, i), x)] {
                    return Err(Error::NotAnIdeal(format!("not normal in (A,+): {x}, {i}")));
                }
                if !is_member[a.circ(a.circ(x, i), a.inv(x))] {
                    return Err(Error::NotAnIdeal(format!("not normal in (A,∘): {x}, {i}")));
                }
                if !is_member[a.lambda(x, i)] {
                    return Err(Error::NotAnIdeal(format!("λ_{x}({i}) leaves the subset")));
                }
            }
        }
        Ok(Ideal { parent_order: n, members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

/// A map between braces preserving both operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraceMorphism {
    source_order: usize,
    target_order: usize,
    map: Vec<usize>,
}

impl BraceMorphism {
    pub fn new(source: &SkewBrace, target: &SkewBrace, map: Vec<usize>) -> Result<Self> {
        let n = source.order();
        if map.len() != n {
            return Err(Error::NotAMorphism(format!("map has {} entries for {n} elements", map.len())));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::NotAMorphism(format!("image {bad} is not an element of the target")));
        }
        if map[0] != 0 {
            return Err(Error::NotAMorphism("0 is not sent to 0".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if map[source.add(x, y)] != target.add(map[x], map[y]) {
                    return Err(Error::NotAMorphism(format!("f({x}+{y}) != f({x})+f({y})")));
                }
                if map[source.circ(x, y)] != target.circ(map[x], map[y]) {
                    return Err(Error::NotAMorphism(format!("f({x}∘{y}) != f({x})∘f({y})")));
                }
            }
        }
        Ok(BraceMorphism { source_order: n, target_order: target.order(), map })
    }

    pub fn identity(a: &SkewBrace) -> Self {
        BraceMorphism { source_order: a.order(), target_order: a.order(), map: (0..a.order()).collect() }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_order != self.target_order {
            return false;
        }
        let mut seen = vec![false; self.target_order];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_order];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source_order).filter(|&x| self.map[x] == 0).collect()
    }

    pub fn inverse(&self) -> Option<BraceMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.source_order];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(BraceMorphism { source_order: self.target_order, target_order: self.source_order, map: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> GroupTable {
        GroupTable::cyclic(n)
    }

    #[test]
    fn validation_examples() {
        let t = z(3).rows();
        assert!(validate_brace(&t, &t).is_ok());
        let add = z(4).rows();
        let circ: Vec<Vec<usize>> =
            (0..4).map(|x| (0..4).map(|y| (x + y + 2 * x * y) % 4).collect()).collect();
        assert!(validate_brace(&add, &circ).is_ok());
        let bad: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| (x + 4 - y) % 4).collect()).collect();
        assert!(matches!(
            validate_brace(&add, &bad),
            Err(Error::NotAGroup { which: Operation::Circ, .. })
        ));
        // Z/4 relabelled by the transposition (1 2) is a group but not a brace circle law
        let s = [0usize, 2, 1, 3];
        let relabelled: Vec<Vec<usize>> =
            (0..4).map(|x| (0..4).map(|y| s[(s[x] + s[y]) % 4]).collect()).collect();
        assert!(matches!(
            validate_brace(&add, &relabelled),
            Err(Error::BraceLawViolation { .. })
        ));
    }

    #[test]
    fn constructors() {
        let c42 = SkewBrace::c_nd(4, 2).unwrap();
        assert_eq!(c42.circ(1, 1), 0);
        let c93 = SkewBrace::c_nd(9, 3).unwrap();
        assert_eq!(c93.circ(1, 1), 5);
        assert_eq!(SkewBrace::c_nd(4, 4).unwrap(), SkewBrace::trivial(&z(4)));
        assert!(SkewBrace::c_nd(6, 2).is_err());
        assert!(SkewBrace::c_nd(4, 3).is_err());
        let b3 = SkewBrace::b_p(3).unwrap();
        assert_eq!(b3.circ(1, 1), 3 + 2);
        assert!(SkewBrace::b_p(2).unwrap().circ_group().is_cyclic());
        assert_eq!(b3.bicyclic().add.unwrap().invariants(), &[3, 3]);
        assert!(matches!(SkewBrace::b_p(4), Err(Error::NotPrime(4))));
        assert!(matches!(SkewBrace::b_p(17), Err(Error::OrderTooLarge { .. })));
        let s3 = GroupTable::symmetric3();
        assert_eq!(SkewBrace::almost_trivial(&s3).circ_group(), &s3.opposite());
        assert_eq!(SkewBrace::almost_trivial(&z(5)), SkewBrace::trivial(&z(5)));
    }

    #[test]
    fn lambda_and_star() {
        let c42 = SkewBrace::c_nd(4, 2).unwrap();
        assert_eq!(c42.lambda_of(1), vec![0, 3, 2, 1]);
        assert_eq!(c42.star(1, 1), 2);
        let b3 = SkewBrace::b_p(3).unwrap();
        // (y1,y2) -> (y1+y2, y2) for a = (0,1)
        for y in 0..9 {
            let (y1, y2) = (y / 3, y % 3);
            assert_eq!(b3.lambda(1, y), ((y1 + y2) % 3) * 3 + y2);
        }
        assert_eq!(b3.star(1, 1), 3);
        let t = SkewBrace::trivial(&GroupTable::symmetric3());
        assert!((0..6).all(|a| (0..6).all(|b| t.star(a, b) == 0 && t.lambda(a, b) == b)));
    }

    #[test]
    fn ideals() {
        let c42 = SkewBrace::c_nd(4, 2).unwrap();
        assert_eq!(c42.commutator_ideal().unwrap().members(), &[0, 2]);
        assert_eq!(c42.socle().unwrap().members(), &[0, 2]);
        let b3 = SkewBrace::b_p(3).unwrap();
        assert_eq!(b3.commutator_ideal().unwrap().members(), &[0, 3, 6]);
        assert_eq!(b3.annihilator().unwrap().members(), &[0, 3, 6]);
        let q8 = GroupTable::quaternion();
        assert_eq!(SkewBrace::trivial(&q8).annihilator().unwrap().members(), &q8.center()[..]);
        let s3 = GroupTable::symmetric3();
        assert_eq!(
            SkewBrace::trivial(&s3).commutator_ideal().unwrap().members(),
            &s3.derived_subgroup()[..]
        );
        assert!(Ideal::new(&c42, vec![0, 1]).is_err());
    }

    #[test]
    fn quotients() {
        let c93 = SkewBrace::c_nd(9, 3).unwrap();
        let k = Ideal::new(&c93, vec![0, 3, 6]).unwrap();
        let (q, proj) = c93.quotient(&k).unwrap();
        assert_eq!(q, SkewBrace::trivial(&z(3)));
        assert_eq!(proj.kernel(), vec![0, 3, 6]);
        let all = Ideal::new(&c93, (0..9).collect()).unwrap();
        assert_eq!(c93.quotient(&all).unwrap().0.order(), 1);
        let zero = Ideal::new(&c93, vec![0]).unwrap();
        assert_eq!(c93.quotient(&zero).unwrap().0, c93);
    }

    #[test]
    fn abelianizations() {
        let ab = |b: &SkewBrace| b.abelianization().unwrap().group.invariants().to_vec();
        assert_eq!(ab(&SkewBrace::trivial(&GroupTable::symmetric3())), vec![2]);
        assert_eq!(ab(&SkewBrace::c_nd(9, 3).unwrap()), vec![3]);
        assert_eq!(ab(&SkewBrace::b_p(3).unwrap()), vec![3]);
    }

    #[test]
    fn bicyclic_examples() {
        assert!(SkewBrace::c_nd(9, 3).unwrap().is_bicyclic());
        let c42 = SkewBrace::c_nd(4, 2).unwrap().bicyclic();
        assert!(!c42.bicyclic);
        assert_eq!(c42.circ.unwrap().invariants(), &[2, 2]);
        assert!(SkewBrace::c_nd(8, 4).unwrap().is_bicyclic());
    }

    #[test]
    fn products_and_opposites() {
        let t2 = SkewBrace::trivial(&z(2));
        let p = t2.direct_product(&t2).unwrap();
        assert_eq!(p, SkewBrace::trivial(&GroupTable::abelian(&[2, 2]).unwrap()).clone());
        let b = SkewBrace::c_nd(3, 3).unwrap().direct_product(&SkewBrace::c_nd(4, 2).unwrap()).unwrap();
        assert_eq!(b.order(), 12);
        assert_eq!(SkewBrace::c_nd(4, 2).unwrap().direct_product(&SkewBrace::point()).unwrap(), SkewBrace::c_nd(4, 2).unwrap());
        let s3 = SkewBrace::trivial(&GroupTable::symmetric3());
        assert!(SkewBrace::new(s3.opposite().add_group().clone(), s3.opposite().circ_group().clone()).is_ok());
    }
}
