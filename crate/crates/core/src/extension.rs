//! Annihilator extensions `0 → K → E → Q → 0` and their factor sets.

use crate::brace::{BraceMorphism, Ideal, SkewBrace};
use crate::cohomology::{h2b, BraceFactorSet};
use crate::error::{Error, Operation, Result};
use crate::group::GroupTable;
use crate::linalg::{abelian_structure, AbElement, FinAbGroup};

/// An annihilator extension of `Q` by `K = ⊕ Z/d_j`.
///
/// The factor set is stored as one `BraceFactorSet` per invariant factor
/// `d_j` of `K`, with modulus `d_j`. Elements of `K` are indexed in mixed
/// radix, first coordinate fastest.
#[derive(Clone, Debug)]
pub struct AnnihilatorExtension {
    k: FinAbGroup,
    q: SkewBrace,
    cocycle: Vec<BraceFactorSet>,
    e: SkewBrace,
    inclusion: Vec<usize>,
    projection: BraceMorphism,
    transversal: Vec<usize>,
}

/// Index of a coordinate vector of `K` in mixed radix.
pub fn k_index(k: &FinAbGroup, coords: &[u64]) -> usize {
    let mut idx = 0usize;
    let mut stride = 1usize;
    for (&c, &d) in coords.iter().zip(k.invariants()) {
        idx += (c % d) as usize * stride;
        stride *= d as usize;
    }
    idx
}

/// Coordinates of the `K` element with mixed-radix index `idx`.
pub fn k_coords(k: &FinAbGroup, mut idx: usize) -> AbElement {
    let mut out = Vec::with_capacity(k.rank());
    for &d in k.invariants() {
        out.push((idx % d as usize) as u64);
        idx /= d as usize;
    }
    AbElement(out)
}

/// Brings a factor set over `Z/M` with values in `(M/d)·Z/M` down to `Z/d`.
fn narrow(c: &BraceFactorSet, d: u64) -> Result<BraceFactorSet> {
    let m = c.modulus();
    if !m.is_multiple_of(d) {
        return Err(Error::ModulusMismatch(m, d));
    }
    let step = m / d;
    let n = c.order();
    let mut out = BraceFactorSet::zero(n, d);
    for x in 0..n {
        for y in 0..n {
            for (v, circ) in [(c.alpha(x, y), false), (c.mu(x, y), true)] {
                if v % step != 0 {
                    return Err(Error::ValueOutsideK { x, y, value: v, factor: d });
                }
                if circ {
                    out.set_mu(x, y, v / step);
                } else {
                    out.set_alpha(x, y, v / step);
                }
            }
        }
    }
    Ok(out)
}

/// `K ×_(α,μ) Q`, with `(a,x)` stored at index `a·|Q| + x`.
///
/// Component `j` of `cocycle` may have any modulus divisible by `d_j`; its
/// values must lie in the copy of `Z/d_j` inside it.
pub fn build_extension(
    k: &FinAbGroup,
    cocycle: &[BraceFactorSet],
    q: &SkewBrace,
) -> Result<AnnihilatorExtension> {
    if cocycle.len() != k.rank() {
        return Err(Error::MismatchedData(format!(
            "{} factor-set components for {} invariant factors",
            cocycle.len(),
            k.rank()
        )));
    }
    let n = q.order();
    let mut parts = Vec::with_capacity(k.rank());
    for (c, &d) in cocycle.iter().zip(k.invariants()) {
        if c.order() != n {
            return Err(Error::MismatchedData(format!(
                "factor set over order {} for a brace of order {n}",
                c.order()
            )));
        }
        let part = narrow(c, d)?;
        if let Some(v) = part.violation(q) {
            return Err(Error::InvalidCocycle(v.to_string()));
        }
        parts.push(part);
    }
    let kn = usize::try_from(k.order()).unwrap_or(usize::MAX);
    let size = kn.saturating_mul(n);
    if size > crate::group::MAX_ORDER {
        return Err(Error::OrderTooLarge { order: size, max: crate::group::MAX_ORDER });
    }
    let coords: Vec<AbElement> = (0..kn).map(|i| k_coords(k, i)).collect();
    let combine = |u: usize, v: usize, circle: bool| {
        let (a, x) = (u / n, u % n);
        let (b, y) = (v / n, v % n);
        let sum: Vec<u64> = parts
            .iter()
            .zip(k.invariants())
            .enumerate()
            .map(|(j, (p, &d))| {
                let twist = if circle { p.mu(x, y) } else { p.alpha(x, y) };
                (coords[a].0[j] + coords[b].0[j] + twist) % d
            })
            .collect();
        let xy = if circle { q.circ(x, y) } else { q.add(x, y) };
        k_index(k, &sum) * n + xy
    };
    let add = GroupTable::from_fn(size, |u, v| combine(u, v, false), Operation::Add)?;
    let circ = GroupTable::from_fn(size, |u, v| combine(u, v, true), Operation::Circ)?;
    let e = SkewBrace::new(add, circ)?;
    let inclusion: Vec<usize> = (0..kn).map(|i| i * n).collect();
    let projection = BraceMorphism::new(&e, q, (0..size).map(|u| u % n).collect())?;
    let ext = AnnihilatorExtension {
        k: k.clone(),
        q: q.clone(),
        cocycle: parts,
        e,
        inclusion,
        projection,
        transversal: (0..n).collect(),
    };
    ext.check_annihilator()?;
    Ok(ext)
}

/// The extension `0 → I → E → E/I → 0` for an ideal `I ⊆ Ann(E)`, with the
/// transversal sending each class to its smallest member unless one is given.
pub fn extension_from_ideal(
    e: &SkewBrace,
    ideal: &Ideal,
    transversal: Option<&[usize]>,
) -> Result<AnnihilatorExtension> {
    let ann = e.annihilator()?;
    if let Some(&x) = ideal.members().iter().find(|&&x| !ann.contains(x)) {
        return Err(Error::NotAnnihilatorContained(x));
    }
    let (q, projection) = e.quotient(ideal)?;
    let n = q.order();
    let t: Vec<usize> = match transversal {
        Some(t) => {
            if t.len() != n || t.first() != Some(&0) || t.iter().enumerate().any(|(x, &u)| projection.apply(u) != x) {
                return Err(Error::InvalidParameters("transversal is not a section of the projection".into()));
            }
            t.to_vec()
        }
        None => {
            let mut t = vec![usize::MAX; n];
            for u in 0..e.order() {
                let x = projection.apply(u);
                if t[x] == usize::MAX {
                    t[x] = u;
                }
            }
            t
        }
    };

    // The additive structure of the ideal, read off a relabelled sub-table.
    let members = ideal.members();
    let pos = |u: usize| members.binary_search(&u).expect("member of the ideal");
    let sub = GroupTable::from_fn(members.len(), |i, j| pos(e.add(members[i], members[j])), Operation::Add)?;
    let st = abelian_structure(&sub)?;
    let k = st.group.clone();
    // Re-index K so that mixed-radix index i ↦ ideal element.
    let kn = members.len();
    let inclusion: Vec<usize> = (0..kn).map(|i| members[st.element_of(&k_coords(&k, i))]).collect();
    let k_of = |u: usize| st.coords[pos(u)].clone();

    let mut parts: Vec<BraceFactorSet> = k.invariants().iter().map(|&d| BraceFactorSet::zero(n, d)).collect();
    for x in 1..n {
        for y in 1..n {
            let a = e.sub(e.add(t[x], t[y]), t[q.add(x, y)]);
            let m = e.circ(e.circ(t[x], t[y]), e.inv(t[q.circ(x, y)]));
            let (ka, km) = (k_of(a), k_of(m));
            for (j, p) in parts.iter_mut().enumerate() {
                p.set_alpha(x, y, ka.0[j]);
                p.set_mu(x, y, km.0[j]);
            }
        }
    }
    Ok(AnnihilatorExtension {
        k,
        q,
        cocycle: parts,
        e: e.clone(),
        inclusion,
        projection,
        transversal: t,
    })
}

/// The factor set of `E` relative to an annihilator ideal and a transversal.
pub fn extension_cocycle(e: &SkewBrace, ideal: &Ideal, transversal: Option<&[usize]>) -> Result<Vec<BraceFactorSet>> {
    Ok(extension_from_ideal(e, ideal, transversal)?.cocycle)
}

impl AnnihilatorExtension {
    pub fn kernel_group(&self) -> &FinAbGroup {
        &self.k
    }

    pub fn base(&self) -> &SkewBrace {
        &self.q
    }

    pub fn brace(&self) -> &SkewBrace {
        &self.e
    }

    pub fn cocycle(&self) -> &[BraceFactorSet] {
        &self.cocycle
    }

    /// `ι`, indexed by mixed-radix `K` index.
    pub fn inclusion(&self) -> &[usize] {
        &self.inclusion
    }

    pub fn projection(&self) -> &BraceMorphism {
        &self.projection
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// `ι` of the `j`-th canonical generator of `K`.
    pub fn kernel_generator(&self, j: usize) -> usize {
        self.inclusion[k_index(&self.k, &self.k.generator(j).0)]
    }

    /// `ι(K)` as an ideal of `E`.
    pub fn kernel_ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.e, self.inclusion.clone())
    }

    /// `ι(a) + t(x)`.
    pub fn element(&self, a: &AbElement, x: usize) -> usize {
        self.e.add(self.inclusion[k_index(&self.k, &a.0)], self.transversal[x])
    }

    /// `α(x,y)` as an element of `K`.
    pub fn alpha(&self, x: usize, y: usize) -> AbElement {
        AbElement(self.cocycle.iter().map(|p| p.alpha(x, y)).collect())
    }

    /// `μ(x,y)` as an element of `K`.
    pub fn mu(&self, x: usize, y: usize) -> AbElement {
        AbElement(self.cocycle.iter().map(|p| p.mu(x, y)).collect())
    }

    /// `Σ_j φ_j·α_j` and `Σ_j φ_j·μ_j` over `Z/m` for a character `φ` of `K`
    /// given by the images `phi[j]` of the canonical generators.
    pub fn push_forward(&self, m: u64, phi: &[u64]) -> Result<BraceFactorSet> {
        if phi.len() != self.k.rank() {
            return Err(Error::MismatchedData(format!("{} character values for rank {}", phi.len(), self.k.rank())));
        }
        for (&f, &d) in phi.iter().zip(self.k.invariants()) {
            if crate::linalg::mul_mod(f, d, m) != 0 {
                return Err(Error::InvalidParameters(format!("{f} is not killed by {d} in Z/{m}")));
            }
        }
        let n = self.q.order();
        let sum = |get: &dyn Fn(&BraceFactorSet) -> u64| {
            self.cocycle.iter().zip(phi).fold(0u64, |acc, (p, &f)| (acc + crate::linalg::mul_mod(get(p), f, m)) % m)
        };
        Ok(BraceFactorSet::from_fns(
            n,
            m,
            |x, y| sum(&|p| p.alpha(x, y)),
            |x, y| sum(&|p| p.mu(x, y)),
        ))
    }

    fn check_annihilator(&self) -> Result<()> {
        let ann = self.e.annihilator()?;
        match self.inclusion.iter().find(|&&u| !ann.contains(u)) {
            Some(&u) => Err(Error::NotAnnihilatorContained(u)),
            None => Ok(()),
        }
    }
}

/// `Ann(E)`, computed from the tables and from the factor set, which must agree.
pub fn ann_of_extension(ext: &AnnihilatorExtension) -> Result<Ideal> {
    let e = &ext.e;
    let direct = e.annihilator()?;
    let q = &ext.q;
    let ann_q = q.annihilator()?;
    let n = q.order();
    let good: Vec<bool> = (0..n)
        .map(|p| {
            ann_q.contains(p)
                && (0..n).all(|x| {
                    let a = ext.alpha(p, x);
                    a == ext.alpha(x, p) && a == ext.mu(p, x) && a == ext.mu(x, p)
                })
        })
        .collect();
    let from_cocycle: Vec<usize> = (0..e.order()).filter(|&u| good[ext.projection.apply(u)]).collect();
    if from_cocycle != direct.members() {
        let witness = (0..e.order())
            .find(|&u| direct.contains(u) != good[ext.projection.apply(u)])
            .unwrap_or(0);
        return Err(Error::Inconsistency(format!(
            "annihilator disagrees with the factor-set criterion at element {witness}"
        )));
    }
    Ok(direct)
}

/// `E'`, computed from the factor-set generator formulas and from the
/// commutator ideal, which must agree.
pub fn derived_of_extension(ext: &AnnihilatorExtension) -> Result<Ideal> {
    let e = &ext.e;
    let q = &ext.q;
    let k = &ext.k;
    let n = q.order();
    let mut gens = Vec::with_capacity(2 * n * n);
    for x in 0..n {
        for y in 0..n {
            // [t(x), t(y)]₊ = ι(α(x,y) − α(y,x) − α([x,y]₊, y+x)) + t([x,y]₊)
            let c = q.add_commutator(x, y);
            let mut a = k.add(&ext.alpha(x, y), &k.scale(neg_one(k), &ext.alpha(y, x)));
            a = k.add(&a, &k.scale(neg_one(k), &ext.alpha(c, q.add(y, x))));
            gens.push(ext.element(&a, c));
            // t(x)*t(y) = ι(μ(x,y) − α(x, x*y) − α(x + x*y, y)) + t(x*y)
            let s = q.star(x, y);
            let mut b = k.add(&ext.mu(x, y), &k.scale(neg_one(k), &ext.alpha(x, s)));
            b = k.add(&b, &k.scale(neg_one(k), &ext.alpha(q.add(x, s), y)));
            gens.push(ext.element(&b, s));
        }
    }
    let from_formulas = e.additive_closure(&gens);
    let direct = e.commutator_ideal()?;
    if from_formulas != direct.members() {
        return Err(Error::Inconsistency(format!(
            "commutator ideal of order {} but the factor-set generators span {} elements",
            direct.order(),
            from_formulas.len()
        )));
    }
    Ok(direct)
}

/// A multiplier that acts as −1 on every coordinate of `k`.
fn neg_one(k: &FinAbGroup) -> u64 {
    k.exponent().max(1) - 1
}

/// Whether two extensions of the same `Q` by the same `K` have cohomologous
/// factor sets.
pub fn extension_equivalent(a: &AnnihilatorExtension, b: &AnnihilatorExtension) -> Result<bool> {
    if a.k != b.k {
        return Err(Error::MismatchedData("extensions have different kernels".into()));
    }
    if a.q != b.q {
        return Err(Error::MismatchedData("extensions have different quotients".into()));
    }
    for ((x, y), &d) in a.cocycle.iter().zip(&b.cocycle).zip(a.k.invariants()) {
        let diff = x.sub(y)?;
        if !h2b(&a.q, d).is_coboundary(&diff)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;

    fn c93_ext() -> AnnihilatorExtension {
        let e = SkewBrace::c_nd(9, 3).unwrap();
        let ideal = Ideal::new(&e, vec![0, 3, 6]).unwrap();
        extension_from_ideal(&e, &ideal, None).unwrap()
    }

    #[test]
    fn c93_factor_set() {
        let ext = c93_ext();
        assert_eq!(ext.kernel_group().invariants(), &[3]);
        assert_eq!(ext.transversal(), &[0, 1, 2]);
        assert_eq!(ext.alpha(1, 2).0, vec![1]);
        assert_eq!(ext.mu(1, 1).0, vec![1]);
        let rebuilt = build_extension(ext.kernel_group(), ext.cocycle(), ext.base()).unwrap();
        assert!(find_isomorphism(rebuilt.brace(), &SkewBrace::c_nd(9, 3).unwrap()).is_some());
        assert!(extension_equivalent(&ext, &rebuilt).unwrap());
        assert_eq!(ann_of_extension(&ext).unwrap().members(), &[0, 3, 6]);
        assert_eq!(derived_of_extension(&ext).unwrap().members(), &[0, 3, 6]);
        assert_eq!(ann_of_extension(&rebuilt).unwrap().order(), 3);
        assert_eq!(derived_of_extension(&rebuilt).unwrap().order(), 3);
    }

    #[test]
    fn split_extension() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(3));
        let k = FinAbGroup::cyclic(3);
        let split = build_extension(&k, &[BraceFactorSet::zero(3, 3)], &q).unwrap();
        let direct = SkewBrace::trivial(&GroupTable::abelian(&[3, 3]).unwrap());
        assert!(find_isomorphism(split.brace(), &direct).is_some());
        assert!(derived_of_extension(&split).unwrap().order() == 1);
        assert_eq!(ann_of_extension(&split).unwrap().order(), 9);
        assert!(!extension_equivalent(&split, &c93_ext()).unwrap());
        let from = extension_from_ideal(split.brace(), &split.kernel_ideal().unwrap(), None).unwrap();
        assert!(from.cocycle().iter().all(BraceFactorSet::is_zero));
    }

    #[test]
    fn coboundary_shift_is_equivalent() {
        let ext = c93_ext();
        let q = ext.base().clone();
        let shifted = ext.cocycle()[0].add(&BraceFactorSet::coboundary(&q, 3, &[0, 2, 1])).unwrap();
        let other = build_extension(ext.kernel_group(), &[shifted], &q).unwrap();
        assert!(extension_equivalent(&ext, &other).unwrap());
    }

    #[test]
    fn rejects_bad_factor_sets() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(2));
        let k = FinAbGroup::cyclic(2);
        let q3 = SkewBrace::trivial(&GroupTable::cyclic(3));
        let bad = BraceFactorSet::from_fns(3, 3, |x, y| u64::from(x * y != 0), |_, _| 0);
        assert!(matches!(
            build_extension(&FinAbGroup::cyclic(3), &[bad], &q3),
            Err(Error::InvalidCocycle(_))
        ));
        let outside = BraceFactorSet::from_fns(2, 4, |x, y| (x * y) as u64, |_, _| 0);
        assert!(matches!(build_extension(&k, &[outside], &q), Err(Error::ValueOutsideK { .. })));
    }
}
