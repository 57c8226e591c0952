//! Normalized 2-cocycles with values in `Z/m`, written additively.

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::linalg::{add_mod, mul_mod, neg_mod};

fn flat_table(n: usize, m: u64, rows: &[Vec<u64>], name: &str) -> Result<Vec<u64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidCocycle(format!("{name} must be a {n}x{n} table")));
    }
    let mut out = Vec::with_capacity(n * n);
    for (x, row) in rows.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            if v >= m {
                return Err(Error::InvalidCocycle(format!(
                    "{name}({x},{y}) = {v} is not reduced mod {m}"
                )));
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn rows_of(n: usize, flat: &[u64]) -> Vec<Vec<u64>> {
    flat.chunks(n.max(1)).take(n).map(<[u64]>::to_vec).collect()
}

/// Index of the interior entry `(x, y)`, `x, y ≥ 1`, in row-major order.
#[inline]
pub(crate) fn interior_index(n: usize, x: usize, y: usize) -> usize {
    (x - 1) * (n - 1) + (y - 1)
}

/// A brace factor set `(α, μ)` over a brace of order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraceFactorSet {
    n: usize,
    modulus: u64,
    alpha: Vec<u64>,
    mu: Vec<u64>,
}

/// Which defining identity a table pair violates, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSetViolation {
    Border { table: &'static str, x: usize, y: usize },
    Additive { x: usize, y: usize, z: usize },
    Circle { x: usize, y: usize, z: usize },
    Compatibility { x: usize, y: usize, z: usize },
}

impl std::fmt::Display for FactorSetViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FactorSetViolation::Border { table, x, y } => {
                write!(f, "{table}({x},{y}) must vanish on the border")
            }
            FactorSetViolation::Additive { x, y, z } => {
                write!(f, "additive cocycle identity fails at ({x},{y},{z})")
            }
            FactorSetViolation::Circle { x, y, z } => {
                write!(f, "circle cocycle identity fails at ({x},{y},{z})")
            }
            FactorSetViolation::Compatibility { x, y, z } => {
                write!(f, "compatibility identity fails at ({x},{y},{z})")
            }
        }
    }
}

impl BraceFactorSet {
    /// Validated factor set; entries must already be reduced mod `m`.
    pub fn new(q: &SkewBrace, m: u64, alpha: &[Vec<u64>], mu: &[Vec<u64>]) -> Result<Self> {
        let n = q.order();
        let fs = BraceFactorSet {
            n,
            modulus: m,
            alpha: flat_table(n, m, alpha, "alpha")?,
            mu: flat_table(n, m, mu, "mu")?,
        };
        match fs.violation(q) {
            Some(v) => Err(Error::InvalidCocycle(v.to_string())),
            None => Ok(fs),
        }
    }

    /// Tables taken as given; entries are reduced mod `m`.
    pub fn from_fns(
        n: usize,
        m: u64,
        alpha: impl Fn(usize, usize) -> u64,
        mu: impl Fn(usize, usize) -> u64,
    ) -> Self {
        let mut a = Vec::with_capacity(n * n);
        let mut c = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                a.push(alpha(x, y) % m);
                c.push(mu(x, y) % m);
            }
        }
        BraceFactorSet { n, modulus: m, alpha: a, mu: c }
    }

    pub fn zero(n: usize, m: u64) -> Self {
        BraceFactorSet { n, modulus: m, alpha: vec![0; n * n], mu: vec![0; n * n] }
    }

    /// `(∂₊h, ∂∘h)` for `h: Q → Z/m` with `h(0) = 0`.
    pub fn coboundary(q: &SkewBrace, m: u64, h: &[u64]) -> Self {
        assert_eq!(h.len(), q.order());
        let d = |x: usize, y: usize, xy: usize| {
            add_mod(add_mod(h[y] % m, neg_mod(h[xy] % m, m), m), h[x] % m, m)
        };
        Self::from_fns(q.order(), m, |x, y| d(x, y, q.add(x, y)), |x, y| d(x, y, q.circ(x, y)))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn alpha(&self, x: usize, y: usize) -> u64 {
        self.alpha[x * self.n + y]
    }

    #[inline]
    pub fn mu(&self, x: usize, y: usize) -> u64 {
        self.mu[x * self.n + y]
    }

    pub fn alpha_rows(&self) -> Vec<Vec<u64>> {
        rows_of(self.n, &self.alpha)
    }

    pub fn mu_rows(&self) -> Vec<Vec<u64>> {
        rows_of(self.n, &self.mu)
    }

    pub fn set_alpha(&mut self, x: usize, y: usize, v: u64) {
        self.alpha[x * self.n + y] = v % self.modulus;
    }

    pub fn set_mu(&mut self, x: usize, y: usize, v: u64) {
        self.mu[x * self.n + y] = v % self.modulus;
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().chain(&self.mu).all(|&v| v == 0)
    }

    /// The first failed identity, checking borders, then the additive and
    /// circle cocycle identities, then compatibility.
    pub fn violation(&self, q: &SkewBrace) -> Option<FactorSetViolation> {
        let n = self.n;
        assert_eq!(n, q.order(), "factor set over a brace of another order");
        let m = self.modulus;
        for x in 0..n {
            for (table, v) in [("alpha", &self.alpha), ("mu", &self.mu)] {
                if v[x] != 0 {
                    return Some(FactorSetViolation::Border { table, x: 0, y: x });
                }
                if v[x * n] != 0 {
                    return Some(FactorSetViolation::Border { table, x, y: 0 });
                }
            }
        }
        let sum = |terms: [(u64, bool); 6]| {
            terms.iter().fold(0u64, |acc, &(v, plus)| {
                if plus {
                    add_mod(acc, v, m)
                } else {
                    add_mod(acc, neg_mod(v, m), m)
                }
            })
        };
        let (a, u) = (|x, y| self.alpha(x, y), |x, y| self.mu(x, y));
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let s = sum([
                        (a(y, z), true),
                        (a(q.add(x, y), z), false),
                        (a(x, q.add(y, z)), true),
                        (a(x, y), false),
                        (0, true),
                        (0, true),
                    ]);
                    if s != 0 {
                        return Some(FactorSetViolation::Additive { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let s = sum([
                        (u(y, z), true),
                        (u(q.circ(x, y), z), false),
                        (u(x, q.circ(y, z)), true),
                        (u(x, y), false),
                        (0, true),
                        (0, true),
                    ]);
                    if s != 0 {
                        return Some(FactorSetViolation::Circle { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lz = q.lambda(x, z);
                    let s = sum([
                        (a(y, z), true),
                        (a(q.circ(x, y), lz), false),
                        (a(x, lz), true),
                        (u(x, y), false),
                        (u(x, q.add(y, z)), true),
                        (u(x, z), false),
                    ]);
                    if s != 0 {
                        return Some(FactorSetViolation::Compatibility { x, y, z });
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self, q: &SkewBrace) -> bool {
        self.violation(q).is_none()
    }

    /// Interior entries: `α` row-major, then `μ` row-major.
    pub fn to_vector(&self) -> Vec<u64> {
        let n = self.n;
        let mut v = Vec::with_capacity(2 * (n.saturating_sub(1)).pow(2));
        for table in [&self.alpha, &self.mu] {
            for x in 1..n {
                for y in 1..n {
                    v.push(table[x * n + y]);
                }
            }
        }
        v
    }

    pub fn from_vector(n: usize, m: u64, v: &[u64]) -> Self {
        let k = (n.saturating_sub(1)).pow(2);
        assert_eq!(v.len(), 2 * k, "vector length does not match the layout");
        let pick = |off: usize, x: usize, y: usize| {
            if x == 0 || y == 0 {
                0
            } else {
                v[off + interior_index(n, x, y)]
            }
        };
        Self::from_fns(n, m, |x, y| pick(0, x, y), |x, y| pick(k, x, y))
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.n != other.n {
            return Err(Error::MismatchedData("factor sets over braces of different orders".into()));
        }
        Ok(BraceFactorSet {
            n: self.n,
            modulus: self.modulus,
            alpha: self.alpha.iter().zip(&other.alpha).map(|(&a, &b)| f(a, b)).collect(),
            mu: self.mu.iter().zip(&other.mu).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let m = self.modulus;
        self.zip(other, |a, b| add_mod(a, b, m))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let m = self.modulus;
        self.zip(other, |a, b| add_mod(a, neg_mod(b, m), m))
    }

    pub fn scale(&self, k: u64) -> Self {
        let m = self.modulus;
        let k = k % m;
        BraceFactorSet {
            n: self.n,
            modulus: m,
            alpha: self.alpha.iter().map(|&a| mul_mod(a, k, m)).collect(),
            mu: self.mu.iter().map(|&a| mul_mod(a, k, m)).collect(),
        }
    }

    /// The same tables read in `Z/m'` through `Z/m → Z/m'`, `1 ↦ m'/m`.
    pub fn widen(&self, new_modulus: u64) -> Result<Self> {
        if !new_modulus.is_multiple_of(self.modulus) {
            return Err(Error::ModulusMismatch(self.modulus, new_modulus));
        }
        let k = new_modulus / self.modulus;
        Ok(BraceFactorSet {
            n: self.n,
            modulus: new_modulus,
            alpha: self.alpha.iter().map(|&a| a * k).collect(),
            mu: self.mu.iter().map(|&a| a * k).collect(),
        })
    }

    /// Pull-back along a map of element indices.
    pub fn pull_back(&self, map: &[usize]) -> Self {
        Self::from_fns(
            map.len(),
            self.modulus,
            |x, y| self.alpha(map[x], map[y]),
            |x, y| self.mu(map[x], map[y]),
        )
    }

    /// The additive table read as a group factor set of `(Q,+)`.
    pub fn additive_part(&self) -> GroupFactorSet {
        GroupFactorSet { n: self.n, modulus: self.modulus, f: self.alpha.clone() }
    }

    /// The circle table read as a group factor set of `(Q,∘)`.
    pub fn circle_part(&self) -> GroupFactorSet {
        GroupFactorSet { n: self.n, modulus: self.modulus, f: self.mu.clone() }
    }
}

/// A normalized group 2-cocycle `f: G × G → Z/m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupFactorSet {
    n: usize,
    modulus: u64,
    f: Vec<u64>,
}

impl GroupFactorSet {
    pub fn new(g: &GroupTable, m: u64, f: &[Vec<u64>]) -> Result<Self> {
        let fs = GroupFactorSet { n: g.order(), modulus: m, f: flat_table(g.order(), m, f, "f")? };
        match fs.violation(g) {
            Some((x, y, z)) => Err(Error::InvalidCocycle(format!(
                "group cocycle identity fails at ({x},{y},{z})"
            ))),
            None => Ok(fs),
        }
    }

    pub fn from_fn(n: usize, m: u64, f: impl Fn(usize, usize) -> u64) -> Self {
        let t = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| f(x, y) % m).collect();
        GroupFactorSet { n, modulus: m, f: t }
    }

    pub fn coboundary(g: &GroupTable, m: u64, h: &[u64]) -> Self {
        Self::from_fn(g.order(), m, |x, y| {
            add_mod(add_mod(h[y] % m, neg_mod(h[g.op(x, y)] % m, m), m), h[x] % m, m)
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> u64 {
        self.f[x * self.n + y]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        rows_of(self.n, &self.f)
    }

    /// First triple breaking normalization or
    /// `f(y,z) − f(xy,z) + f(x,yz) − f(x,y) = 0`.
    pub fn violation(&self, g: &GroupTable) -> Option<(usize, usize, usize)> {
        let (n, m) = (self.n, self.modulus);
        if let Some(x) = (0..n).find(|&x| self.value(0, x) != 0 || self.value(x, 0) != 0) {
            return Some((0, x, 0));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let s = add_mod(
                        add_mod(self.value(y, z), neg_mod(self.value(g.op(x, y), z), m), m),
                        add_mod(self.value(x, g.op(y, z)), neg_mod(self.value(x, y), m), m),
                        m,
                    );
                    if s != 0 {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn to_vector(&self) -> Vec<u64> {
        let n = self.n;
        (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).map(|(x, y)| self.value(x, y)).collect()
    }

    pub fn from_vector(n: usize, m: u64, v: &[u64]) -> Self {
        assert_eq!(v.len(), (n.saturating_sub(1)).pow(2));
        Self::from_fn(n, m, |x, y| if x == 0 || y == 0 { 0 } else { v[interior_index(n, x, y)] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coboundaries_are_factor_sets() {
        let q = SkewBrace::b_p(3).unwrap();
        let h: Vec<u64> = (0..9).map(|x| if x == 0 { 0 } else { (x * x + 1) as u64 % 9 }).collect();
        let c = BraceFactorSet::coboundary(&q, 9, &h);
        assert!(c.is_valid(&q));
        let round = BraceFactorSet::from_vector(9, 9, &c.to_vector());
        assert_eq!(round, c);
    }

    #[test]
    fn detects_each_identity() {
        let q = SkewBrace::c_nd(4, 2).unwrap();
        let mut c = BraceFactorSet::zero(4, 4);
        c.set_alpha(0, 1, 1);
        assert!(matches!(c.violation(&q), Some(FactorSetViolation::Border { .. })));
        let mut c = BraceFactorSet::zero(4, 4);
        c.set_alpha(1, 2, 1);
        assert!(matches!(c.violation(&q), Some(FactorSetViolation::Additive { .. })));
        let mut c = BraceFactorSet::zero(4, 4);
        c.set_mu(1, 2, 1);
        assert!(matches!(c.violation(&q), Some(FactorSetViolation::Circle { .. })));
    }

    #[test]
    fn group_cocycles() {
        let g = GroupTable::klein();
        // the bilinear form x1·y2 on Z/2 x Z/2 (index a + 2b)
        let f = GroupFactorSet::from_fn(4, 2, |x, y| ((x & 1) * ((y >> 1) & 1)) as u64);
        assert!(f.violation(&g).is_none());
        let bad = GroupFactorSet::from_fn(4, 2, |x, y| u64::from(x == 1 && y == 1));
        assert!(bad.violation(&g).is_some());
    }
}
