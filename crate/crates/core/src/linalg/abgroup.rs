//! Finite abelian groups in invariant-factor form, and subquotients of
//! `(Z/m)^N` with explicit generators and a coordinate map.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::modular::{gcd, kernel_mod, lcm, mod_snf, mul_mod, SpanSolver, Track};
use crate::error::{Error, Result};
use crate::group::GroupTable;

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// A finite abelian group `Z/d_1 × … × Z/d_k` with `1 < d_1 | d_2 | … | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinAbGroup {
    invariants: Vec<u64>,
}

impl FinAbGroup {
    /// The group `⊕ Z/o_i` for arbitrary cyclic orders, brought to
    /// invariant-factor form. Orders 0 and 1 contribute nothing.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &o in orders.iter().filter(|&&o| o > 1) {
            for (p, e) in factorize(o) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut invariants = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            let offset = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                invariants[offset + i] *= q;
            }
        }
        FinAbGroup { invariants }
    }

    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let all: Vec<u64> = self.invariants.iter().chain(&other.invariants).copied().collect();
        Self::from_cyclic_orders(&all)
    }

    /// `A ⊗ B`, which for finite groups has the same invariants as `Hom(A, B)`.
    pub fn tensor(&self, other: &FinAbGroup) -> FinAbGroup {
        let orders: Vec<u64> = self
            .invariants
            .iter()
            .flat_map(|&a| other.invariants.iter().map(move |&b| gcd(a, b)))
            .collect();
        Self::from_cyclic_orders(&orders)
    }

    /// `A ⊗ Z/m`.
    pub fn tensor_cyclic(&self, m: u64) -> FinAbGroup {
        self.tensor(&FinAbGroup::cyclic(m))
    }

    /// Number of elements `x` with `k·x = 0`.
    pub fn killed_by(&self, k: u64) -> u128 {
        self.invariants.iter().map(|&d| gcd(k, d) as u128).product()
    }

    pub fn element(&self, coords: &[u64]) -> AbElement {
        assert_eq!(coords.len(), self.rank());
        AbElement(coords.iter().zip(&self.invariants).map(|(&c, &d)| c % d).collect())
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.rank()])
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> AbElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.invariants[i];
        AbElement(c)
    }

    pub fn add(&self, x: &AbElement, y: &AbElement) -> AbElement {
        AbElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.invariants)
                .map(|((&a, &b), &d)| (a + b) % d)
                .collect(),
        )
    }

    pub fn scale(&self, k: u64, x: &AbElement) -> AbElement {
        AbElement(x.0.iter().zip(&self.invariants).map(|(&a, &d)| mul_mod(a % d, k % d, d)).collect())
    }

    pub fn element_order(&self, x: &AbElement) -> u64 {
        x.0.iter().zip(&self.invariants).fold(1, |acc, (&a, &d)| lcm(acc, d / gcd(a, d)))
    }

    /// All elements, coordinates little-endian.
    pub fn elements(&self) -> Vec<AbElement> {
        let total = self.order() as usize;
        (0..total)
            .map(|mut code| {
                AbElement(
                    self.invariants
                        .iter()
                        .map(|&d| {
                            let c = (code as u64) % d;
                            code /= d as usize;
                            c
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// Embeds `x` into `(Z/M)^k` by `x_i ↦ (M/d_i)·x_i`; `M` must be a
    /// multiple of the exponent.
    pub fn embed(&self, modulus: u64, x: &AbElement) -> Vec<u64> {
        x.0.iter().zip(&self.invariants).map(|(&a, &d)| (modulus / d) * a % modulus).collect()
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.invariants)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.invariants.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Coordinates of an element of a [`FinAbGroup`], the `i`-th reduced mod `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbElement(pub Vec<u64>);

impl AbElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// `span(G)/span(H)` inside `(Z/m)^dim`, with generator witnesses and the
/// coordinate map.
#[derive(Clone, Debug)]
pub struct Subquotient {
    modulus: u64,
    dim: usize,
    group: FinAbGroup,
    witnesses: Vec<Vec<u64>>,
    numerator: SpanSolver,
    /// For each invariant factor, the column of the relation transform that
    /// reads off that coordinate from numerator coefficients.
    readout: Vec<Vec<u64>>,
}

impl Subquotient {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Ambient representatives of the canonical generators.
    pub fn witnesses(&self) -> &[Vec<u64>] {
        &self.witnesses
    }

    pub fn in_numerator(&self, x: &[u64]) -> bool {
        self.numerator.contains(x)
    }

    pub fn coordinates(&self, x: &[u64]) -> Result<AbElement> {
        let c = self.numerator.solve(x)?;
        let m = self.modulus;
        let coords = self
            .readout
            .iter()
            .zip(self.group.invariants())
            .map(|(col, &d)| {
                let v = col.iter().zip(&c).fold(0u64, |acc, (&q, &ci)| (acc + mul_mod(q, ci, m)) % m);
                v % d
            })
            .collect();
        Ok(AbElement(coords))
    }

    /// Whether `x` lies in the denominator.
    pub fn is_trivial_class(&self, x: &[u64]) -> Result<bool> {
        Ok(self.coordinates(x)?.is_zero())
    }

    /// An ambient representative of the class with the given coordinates.
    pub fn representative(&self, coords: &AbElement) -> Vec<u64> {
        let m = self.modulus;
        let mut out = vec![0u64; self.dim];
        for (w, &c) in self.witnesses.iter().zip(&coords.0) {
            for (o, &x) in out.iter_mut().zip(w) {
                *o = (*o + mul_mod(c, x, m)) % m;
            }
        }
        out
    }
}

/// Structure of `span(G)/span(H)` in `(Z/m)^dim`.
pub fn quotient_structure(
    m: u64,
    dim: usize,
    gens_g: &[Vec<u64>],
    gens_h: &[Vec<u64>],
) -> Result<Subquotient> {
    for v in gens_g.iter().chain(gens_h) {
        if v.len() != dim {
            return Err(Error::MismatchedData(format!(
                "vector of length {} in ambient dimension {dim}",
                v.len()
            )));
        }
    }
    let numerator = SpanSolver::new(m, dim, gens_g);
    let k = gens_g.len();
    let mut relations = numerator.relations();
    for h in gens_h {
        relations.push(numerator.solve(h)?);
    }
    let snf = mod_snf(m, &relations, k, Track { u: false, v: true });
    let v = snf.v.as_ref().expect("tracked");
    let v_inv = snf.v_inv.as_ref().expect("tracked");
    let mut invariants = Vec::new();
    let mut witnesses = Vec::new();
    let mut readout = Vec::new();
    for i in 0..k {
        let d = snf.order_at(i);
        if d == 1 {
            continue;
        }
        invariants.push(d);
        readout.push(v.iter().map(|row| row[i]).collect());
        let coeffs = &v_inv[i];
        let mut w = vec![0u64; dim];
        for (g, &c) in gens_g.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, &x) in w.iter_mut().zip(g) {
                *o = (*o + mul_mod(c, x % m, m)) % m;
            }
        }
        witnesses.push(w);
    }
    Ok(Subquotient {
        modulus: m,
        dim,
        group: FinAbGroup { invariants },
        witnesses,
        numerator,
        readout,
    })
}

/// The subgroup of `(Z/m)^dim` generated by `vectors`.
pub fn subgroup_span(m: u64, dim: usize, vectors: &[Vec<u64>]) -> Subquotient {
    quotient_structure(m, dim, vectors, &[]).expect("no denominator")
}

/// Generators of `{x ∈ Z^k : C x ≡ 0 (mod m)}` reduced mod `m`, where the
/// rows of `C` are given. An all-zero list is returned as a single zero column.
pub fn solution_lattice_mod(c: &super::IntMatrix, m: u64) -> Vec<Vec<u64>> {
    use num_bigint::BigInt;
    let mb = BigInt::from(m);
    let rows: Vec<Vec<u64>> = (0..c.nrows())
        .map(|r| {
            (0..c.ncols())
                .map(|col| {
                    let x = ((&c[(r, col)] % &mb) + &mb) % &mb;
                    u64::try_from(x).expect("reduced below modulus")
                })
                .collect()
        })
        .collect();
    let (gens, _) = kernel_mod(m, &rows, c.ncols());
    if gens.is_empty() {
        vec![vec![0; c.ncols()]]
    } else {
        gens
    }
}

/// A homomorphism between groups in invariant-factor form, stored as the
/// images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub images: Vec<AbElement>,
}

impl AbHom {
    pub fn apply(&self, target: &FinAbGroup, x: &AbElement) -> AbElement {
        self.images
            .iter()
            .zip(&x.0)
            .fold(target.zero(), |acc, (img, &c)| target.add(&acc, &target.scale(c, img)))
    }
}

/// `Hom(A, B) ≅ ⊕ Z/gcd(d_i, e_j)` with one generator per nontrivial pair.
pub fn hom_generators(a: &FinAbGroup, b: &FinAbGroup) -> (Vec<AbHom>, FinAbGroup) {
    let mut homs = Vec::new();
    let mut orders = Vec::new();
    for (i, &d) in a.invariants().iter().enumerate() {
        for (j, &e) in b.invariants().iter().enumerate() {
            let g = gcd(d, e);
            if g == 1 {
                continue;
            }
            let mut images = vec![b.zero(); a.rank()];
            images[i] = b.scale(e / g, &b.generator(j));
            homs.push(AbHom { images });
            orders.push(g);
        }
    }
    (homs, FinAbGroup::from_cyclic_orders(&orders))
}

/// Kernel of a homomorphism `A → B`, as a subgroup of `A` embedded in
/// `(Z/M)^rank(A)` with `M = lcm(exp A, exp B)`.
pub fn hom_kernel(a: &FinAbGroup, b: &FinAbGroup, f: &AbHom) -> Subquotient {
    let images: Vec<Vec<u64>> = f.images.iter().map(|x| x.0.clone()).collect();
    linear_kernel(a, b.invariants(), &images)
}

/// Kernel of the homomorphism from `A` to `⊕ Z/e_j` (any cyclic orders)
/// sending generator `i` of `A` to `images[i]`, embedded as in [`hom_kernel`].
pub fn linear_kernel(a: &FinAbGroup, target: &[u64], images: &[Vec<u64>]) -> Subquotient {
    let big = target.iter().fold(a.exponent(), |acc, &e| lcm(acc, e)).max(1);
    let k = a.rank();
    // Constraint for target coordinate j: (M/e_j)·Σ_i x_i f(g_i)_j ≡ 0 (mod M).
    let rows: Vec<Vec<u64>> = target
        .iter()
        .enumerate()
        .map(|(j, &e)| (0..k).map(|i| (big / e) * (images[i][j] % e) % big).collect())
        .collect();
    let (sols, _) = kernel_mod(big, &rows, k);
    let embedded: Vec<Vec<u64>> = sols.iter().map(|x| a.embed(big, &a.element(x))).collect();
    subgroup_span(big, k, &embedded)
}

/// Invariant-factor structure of an abelian group given by its Cayley table,
/// with coordinates of every element and table elements realizing the
/// canonical generators.
#[derive(Clone, Debug)]
pub struct TableStructure {
    pub group: FinAbGroup,
    pub coords: Vec<AbElement>,
    pub generators: Vec<usize>,
}

impl TableStructure {
    pub fn element_of(&self, x: &AbElement) -> usize {
        self.coords.iter().position(|c| c == x).expect("coordinates of an element")
    }
}

pub fn abelian_structure(g: &GroupTable) -> Result<TableStructure> {
    if !g.is_abelian() {
        return Err(Error::InvalidParameters("group is not abelian".into()));
    }
    let n = g.order();
    let gens = g.greedy_generators();
    let r = gens.len();
    // Coordinates of every element as a word in the chosen generators.
    let mut word: Vec<Option<Vec<u64>>> = vec![None; n];
    word[0] = Some(vec![0; r]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let y = g.op(x, s);
            if word[y].is_none() {
                let mut w = word[x].clone().expect("visited");
                w[i] += 1;
                word[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let word: Vec<Vec<u64>> = word.into_iter().map(|w| w.expect("generated")).collect();
    let modulus = n as u64;
    let mut relations = Vec::with_capacity(n * r);
    for x in 0..n {
        for (i, &s) in gens.iter().enumerate() {
            let y = g.op(x, s);
            let rel: Vec<u64> = (0..r)
                .map(|j| {
                    let v = word[x][j] as i128 + i128::from(i == j) - word[y][j] as i128;
                    v.rem_euclid(modulus as i128) as u64
                })
                .collect();
            relations.push(rel);
        }
    }
    let snf = mod_snf(modulus, &relations, r, Track { u: false, v: true });
    let v = snf.v.as_ref().expect("tracked");
    let v_inv = snf.v_inv.as_ref().expect("tracked");
    let mut invariants = Vec::new();
    let mut kept = Vec::new();
    for i in 0..r {
        let d = snf.order_at(i);
        if d > 1 {
            invariants.push(d);
            kept.push(i);
        }
    }
    let coords = word
        .iter()
        .map(|w| {
            AbElement(
                kept.iter()
                    .zip(&invariants)
                    .map(|(&i, &d)| {
                        let s = w.iter().zip(v).fold(0u64, |acc, (&c, row)| {
                            (acc + mul_mod(c % modulus, row[i], modulus)) % modulus
                        });
                        s % d
                    })
                    .collect(),
            )
        })
        .collect();
    let power = |x: usize, k: u64| (0..k).fold(0usize, |acc, _| g.op(acc, x));
    let generators = kept
        .iter()
        .map(|&i| {
            v_inv[i].iter().zip(&gens).fold(0usize, |acc, (&c, &s)| g.op(acc, power(s, c)))
        })
        .collect();
    Ok(TableStructure { group: FinAbGroup { invariants }, coords, generators })
}
