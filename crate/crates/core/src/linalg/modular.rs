//! Smith normal form over the ring `Z/m`, with entries stored as
//! representatives in `[0, m)`.
//!
//! Elimination works in `Z/m` throughout. A pivot `p` is first scaled by a unit
//! so that it equals `gcd(p, m)`, a divisor of `m`; entries it divides are then
//! cleared with a single row or column operation, and the rest with a 2x2
//! unimodular transform built from the extended gcd.

use std::collections::HashSet;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

pub fn reduce_i128(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// A unit `u` with `a·u ≡ gcd(a, m) (mod m)`.
fn normalizing_unit(a: u64, m: u64) -> u64 {
    let g = gcd(a, m);
    let (ap, mp) = (a / g, m / g);
    let base = if mp == 1 { 1 } else { inv_mod(ap % mp, mp).expect("coprime after division") };
    let mut u = base;
    while gcd(u, m) != 1 {
        u += mp;
    }
    u % m
}

/// `y = A x` over `Z/m`, where `A` is stored as rows.
pub fn mat_vec(m: u64, a: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(0, |acc, (&r, &v)| add_mod(acc, mul_mod(r, v, m), m)))
        .collect()
}

/// `y = x A` over `Z/m`.
pub fn vec_mat(m: u64, x: &[u64], a: &[Vec<u64>], ncols: usize) -> Vec<u64> {
    let mut out = vec![0u64; ncols];
    for (row, &c) in a.iter().zip(x) {
        if c == 0 {
            continue;
        }
        for (o, &r) in out.iter_mut().zip(row) {
            *o = add_mod(*o, mul_mod(c, r, m), m);
        }
    }
    out
}

pub fn identity(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Result of a Smith decomposition `U·A·V = diag(d_1, …, d_r, 0, …)` over `Z/m`.
///
/// Each `d_i` is a proper divisor of `m`, `d_1 | d_2 | … | d_r`, and the zero
/// entries beyond `r` behave like `m` when read as cyclic orders.
#[derive(Clone, Debug)]
pub struct ModSnf {
    pub modulus: u64,
    pub nrows: usize,
    pub ncols: usize,
    pub diag: Vec<u64>,
    pub u: Option<Vec<Vec<u64>>>,
    pub u_inv: Option<Vec<Vec<u64>>>,
    pub v: Option<Vec<Vec<u64>>>,
    pub v_inv: Option<Vec<Vec<u64>>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub v: bool,
}

impl ModSnf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The `i`-th diagonal entry read as a cyclic order: `d_i`, or `m` past the rank.
    pub fn order_at(&self, i: usize) -> u64 {
        self.diag.get(i).copied().unwrap_or(self.modulus)
    }

    /// Generators of `{x : A x ≡ 0}`, one per cyclic summand of the kernel,
    /// together with the summand orders. Requires `V`.
    pub fn kernel(&self) -> (Vec<Vec<u64>>, Vec<u64>) {
        let v = self.v.as_ref().expect("kernel requires the column transform");
        let m = self.modulus;
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for i in 0..self.ncols {
            let (coef, order) = match self.diag.get(i) {
                Some(&1) => continue,
                Some(&d) => (m / d, d),
                None => (1, m),
            };
            if order == 1 {
                continue;
            }
            gens.push(v.iter().map(|row| mul_mod(row[i], coef, m)).collect());
            orders.push(order);
        }
        (gens, orders)
    }
}

struct Engine {
    m: u64,
    ncols: usize,
    a: Vec<Vec<u64>>,
    u: Option<Vec<Vec<u64>>>,
    u_inv: Option<Vec<Vec<u64>>>,
    v: Option<Vec<Vec<u64>>>,
    v_inv: Option<Vec<Vec<u64>>>,
}

fn row_axpy(m: u64, dst: &mut [u64], src: &[u64], k: u64) {
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = add_mod(*d, mul_mod(k, s, m), m);
        }
    }
}

fn two_rows(mat: &mut [Vec<u64>], i: usize, j: usize) -> (&mut Vec<u64>, &mut Vec<u64>) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = mat.split_at_mut(j);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = mat.split_at_mut(i);
        (&mut hi[0], &mut lo[j])
    }
}

/// `(r_i, r_j) ← (a r_i + b r_j, c r_i + d r_j)` starting at column `from`.
fn mix_rows(m: u64, mat: &mut [Vec<u64>], i: usize, j: usize, k: [u64; 4], from: usize) {
    let (ri, rj) = two_rows(mat, i, j);
    for col in from..ri.len() {
        let (x, y) = (ri[col], rj[col]);
        ri[col] = add_mod(mul_mod(k[0], x, m), mul_mod(k[1], y, m), m);
        rj[col] = add_mod(mul_mod(k[2], x, m), mul_mod(k[3], y, m), m);
    }
}

/// `(c_i, c_j) ← (a c_i + b c_j, c c_i + d c_j)` over rows `from..`.
fn mix_cols(m: u64, mat: &mut [Vec<u64>], i: usize, j: usize, k: [u64; 4], from: usize) {
    for row in mat.iter_mut().skip(from) {
        let (x, y) = (row[i], row[j]);
        row[i] = add_mod(mul_mod(k[0], x, m), mul_mod(k[1], y, m), m);
        row[j] = add_mod(mul_mod(k[2], x, m), mul_mod(k[3], y, m), m);
    }
}

impl Engine {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize, from_row: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().skip(from_row) {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    /// `row_i += k·row_j`.
    fn add_row(&mut self, i: usize, j: usize, k: u64, from_col: usize) {
        let m = self.m;
        {
            let (ri, rj) = two_rows(&mut self.a, i, j);
            row_axpy(m, &mut ri[from_col..], &rj[from_col..], k);
        }
        if let Some(u) = &mut self.u {
            let (ri, rj) = two_rows(u, i, j);
            row_axpy(m, ri, rj, k);
        }
        if let Some(ui) = &mut self.u_inv {
            let nk = neg_mod(k, m);
            for row in ui.iter_mut() {
                if row[i] != 0 {
                    row[j] = add_mod(row[j], mul_mod(nk, row[i], m), m);
                }
            }
        }
    }

    fn scale_row(&mut self, i: usize, unit: u64, from_col: usize) {
        let m = self.m;
        for x in &mut self.a[i][from_col..] {
            *x = mul_mod(*x, unit, m);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = mul_mod(*x, unit, m);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            let inv = inv_mod(unit, m).expect("unit");
            for row in ui.iter_mut() {
                row[i] = mul_mod(row[i], inv, m);
            }
        }
    }

    /// Determinant-one row transform on rows `i, j`.
    fn transform_rows(&mut self, i: usize, j: usize, k: [u64; 4], from_col: usize) {
        let m = self.m;
        mix_rows(m, &mut self.a, i, j, k, from_col);
        if let Some(u) = &mut self.u {
            mix_rows(m, u, i, j, k, 0);
        }
        if let Some(ui) = &mut self.u_inv {
            // right-multiply by the inverse [[d, -b], [-c, a]]
            let inv = [k[3], neg_mod(k[2], m), neg_mod(k[1], m), k[0]];
            mix_cols(m, ui, i, j, inv, 0);
        }
    }

    /// Determinant-one column transform: `(c_i, c_j) ← (a c_i + b c_j, c c_i + d c_j)`.
    fn transform_cols(&mut self, i: usize, j: usize, k: [u64; 4], from_row: usize) {
        let m = self.m;
        mix_cols(m, &mut self.a, i, j, k, from_row);
        if let Some(v) = &mut self.v {
            mix_cols(m, v, i, j, k, 0);
        }
        if let Some(vi) = &mut self.v_inv {
            let inv = [k[3], neg_mod(k[2], m), neg_mod(k[1], m), k[0]];
            mix_rows(m, vi, i, j, inv, 0);
        }
    }

    /// `col_j += k·col_t` when column `t` is zero outside row `t`.
    fn add_col_from_pivot(&mut self, j: usize, t: usize, k: u64) {
        let m = self.m;
        let row = &mut self.a[t];
        row[j] = add_mod(row[j], mul_mod(k, row[t], m), m);
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                if r[t] != 0 {
                    r[j] = add_mod(r[j], mul_mod(k, r[t], m), m);
                }
            }
        }
        if let Some(vi) = &mut self.v_inv {
            let (rt, rj) = two_rows(vi, t, j);
            row_axpy(m, rt, rj, neg_mod(k, m));
        }
    }

    fn sym_abs(&self, x: u64) -> u64 {
        x.min(self.m - x)
    }

    /// Locate the pivot for step `t`. When `U` is not tracked, rows that have
    /// become zero are dropped so later scans are cheaper.
    fn find_pivot(&mut self, t: usize) -> Option<(usize, usize)> {
        if self.u.is_none() {
            let mut i = t;
            while i < self.a.len() {
                if self.a[i][t..].iter().all(|&x| x == 0) {
                    self.a.swap_remove(i);
                } else {
                    i += 1;
                }
            }
        }
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..self.a.len() {
            for j in t..self.ncols {
                let x = self.a[i][j];
                if x == 0 {
                    continue;
                }
                let s = self.sym_abs(x);
                if best.is_none_or(|(b, _, _)| s < b) {
                    best = Some((s, i, j));
                    if s == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn normalize_pivot(&mut self, t: usize) -> u64 {
        let p = self.a[t][t];
        let g = gcd(p, self.m);
        if p != g {
            let u = normalizing_unit(p, self.m);
            self.scale_row(t, u, t);
        }
        debug_assert_eq!(self.a[t][t], g);
        g
    }

    fn gcd_coefficients(&self, p: u64, b: u64) -> [u64; 4] {
        let (g, s, r) = ext_gcd(p as i128, b as i128);
        let m = self.m;
        [
            reduce_i128(s, m),
            reduce_i128(r, m),
            reduce_i128(-(b as i128 / g), m),
            reduce_i128(p as i128 / g, m),
        ]
    }

    fn eliminate(&mut self, t: usize) {
        let m = self.m;
        let mut g = self.normalize_pivot(t);
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.len() {
                let b = self.a[i][t];
                if b == 0 {
                    continue;
                }
                if b.is_multiple_of(g) {
                    self.add_row(i, t, neg_mod(b / g, m), t);
                } else {
                    let k = self.gcd_coefficients(g, b);
                    self.transform_rows(t, i, k, t);
                    g = self.normalize_pivot(t);
                }
            }
            for j in t + 1..self.ncols {
                let b = self.a[t][j];
                if b == 0 {
                    continue;
                }
                if b.is_multiple_of(g) {
                    self.add_col_from_pivot(j, t, neg_mod(b / g, m));
                } else {
                    let k = self.gcd_coefficients(g, b);
                    self.transform_cols(t, j, k, t);
                    g = self.normalize_pivot(t);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            if g > 1 {
                let offender = (t + 1..self.a.len())
                    .find(|&i| self.a[i][t + 1..].iter().any(|&x| x % g != 0));
                if let Some(i) = offender {
                    self.add_row(t, i, 1, t);
                    continue;
                }
            }
            break;
        }
    }
}

/// Smith normal form of the `rows.len() × ncols` matrix `rows` over `Z/m`.
/// Entries need not be reduced.
pub fn mod_snf(m: u64, rows: &[Vec<u64>], ncols: usize, track: Track) -> ModSnf {
    assert!(m >= 1, "modulus must be positive");
    let nrows = rows.len();
    let a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            r.iter().map(|&x| x % m).collect()
        })
        .collect();
    let mut e = Engine {
        m,
        ncols,
        a,
        u: track.u.then(|| identity(nrows)),
        u_inv: track.u.then(|| identity(nrows)),
        v: track.v.then(|| identity(ncols)),
        v_inv: track.v.then(|| identity(ncols)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < ncols.min(e.a.len()) {
        let Some((pi, pj)) = e.find_pivot(t) else { break };
        e.swap_rows(t, pi);
        e.swap_cols(t, pj, t);
        e.eliminate(t);
        diag.push(e.a[t][t]);
        t += 1;
    }
    ModSnf { modulus: m, nrows, ncols, diag, u: e.u, u_inv: e.u_inv, v: e.v, v_inv: e.v_inv }
}

/// The solution group `{x ∈ (Z/m)^ncols : A x ≡ 0}` as generators with the
/// orders of the cyclic summands they generate. Duplicate and zero rows are
/// discarded before elimination.
pub fn kernel_mod(m: u64, rows: &[Vec<u64>], ncols: usize) -> (Vec<Vec<u64>>, Vec<u64>) {
    let mut seen = HashSet::new();
    let reduced: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % m).collect::<Vec<u64>>())
        .filter(|r| r.iter().any(|&x| x != 0) && seen.insert(r.clone()))
        .collect();
    mod_snf(m, &reduced, ncols, Track { u: false, v: true }).kernel()
}

/// Solves `G c ≡ x (mod m)` for a fixed generator list `G` (given as columns).
#[derive(Clone, Debug)]
pub struct SpanSolver {
    modulus: u64,
    dim: usize,
    ngens: usize,
    snf: ModSnf,
}

impl SpanSolver {
    pub fn new(m: u64, dim: usize, gens: &[Vec<u64>]) -> Self {
        // rows of the dim × ngens matrix whose columns are the generators
        let rows: Vec<Vec<u64>> =
            (0..dim).map(|r| gens.iter().map(|g| g[r] % m).collect()).collect();
        let snf = mod_snf(m, &rows, gens.len(), Track { u: true, v: true });
        SpanSolver { modulus: m, dim, ngens: gens.len(), snf }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Coefficients `c` with `Σ c_j g_j ≡ x`, or the first obstructed
    /// coordinate of `U x`.
    pub fn solve(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.dim {
            return Err(Error::MismatchedData(format!(
                "vector of length {} in an ambient space of dimension {}",
                x.len(),
                self.dim
            )));
        }
        let m = self.modulus;
        let u = self.snf.u.as_ref().expect("tracked");
        let v = self.snf.v.as_ref().expect("tracked");
        let reduced: Vec<u64> = x.iter().map(|&e| e % m).collect();
        let y = mat_vec(m, u, &reduced);
        let mut c = vec![0u64; self.ngens];
        for (i, &yi) in y.iter().enumerate() {
            match self.snf.diag.get(i) {
                Some(&d) => {
                    if yi % d != 0 {
                        return Err(Error::NotInSpan(i));
                    }
                    c[i] = yi / d;
                }
                None if yi != 0 => return Err(Error::NotInSpan(i)),
                None => {}
            }
        }
        Ok(mat_vec(m, v, &c))
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.solve(x).is_ok()
    }

    /// Generators of the relations `{c : Σ c_j g_j ≡ 0}`.
    pub fn relations(&self) -> Vec<Vec<u64>> {
        self.snf.kernel().0
    }

    /// Order of the span.
    pub fn span_order(&self) -> u128 {
        self.snf.diag.iter().map(|&d| (self.modulus / d) as u128).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_mul(m: u64, a: &[Vec<u64>], b: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
        a.iter().map(|row| vec_mat(m, row, b, ncols)).collect()
    }

    fn check(m: u64, a: &[Vec<u64>], ncols: usize) -> ModSnf {
        let s = mod_snf(m, a, ncols, Track { u: true, v: true });
        let (u, ui, v, vi) =
            (s.u.clone().unwrap(), s.u_inv.clone().unwrap(), s.v.clone().unwrap(), s.v_inv.clone().unwrap());
        let nrows = a.len();
        let eye = |n: usize| -> Vec<Vec<u64>> {
            identity(n).into_iter().map(|r| r.into_iter().map(|x| x % m).collect()).collect()
        };
        assert_eq!(mat_mul(m, &u, &ui, nrows), eye(nrows));
        assert_eq!(mat_mul(m, &v, &vi, ncols), eye(ncols));
        let d = mat_mul(m, &mat_mul(m, &u, a, ncols), &v, ncols);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expected = if i == j { s.diag.get(i).copied().unwrap_or(0) } else { 0 };
                assert_eq!(x, expected % m, "entry ({i},{j})");
            }
        }
        for w in s.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for &x in &s.diag {
            assert!(x > 0 && m.is_multiple_of(x) && x < m);
        }
        s
    }

    fn brute_kernel_size(m: u64, a: &[Vec<u64>], ncols: usize) -> u128 {
        let total = (m as usize).pow(ncols as u32);
        let mut count = 0u128;
        for code in 0..total {
            let mut x = vec![0u64; ncols];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = (c % m as usize) as u64;
                c /= m as usize;
            }
            if mat_vec(m, a, &x).iter().all(|&y| y == 0) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn units_and_gcds() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        for m in 1..40u64 {
            for a in 0..m {
                let u = normalizing_unit(a, m);
                assert_eq!(gcd(u, m), 1);
                assert_eq!(mul_mod(a, u, m), gcd(a, m) % m);
            }
        }
    }

    #[test]
    fn small_matrices() {
        let s = check(12, &[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.diag, vec![1, 6]);
        let s = check(4, &[vec![2, 2], vec![2, 2]], 2);
        assert_eq!(s.diag, vec![2]);
        let s = check(9, &[vec![0, 0, 0]], 3);
        assert!(s.diag.is_empty());
        check(1, &[vec![0, 0]], 2);
    }

    #[test]
    fn solver_round_trip() {
        let gens = vec![vec![2, 0, 4], vec![0, 6, 6]];
        let solver = SpanSolver::new(8, 3, &gens);
        let target = vec![4, 2, 2];
        let c = solver.solve(&target).unwrap();
        let back: Vec<u64> = (0..3).map(|r| (c[0] * gens[0][r] + c[1] * gens[1][r]) % 8).collect();
        assert_eq!(back, target);
        assert!(solver.solve(&[1, 0, 0]).is_err());
        assert_eq!(solver.span_order(), 16);
    }

    proptest! {
        #[test]
        fn snf_identities(m in 1u64..=16, rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(0u64..1000, 25)) {
            let a: Vec<Vec<u64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 5 + c] % m).collect()).collect();
            check(m, &a, cols);
        }

        #[test]
        fn kernel_matches_brute_force(m in 2u64..=6, rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(0u64..100, 16)) {
            let a: Vec<Vec<u64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 4 + c] % m).collect()).collect();
            let (gens, orders) = kernel_mod(m, &a, cols);
            for g in &gens {
                prop_assert!(mat_vec(m, &a, g).iter().all(|&y| y == 0));
            }
            let size: u128 = orders.iter().map(|&o| o as u128).product();
            prop_assert_eq!(size, brute_kernel_size(m, &a, cols));
            let solver = SpanSolver::new(m, cols, &gens);
            prop_assert_eq!(solver.span_order(), size);
        }
    }
}
