//! Dense integer matrices with arbitrary-precision entries and their Smith
//! normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row_i += k·row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[j * self.cols + c] * k;
            self.data[i * self.cols + c] += v;
        }
    }

    /// col_i += k·col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + j] * k;
            self.data[r * self.cols + i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, i: usize) {
        for r in 0..self.rows {
            let v = -&self.data[r * self.cols + i];
            self.data[r * self.cols + i] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U·A·V = S` with `S` diagonal, `d_1 | d_2 | …`, all `d_i ≥ 0`, and `U`, `V`
/// unimodular. The inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct SnfState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        self.a.add_row(i, j, k);
        self.u.add_row(i, j, k);
        self.u_inv.add_col(j, i, &-k);
    }

    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        self.a.add_col(i, j, k);
        self.v.add_col(i, j, k);
        self.v_inv.add_row(j, i, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block, lowest (row, col) on ties.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form with deterministic pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut st = SnfState {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = st.find_pivot(t) else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            if st.a[(t, t)].is_negative() {
                st.negate_row(t);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if st.a[(i, t)].is_zero() {
                    continue;
                }
                let q = st.a[(i, t)].div_floor(&st.a[(t, t)]);
                st.add_row(i, t, &-q);
                if !st.a[(i, t)].is_zero() {
                    st.swap_rows(t, i);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..cols {
                if st.a[(t, j)].is_zero() {
                    continue;
                }
                let q = st.a[(t, j)].div_floor(&st.a[(t, t)]);
                st.add_col(j, t, &-q);
                if !st.a[(t, j)].is_zero() {
                    st.swap_cols(t, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            let p = st.a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !st.a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        t += 1;
    }
    let rank = t;
    SmithDecomposition { u: st.u, u_inv: st.u_inv, s: st.a, v: st.v, v_inv: st.v_inv, rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        assert_eq!(d.u.mul(a).mul(&d.v), d.s);
        assert_eq!(d.u.mul(&d.u_inv), IntMatrix::identity(a.nrows()));
        assert_eq!(d.v.mul(&d.v_inv), IntMatrix::identity(a.ncols()));
        assert_eq!(d.u.determinant().abs(), BigInt::one());
        assert_eq!(d.v.determinant().abs(), BigInt::one());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for r in 0..a.nrows() {
            for c in 0..a.ncols() {
                if r != c || r >= d.rank {
                    assert!(d.s[(r, c)].is_zero());
                }
            }
        }
        d
    }

    fn diag_of(d: &SmithDecomposition) -> Vec<i64> {
        d.diagonal().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let d = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(diag_of(&d), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let d = check(&IntMatrix::zeros(2, 3));
        assert_eq!(d.rank, 0);
        assert!(d.s.is_zero());
    }

    #[test]
    fn diag_2_2_is_already_smith() {
        let d = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
        assert_eq!(diag_of(&d), vec![2, 2]);
    }

    #[test]
    fn classic_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d = check(&a);
        assert_eq!(diag_of(&d), vec![2, 6, 12]);
    }

    #[test]
    fn rectangular_inputs() {
        check(&IntMatrix::from_rows(&[vec![4, 6, 8, 10]]));
        check(&IntMatrix::from_rows(&[vec![3], vec![5], vec![7]]));
        let d = check(&IntMatrix::from_rows(&[vec![0, 0, 4], vec![0, 6, 0]]));
        assert_eq!(diag_of(&d), vec![2, 12]);
    }
}
