//! The linear congruence systems cutting out 2-cocycles and coboundaries.

use super::factor_set::interior_index;
use crate::brace::SkewBrace;
use crate::group::GroupTable;

/// Cocycle conditions `C·v ≡ 0` and coboundary generators over `Z/m`.
///
/// Unknowns are the interior table entries (both arguments nonzero): for a
/// brace, `α` row-major then `μ` row-major; for a group, the single table.
/// Rows of `C` are ordered by (condition kind, x, y, z). Column `j` of `D` is
/// the coboundary of the indicator function of element `j + 1`.
#[derive(Clone, Debug)]
pub struct CocycleSystem {
    pub modulus: u64,
    pub order: usize,
    pub unknowns: usize,
    pub constraints: Vec<Vec<u64>>,
    pub coboundaries: Vec<Vec<u64>>,
}

struct RowBuilder {
    n: usize,
    m: u64,
    row: Vec<i64>,
}

impl RowBuilder {
    fn new(n: usize, m: u64, width: usize) -> Self {
        RowBuilder { n, m, row: vec![0; width] }
    }

    /// Adds `coef` times the table entry at `(x, y)` of the block at `offset`.
    fn term(&mut self, offset: usize, x: usize, y: usize, coef: i64) {
        if x != 0 && y != 0 {
            self.row[offset + interior_index(self.n, x, y)] += coef;
        }
    }

    fn finish(&mut self) -> Vec<u64> {
        let m = self.m as i64;
        let out = self.row.iter().map(|&c| c.rem_euclid(m) as u64).collect();
        self.row.iter_mut().for_each(|c| *c = 0);
        out
    }
}

/// Coboundary columns for the operations `ops` stacked in blocks.
fn coboundary_columns(n: usize, m: u64, ops: &[&dyn Fn(usize, usize) -> usize]) -> Vec<Vec<u64>> {
    let block = (n - 1) * (n - 1);
    (1..n)
        .map(|j| {
            let mut col = vec![0u64; block * ops.len()];
            for (b, op) in ops.iter().enumerate() {
                for x in 1..n {
                    for y in 1..n {
                        // h(y) − h(x·y) + h(x) with h the indicator of j
                        let v = i64::from(y == j) - i64::from(op(x, y) == j) + i64::from(x == j);
                        col[b * block + interior_index(n, x, y)] = v.rem_euclid(m as i64) as u64;
                    }
                }
            }
            col
        })
        .collect()
}

/// Columns of `D` alone, without assembling the cocycle conditions.
pub fn brace_coboundary_generators(q: &SkewBrace, m: u64) -> Vec<Vec<u64>> {
    let n = q.order();
    if n <= 1 {
        return vec![];
    }
    let add = |x, y| q.add(x, y);
    let circ = |x, y| q.circ(x, y);
    coboundary_columns(n, m, &[&add, &circ])
}

pub fn assemble_brace_cocycle_system(q: &SkewBrace, m: u64) -> CocycleSystem {
    let n = q.order();
    if n <= 1 {
        return CocycleSystem { modulus: m, order: n, unknowns: 0, constraints: vec![], coboundaries: vec![] };
    }
    let block = (n - 1) * (n - 1);
    let width = 2 * block;
    let (a, u) = (0, block);
    let mut rows = Vec::with_capacity(3 * n * n * n);
    let mut r = RowBuilder::new(n, m, width);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                r.term(a, y, z, 1);
                r.term(a, q.add(x, y), z, -1);
                r.term(a, x, q.add(y, z), 1);
                r.term(a, x, y, -1);
                rows.push(r.finish());
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                r.term(u, y, z, 1);
                r.term(u, q.circ(x, y), z, -1);
                r.term(u, x, q.circ(y, z), 1);
                r.term(u, x, y, -1);
                rows.push(r.finish());
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lz = q.lambda(x, z);
                r.term(a, y, z, 1);
                r.term(a, q.circ(x, y), lz, -1);
                r.term(a, x, lz, 1);
                r.term(u, x, y, -1);
                r.term(u, x, q.add(y, z), 1);
                r.term(u, x, z, -1);
                rows.push(r.finish());
            }
        }
    }
    let add = |x, y| q.add(x, y);
    let circ = |x, y| q.circ(x, y);
    CocycleSystem {
        modulus: m,
        order: n,
        unknowns: width,
        constraints: rows,
        coboundaries: coboundary_columns(n, m, &[&add, &circ]),
    }
}

pub fn assemble_group_cocycle_system(g: &GroupTable, m: u64) -> CocycleSystem {
    let n = g.order();
    if n <= 1 {
        return CocycleSystem { modulus: m, order: n, unknowns: 0, constraints: vec![], coboundaries: vec![] };
    }
    let width = (n - 1) * (n - 1);
    let mut rows = Vec::with_capacity(n * n * n);
    let mut r = RowBuilder::new(n, m, width);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                r.term(0, y, z, 1);
                r.term(0, g.op(x, y), z, -1);
                r.term(0, x, g.op(y, z), 1);
                r.term(0, x, y, -1);
                rows.push(r.finish());
            }
        }
    }
    let op = |x, y| g.op(x, y);
    CocycleSystem {
        modulus: m,
        order: n,
        unknowns: width,
        constraints: rows,
        coboundaries: coboundary_columns(n, m, &[&op]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let s = assemble_brace_cocycle_system(&SkewBrace::c_nd(4, 2).unwrap(), 16);
        assert_eq!(s.unknowns, 18);
        assert_eq!(s.constraints.len(), 192);
        assert_eq!(s.coboundaries.len(), 3);
        let p = assemble_brace_cocycle_system(&SkewBrace::point(), 5);
        assert_eq!(p.unknowns, 0);
        assert!(p.constraints.is_empty());
    }

    #[test]
    fn trivial_z2_system() {
        let q = SkewBrace::trivial(&GroupTable::cyclic(2));
        let s = assemble_brace_cocycle_system(&q, 2);
        assert_eq!(s.unknowns, 2);
        assert!(s.constraints.iter().flatten().all(|&c| c == 0));
        // over a larger modulus exactly one row survives: 2α(1,1) − 2μ(1,1)
        let s = assemble_brace_cocycle_system(&q, 1000);
        let nonzero: Vec<(usize, &Vec<u64>)> =
            s.constraints.iter().enumerate().filter(|(_, r)| r.iter().any(|&c| c != 0)).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0, 2 * 8 + 7);
        assert_eq!(nonzero[0].1, &vec![2, 998]);
    }
}
