//! Finite groups given by Cayley tables with the identity at index 0.

use crate::error::{Error, GroupWitness, Operation, Result};

/// Largest supported order; element indices fit in one byte.
pub const MAX_ORDER: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    n: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
}

impl GroupTable {
    /// Validates a row-major table. `which` only labels the diagnosis.
    pub fn from_rows(rows: &[Vec<usize>], which: Operation) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameters("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup {
                    which,
                    witness: GroupWitness::Shape { rows: row.len(), expected: n },
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup {
                        which,
                        witness: GroupWitness::EntryOutOfRange { row: r, col: c, value: v },
                    });
                }
                table.push(v as u8);
            }
        }
        Self::from_flat(n, table, which)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize, which: Operation) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_rows(&rows, which)
    }

    fn from_flat(n: usize, table: Vec<u8>, which: Operation) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                let v = at(r, c);
                if seen[v] {
                    return Err(Error::NotAGroup {
                        which,
                        witness: GroupWitness::RepeatedInRow { row: r, value: v },
                    });
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                let v = at(r, c);
                if seen[v] {
                    return Err(Error::NotAGroup {
                        which,
                        witness: GroupWitness::RepeatedInColumn { col: c, value: v },
                    });
                }
                seen[v] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup {
                            which,
                            witness: GroupWitness::NonAssociative { a, b, c },
                        });
                    }
                }
            }
        }
        if (0..n).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(Error::IdentityMismatch { which });
        }
        // Latin rows guarantee exactly one solution.
        let inv: Vec<u8> = (0..n).map(|a| (0..n).find(|&b| at(a, b) == 0).expect("latin row") as u8).collect();
        Ok(GroupTable { n, table, inv })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.op(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// The opposite group `a·b := b a`.
    pub fn opposite(&self) -> GroupTable {
        let n = self.n;
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.table[b * n + a];
            }
        }
        GroupTable { n, table, inv: self.inv.clone() }
    }

    /// Direct product with elements `(i, j)` flattened as `i·|other| + j`.
    pub fn direct_product(&self, other: &GroupTable) -> Result<GroupTable> {
        let (n, m) = (self.n, other.n);
        if n * m > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n * m, max: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n * m * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let (a, b) = (x / m, x % m);
                let (c, d) = (y / m, y % m);
                table.push((self.op(a, c) * m + other.op(b, d)) as u8);
            }
        }
        let inv = (0..n * m)
            .map(|x| (self.inv(x / m) * m + other.inv(x % m)) as u8)
            .collect();
        Ok(GroupTable { n: n * m, table, inv })
    }

    /// Closure of `gens` under the group operation, as a sorted member list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut stack = vec![0usize];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = self.op(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.n).filter(|&x| member[x]).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.op(a, b) == self.op(b, a)))
            .collect()
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // a b a^{-1} b^{-1}, matching [a,b]_+ = a + b - a - b
        self.op(self.op(self.op(a, b), self.inv(a)), self.inv(b))
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                gens.push(self.commutator(a, b));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.generated(&gens)
    }

    /// Greedy generating set: scan elements in index order, keep those not
    /// already in the subgroup generated so far.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.n];
        member[0] = true;
        for a in 1..self.n {
            if !member[a] {
                gens.push(a);
                for x in self.generated(&gens) {
                    member[x] = true;
                }
            }
        }
        gens
    }

    // Named groups.

    pub fn trivial() -> GroupTable {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> GroupTable {
        Self::from_fn(n, |a, b| (a + b) % n, Operation::Add).expect("cyclic group")
    }

    /// `Z/d_1 × … × Z/d_k` with little-endian mixed-radix indexing.
    pub fn abelian(factors: &[usize]) -> Result<GroupTable> {
        let n: usize = factors.iter().product();
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        if factors.contains(&0) {
            return Err(Error::InvalidParameters("zero cyclic factor".into()));
        }
        Self::from_fn(
            n,
            |a, b| {
                let (mut a, mut b, mut r, mut scale) = (a, b, 0, 1);
                for &d in factors {
                    r += ((a % d + b % d) % d) * scale;
                    a /= d;
                    b /= d;
                    scale *= d;
                }
                r
            },
            Operation::Add,
        )
    }

    pub fn klein() -> GroupTable {
        Self::abelian(&[2, 2]).expect("klein group")
    }

    /// Dihedral group of the given (even) order; `r^a s^b` has index `a + (order/2)·b`.
    pub fn dihedral(order: usize) -> Result<GroupTable> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!("dihedral order {order} must be even")));
        }
        let n = order / 2;
        Self::from_fn(
            order,
            |x, y| {
                let (a, b) = (x % n, x / n);
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                rot + n * ((b + d) % 2)
            },
            Operation::Add,
        )
    }

    /// Symmetric group on three letters; permutations in lexicographic order,
    /// composed as `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> GroupTable {
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        Self::from_fn(
            6,
            |a, b| {
                let (s, t) = (perms[a], perms[b]);
                index([s[t[0]], s[t[1]], s[t[2]]])
            },
            Operation::Add,
        )
        .expect("S3")
    }

    /// Quaternion group: index `2u + s` stands for `(-1)^s · u` with units
    /// `u ∈ {1, i, j, k}`.
    pub fn quaternion() -> GroupTable {
        // unit products: (sign, unit)
        const PROD: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        Self::from_fn(
            8,
            |x, y| {
                let (u, s) = (x / 2, x % 2);
                let (v, t) = (y / 2, y % 2);
                let (sign, w) = PROD[u][v];
                2 * w + (s + t + sign) % 2
            },
            Operation::Add,
        )
        .expect("Q8")
    }
}
