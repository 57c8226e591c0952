//! Exhaustive enumeration of small braces and of their second brace
//! cohomology, written directly from the defining identities.

#![allow(dead_code)]

use std::collections::HashSet;

pub type Table = Vec<Vec<usize>>;
type Values = Vec<Vec<u64>>;

fn is_group(t: &Table) -> bool {
    let n = t.len();
    let latin = (0..n).all(|i| {
        let row: HashSet<_> = t[i].iter().collect();
        let col: HashSet<_> = (0..n).map(|j| t[j][i]).collect();
        row.len() == n && col.len() == n
    });
    latin && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// Every group table on `0..n` in which 0 is the identity.
pub fn group_tables(n: usize) -> Vec<Table> {
    let free = (n - 1) * (n - 1);
    (0..n.pow(free as u32))
        .filter_map(|code| {
            let mut t: Table = (0..n).map(|i| (0..n).map(|j| if i == 0 { j } else if j == 0 { i } else { 0 }).collect()).collect();
            let mut c = code;
            for row in t.iter_mut().skip(1) {
                for cell in row.iter_mut().skip(1) {
                    *cell = c % n;
                    c /= n;
                }
            }
            is_group(&t).then_some(t)
        })
        .collect()
}

fn inverse(t: &Table, a: usize) -> usize {
    (0..t.len()).find(|&b| t[a][b] == 0).unwrap()
}

/// Pairs `(add, circ)` satisfying `a∘(b+c) = a∘b − a + a∘c`.
pub fn braces(n: usize) -> Vec<(Table, Table)> {
    let tables = group_tables(n);
    let mut out = Vec::new();
    for add in &tables {
        for circ in &tables {
            let law = (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| circ[a][add[b][c]] == add[add[circ[a][b]][inverse(add, a)]][circ[a][c]])
                })
            });
            if law {
                out.push((add.clone(), circ.clone()));
            }
        }
    }
    out
}

struct Brace<'a> {
    add: &'a Table,
    circ: &'a Table,
    n: usize,
}

impl Brace<'_> {
    fn lambda(&self, x: usize, z: usize) -> usize {
        self.add[inverse(self.add, x)][self.circ[x][z]]
    }

    fn is_cocycle(&self, al: &Values, mu: &Values, m: u64) -> bool {
        let n = self.n;
        let (s, o) = (self.add, self.circ);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let a = al[y][z] + al[x][s[y][z]] + 2 * m - al[s[x][y]][z] - al[x][y];
                    let b = mu[y][z] + mu[x][o[y][z]] + 2 * m - mu[o[x][y]][z] - mu[x][y];
                    let l = self.lambda(x, z);
                    let c = al[y][z] + al[x][l] + mu[x][s[y][z]] + 3 * m - al[o[x][y]][l] - mu[x][y] - mu[x][z];
                    if !a.is_multiple_of(m) || !b.is_multiple_of(m) || !c.is_multiple_of(m) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn unpack(code: u64, m: u64, len: usize) -> Vec<u64> {
    let mut c = code;
    (0..len)
        .map(|_| {
            let v = c % m;
            c /= m;
            v
        })
        .collect()
}

/// For `k = 1..=m`, the number of classes in `H²_b(Q, Z/m)` killed by `k`.
/// The last entry is the order of the group.
pub fn h2b_torsion_profile(add: &Table, circ: &Table, m: u64) -> Vec<u128> {
    let n = add.len();
    let q = Brace { add, circ, n };
    let inner = (n - 1) * (n - 1);
    let place = |v: &[u64]| -> Values {
        let mut t = vec![vec![0u64; n]; n];
        for i in 1..n {
            for j in 1..n {
                t[i][j] = v[(i - 1) * (n - 1) + j - 1];
            }
        }
        t
    };
    let mut boundaries = HashSet::new();
    for code in 0..m.pow((n - 1) as u32) {
        let mut h = vec![0u64];
        h.extend(unpack(code, m, n - 1));
        let mut v = Vec::with_capacity(2 * inner);
        for op in [add, circ] {
            for i in 1..n {
                for j in 1..n {
                    v.push((h[i] + h[j] + m - h[op[i][j]]) % m);
                }
            }
        }
        boundaries.insert(v);
    }
    let mut cocycles = Vec::new();
    for code in 0..m.pow((2 * inner) as u32) {
        let v = unpack(code, m, 2 * inner);
        if q.is_cocycle(&place(&v[..inner]), &place(&v[inner..]), m) {
            cocycles.push(v);
        }
    }
    let b = boundaries.len() as u128;
    (1..=m)
        .map(|k| {
            let hits = cocycles
                .iter()
                .filter(|z| boundaries.contains(&z.iter().map(|&x| x * k % m).collect::<Vec<_>>()))
                .count();
            hits as u128 / b
        })
        .collect()
}
