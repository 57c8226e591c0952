//! Brace isomorphism search: invariant prefilters, then backtracking over
//! images of additive generators.

use std::ops::ControlFlow;

use crate::brace::{BraceMorphism, SkewBrace};
use crate::linalg::abelian_structure;

/// Cheap isomorphism invariants of a brace.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Fingerprint {
    order: usize,
    add_abelian: bool,
    circ_abelian: bool,
    order_pairs: Vec<(usize, usize)>,
    add_type: Option<Vec<u64>>,
    circ_type: Option<Vec<u64>>,
    socle: Option<usize>,
    annihilator: Option<usize>,
    derived: Option<usize>,
}

fn fingerprint(a: &SkewBrace) -> Fingerprint {
    let mut order_pairs = a.order_pairs();
    order_pairs.sort_unstable();
    let ty = |g| abelian_structure(g).ok().map(|s| s.group.invariants().to_vec());
    Fingerprint {
        order: a.order(),
        add_abelian: a.add_group().is_abelian(),
        circ_abelian: a.circ_group().is_abelian(),
        order_pairs,
        add_type: ty(a.add_group()),
        circ_type: ty(a.circ_group()),
        socle: a.socle().ok().map(|i| i.order()),
        annihilator: a.annihilator().ok().map(|i| i.order()),
        derived: a.commutator_ideal().ok().map(|i| i.order()),
    }
}

struct Search<'a> {
    a: &'a SkewBrace,
    b: &'a SkewBrace,
    gens: Vec<usize>,
    pairs_a: Vec<(usize, usize)>,
    pairs_b: Vec<(usize, usize)>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

impl Search<'_> {
    /// Adds generator `k` with image `y`, closes the domain additively and
    /// checks the circle product on it. On `false` the caller still rolls back
    /// the trail.
    fn extend(&mut self, k: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        let g = self.gens[k];
        let (a, b) = (self.a, self.b);
        if !self.assign(g, y, trail) {
            return false;
        }
        // close under right addition of generators 0..=k
        let gens = self.gens[..=k].to_vec();
        let mut i = 0;
        while i < self.domain.len() {
            let x = self.domain[i];
            let fx = self.map[x].expect("domain element");
            for &s in &gens {
                let z = a.add(x, s);
                let fz = b.add(fx, self.map[s].expect("generator"));
                match self.map[z] {
                    Some(prev) if prev != fz => return false,
                    Some(_) => {}
                    None => {
                        if !self.assign(z, fz, trail) {
                            return false;
                        }
                    }
                }
            }
            i += 1;
        }
        // the circle product on the current domain
        for &x in &self.domain {
            let fx = self.map[x].expect("domain");
            for &w in &self.domain {
                if let Some(fxw) = self.map[a.circ(x, w)] {
                    if fxw != b.circ(fx, self.map[w].expect("domain")) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, x: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        if self.used[y] || self.pairs_a[x] != self.pairs_b[y] {
            return false;
        }
        self.map[x] = Some(y);
        self.used[y] = true;
        self.domain.push(x);
        trail.push(x);
        true
    }

    fn rollback(&mut self, trail: &[usize]) {
        for &x in trail {
            let y = self.map[x].take().expect("assigned");
            self.used[y] = false;
        }
        let keep = self.domain.len() - trail.len();
        self.domain.truncate(keep);
    }

    fn run<F>(&mut self, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if k == self.gens.len() {
            let full: Vec<usize> = self.map.iter().map(|m| m.expect("total map")).collect();
            return visit(&full);
        }
        let g = self.gens[k];
        let want = self.pairs_a[g];
        for y in 0..self.b.order() {
            if self.used[y] || self.pairs_b[y] != want {
                continue;
            }
            let mut trail = Vec::new();
            let ok = self.extend(k, y, &mut trail);
            if ok {
                self.run(k + 1, visit)?;
            }
            self.rollback(&trail);
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every isomorphism `a → b` in a fixed deterministic order
/// until it breaks.
pub fn for_each_isomorphism<F>(a: &SkewBrace, b: &SkewBrace, mut visit: F)
where
    F: FnMut(&BraceMorphism) -> ControlFlow<()>,
{
    if a.order() != b.order() {
        return;
    }
    let pairs_a = a.order_pairs();
    let pairs_b = b.order_pairs();
    let (mut sa, mut sb) = (pairs_a.clone(), pairs_b.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return;
    }
    let n = a.order();
    let mut s = Search {
        a,
        b,
        gens: a.add_group().greedy_generators(),
        pairs_a,
        pairs_b,
        map: vec![None; n],
        used: vec![false; n],
        domain: Vec::new(),
    };
    let mut trail = Vec::new();
    s.assign(0, 0, &mut trail);
    let _ = s.run(0, &mut |map: &[usize]| {
        let f = BraceMorphism::new(a, b, map.to_vec()).expect("search only yields morphisms");
        visit(&f)
    });
}

/// A brace isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &SkewBrace, b: &SkewBrace) -> Option<BraceMorphism> {
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    let mut found = None;
    for_each_isomorphism(a, b, |f| {
        found = Some(f.clone());
        ControlFlow::Break(())
    });
    found
}

pub fn are_isomorphic(a: &SkewBrace, b: &SkewBrace) -> bool {
    find_isomorphism(a, b).is_some()
}

/// All automorphisms, in search order.
pub fn automorphisms(a: &SkewBrace) -> Vec<BraceMorphism> {
    let mut out = Vec::new();
    for_each_isomorphism(a, a, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    #[test]
    fn examples() {
        let c44 = SkewBrace::c_nd(4, 4).unwrap();
        assert!(find_isomorphism(&c44, &SkewBrace::trivial(&GroupTable::cyclic(4))).is_some());
        let c42 = SkewBrace::c_nd(4, 2).unwrap();
        let b2 = SkewBrace::b_p(2).unwrap();
        assert!(find_isomorphism(&c42, &b2).is_none());
        let f = find_isomorphism(&b2, &b2).unwrap();
        assert_eq!(f.map(), &[0, 1, 2, 3]);
    }

    #[test]
    fn relabelled_copies_are_found() {
        let b3 = SkewBrace::b_p(3).unwrap();
        // relabel by a permutation fixing 0
        let perm = [0usize, 5, 7, 2, 8, 1, 4, 3, 6];
        let mut inv = [0usize; 9];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let add: Vec<Vec<usize>> =
            (0..9).map(|x| (0..9).map(|y| perm[b3.add(inv[x], inv[y])]).collect()).collect();
        let circ: Vec<Vec<usize>> =
            (0..9).map(|x| (0..9).map(|y| perm[b3.circ(inv[x], inv[y])]).collect()).collect();
        let c = crate::brace::validate_brace(&add, &circ).unwrap();
        assert!(find_isomorphism(&b3, &c).is_some());
        assert!(find_isomorphism(&c, &b3).is_some());
    }

    #[test]
    fn automorphism_counts() {
        // Aut of the trivial brace on Z/2 x Z/2 is GL(2,2), order 6
        let k = SkewBrace::trivial(&GroupTable::klein());
        assert_eq!(automorphisms(&k).len(), 6);
        assert_eq!(automorphisms(&SkewBrace::trivial(&GroupTable::cyclic(5))).len(), 4);
        assert_eq!(automorphisms(&SkewBrace::trivial(&GroupTable::symmetric3())).len(), 6);
    }
}
