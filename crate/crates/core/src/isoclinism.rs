//! Isoclinism of skew braces: matching `A/Ann A` and `A'` compatibly with
//! the commutator and star pairings.

use std::ops::ControlFlow;

use crate::brace::{BraceMorphism, SkewBrace};
use crate::error::Result;
use crate::iso::{find_isomorphism, for_each_isomorphism};

/// `ξ: A/Ann A → B/Ann B` and `θ: A' → B'`. The derived ideals are
/// relabelled by position in their sorted member lists, given here.
#[derive(Clone, Debug)]
pub struct IsoclinismWitness {
    pub xi: BraceMorphism,
    pub theta: BraceMorphism,
    pub derived_a: Vec<usize>,
    pub derived_b: Vec<usize>,
}

struct Side {
    brace: SkewBrace,
    central: SkewBrace,
    reps: Vec<usize>,
    derived: Vec<usize>,
    derived_brace: SkewBrace,
}

impl Side {
    fn new(a: &SkewBrace) -> Result<Side> {
        let ann = a.annihilator()?;
        let (central, proj) = a.quotient(&ann)?;
        let mut reps = vec![usize::MAX; central.order()];
        for x in (0..a.order()).rev() {
            reps[proj.apply(x)] = x;
        }
        let derived = a.commutator_ideal()?.members().to_vec();
        let derived_brace = a.sub_brace(&derived)?;
        Ok(Side { brace: a.clone(), central, reps, derived, derived_brace })
    }

    fn pos(&self, x: usize) -> usize {
        self.derived.binary_search(&x).expect("element of the derived ideal")
    }

    /// `[a,b]₊` and `a*b` for coset representatives, as derived positions.
    fn pairings(&self, x: usize, y: usize) -> (usize, usize) {
        let (a, b) = (self.reps[x], self.reps[y]);
        (self.pos(self.brace.add_commutator(a, b)), self.pos(self.brace.star(a, b)))
    }
}

/// Extends the prescribed values of `θ` additively; `None` on a clash.
fn close_theta(sa: &Side, sb: &Side, seed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let (da, db) = (&sa.derived_brace, &sb.derived_brace);
    let n = da.order();
    let mut theta = vec![usize::MAX; n];
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in seed {
        if theta[x] == usize::MAX {
            theta[x] = y;
            gens.push((x, y));
        } else if theta[x] != y {
            return None;
        }
    }
    if theta[0] != usize::MAX && theta[0] != 0 {
        return None;
    }
    theta[0] = 0;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &(g, tg) in &gens {
            let z = da.add(x, g);
            let tz = db.add(theta[x], tg);
            if theta[z] == usize::MAX {
                theta[z] = tz;
                frontier.push(z);
            } else if theta[z] != tz {
                return None;
            }
        }
    }
    // Every element was reached, since the seeds generate A'.
    (!theta.contains(&usize::MAX)).then_some(theta)
}

/// An isoclinism `A ~ B`, if one exists.
pub fn isoclinism_test(a: &SkewBrace, b: &SkewBrace) -> Result<Option<IsoclinismWitness>> {
    let sa = Side::new(a)?;
    let sb = Side::new(b)?;
    if sa.central.order() != sb.central.order() || sa.derived.len() != sb.derived.len() {
        return Ok(None);
    }
    if find_isomorphism(&sa.derived_brace, &sb.derived_brace).is_none() {
        return Ok(None);
    }
    let k = sa.central.order();
    let mut found = None;
    for_each_isomorphism(&sa.central, &sb.central, |xi| {
        let mut seed = Vec::with_capacity(2 * k * k);
        for x in 0..k {
            for y in 0..k {
                let (ca, sta) = sa.pairings(x, y);
                let (cb, stb) = sb.pairings(xi.apply(x), xi.apply(y));
                seed.push((ca, cb));
                seed.push((sta, stb));
            }
        }
        if let Some(theta) = close_theta(&sa, &sb, &seed) {
            if let Ok(theta) = BraceMorphism::new(&sa.derived_brace, &sb.derived_brace, theta) {
                if theta.is_bijective() {
                    found = Some(IsoclinismWitness {
                        xi: xi.clone(),
                        theta,
                        derived_a: sa.derived.clone(),
                        derived_b: sb.derived.clone(),
                    });
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// Re-checks a witness against both braces.
pub fn verify_isoclinism(a: &SkewBrace, b: &SkewBrace, w: &IsoclinismWitness) -> Result<bool> {
    let sa = Side::new(a)?;
    let sb = Side::new(b)?;
    if !w.xi.is_bijective() || !w.theta.is_bijective() || sa.derived != w.derived_a || sb.derived != w.derived_b {
        return Ok(false);
    }
    let k = sa.central.order();
    Ok((0..k).all(|x| {
        (0..k).all(|y| {
            let (ca, sta) = sa.pairings(x, y);
            let (cb, stb) = sb.pairings(w.xi.apply(x), w.xi.apply(y));
            w.theta.apply(ca) == cb && w.theta.apply(sta) == stb
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    #[test]
    fn covers_of_order_p_squared_are_isoclinic() {
        for p in [2, 3] {
            let a = SkewBrace::c_nd(p * p, p).unwrap();
            let b = SkewBrace::b_p(p).unwrap();
            let w = isoclinism_test(&a, &b).unwrap().expect("isoclinic");
            assert!(verify_isoclinism(&a, &b, &w).unwrap());
        }
    }

    #[test]
    fn trivial_z4_is_not_isoclinic_to_c42() {
        let a = SkewBrace::trivial(&GroupTable::cyclic(4));
        assert!(isoclinism_test(&a, &SkewBrace::c_nd(4, 2).unwrap()).unwrap().is_none());
    }

    #[test]
    fn abelian_trivial_braces_are_all_isoclinic() {
        let a = SkewBrace::trivial(&GroupTable::cyclic(4));
        let b = SkewBrace::trivial(&GroupTable::klein());
        assert!(isoclinism_test(&a, &b).unwrap().is_some());
    }
}
