use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::boxes::BoxShape;
use super::pairs::{is_pair, is_pair_d, parent, Flavor, LambdaPair};
use super::{HalfInt, Partition};
use crate::error::{Error, Result};

/// `λ →^π λ'`: flip `φ` at the endpoints (and their negatives in type D).
pub fn apply_move(lam: &Partition, pair: &LambdaPair) -> Result<Partition> {
    let valid = match pair.flavor {
        Flavor::A => is_pair(lam, pair.alpha, pair.beta),
        Flavor::D => lam.is_type_d() && is_pair_d(lam, pair),
    };
    if !valid {
        return Err(Error::InvalidMove {
            lambda: lam.clone(),
            pair: *pair,
        });
    }
    lam.flip(&pair.flip_points())
}

/// All moves from `λ` that stay inside the box.
pub fn arrows_from(lam: &Partition, bx: &BoxShape) -> Result<Vec<(LambdaPair, Partition)>> {
    bx.box_pairs(lam)?
        .into_iter()
        .map(|p| apply_move(lam, &p).map(|to| (p, to)))
        .collect()
}

/// Positions where the boundary profiles of two partitions differ.
pub fn phi_difference(a: &Partition, b: &Partition) -> Vec<HalfInt> {
    let r = a.support_radius().max(b.support_radius());
    HalfInt::range(HalfInt::minus_half(-r), HalfInt::plus_half(r))
        .filter(|&g| a.phi(g) != b.phi(g))
        .collect()
}

/// The pair `π` with `from →^π to`, if there is one.
pub fn arrow_between(from: &Partition, to: &Partition, flavor: Flavor) -> Option<LambdaPair> {
    let diff = phi_difference(from, to);
    match flavor {
        Flavor::A => {
            if let [a, b] = diff[..] {
                (is_pair(from, a, b)).then(|| LambdaPair::new(a, b, Flavor::A))
            } else {
                None
            }
        }
        Flavor::D => {
            if diff.len() != 4 || !from.is_type_d() {
                return None;
            }
            for &a in &diff {
                for &b in &diff {
                    let cand = LambdaPair::new(a, b, Flavor::D);
                    if a < b && from.phi(a) == -1 && from.phi(b) == 1 && is_pair_d(from, &cand) {
                        let mut pts = cand.flip_points();
                        pts.sort();
                        if pts == diff {
                            return Some(cand);
                        }
                    }
                }
            }
            None
        }
    }
}

/// `λ ↔ λ'`.
pub fn adjacent(a: &Partition, b: &Partition, flavor: Flavor) -> bool {
    arrow_between(a, b, flavor).is_some() || arrow_between(b, a, flavor).is_some()
}

/// Every `x ∉ {center, a, b}` with `a ↔ x ↔ b`, searched exhaustively over
/// the profile flips that can connect `a` to `b` in two steps.
pub fn completions(
    center: &Partition,
    a: &Partition,
    b: &Partition,
    flavor: Flavor,
) -> Vec<Partition> {
    let diff = phi_difference(a, b);
    let mut flips: Vec<Vec<HalfInt>> = vec![];
    match flavor {
        Flavor::A if diff.len() == 2 => {
            let r = a.support_radius().max(b.support_radius()) + 4;
            for y in HalfInt::range(HalfInt::plus_half(-r), HalfInt::plus_half(r))
                .filter(|g| !diff.contains(g))
            {
                flips.push(vec![diff[0], y]);
                flips.push(vec![diff[1], y]);
            }
        }
        Flavor::A => {
            for i in 0..diff.len() {
                for j in i + 1..diff.len() {
                    flips.push(vec![diff[i], diff[j]]);
                }
            }
        }
        Flavor::D => {
            let pos: Vec<HalfInt> = diff.iter().copied().filter(|g| g.is_positive()).collect();
            let r = a.support_radius().max(b.support_radius()) + 4;
            let others: Vec<HalfInt> = if pos.len() == 2 {
                HalfInt::range(HalfInt::plus_half(0), HalfInt::plus_half(r))
                    .filter(|g| !pos.contains(g))
                    .collect()
            } else {
                pos.clone()
            };
            for (i, &d) in pos.iter().enumerate() {
                for &x in &others {
                    if pos.len() != 2 && pos[..=i].contains(&x) {
                        continue;
                    }
                    flips.push(vec![d, -d, x, -x]);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for f in flips {
        let Ok(x) = a.flip(&f) else { continue };
        if flavor == Flavor::D && !x.is_type_d() {
            continue;
        }
        if &x != center && &x != a && &x != b && adjacent(a, &x, flavor) && adjacent(&x, b, flavor)
        {
            out.insert(x);
        }
    }
    out.into_iter().collect()
}

/// A 4-cycle `λ ↔ λ' ↔ λ'' ↔ λ''' ↔ λ` of distinct partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diamond(pub [Partition; 4]);

impl Diamond {
    pub fn new(nodes: [Partition; 4], flavor: Flavor) -> Option<Diamond> {
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| nodes[i] != nodes[j]));
        let cyclic = (0..4).all(|i| adjacent(&nodes[i], &nodes[(i + 1) % 4], flavor));
        (distinct && cyclic).then_some(Diamond(nodes))
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.0.contains(p)
    }

    pub fn node_set(&self) -> BTreeSet<Partition> {
        self.0.iter().cloned().collect()
    }
}

/// Completes `λ → λ1`, `λ → λ2` to diamonds: the `λ' ≠ λ` with `λ1 ↔ λ' ↔ λ2`.
///
/// Type A follows the two constructive cases (siblings, parent/child). Type D
/// and configurations that are not a pair of outgoing moves fall back to the
/// exhaustive [`completions`] search; an empty result is a legal outcome there.
pub fn complete_diamond(
    lam: &Partition,
    lam1: &Partition,
    lam2: &Partition,
    flavor: Flavor,
) -> Result<Vec<Partition>> {
    if lam1 == lam2 {
        return Err(Error::DegenerateDiamond);
    }
    let (p1, p2) = match (
        arrow_between(lam, lam1, flavor),
        arrow_between(lam, lam2, flavor),
    ) {
        (Some(p1), Some(p2)) if flavor == Flavor::A => (p1, p2),
        _ => return Ok(completions(lam, lam1, lam2, flavor)),
    };
    let (child, par, child_target, par_target) = if parent(lam, &p1).same_endpoints(&p2) {
        (p1, p2, lam1, lam2)
    } else if parent(lam, &p2).same_endpoints(&p1) {
        (p2, p1, lam2, lam1)
    } else {
        let via2 = apply_move(lam1, &p2)?;
        debug_assert_eq!(Some(&via2), apply_move(lam2, &p1).ok().as_ref());
        return Ok(vec![via2]);
    };
    // child_target →(α2, α1) λ_l →(β1, β2) par_target, and the same the other way round
    let left = LambdaPair::new(par.alpha, child.alpha, Flavor::A);
    let right = LambdaPair::new(child.beta, par.beta, Flavor::A);
    let lam_l = apply_move(child_target, &left)?;
    let lam_r = apply_move(child_target, &right)?;
    debug_assert_eq!(apply_move(&lam_l, &right).ok().as_ref(), Some(par_target));
    let mut out = vec![lam_l, lam_r];
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn a(x: i64, y: i64) -> LambdaPair {
        LambdaPair::from_twice(x, y, Flavor::A)
    }

    fn d(x: i64, y: i64) -> LambdaPair {
        LambdaPair::from_twice(x, y, Flavor::D)
    }

    #[test]
    fn move_examples() {
        assert_eq!(apply_move(&p("3,1,1"), &a(-3, 3)).unwrap(), p("3,3,2"));
        assert_eq!(
            apply_move(&Partition::empty(), &d(-1, 3)).unwrap(),
            p("2,2")
        );
        assert_eq!(apply_move(&Partition::empty(), &a(-1, 1)).unwrap(), p("1"));
        assert!(matches!(
            apply_move(&Partition::empty(), &a(-1, 3)),
            Err(Error::InvalidMove { .. })
        ));
    }

    #[test]
    fn arrow_examples() {
        let got = arrows_from(&Partition::empty(), &BoxShape::A { k: 2, l: 2 }).unwrap();
        let got: Vec<_> = got
            .into_iter()
            .map(|(q, t)| (q.alpha.twice(), t.literal()))
            .collect();
        assert_eq!(got, vec![(-3, "2,1".to_string()), (-1, "1".to_string())]);
        let got = arrows_from(&p("2,2"), &BoxShape::D { k: 3 }).unwrap();
        assert_eq!(got, vec![(d(3, 5), p("3,2,1"))]);
        assert!(arrows_from(&p("2,2"), &BoxShape::A { k: 2, l: 2 })
            .unwrap()
            .is_empty());
    }

    #[test]
    fn diamond_parent_child() {
        let got = complete_diamond(&Partition::empty(), &p("1"), &p("2,1"), Flavor::A).unwrap();
        assert!(got.contains(&p("1,1")));
        assert_eq!(got, vec![p("2"), p("1,1")]);
        let dm = Diamond::new([Partition::empty(), p("1"), p("1,1"), p("2,1")], Flavor::A);
        assert!(dm.is_some());
    }

    #[test]
    fn diamond_siblings_order_independent() {
        // (1) has sibling pairs (-3/2, -1/2) and (1/2, 3/2)
        let lam = p("1");
        let (p1, p2) = (a(-3, -1), a(1, 3));
        let l1 = apply_move(&lam, &p1).unwrap();
        let l2 = apply_move(&lam, &p2).unwrap();
        let got = complete_diamond(&lam, &l1, &l2, Flavor::A).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(apply_move(&l1, &p2).unwrap(), got[0]);
        assert_eq!(apply_move(&l2, &p1).unwrap(), got[0]);
    }

    #[test]
    fn type_d_chain_has_no_completion() {
        let got = complete_diamond(&p("2,2"), &Partition::empty(), &p("3,2,1"), Flavor::D).unwrap();
        assert!(got.is_empty());
        assert_eq!(
            complete_diamond(&p("1"), &p("2"), &p("2"), Flavor::A),
            Err(Error::DegenerateDiamond)
        );
    }
}
