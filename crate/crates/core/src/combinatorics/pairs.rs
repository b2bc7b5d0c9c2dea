use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{HalfInt, Partition};
use crate::error::{Error, Result};

/// Type A (classical Grassmannian) or type D (isotropic Grassmannian).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Flavor {
    #[default]
    A,
    D,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::A => write!(f, "A"),
            Flavor::D => write!(f, "D"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LambdaPair {
    pub alpha: HalfInt,
    pub beta: HalfInt,
    #[serde(default)]
    pub flavor: Flavor,
}

impl LambdaPair {
    pub fn new(alpha: HalfInt, beta: HalfInt, flavor: Flavor) -> Self {
        LambdaPair {
            alpha,
            beta,
            flavor,
        }
    }

    /// Shorthand taking doubled endpoints.
    pub fn from_twice(alpha: i64, beta: i64, flavor: Flavor) -> Self {
        LambdaPair {
            alpha: HalfInt::from_twice(alpha).expect("odd alpha"),
            beta: HalfInt::from_twice(beta).expect("odd beta"),
            flavor,
        }
    }

    /// Interval order: `self ≤ other` iff `[α, β] ⊆ [α', β']`.
    pub fn le(&self, other: &LambdaPair) -> bool {
        other.alpha <= self.alpha && self.beta <= other.beta
    }

    pub fn lt(&self, other: &LambdaPair) -> bool {
        self.le(other) && (self.alpha, self.beta) != (other.alpha, other.beta)
    }

    pub fn contains(&self, g: HalfInt) -> bool {
        self.alpha <= g && g <= self.beta
    }

    pub fn same_endpoints(&self, other: &LambdaPair) -> bool {
        self.alpha == other.alpha && self.beta == other.beta
    }

    /// Half-integers whose `φ` value a move along this pair flips.
    pub fn flip_points(&self) -> Vec<HalfInt> {
        match self.flavor {
            Flavor::A => vec![self.alpha, self.beta],
            Flavor::D => vec![self.alpha, self.beta, -self.alpha, -self.beta],
        }
    }
}

impl fmt::Display for LambdaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// The `β` paired with `α` (`φ(α) = -1`): first `β > α` where the running sum vanishes.
pub fn partner_up(lam: &Partition, alpha: HalfInt) -> Result<HalfInt> {
    if lam.phi(alpha) != -1 {
        return Err(Error::WrongSign(alpha));
    }
    let mut sum = -1i64;
    let mut g = alpha;
    while sum != 0 {
        g = g.succ();
        sum += lam.phi(g) as i64;
    }
    Ok(g)
}

/// The `α` paired with `β` (`φ(β) = +1`).
pub fn partner_down(lam: &Partition, beta: HalfInt) -> Result<HalfInt> {
    if lam.phi(beta) != 1 {
        return Err(Error::WrongSign(beta));
    }
    let mut sum = 1i64;
    let mut g = beta;
    while sum != 0 {
        g = g.pred();
        sum += lam.phi(g) as i64;
    }
    Ok(g)
}

/// The unique type A pair in which `g` appears.
pub fn pair_containing(lam: &Partition, g: HalfInt) -> LambdaPair {
    if lam.phi(g) == -1 {
        LambdaPair::new(g, partner_up(lam, g).expect("sign checked"), Flavor::A)
    } else {
        LambdaPair::new(partner_down(lam, g).expect("sign checked"), g, Flavor::A)
    }
}

pub fn is_pair(lam: &Partition, alpha: HalfInt, beta: HalfInt) -> bool {
    alpha < beta && lam.phi(alpha) == -1 && partner_up(lam, alpha).ok() == Some(beta)
}

/// Parent in the type A tree: skip sibling intervals leftwards until an
/// unmatched `-1` appears.
pub fn parent_a(lam: &Partition, pair: &LambdaPair) -> LambdaPair {
    let mut g = pair.alpha.pred();
    loop {
        if lam.phi(g) == 1 {
            g = partner_down(lam, g).expect("sign checked").pred();
        } else {
            return LambdaPair::new(g, partner_up(lam, g).expect("sign checked"), Flavor::A);
        }
    }
}

/// Whether `π` is a type D pair of `λ` (either clause of the definition).
pub fn is_pair_d(lam: &Partition, pair: &LambdaPair) -> bool {
    let (a, b) = (pair.alpha, pair.beta);
    if a.is_positive() && b.is_positive() {
        return is_pair(lam, a, b);
    }
    if !(b > -a && (-a).is_positive()) {
        return false;
    }
    if !is_pair(lam, a, -a) || !is_pair(lam, -b, b) || a.add_half().rem_euclid(2) != 0 {
        return false;
    }
    let sum: i64 = HalfInt::range((-a).succ(), b)
        .map(|g| lam.phi(g) as i64)
        .sum();
    sum == 1
}

/// All type D pairs whose smaller absolute endpoint is at most `r`.
pub fn pairs_d_within(lam: &Partition, r: HalfInt) -> Vec<LambdaPair> {
    let mut out = BTreeSet::new();
    for g in HalfInt::range(HalfInt::plus_half(0), r) {
        let p = pair_containing(lam, g);
        if p.alpha.is_positive() {
            out.insert(LambdaPair::new(p.alpha, p.beta, Flavor::D));
        }
        // symmetric pair (-g, g): the second clause pairs it with its parent
        let a = -g;
        if lam.phi(a) == -1 && is_pair(lam, a, g) && a.add_half().rem_euclid(2) == 0 {
            let parent = parent_a(lam, &LambdaPair::new(a, g, Flavor::A));
            let cand = LambdaPair::new(a, parent.beta, Flavor::D);
            if is_pair_d(lam, &cand) {
                out.insert(cand);
            }
        }
    }
    out.into_iter().collect()
}

/// Smallest type D pair strictly dominating `π`.
pub fn parent_d(lam: &Partition, pair: &LambdaPair) -> LambdaPair {
    let mut r = pair.beta.abs().max(pair.alpha.abs());
    loop {
        let best = pairs_d_within(lam, r)
            .into_iter()
            .filter(|q| pair.lt(q))
            .min_by_key(|q| q.alpha.distance(q.beta));
        if let Some(q) = best {
            return q;
        }
        r = HalfInt::from_twice(r.twice() + 4).expect("odd");
    }
}

pub fn parent(lam: &Partition, pair: &LambdaPair) -> LambdaPair {
    match pair.flavor {
        Flavor::A => parent_a(lam, pair),
        Flavor::D => parent_d(lam, pair),
    }
}

/// `ζ` of relation 3s: `-α'` when `π < (-β', -α')` for the parent `(α', β')`, else `β'`.
pub fn zeta(lam: &Partition, pair: &LambdaPair) -> Result<HalfInt> {
    if pair.flavor != Flavor::D || !is_pair_d(lam, pair) {
        return Err(Error::Domain(format!(
            "{pair} is not a type D pair of {lam}"
        )));
    }
    let par = parent_d(lam, pair);
    let mirror = LambdaPair::new(-par.beta, -par.alpha, Flavor::D);
    Ok(if pair.lt(&mirror) {
        -par.alpha
    } else {
        par.beta
    })
}

/// An inclusive half-integer window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: HalfInt,
    pub hi: HalfInt,
}

impl Window {
    /// `[-r, r]` for an integer radius, i.e. half-integers `±(r - 1/2)`.
    pub fn symmetric(r: i64) -> Self {
        Window {
            lo: HalfInt::minus_half(-r + 1),
            hi: HalfInt::plus_half(r - 1),
        }
    }

    pub fn contains(&self, g: HalfInt) -> bool {
        self.lo <= g && g <= self.hi
    }

    pub fn enlarge(&self, by: i64) -> Self {
        Window {
            lo: HalfInt::from_twice(self.lo.twice() - 2 * by).expect("odd"),
            hi: HalfInt::from_twice(self.hi.twice() + 2 * by).expect("odd"),
        }
    }
}

/// The pairs of `λ` meeting a window, with parent links and box flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairForest {
    pub flavor: Flavor,
    pub pairs: Vec<LambdaPair>,
    pub parent: Vec<Option<usize>>,
    pub in_box: Vec<bool>,
}

impl PairForest {
    pub fn box_pairs(&self) -> Vec<LambdaPair> {
        self.pairs
            .iter()
            .zip(&self.in_box)
            .filter(|(_, &b)| b)
            .map(|(p, _)| *p)
            .collect()
    }

    pub fn index_of(&self, pair: &LambdaPair) -> Option<usize> {
        self.pairs.iter().position(|p| p.same_endpoints(pair))
    }

    pub fn parent_of(&self, pair: &LambdaPair) -> Option<LambdaPair> {
        self.index_of(pair)
            .and_then(|i| self.parent[i])
            .map(|j| self.pairs[j])
    }

    fn build(
        lam: &Partition,
        flavor: Flavor,
        mut pairs: Vec<LambdaPair>,
        in_box: impl Fn(&LambdaPair) -> bool,
    ) -> PairForest {
        pairs.sort();
        pairs.dedup();
        let boxed: Vec<LambdaPair> = pairs.iter().filter(|p| in_box(p)).copied().collect();
        for p in &boxed {
            let q = parent(lam, p);
            if !pairs.iter().any(|x| x.same_endpoints(&q)) {
                pairs.push(q);
            }
        }
        pairs.sort();
        let parent_idx = pairs
            .iter()
            .map(|p| {
                let q = parent(lam, p);
                pairs.iter().position(|x| x.same_endpoints(&q))
            })
            .collect();
        let flags = pairs.iter().map(&in_box).collect();
        PairForest {
            flavor,
            pairs,
            parent: parent_idx,
            in_box: flags,
        }
    }
}

/// Type A pairs meeting the window. `k`, `l` give the box `Π_{k,l}` filter.
pub fn lambda_pairs(lam: &Partition, window: Window, kl: Option<(u32, u32)>) -> PairForest {
    let pairs: Vec<LambdaPair> = HalfInt::range(window.lo, window.hi)
        .map(|g| pair_containing(lam, g))
        .collect();
    PairForest::build(lam, Flavor::A, pairs, |p| match kl {
        Some((k, l)) => p.alpha.twice() > -2 * k as i64 && p.beta.twice() < 2 * l as i64,
        None => false,
    })
}

/// Type D pairs with an endpoint of absolute value inside the window.
pub fn lambda_pairs_d(lam: &Partition, window: Window, k: Option<u32>) -> Result<PairForest> {
    if !lam.is_type_d() {
        return Err(Error::NotSymmetric(lam.clone()));
    }
    let r = window.hi.max(-window.lo);
    let pairs = pairs_d_within(lam, r);
    Ok(PairForest::build(lam, Flavor::D, pairs, |p| match k {
        Some(k) => p.beta.twice() < 2 * k as i64,
        None => false,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn pr(a: i64, b: i64) -> (i64, i64) {
        (a, b)
    }

    fn twice(f: &PairForest) -> Vec<(i64, i64)> {
        f.pairs
            .iter()
            .map(|q| (q.alpha.twice(), q.beta.twice()))
            .collect()
    }

    #[test]
    fn type_a_pairs_of_311() {
        let f = lambda_pairs(&p("3,1,1"), Window::symmetric(8), Some((3, 3)));
        let got = twice(&f);
        for want in [pr(-1, 1), pr(-3, 3), pr(-7, -5), pr(5, 7)] {
            assert!(got.contains(&want), "{want:?} missing from {got:?}");
        }
        let boxed: Vec<_> = f
            .box_pairs()
            .iter()
            .map(|q| (q.alpha.twice(), q.beta.twice()))
            .collect();
        assert_eq!(boxed, vec![pr(-3, 3), pr(-1, 1)]);
    }

    #[test]
    fn empty_partition_is_a_chain() {
        let f = lambda_pairs(&Partition::empty(), Window::symmetric(4), None);
        assert_eq!(twice(&f), vec![pr(-7, 7), pr(-5, 5), pr(-3, 3), pr(-1, 1)]);
        let inner = LambdaPair::from_twice(-1, 1, Flavor::A);
        assert_eq!(f.parent_of(&inner).map(|q| q.beta.twice()), Some(3));
    }

    #[test]
    fn type_d_pairs_of_332() {
        let f = lambda_pairs_d(&p("3,3,2"), Window::symmetric(7), None).unwrap();
        let got: Vec<_> = twice(&f).into_iter().filter(|&(_, b)| b < 13).collect();
        assert_eq!(got, vec![pr(-1, 11), pr(3, 9), pr(5, 7)]);
    }

    #[test]
    fn type_d_pairs_of_empty_and_22() {
        let f = lambda_pairs_d(&Partition::empty(), Window::symmetric(6), None).unwrap();
        let got = twice(&f);
        for want in [pr(-1, 3), pr(-5, 7), pr(-9, 11)] {
            assert!(got.contains(&want));
        }
        let f = lambda_pairs_d(&p("2,2"), Window::symmetric(6), None).unwrap();
        let got = twice(&f);
        assert!(got.contains(&pr(3, 5)));
        assert!(got.contains(&pr(-9, 11)));
        assert!(lambda_pairs_d(&p("2,1"), Window::symmetric(4), None).is_err());
    }

    #[test]
    fn d_parent_of_first_second_kind() {
        let lam = Partition::empty();
        let child = LambdaPair::from_twice(-1, 3, Flavor::D);
        assert_eq!(
            parent_d(&lam, &child),
            LambdaPair::from_twice(-5, 7, Flavor::D)
        );
    }

    #[test]
    fn wrong_sign_partner() {
        assert!(partner_up(&Partition::empty(), HalfInt::plus_half(0)).is_err());
        assert!(partner_down(&Partition::empty(), HalfInt::minus_half(0)).is_err());
    }

    #[test]
    fn zeta_examples() {
        let pi = LambdaPair::from_twice(-1, 3, Flavor::D);
        assert_eq!(zeta(&Partition::empty(), &pi).unwrap().twice(), 5);
        // (3/2, 5/2) in (2,2) has the first-kind parent (1/2, 7/2)
        let q = LambdaPair::from_twice(3, 5, Flavor::D);
        assert_eq!(zeta(&p("2,2"), &q).unwrap().twice(), 7);
        assert!(zeta(
            &Partition::empty(),
            &LambdaPair::from_twice(-1, 1, Flavor::D)
        )
        .is_err());
    }
}
