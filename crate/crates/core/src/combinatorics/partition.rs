use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HalfInt;
use crate::error::{Error, Result};

/// A partition, stored as its positive parts in weakly decreasing order.
///
/// `Ord` is a total order refining the containment order (size first, then
/// parts lexicographically); use [`Partition::is_contained_in`] for the
/// diagram order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has an interior zero"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i`, 1-based, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn first_part(&self) -> u32 {
        self.part(1)
    }

    /// Whether `(i, j)` (1-based matrix coordinates) is a box of the diagram.
    pub fn has_cell(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && (j as u32) <= self.part(i)
    }

    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.parts.len() <= other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_part() as usize;
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Number of boxes on the main diagonal.
    pub fn diagonal(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count()
    }

    /// Membership in the symmetric, even-diagonal family.
    pub fn is_type_d(&self) -> bool {
        *self == self.conjugate() && self.diagonal().is_multiple_of(2)
    }

    /// The boundary profile `φ_λ(α)`: `-1` iff `α = λ_i - i + 1/2` for some `i ≥ 1`.
    pub fn phi(&self, alpha: HalfInt) -> i8 {
        let n = self.parts.len() as i64;
        // rows past the last part contribute the staircase -i + 1/2, i > n
        if alpha.twice() < -2 * n {
            return -1;
        }
        let hit = self
            .parts
            .iter()
            .enumerate()
            .any(|(i, &p)| HalfInt::plus_half(p as i64 - i as i64 - 1) == alpha);
        if hit {
            -1
        } else {
            1
        }
    }

    /// Half-integers outside `[-len-1/2, λ_1+1/2]` sit on the staircase tails.
    pub fn support_radius(&self) -> i64 {
        self.parts.len().max(self.first_part() as usize) as i64 + 1
    }

    pub fn profile(&self, lo: HalfInt, hi: HalfInt) -> PhiProfile {
        PhiProfile {
            lo,
            values: HalfInt::range(lo, hi).map(|a| self.phi(a)).collect(),
        }
    }

    /// Profile on the symmetric window `[-r-1/2, r+1/2]`, `r` covering the diagram.
    pub fn natural_profile(&self, extra: i64) -> PhiProfile {
        let r = self.support_radius() + extra;
        self.profile(HalfInt::minus_half(-r), HalfInt::plus_half(r))
    }

    /// Flips `φ` at every listed position and rebuilds the partition.
    pub fn flip(&self, at: &[HalfInt]) -> Result<Partition> {
        let r = at
            .iter()
            .map(|a| a.twice().abs() / 2 + 1)
            .max()
            .unwrap_or(0)
            .max(self.support_radius());
        let mut prof = self.profile(HalfInt::minus_half(-r), HalfInt::plus_half(r));
        for &a in at {
            prof.flip(a);
        }
        partition_from_phi(&prof)
    }

    /// Parses `3,1,1`; `0` or the empty string is the zero partition.
    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPartition(format!("{s}: {e}")))?;
        Partition::new(parts)
    }

    /// Literal form accepted by [`Partition::parse`].
    pub fn literal(&self) -> String {
        if self.is_empty() {
            "0".to_string()
        } else {
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "({})", self.literal())
        }
    }
}

/// `φ` restricted to an inclusive window; `-1` is implied below it and `+1` above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiProfile {
    pub lo: HalfInt,
    pub values: Vec<i8>,
}

impl PhiProfile {
    pub fn hi(&self) -> HalfInt {
        HalfInt::from_twice(self.lo.twice() + 2 * (self.values.len() as i64 - 1)).expect("odd")
    }

    pub fn get(&self, a: HalfInt) -> i8 {
        let off = (a.twice() - self.lo.twice()) / 2;
        if a < self.lo {
            -1
        } else if off as usize >= self.values.len() {
            1
        } else {
            self.values[off as usize]
        }
    }

    /// Flips the value at `a`; `a` must lie in the window.
    pub fn flip(&mut self, a: HalfInt) {
        let off = ((a.twice() - self.lo.twice()) / 2) as usize;
        self.values[off] = -self.values[off];
    }
}

/// Inverse of the boundary profile.
pub fn partition_from_phi(profile: &PhiProfile) -> Result<Partition> {
    if profile.values.is_empty() {
        return Err(Error::InvalidProfile("empty window".into()));
    }
    if let Some(v) = profile.values.iter().find(|&&v| v != 1 && v != -1) {
        return Err(Error::InvalidProfile(format!("value {v} is not ±1")));
    }
    let downs: Vec<HalfInt> = HalfInt::range(profile.lo, profile.hi())
        .filter(|&a| profile.get(a) == -1)
        .collect();
    let m = downs.len() as i64;
    // the first implied -1 below the window must sit on the zero row
    let tail = profile.lo.pred().sub_half() + m + 1;
    if tail != 0 {
        return Err(Error::InvalidProfile(format!(
            "partial sums do not vanish (charge {tail})"
        )));
    }
    let parts = downs
        .iter()
        .rev()
        .enumerate()
        .map(|(i, a)| (a.sub_half() + i as i64 + 1) as u32)
        .collect();
    Partition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(Partition::empty().phi(h(-5)), -1);
        assert_eq!(Partition::empty().phi(h(1)), 1);
        assert_eq!(p("3,1,1").phi(h(5)), -1);
        assert_eq!(p("2,2").phi(h(-1)), 1);
    }

    #[test]
    fn phi_brute_force_matches_formula() {
        // -1 set of (2,2) is {3/2, 1/2} together with everything ≤ -5/2
        let lam = p("2,2");
        for t in (-15..=15).step_by(2) {
            let expected = if t == 3 || t == 1 || t <= -5 { -1 } else { 1 };
            assert_eq!(lam.phi(h(t)), expected, "at {t}/2");
        }
    }

    #[test]
    fn from_phi_examples() {
        let empty = Partition::empty().profile(h(-7), h(7));
        assert_eq!(partition_from_phi(&empty).unwrap(), Partition::empty());
        // -1 exactly at 5/2, -1/2, -3/2 plus the tail below -5/2
        let mut values = vec![];
        for t in (-7..=7).step_by(2) {
            values.push(if [5, -1, -3, -7].contains(&t) { -1 } else { 1 });
        }
        let prof = PhiProfile { lo: h(-7), values };
        assert_eq!(partition_from_phi(&prof).unwrap(), p("3,1,1"));
        assert_eq!(
            partition_from_phi(&p("2,2").natural_profile(2)).unwrap(),
            p("2,2")
        );
    }

    #[test]
    fn from_phi_rejects_bad_charge() {
        let prof = PhiProfile {
            lo: h(-3),
            values: vec![1, 1, 1, 1],
        };
        assert!(matches!(
            partition_from_phi(&prof),
            Err(Error::InvalidProfile(_))
        ));
        let prof = PhiProfile {
            lo: h(-3),
            values: vec![1, 0, 1, 1],
        };
        assert!(partition_from_phi(&prof).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("0"), Partition::empty());
        assert_eq!(p("3,1,1").to_string(), "(3,1,1)");
        assert!(Partition::parse("1,2").is_err());
        assert_eq!(p("3,1,1").literal(), "3,1,1");
    }

    #[test]
    fn type_d_membership() {
        assert!(Partition::empty().is_type_d());
        assert!(p("2,2").is_type_d());
        assert!(p("3,2,1").is_type_d());
        assert!(p("3,3,2").is_type_d());
        assert!(!p("1").is_type_d());
        assert!(!p("2,1").is_type_d());
        assert_eq!(p("3,3,2").diagonal(), 2);
    }
}
