use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// An element of `Z + 1/2`, stored as the odd integer `2α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct HalfInt(i64);

impl HalfInt {
    /// Builds `twice / 2`; `twice` must be odd.
    pub fn from_twice(twice: i64) -> Option<Self> {
        (twice.rem_euclid(2) == 1).then_some(HalfInt(twice))
    }

    /// `n + 1/2`.
    pub const fn plus_half(n: i64) -> Self {
        HalfInt(2 * n + 1)
    }

    /// `n - 1/2`.
    pub const fn minus_half(n: i64) -> Self {
        HalfInt(2 * n - 1)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    /// The next half-integer up.
    pub const fn succ(self) -> Self {
        HalfInt(self.0 + 2)
    }

    pub const fn pred(self) -> Self {
        HalfInt(self.0 - 2)
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub const fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// `α + 1/2`, an integer.
    pub const fn add_half(self) -> i64 {
        (self.0 + 1) / 2
    }

    /// `α - 1/2`, an integer.
    pub const fn sub_half(self) -> i64 {
        (self.0 - 1) / 2
    }

    /// `η(α) = (-1)^(α + 1/2)`.
    pub fn eta(self) -> i32 {
        if self.add_half().rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `β - α` for two half-integers, an integer.
    pub const fn distance(self, other: HalfInt) -> i64 {
        (other.0 - self.0) / 2
    }

    /// Half-integers in the inclusive range `[lo, hi]`.
    pub fn range(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
        (lo.0..=hi.0).step_by(2).map(HalfInt)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl TryFrom<i64> for HalfInt {
    type Error = String;
    fn try_from(twice: i64) -> Result<Self, String> {
        HalfInt::from_twice(twice).ok_or_else(|| format!("{twice} is not odd"))
    }
}

impl From<HalfInt> for i64 {
    fn from(h: HalfInt) -> i64 {
        h.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// Accepts `"3/2"`, `"-1/2"`, or a decimal `"1.5"`.
impl FromStr for HalfInt {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let twice = if let Some(num) = s.strip_suffix("/2") {
            num.trim()
                .parse::<i64>()
                .map_err(|e| format!("{s:?}: {e}"))?
        } else {
            let x: f64 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
            let t = x * 2.0;
            if t.fract() != 0.0 {
                return Err(format!("{s:?} is not a half-integer"));
            }
            t as i64
        };
        HalfInt::from_twice(twice).ok_or_else(|| format!("{s:?} is not a half-integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!("-1/2".parse::<HalfInt>().unwrap().twice(), -1);
        assert_eq!("2.5".parse::<HalfInt>().unwrap().twice(), 5);
        assert!("1".parse::<HalfInt>().is_err());
        assert!("4/2".parse::<HalfInt>().is_err());
    }

    #[test]
    fn rejects_even() {
        assert!(HalfInt::from_twice(4).is_none());
        assert_eq!(HalfInt::from_twice(-3), Some(HalfInt::minus_half(-1)));
    }

    #[test]
    fn eta_signs() {
        // η(1/2) = -1, η(3/2) = +1, η(-1/2) = +1
        assert_eq!(HalfInt::plus_half(0).eta(), -1);
        assert_eq!(HalfInt::plus_half(1).eta(), 1);
        assert_eq!(HalfInt::minus_half(0).eta(), 1);
    }

    #[test]
    fn ordering_and_range() {
        let v: Vec<_> = HalfInt::range(HalfInt::minus_half(-1), HalfInt::plus_half(1))
            .map(|h| h.twice())
            .collect();
        assert_eq!(v, vec![-3, -1, 1, 3]);
        assert_eq!(HalfInt::minus_half(0).distance(HalfInt::plus_half(1)), 2);
    }
}
