use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::pairs::{lambda_pairs, lambda_pairs_d, Flavor, LambdaPair, PairForest, Window};
use super::Partition;
use crate::error::{Error, Result};

/// The rectangle `Ω_{k,l}` or the type D box `Ω^s_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum BoxShape {
    A { k: u32, l: u32 },
    D { k: u32 },
}

impl BoxShape {
    pub fn flavor(&self) -> Flavor {
        match self {
            BoxShape::A { .. } => Flavor::A,
            BoxShape::D { .. } => Flavor::D,
        }
    }

    pub fn rows(&self) -> u32 {
        match *self {
            BoxShape::A { k, .. } | BoxShape::D { k } => k,
        }
    }

    pub fn cols(&self) -> u32 {
        match *self {
            BoxShape::A { l, .. } => l,
            BoxShape::D { k } => k,
        }
    }

    pub fn contains(&self, lam: &Partition) -> bool {
        let fits = lam.len() <= self.rows() as usize && lam.first_part() <= self.cols();
        match self {
            BoxShape::A { .. } => fits,
            BoxShape::D { .. } => fits && lam.is_type_d(),
        }
    }

    /// Every partition of the box, ordered by size then reverse-lex.
    pub fn enumerate(&self) -> Vec<Partition> {
        fn rec(rows: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()).expect("decreasing"));
            if cur.len() as u32 == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        rec(self.rows(), self.cols(), &mut vec![], &mut out);
        out.retain(|p| self.contains(p));
        out.sort();
        out
    }

    /// Number of partitions without materializing them (type A only is exact).
    pub fn size_hint(&self) -> u128 {
        let (k, l) = (self.rows() as u128, self.cols() as u128);
        // binomial(k + l, k)
        (1..=k).fold(1u128, |acc, i| acc * (l + i) / i)
    }

    /// `[-k-l-2, k+l+2]` in type A, `[-2k-2, 2k+2]` in type D.
    pub fn default_window(&self) -> Window {
        match *self {
            BoxShape::A { k, l } => Window::symmetric((k + l + 2) as i64),
            BoxShape::D { k } => Window::symmetric((2 * k + 2) as i64),
        }
    }

    pub fn forest(&self, lam: &Partition) -> Result<PairForest> {
        self.forest_in(lam, self.default_window())
    }

    pub fn forest_in(&self, lam: &Partition, window: Window) -> Result<PairForest> {
        match *self {
            BoxShape::A { k, l } => Ok(lambda_pairs(lam, window, Some((k, l)))),
            BoxShape::D { k } => lambda_pairs_d(lam, window, Some(k)),
        }
    }

    /// `Π_{k,l}(λ)` or `Π^s_k(λ)`.
    pub fn box_pairs(&self, lam: &Partition) -> Result<Vec<LambdaPair>> {
        Ok(self.forest(lam)?.box_pairs())
    }

    pub fn parse(s: &str) -> Result<BoxShape> {
        let s = s.trim();
        let bad = || Error::Domain(format!("bad box literal {s:?}; expected A<k>x<l> or D<k>"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix(['A', 'a']) {
            let (k, l) = rest.split_once(['x', 'X']).ok_or_else(bad)?;
            Ok(BoxShape::A {
                k: num(k)?,
                l: num(l)?,
            })
        } else if let Some(rest) = s.strip_prefix(['D', 'd']) {
            Ok(BoxShape::D { k: num(rest)? })
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxShape::A { k, l } => write!(f, "A{k}x{l}"),
            BoxShape::D { k } => write!(f, "D{k}"),
        }
    }
}

impl FromStr for BoxShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BoxShape::parse(s)
    }
}

impl TryFrom<String> for BoxShape {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        BoxShape::parse(&s)
    }
}

impl From<BoxShape> for String {
    fn from(b: BoxShape) -> String {
        b.to_string()
    }
}

/// Dimension of the Schubert cell: `|λ|`, or `(|λ| - diag)/2` in type D.
pub fn cell_dim(lam: &Partition, flavor: Flavor) -> u64 {
    match flavor {
        Flavor::A => lam.size(),
        Flavor::D => (lam.size() - lam.diagonal() as u64) / 2,
    }
}
