use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::matrix::{greedy_support, lex_first, tau, Cell, ZeroOneMatrix};
use crate::combinatorics::Flavor;
use crate::error::{Error, Result};

/// A permutation of `{1..n}`, extended by the identity beyond `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindowPermutation {
    images: Vec<usize>,
}

impl WindowPermutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let set: BTreeSet<usize> = images.iter().copied().collect();
        if set.len() != n || set.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::Domain(format!("{images:?} is not a permutation")));
        }
        Ok(WindowPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        WindowPermutation {
            images: (1..=n).collect(),
        }
    }

    pub fn window(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        if i >= 1 && i <= self.images.len() {
            self.images[i - 1]
        } else {
            i
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    /// `r_σ(p, q) = #{i ≤ p : σ(i) ≤ q}`.
    pub fn rank(&self, p: usize, q: usize) -> usize {
        let inside = (1..=p.min(self.window()))
            .filter(|&i| self.apply(i) <= q)
            .count();
        // fixed points beyond the window
        inside + p.min(q).saturating_sub(self.window())
    }

    pub fn cells(&self) -> BTreeSet<Cell> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &j)| (i + 1, j))
            .collect()
    }
}

/// Bruhat order via the rank-matrix criterion: `σ ≤ σ'` iff `r_σ ≥ r_σ'`.
pub fn bruhat_leq(a: &WindowPermutation, b: &WindowPermutation) -> bool {
    let n = a.window().max(b.window());
    (1..=n).all(|p| (1..=n).all(|q| a.rank(p, q) >= b.rank(p, q)))
}

/// `σ_A`, the completion of `A` on an `n × n` window.
pub fn hat_completion(a: &ZeroOneMatrix, window: usize) -> Result<WindowPermutation> {
    hat_completion_with(a, window, lex_first)
}

pub fn hat_completion_with(
    a: &ZeroOneMatrix,
    window: usize,
    choose: impl FnMut(&[Cell]) -> Cell,
) -> Result<WindowPermutation> {
    let (k, l) = (a.region.rows(), a.region.cols());
    if window < k + l {
        return Err(Error::Domain(format!(
            "window {window} is smaller than {}",
            k + l
        )));
    }
    let mut s = tau(a);
    for i in 1..=window {
        for j in 1..=window {
            let outside = i > k || j > l;
            if outside && (a.flavor() == Flavor::A || i != j) {
                s.insert((i, j));
            }
        }
    }
    let cells = greedy_support(&s, choose);
    let mut images = vec![0; window];
    for (i, j) in cells {
        images[i - 1] = j;
    }
    if images.contains(&0) {
        return Err(Error::Invariant(format!(
            "completion of {:?} leaves a row empty",
            a.support
        )));
    }
    WindowPermutation::new(images)
}

/// Corner ranks of `Â` outside the region, recovered from those inside:
/// `r(p, q) = min(r(p-1, q), r(p, q-1)) + 1` off `R_λ`, `0` on `Δ(λ)`.
pub fn rank_by_recursion(a: &ZeroOneMatrix, n: usize) -> Vec<Vec<usize>> {
    let mut r = vec![vec![0usize; n + 1]; n + 1];
    let region = &a.region;
    for p in 1..=n {
        for q in 1..=n {
            let inside = p <= region.rows() && q <= region.cols();
            r[p][q] = if inside {
                a.corner_rank(p, q)
            } else {
                r[p - 1][q].min(r[p][q - 1]) + 1
            };
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::matrix::Region;

    #[test]
    fn lengths_and_ranks() {
        let id = WindowPermutation::identity(4);
        assert_eq!(id.length(), 0);
        let s = WindowPermutation::new(vec![3, 4, 1, 2]).unwrap();
        assert_eq!(s.length(), 4);
        assert!(bruhat_leq(&id, &s));
        assert!(!bruhat_leq(&s, &id));
        assert_eq!(s.rank(2, 2), 0);
        assert_eq!(s.rank(7, 6), 6);
        assert!(WindowPermutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn completion_examples() {
        let r = Region::new("0".parse().unwrap(), "A2x2".parse().unwrap()).unwrap();
        let zero = ZeroOneMatrix::zero(r.clone());
        let s = hat_completion(&zero, 6).unwrap();
        assert_eq!(s.images(), &[3, 4, 1, 2, 5, 6]);
        assert_eq!(s.length(), 4);
        let top = ZeroOneMatrix::new(r, [(1, 1), (2, 2)]).unwrap();
        assert_eq!(
            hat_completion(&top, 6).unwrap(),
            WindowPermutation::identity(6)
        );
    }

    #[test]
    fn type_d_completion_is_an_involution() {
        let r = Region::new("0".parse().unwrap(), "D2".parse().unwrap()).unwrap();
        let s = hat_completion(&ZeroOneMatrix::zero(r), 6).unwrap();
        assert_eq!(s.images(), &[3, 4, 1, 2, 6, 5]);
    }
}
