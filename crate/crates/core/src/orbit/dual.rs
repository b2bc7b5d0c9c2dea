use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{enumerate_matrices, w_inv, Region, ZeroOneMatrix};
use crate::combinatorics::{partition_from_phi, Flavor, HalfInt, Partition, PhiProfile};
use crate::error::{Error, Result};

/// Flips `φ_λ` at `w^{-1}` of every stored support cell (and at the negatives in type D).
pub fn slice_by_flips(a: &ZeroOneMatrix) -> Result<Partition> {
    let lam = &a.region.lambda;
    let mut at = vec![];
    for &c in &a.support {
        let (alpha, beta) = w_inv(lam, c)?;
        at.extend([alpha, beta]);
        if a.flavor() == Flavor::D {
            at.extend([-alpha, -beta]);
        }
    }
    lam.flip(&at)
}

/// For `A` read in the dual fiber: the `λ'` whose slice `ε^{-1}(X_λ')` has
/// `O_A` as its open orbit, or `None` when the openness test fails.
pub fn is_open_in_slice(a: &ZeroOneMatrix) -> Result<Option<Partition>> {
    let full = a.full_support();
    let d = a.flavor() == Flavor::D;
    for &(i, j) in &full {
        for &(r, s) in &full {
            if i < r && j > s && !(d && i == s) && !a.region.in_delta((i, s)) {
                return Ok(None);
            }
        }
    }
    slice_by_flips(a).map(Some)
}

/// Schubert cell of the graph of `A` (type A), computed from the subspace
/// itself: the basis vector of row `x` is `e_{I[x]} + Σ_y A_xy e_{I'[y]}`,
/// with `I` the `-1` positions of `φ_λ` in decreasing order and `I'` the `+1`
/// positions in increasing order; the pivots of a reduced basis give `φ_λ'`.
pub fn slice_by_graph(a: &ZeroOneMatrix) -> Result<Partition> {
    if a.flavor() != Flavor::A {
        return Err(Error::Domain(
            "the graph oracle is implemented for type A only".into(),
        ));
    }
    let lam = &a.region.lambda;
    let (k, l) = (a.region.rows(), a.region.cols());
    let n = k + l;
    let pos = |i: usize| HalfInt::from_twice(2 * i as i64 - 2 * k as i64 - 1).expect("odd");
    let downs: Vec<usize> = (1..=n).rev().filter(|&i| lam.phi(pos(i)) == -1).collect();
    let ups: Vec<usize> = (1..=n).filter(|&i| lam.phi(pos(i)) == 1).collect();
    let mut rows: Vec<Vec<BigRational>> = (0..k)
        .map(|x| {
            let mut v = vec![BigRational::zero(); n + 1];
            v[downs[x]] = BigRational::one();
            for y in 0..l {
                if a.support.contains(&(x + 1, y + 1)) {
                    v[ups[y]] += BigRational::one();
                }
            }
            v
        })
        .collect();
    let mut pivots = vec![];
    for col in (1..=n).rev() {
        let Some(p) = rows
            .iter()
            .position(|r| !r[col].is_zero() && r[col + 1..].iter().all(Zero::is_zero))
        else {
            continue;
        };
        let pivot = rows.swap_remove(p);
        for r in rows.iter_mut() {
            if !r[col].is_zero() {
                let f = &r[col] / &pivot[col];
                for c in 1..=col {
                    let delta = &f * &pivot[c];
                    r[c] -= delta;
                }
            }
        }
        pivots.push(col);
    }
    if pivots.len() != k {
        return Err(Error::Invariant("graph basis lost rank".into()));
    }
    let values = (1..=n)
        .map(|i| if pivots.contains(&i) { -1 } else { 1 })
        .collect();
    partition_from_phi(&PhiProfile { lo: pos(1), values })
}

/// The orbits of `M*_λ` grouped by the slice `ε^{-1}(X_λ')` containing them.
pub fn dual_slices(region: &Region) -> Result<BTreeMap<Partition, Vec<ZeroOneMatrix>>> {
    let mut out: BTreeMap<Partition, Vec<ZeroOneMatrix>> = BTreeMap::new();
    for a in enumerate_matrices(region) {
        out.entry(slice_by_graph(&a)?).or_default().push(a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_slices() {
        let r = Region::new(Partition::empty(), "A2x2".parse().unwrap()).unwrap();
        let all = enumerate_matrices(&r);
        assert_eq!(all.len(), 7);
        let mut open = vec![];
        for a in &all {
            let geo = slice_by_graph(a).unwrap();
            if let Some(lam) = is_open_in_slice(a).unwrap() {
                assert_eq!(lam, geo);
                open.push(lam.literal());
            } else {
                assert_eq!(a.support, [(1, 2), (2, 1)].into());
                assert_eq!(geo.literal(), "2,2");
            }
        }
        open.sort();
        assert_eq!(open, ["0", "1", "1,1", "2", "2,1", "2,2"]);
        let sizes: Vec<(String, usize)> = dual_slices(&r)
            .unwrap()
            .iter()
            .map(|(l, v)| (l.literal(), v.len()))
            .collect();
        assert_eq!(sizes.iter().filter(|x| x.1 == 2).count(), 1);
        assert_eq!(sizes.iter().find(|x| x.1 == 2).unwrap().0, "2,2");
    }
}
