use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::matrix::{tau, transpose, w_map, Cell, Region, ZeroOneMatrix};
use super::perm::{hat_completion, WindowPermutation};
use crate::combinatorics::{apply_move, parent, BoxShape, Flavor, LambdaPair, Partition};
use crate::error::{Error, Result};

/// `O_{A'} ⊆ closure(O_A)`: corner ranks of `A'` never exceed those of `A`.
pub fn closure_leq(a_prime: &ZeroOneMatrix, a: &ZeroOneMatrix) -> bool {
    let (k, l) = (a.region.rows(), a.region.cols());
    (1..=k).all(|p| (1..=l).all(|q| a_prime.corner_rank(p, q) <= a.corner_rank(p, q)))
}

fn completion(a: &ZeroOneMatrix, reach: usize) -> Result<WindowPermutation> {
    let n = a.region.default_window().max(reach + 1);
    hat_completion(
        a,
        if a.flavor() == Flavor::D {
            n + n % 2
        } else {
            n
        },
    )
}

/// Swaps rows `i`, `r` of `Â` (type A) or conjugates by `(i r)` (type D),
/// then restricts to the region.
fn switch(
    a: &ZeroOneMatrix,
    sigma: &WindowPermutation,
    i: usize,
    r: usize,
) -> Result<ZeroOneMatrix> {
    let swap = |x: usize| {
        if x == i {
            r
        } else if x == r {
            i
        } else {
            x
        }
    };
    let cells = (1..=sigma.window()).map(|x| match a.flavor() {
        Flavor::A => (swap(x), sigma.apply(x)),
        Flavor::D => (swap(x), swap(sigma.apply(x))),
    });
    let kept: Vec<Cell> = cells.filter(|&c| a.region.contains(c)).collect();
    ZeroOneMatrix::from_full(a.region.clone(), kept)
}

/// The degeneration at support point `(i, j)` toward `(r, s) ∈ supp Â`,
/// including the type D pre-swap when `j < r < s`.
fn degenerate_at(
    a: &ZeroOneMatrix,
    sigma: &WindowPermutation,
    ij: Cell,
    rs: Cell,
) -> Result<ZeroOneMatrix> {
    let (_, j) = ij;
    let (mut r, s) = rs;
    if a.flavor() == Flavor::D && j < r && r < s {
        r = s;
    }
    switch(a, sigma, ij.0, r)
}

/// The 0-1 matrices of the orbits of codimension one in `closure(O_A)`.
pub fn codim_one_degenerations(a: &ZeroOneMatrix) -> Result<Vec<ZeroOneMatrix>> {
    let sigma = completion(a, 0)?;
    let hat = sigma.cells();
    let mut out = BTreeSet::new();
    for &(i, j) in &a.support {
        let above: BTreeSet<Cell> = hat
            .iter()
            .copied()
            .filter(|&(r, s)| r > i && s > j)
            .collect();
        for rs in super::matrix::minimal_cells(&above) {
            out.insert(degenerate_at(a, &sigma, (i, j), rs)?.support);
        }
    }
    out.into_iter()
        .map(|s| ZeroOneMatrix::new(a.region.clone(), s))
        .collect()
}

/// `A_λ`, the representative of the open orbit.
pub fn top_matrix(lam: &Partition, shape: &BoxShape) -> Result<ZeroOneMatrix> {
    let region = Region::new(lam.clone(), *shape)?;
    let cells = shape
        .box_pairs(lam)?
        .iter()
        .map(|p| w_map(lam, p.alpha, p.beta))
        .collect::<Result<Vec<_>>>()?;
    ZeroOneMatrix::new(region, cells)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimOneOrbit {
    pub pair: LambdaPair,
    pub matrix: ZeroOneMatrix,
    /// Support of the elementary matrix representing the dual orbit.
    pub dual: Cell,
    pub target: Partition,
}

/// `A^π_λ` for one box pair.
pub fn codim_one_matrix(
    lam: &Partition,
    shape: &BoxShape,
    pair: &LambdaPair,
) -> Result<ZeroOneMatrix> {
    let top = top_matrix(lam, shape)?;
    let par = parent(lam, pair);
    let ij = w_map(lam, pair.alpha, pair.beta)?;
    let rs = w_map(lam, par.alpha, par.beta)?;
    let sigma = completion(&top, rs.0.max(rs.1))?;
    if sigma.apply(rs.0) != rs.1 {
        return Err(Error::Invariant(format!(
            "w of the parent of {pair} is not in the completion"
        )));
    }
    degenerate_at(&top, &sigma, ij, rs)
}

/// One codimension-one orbit per box pair, with its dual cell and arrow target.
pub fn codim_one_orbits(lam: &Partition, shape: &BoxShape) -> Result<Vec<CodimOneOrbit>> {
    shape
        .box_pairs(lam)?
        .into_iter()
        .map(|pair| {
            Ok(CodimOneOrbit {
                pair,
                matrix: codim_one_matrix(lam, shape, &pair)?,
                dual: w_map(lam, pair.alpha, pair.beta)?,
                target: apply_move(lam, &pair)?,
            })
        })
        .collect()
}

/// Orbits of each dimension reachable from the top by iterated degeneration.
pub fn orbits_by_codim(
    lam: &Partition,
    shape: &BoxShape,
    max_codim: usize,
) -> Result<Vec<Vec<ZeroOneMatrix>>> {
    let mut layers = vec![vec![top_matrix(lam, shape)?]];
    for _ in 0..max_codim {
        let mut next = BTreeMap::new();
        for a in layers.last().expect("nonempty") {
            for d in codim_one_degenerations(a)? {
                next.insert(d.support.clone(), d);
            }
        }
        layers.push(next.into_values().collect());
    }
    Ok(layers)
}

/// Region cells missing from `τ(A)`.
pub fn tau_complement(a: &ZeroOneMatrix) -> BTreeSet<Cell> {
    let t = tau(a);
    a.region
        .cells()
        .into_iter()
        .filter(|c| !t.contains(c))
        .collect()
}

/// Upper-triangle representatives of a transpose-closed cell set.
pub fn upper(cells: &BTreeSet<Cell>, flavor: Flavor) -> Vec<Cell> {
    cells
        .iter()
        .copied()
        .filter(|c| flavor == Flavor::A || c.0 < c.1 || !cells.contains(&transpose(*c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::matrix::orbit_dim;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn b(s: &str) -> BoxShape {
        s.parse().unwrap()
    }

    #[test]
    fn top_examples() {
        let top = top_matrix(&Partition::empty(), &b("A2x2")).unwrap();
        assert_eq!(top.support, [(1, 1), (2, 2)].into());
        assert_eq!(orbit_dim(&top).unwrap(), 4);
        let d = top_matrix(&p("2,2"), &b("D3")).unwrap();
        assert_eq!(d.support.len(), 1);
        assert_eq!(tau(&d).len(), d.region.cells().len());
    }

    #[test]
    fn degeneration_examples() {
        let top = top_matrix(&Partition::empty(), &b("A2x2")).unwrap();
        let got: Vec<_> = codim_one_degenerations(&top)
            .unwrap()
            .into_iter()
            .map(|m| m.support)
            .collect();
        assert_eq!(got, vec![[(1, 1)].into(), [(1, 2), (2, 1)].into()]);
        let zero = ZeroOneMatrix::zero(top.region.clone());
        assert!(codim_one_degenerations(&zero).unwrap().is_empty());
    }

    #[test]
    fn type_d_pre_swap() {
        let top = top_matrix(&Partition::empty(), &b("D4")).unwrap();
        assert_eq!(top.support, [(1, 2), (3, 4)].into());
        let got = codim_one_degenerations(&top).unwrap();
        let hit = got
            .iter()
            .find(|m| m.support == [(1, 3), (2, 4)].into())
            .expect("swapped move");
        assert_eq!(orbit_dim(hit).unwrap(), 5);
    }

    #[test]
    fn codim_one_examples() {
        let got = codim_one_orbits(&Partition::empty(), &b("A2x2")).unwrap();
        let inner = got.iter().find(|o| o.pair.alpha.twice() == -1).unwrap();
        assert_eq!(inner.matrix.support, [(1, 2), (2, 1)].into());
        assert_eq!(inner.dual, (1, 1));
        assert_eq!(inner.target, p("1"));
        let outer = got.iter().find(|o| o.pair.alpha.twice() == -3).unwrap();
        assert_eq!(outer.matrix.support, [(1, 1)].into());
        assert_eq!(outer.dual, (2, 2));
        assert_eq!(outer.target, p("2,1"));
    }

    #[test]
    fn closure_examples() {
        let r = Region::new(Partition::empty(), b("A2x2")).unwrap();
        let m = |c: &[Cell]| ZeroOneMatrix::new(r.clone(), c.iter().copied()).unwrap();
        assert!(closure_leq(&m(&[]), &m(&[(1, 2)])));
        assert!(closure_leq(&m(&[(1, 1)]), &m(&[(1, 1), (2, 2)])));
        assert!(!closure_leq(&m(&[(1, 1)]), &m(&[(1, 2), (2, 1)])));
    }
}
