use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{BoxShape, Flavor, HalfInt, Partition};
use crate::error::{Error, Result};

/// A grid point `(row, column)`, 1-based.
pub type Cell = (usize, usize);

pub fn transpose(c: Cell) -> Cell {
    (c.1, c.0)
}

/// `(i, j) ≤ (i', j')` in the product order.
pub fn cell_le(a: Cell, b: Cell) -> bool {
    a.0 <= b.0 && a.1 <= b.1
}

/// `R_λ`: the rectangle (or the off-diagonal square in type D) minus `Δ(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub lambda: Partition,
    pub shape: BoxShape,
}

impl Region {
    pub fn new(lambda: Partition, shape: BoxShape) -> Result<Region> {
        if !shape.contains(&lambda) {
            return Err(Error::Domain(format!("{lambda} is not in box {shape}")));
        }
        Ok(Region { lambda, shape })
    }

    pub fn flavor(&self) -> Flavor {
        self.shape.flavor()
    }

    pub fn rows(&self) -> usize {
        self.shape.rows() as usize
    }

    pub fn cols(&self) -> usize {
        self.shape.cols() as usize
    }

    pub fn in_delta(&self, c: Cell) -> bool {
        self.lambda.has_cell(c.0, c.1)
    }

    pub fn contains(&self, c: Cell) -> bool {
        let in_grid = (1..=self.rows()).contains(&c.0) && (1..=self.cols()).contains(&c.1);
        in_grid && !self.in_delta(c) && (self.flavor() == Flavor::A || c.0 != c.1)
    }

    /// All cells, transpose-closed in type D.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = vec![];
        for i in 1..=self.rows() {
            for j in 1..=self.cols() {
                if self.contains((i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cells that can carry a stored support point (`i < j` in type D).
    pub fn storage_cells(&self) -> Vec<Cell> {
        let mut cells = self.cells();
        if self.flavor() == Flavor::D {
            cells.retain(|c| c.0 < c.1);
        }
        cells
    }

    /// Size of the completion window for `Â`.
    pub fn default_window(&self) -> usize {
        match self.shape {
            BoxShape::A { k, l } => (k + l + 2) as usize,
            BoxShape::D { k } => (2 * k + 2) as usize,
        }
    }
}

/// Orbit representative; in type D only the cells above the diagonal are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZeroOneMatrix {
    pub region: Region,
    pub support: BTreeSet<Cell>,
}

impl ZeroOneMatrix {
    pub fn new(region: Region, support: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let support: BTreeSet<Cell> = support.into_iter().collect();
        let m = ZeroOneMatrix { region, support };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(region: Region) -> Self {
        ZeroOneMatrix {
            region,
            support: BTreeSet::new(),
        }
    }

    /// Builds from a full (transpose-closed in type D) support set.
    pub fn from_full(region: Region, full: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let full: BTreeSet<Cell> = full.into_iter().collect();
        if region.flavor() == Flavor::D {
            if full.iter().any(|&c| !full.contains(&transpose(c))) {
                return Err(Error::Invariant("support is not transpose-closed".into()));
            }
            return ZeroOneMatrix::new(region, full.into_iter().filter(|c| c.0 < c.1));
        }
        ZeroOneMatrix::new(region, full)
    }

    fn validate(&self) -> Result<()> {
        for &c in &self.support {
            if !self.region.contains(c) {
                return Err(Error::Domain(format!("{c:?} lies outside the region")));
            }
            if self.region.flavor() == Flavor::D && c.0 > c.1 {
                return Err(Error::Domain(format!("{c:?} is below the diagonal")));
            }
        }
        let full = self.full_support();
        let rows: BTreeSet<usize> = full.iter().map(|c| c.0).collect();
        let cols: BTreeSet<usize> = full.iter().map(|c| c.1).collect();
        if rows.len() != full.len() || cols.len() != full.len() {
            return Err(Error::Domain(
                "two support points share a row or column".into(),
            ));
        }
        Ok(())
    }

    pub fn flavor(&self) -> Flavor {
        self.region.flavor()
    }

    /// Support including the transposed `-1` entries in type D.
    pub fn full_support(&self) -> BTreeSet<Cell> {
        let mut out = self.support.clone();
        if self.flavor() == Flavor::D {
            out.extend(self.support.iter().map(|&c| transpose(c)));
        }
        out
    }

    /// `rank A_ρ` for the corner rectangle `[1, p] × [1, q]`.
    pub fn corner_rank(&self, p: usize, q: usize) -> usize {
        self.full_support()
            .iter()
            .filter(|c| c.0 <= p && c.1 <= q)
            .count()
    }
}

/// `(w_1(α), w_2(β))`.
pub fn w_map(lam: &Partition, alpha: HalfInt, beta: HalfInt) -> Result<Cell> {
    if lam.phi(alpha) != -1 {
        return Err(Error::WrongSign(alpha));
    }
    if lam.phi(beta) != 1 {
        return Err(Error::WrongSign(beta));
    }
    let r = lam.support_radius();
    let top = HalfInt::plus_half(r).max(alpha);
    let bottom = HalfInt::minus_half(-r).min(beta);
    let w1 = HalfInt::range(alpha, top)
        .filter(|&g| lam.phi(g) == -1)
        .count();
    let w2 = HalfInt::range(bottom, beta)
        .filter(|&g| lam.phi(g) == 1)
        .count();
    Ok((w1, w2))
}

/// `w^{-1}(i, j)`: the `i`-th largest `-1` and the `j`-th smallest `+1` of `φ_λ`.
pub fn w_inv(lam: &Partition, c: Cell) -> Result<(HalfInt, HalfInt)> {
    if c.0 == 0 || c.1 == 0 {
        return Err(Error::Domain(format!("{c:?} is not a 1-based cell")));
    }
    let r = lam.support_radius();
    let mut g = HalfInt::plus_half(r);
    let mut seen = 0;
    let alpha = loop {
        if lam.phi(g) == -1 {
            seen += 1;
            if seen == c.0 {
                break g;
            }
        }
        g = g.pred();
    };
    let mut g = HalfInt::minus_half(-r);
    let mut seen = 0;
    let beta = loop {
        if lam.phi(g) == 1 {
            seen += 1;
            if seen == c.1 {
                break g;
            }
        }
        g = g.succ();
    };
    Ok((alpha, beta))
}

/// `τ(A)`: region cells with a support point weakly above in the same column
/// or weakly left in the same row. Transpose-closed in type D.
pub fn tau(a: &ZeroOneMatrix) -> BTreeSet<Cell> {
    let full = a.full_support();
    a.region
        .cells()
        .into_iter()
        .filter(|&(i, j)| {
            full.iter()
                .any(|&(r, s)| (r == i && s <= j) || (s == j && r <= i))
        })
        .collect()
}

/// `dim O_A`: `#τ(A)`, halved in type D.
pub fn orbit_dim(a: &ZeroOneMatrix) -> Result<usize> {
    let n = tau(a).len();
    match a.flavor() {
        Flavor::A => Ok(n),
        Flavor::D if n.is_multiple_of(2) => Ok(n / 2),
        Flavor::D => Err(Error::Invariant(format!(
            "odd tau-set of size {n} in type D"
        ))),
    }
}

/// The minimal elements of a cell set under the product order.
pub fn minimal_cells(s: &BTreeSet<Cell>) -> Vec<Cell> {
    s.iter()
        .copied()
        .filter(|&c| !s.iter().any(|&d| d != c && cell_le(d, c)))
        .collect()
}

/// Greedy reconstruction: pick a minimal cell, record it, drop its row and
/// column, repeat. `choose` selects among the current minimal cells.
pub fn greedy_support(
    s: &BTreeSet<Cell>,
    mut choose: impl FnMut(&[Cell]) -> Cell,
) -> BTreeSet<Cell> {
    let mut rest = s.clone();
    let mut out = BTreeSet::new();
    while !rest.is_empty() {
        let mins = minimal_cells(&rest);
        let c = choose(&mins);
        debug_assert!(mins.contains(&c));
        out.insert(c);
        rest.retain(|d| d.0 != c.0 && d.1 != c.1);
    }
    out
}

/// Smallest row, then smallest column.
pub fn lex_first(mins: &[Cell]) -> Cell {
    *mins.iter().min().expect("nonempty")
}

/// Recovers `A` from `τ(A)` (the full, transpose-closed set in type D).
pub fn matrix_from_tau(s: &BTreeSet<Cell>, region: &Region) -> Result<ZeroOneMatrix> {
    matrix_from_tau_with(s, region, lex_first)
}

pub fn matrix_from_tau_with(
    s: &BTreeSet<Cell>,
    region: &Region,
    choose: impl FnMut(&[Cell]) -> Cell,
) -> Result<ZeroOneMatrix> {
    if s.iter().any(|&c| !region.contains(c)) {
        return Err(Error::ReconstructionMismatch);
    }
    let full = greedy_support(s, choose);
    let a = ZeroOneMatrix::from_full(region.clone(), full)
        .map_err(|_| Error::ReconstructionMismatch)?;
    if &tau(&a) != s {
        return Err(Error::ReconstructionMismatch);
    }
    Ok(a)
}

/// Every 0-1 matrix on the region: partial injections (type A) or matchings
/// on `{1..k}` through region cells (type D).
pub fn enumerate_matrices(region: &Region) -> Vec<ZeroOneMatrix> {
    let cells = region.storage_cells();
    let mut out = vec![];
    let mut chosen: Vec<Cell> = vec![];
    fn rec(
        idx: usize,
        cells: &[Cell],
        chosen: &mut Vec<Cell>,
        flavor: Flavor,
        region: &Region,
        out: &mut Vec<ZeroOneMatrix>,
    ) {
        if idx == cells.len() {
            out.push(ZeroOneMatrix {
                region: region.clone(),
                support: chosen.iter().copied().collect(),
            });
            return;
        }
        rec(idx + 1, cells, chosen, flavor, region, out);
        let c = cells[idx];
        let clash = chosen.iter().any(|&d| match flavor {
            Flavor::A => d.0 == c.0 || d.1 == c.1,
            Flavor::D => [d.0, d.1].iter().any(|x| *x == c.0 || *x == c.1),
        });
        if !clash {
            chosen.push(c);
            rec(idx + 1, cells, chosen, flavor, region, out);
            chosen.pop();
        }
    }
    rec(0, &cells, &mut chosen, region.flavor(), region, &mut out);
    out.sort_by(|a, b| a.support.cmp(&b.support));
    out
}
