use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::{w_inv, Cell, ZeroOneMatrix};
use super::strata::{closure_leq, codim_one_orbits, orbits_by_codim, tau_complement, upper};
use crate::combinatorics::{
    apply_move, complete_diamond, is_pair, parent, BoxShape, Diamond, Flavor, HalfInt, LambdaPair,
    Partition,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitLabel {
    Top,
    CodimOne(LambdaPair),
    /// `O^{π1π2}`: `π1`, `π2` not parent and child.
    Siblings(LambdaPair, LambdaPair),
    /// `O^{π,l}`: the two missing cells share a column.
    Left(LambdaPair),
    /// `O^{π,r}`: the two missing cells share a row.
    Right(LambdaPair),
    /// `O^{π,p}` (type D).
    Parent(LambdaPair),
    /// `O^{π,c}` (type D): a single covering orbit and no diamond.
    Child(LambdaPair),
}

impl std::fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitLabel::Top => write!(f, "top"),
            OrbitLabel::CodimOne(p) => write!(f, "O^{p}"),
            OrbitLabel::Siblings(p, q) => write!(f, "O^{p}{q}"),
            OrbitLabel::Left(p) => write!(f, "O^{p},l"),
            OrbitLabel::Right(p) => write!(f, "O^{p},r"),
            OrbitLabel::Parent(p) => write!(f, "O^{p},p"),
            OrbitLabel::Child(p) => write!(f, "O^{p},c"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimTwoOrbit {
    pub label: OrbitLabel,
    pub matrix: ZeroOneMatrix,
    /// Upper-triangle cells of the dual 0-1 matrix.
    pub dual: Vec<Cell>,
    /// `λ'` of the dual slice; the far corner of the diamond, or the end of the chain for `Child`.
    pub target: Partition,
    pub covers: Vec<LambdaPair>,
    pub diamond: Option<Diamond>,
}

fn flip_cells(lam: &Partition, cells: &[Cell], flavor: Flavor) -> Result<Partition> {
    let mut at: Vec<HalfInt> = vec![];
    for &c in cells {
        let (a, b) = w_inv(lam, c)?;
        at.extend([a, b]);
        if flavor == Flavor::D {
            at.extend([-a, -b]);
        }
    }
    lam.flip(&at)
}

fn is_parent_of(lam: &Partition, p: &LambdaPair, child: &LambdaPair) -> bool {
    parent(lam, child).same_endpoints(p)
}

/// Every codimension-two orbit of `M_λ`, labelled, with its covering
/// codimension-one orbits and diamond.
pub fn codim_two_orbits(lam: &Partition, shape: &BoxShape) -> Result<Vec<CodimTwoOrbit>> {
    let flavor = shape.flavor();
    let ones = codim_one_orbits(lam, shape)?;
    let by_cell: BTreeMap<Cell, LambdaPair> = ones.iter().map(|o| (o.dual, o.pair)).collect();
    let mut layers = orbits_by_codim(lam, shape, 2)?;
    let mut out = vec![];
    for a in layers.pop().expect("three layers") {
        let s = upper(&tau_complement(&a), flavor);
        let [c1, c2] = s[..] else {
            return Err(Error::Invariant(format!(
                "{:?} misses {} cells",
                a.support,
                s.len()
            )));
        };
        let covers: Vec<LambdaPair> = ones
            .iter()
            .filter(|o| closure_leq(&a, &o.matrix))
            .map(|o| o.pair)
            .collect();
        let entry = match (by_cell.get(&c1), by_cell.get(&c2)) {
            (Some(&p1), Some(&p2))
                if !is_parent_of(lam, &p1, &p2) && !is_parent_of(lam, &p2, &p1) =>
            {
                let target = flip_cells(lam, &[c1, c2], flavor)?;
                let nodes = [
                    lam.clone(),
                    apply_move(lam, &p1)?,
                    target.clone(),
                    apply_move(lam, &p2)?,
                ];
                CodimTwoOrbit {
                    label: OrbitLabel::Siblings(p1, p2),
                    matrix: a,
                    dual: vec![c1, c2],
                    target,
                    covers,
                    diamond: Diamond::new(nodes, flavor),
                }
            }
            (p1, p2) => {
                let (pi, other) = match (p1, p2) {
                    (Some(&p), None) => (p, c2),
                    (None, Some(&p)) => (p, c1),
                    (Some(&p), Some(&q)) if is_parent_of(lam, &p, &q) => (q, c1),
                    (Some(&p), Some(_)) => (p, c2),
                    (None, None) => {
                        return Err(Error::Invariant(format!(
                            "{:?}: no box pair among {s:?}",
                            a.support
                        )))
                    }
                };
                let lam1 = apply_move(lam, &pi)?;
                let target = flip_cells(lam, &[other], flavor)?;
                let far = complete_diamond(&lam1, lam, &target, flavor)?;
                let diamond = match &far[..] {
                    [x] => Diamond::new([lam.clone(), lam1, target.clone(), x.clone()], flavor),
                    _ => None,
                };
                let par = parent(lam, &pi);
                let label = if flavor == Flavor::D && far.is_empty() && covers.len() == 1 {
                    OrbitLabel::Child(pi)
                } else if flavor == Flavor::D && !is_pair(lam, par.alpha, par.beta) {
                    OrbitLabel::Parent(pi)
                } else if c1.1 == c2.1 {
                    OrbitLabel::Left(pi)
                } else if c1.0 == c2.0 {
                    OrbitLabel::Right(pi)
                } else {
                    return Err(Error::Invariant(format!(
                        "{:?}: unclassified cells {s:?}",
                        a.support
                    )));
                };
                CodimTwoOrbit {
                    label,
                    matrix: a,
                    dual: vec![other],
                    target,
                    covers,
                    diamond,
                }
            }
        };
        out.push(entry);
    }
    Ok(out)
}
