use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{w_inv, Cell};
use crate::combinatorics::{
    lambda_pairs, lambda_pairs_d, parent, zeta, BoxShape, Flavor, HalfInt, LambdaPair, Partition,
    Window,
};
use crate::error::{Error, Result};

/// An abelian group `Z^generators / relations`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Presentation {
    pub flavor: Flavor,
    /// `γ_α` (type A) or `γ̄_α` (type D), in increasing order of `α`.
    pub generators: Vec<HalfInt>,
    /// Exponent vectors, one per relation.
    pub relations: Vec<Vec<i64>>,
    /// Nonzero Smith invariants of the relation matrix.
    pub invariant_factors: Vec<i64>,
}

impl Pi1Presentation {
    pub fn rank(&self) -> usize {
        self.generators.len() - self.invariant_factors.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.iter().all(|&d| d == 1)
    }

    pub fn index_of(&self, g: HalfInt) -> Option<usize> {
        self.generators.iter().position(|&x| x == g)
    }

    /// Exponent vector of a word; letters outside the generating range are trivial.
    pub fn vector(&self, word: &[HalfInt]) -> Vec<i64> {
        let mut v = vec![0; self.generators.len()];
        for &g in word {
            if let Some(i) = self.index_of(g) {
                v[i] += 1;
            }
        }
        v
    }
}

/// `π₁(O_λ)`.
pub fn pi1_presentation(lam: &Partition, shape: &BoxShape) -> Result<Pi1Presentation> {
    if !shape.contains(lam) {
        return Err(Error::Domain(format!("{lam} is not in {shape}")));
    }
    let (lo, hi) = match *shape {
        BoxShape::A { k, l } => (-(k as i64), l as i64),
        BoxShape::D { k } => (-(k as i64), k as i64),
    };
    let window = Window {
        lo: HalfInt::plus_half(lo),
        hi: HalfInt::minus_half(hi),
    };
    let generators: Vec<HalfInt> = HalfInt::range(window.lo, window.hi).collect();
    let mut pres = Pi1Presentation {
        flavor: shape.flavor(),
        generators,
        relations: vec![],
        invariant_factors: vec![],
    };
    let pairs = match *shape {
        BoxShape::A { k, l } => lambda_pairs(lam, window, Some((k, l))).pairs,
        BoxShape::D { k } => {
            for g in HalfInt::range(HalfInt::plus_half(0), window.hi) {
                pres.relations.push(pres.vector(&[g, -g]));
            }
            lambda_pairs_d(lam, window, Some(k))?.pairs
        }
    };
    for p in pairs {
        let v = pres.vector(&[p.alpha, p.beta]);
        if v.iter().any(|&x| x != 0) {
            pres.relations.push(v);
        }
    }
    pres.invariant_factors = smith_invariants(pres.relations.clone());
    Ok(pres)
}

/// The class of a small loop around `O^π_λ` in `π₁(O_λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopClass {
    pub flavor: Flavor,
    pub word: Vec<HalfInt>,
}

impl fmt::Display for LoopClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if self.flavor == Flavor::D {
            "γ̄"
        } else {
            "γ"
        };
        let parts: Vec<String> = self.word.iter().map(|g| format!("{sym}_{{{g}}}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// `γ_α γ_β'` (type A) or `γ̄_α γ̄_ζ` (type D).
pub fn loop_class(lam: &Partition, shape: &BoxShape, pair: &LambdaPair) -> Result<LoopClass> {
    if !shape.box_pairs(lam)?.iter().any(|p| p.same_endpoints(pair)) {
        return Err(Error::Domain(format!(
            "{pair} is not a box pair of {lam} in {shape}"
        )));
    }
    let second = match shape.flavor() {
        Flavor::A => parent(lam, pair).beta,
        Flavor::D => zeta(lam, pair)?,
    };
    Ok(LoopClass {
        flavor: shape.flavor(),
        word: vec![pair.alpha, second],
    })
}

/// Exponent of `z` by which the torus loop `word(z)` scales the entry at `cell`
/// (a row `w_1(a)` scales by `γ_a`, a column `w_2(b)` by `γ_b^{-1}`).
pub fn loop_weight(lam: &Partition, word: &LoopClass, cell: Cell) -> Result<i64> {
    let (a, b) = w_inv(lam, cell)?;
    let unbarred = |x: HalfInt| (x == a) as i64 - (x == b) as i64;
    Ok(word
        .word
        .iter()
        .map(|&x| match word.flavor {
            Flavor::A => unbarred(x),
            Flavor::D => unbarred(x) - unbarred(-x),
        })
        .sum())
}

/// Nonzero diagonal entries of the Smith normal form.
pub fn smith_invariants(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![];
    for t in 0..rows.min(cols) {
        let smallest = |m: &Vec<Vec<i64>>| {
            (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
        };
        let Some((pi, pj)) = smallest(&m) else { break };
        m.swap(t, pi);
        m.iter_mut().for_each(|r| r.swap(t, pj));
        loop {
            let d = m[t][t];
            for i in t + 1..rows {
                let q = m[i][t] / d;
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / d;
                for r in m.iter_mut().skip(t) {
                    r[j] -= q * r[t];
                }
            }
            let rest = (t + 1..rows).find(|&i| (t..cols).any(|j| m[i][j] % d != 0));
            let cross = (t + 1..rows).any(|i| m[i][t] != 0) || (t + 1..cols).any(|j| m[t][j] != 0);
            if !cross {
                match rest {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            // a remainder is smaller than the pivot: bring it into position
            let (bi, bj) = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot is nonzero");
            m.swap(t, bi);
            m.iter_mut().for_each(|r| r.swap(t, bj));
        }
        out.push(m[t][t].abs());
    }
    out
}
