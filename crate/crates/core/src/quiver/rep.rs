use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::qmatrix::QMatrix;
use crate::combinatorics::{adjacent, BoxShape, Flavor, HalfInt, Partition};
use crate::error::{Error, Result};

/// Vector spaces `V_λ` with maps `t_α` and `p(λ, λ')`.
///
/// Missing `t` entries are identities (in type D a stored `t_α` also fixes
/// `t_{-α} = t_α^{-1}`); missing `p` entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RepWire", try_from = "RepWire")]
pub struct QuiverRep {
    pub shape: BoxShape,
    pub dims: BTreeMap<Partition, usize>,
    pub t: BTreeMap<(HalfInt, Partition), QMatrix>,
    /// `p(λ, λ') : V_λ' → V_λ`, keyed by `(λ, λ')`.
    pub p: BTreeMap<(Partition, Partition), QMatrix>,
}

impl QuiverRep {
    pub fn zero(shape: BoxShape) -> Self {
        QuiverRep {
            shape,
            dims: BTreeMap::new(),
            t: BTreeMap::new(),
            p: BTreeMap::new(),
        }
    }

    pub fn dim(&self, lam: &Partition) -> usize {
        self.dims.get(lam).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn t(&self, alpha: HalfInt, lam: &Partition) -> Result<QMatrix> {
        if let Some(m) = self.t.get(&(alpha, lam.clone())) {
            return Ok(m.clone());
        }
        if self.shape.flavor() == Flavor::D {
            if let Some(m) = self.t.get(&(-alpha, lam.clone())) {
                return m.inverse().ok_or_else(|| {
                    Error::Dimension(format!("t_{} on V_{lam} is singular", -alpha))
                });
            }
        }
        Ok(QMatrix::identity(self.dim(lam)))
    }

    pub fn p(&self, lam: &Partition, lam2: &Partition) -> QMatrix {
        self.p
            .get(&(lam.clone(), lam2.clone()))
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(lam), self.dim(lam2)))
    }

    /// `μ(λ, λ') = 1 + p(λ, λ') p(λ', λ)` on `V_λ`.
    pub fn mu(&self, lam: &Partition, lam2: &Partition) -> Result<QMatrix> {
        if !adjacent(lam, lam2, self.shape.flavor()) {
            return Err(Error::Domain(format!("{lam} and {lam2} are not adjacent")));
        }
        let pq = self.p(lam, lam2).try_mul(&self.p(lam2, lam))?;
        QMatrix::identity(self.dim(lam)).try_add(&pq)
    }

    /// Shapes of all stored maps agree with `dims`, and every key lies in the box.
    pub fn validate(&self) -> Result<()> {
        let flavor = self.shape.flavor();
        for lam in self.dims.keys() {
            if !self.shape.contains(lam) {
                return Err(Error::Dimension(format!("{lam} is not in {}", self.shape)));
            }
        }
        for ((a, lam), m) in &self.t {
            let d = self.dim(lam);
            if (m.rows(), m.cols()) != (d, d) {
                return Err(Error::Dimension(format!(
                    "t_{a} on V_{lam} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for ((a, b), m) in &self.p {
            if !adjacent(a, b, flavor) {
                return Err(Error::Dimension(format!(
                    "p({a}, {b}) between non-adjacent nodes"
                )));
            }
            let (r, c) = (self.dim(a), self.dim(b));
            if (m.rows(), m.cols()) != (r, c) {
                return Err(Error::Dimension(format!(
                    "p({a}, {b}) is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TEntry {
    alpha: String,
    lambda: String,
    matrix: QMatrix,
}

#[derive(Serialize, Deserialize)]
struct PEntry {
    lambda: String,
    lambda_prime: String,
    matrix: QMatrix,
}

#[derive(Serialize, Deserialize)]
struct RepWire {
    #[serde(rename = "box")]
    shape: String,
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    t: Vec<TEntry>,
    #[serde(default)]
    p: Vec<PEntry>,
}

impl From<QuiverRep> for RepWire {
    fn from(r: QuiverRep) -> RepWire {
        RepWire {
            shape: r.shape.to_string(),
            dims: r.dims.iter().map(|(l, d)| (l.literal(), *d)).collect(),
            t: r.t
                .into_iter()
                .map(|((a, l), matrix)| TEntry {
                    alpha: a.to_string(),
                    lambda: l.literal(),
                    matrix,
                })
                .collect(),
            p: r.p
                .into_iter()
                .map(|((a, b), matrix)| PEntry {
                    lambda: a.literal(),
                    lambda_prime: b.literal(),
                    matrix,
                })
                .collect(),
        }
    }
}

impl TryFrom<RepWire> for QuiverRep {
    type Error = Error;
    fn try_from(w: RepWire) -> Result<QuiverRep> {
        let mut rep = QuiverRep::zero(w.shape.parse()?);
        for (l, d) in w.dims {
            rep.dims.insert(l.parse()?, d);
        }
        for e in w.t {
            let a: HalfInt = e.alpha.parse().map_err(Error::Domain)?;
            rep.t.insert((a, e.lambda.parse()?), e.matrix);
        }
        for e in w.p {
            rep.p
                .insert((e.lambda.parse()?, e.lambda_prime.parse()?), e.matrix);
        }
        rep.validate()?;
        Ok(rep)
    }
}

/// The one-dimensional representation concentrated at `μ`.
pub fn simple_rep(mu: &Partition, shape: &BoxShape) -> Result<QuiverRep> {
    if !shape.contains(mu) {
        return Err(Error::Domain(format!("{mu} is not in {shape}")));
    }
    let mut rep = QuiverRep::zero(*shape);
    rep.dims.insert(mu.clone(), 1);
    Ok(rep)
}

pub fn enumerate_simples(shape: &BoxShape) -> Vec<QuiverRep> {
    shape
        .enumerate()
        .iter()
        .map(|m| simple_rep(m, shape).expect("in box"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simples() {
        assert_eq!(enumerate_simples(&"A2x2".parse().unwrap()).len(), 6);
        assert_eq!(enumerate_simples(&"D3".parse().unwrap()).len(), 4);
        assert!(simple_rep(&"3".parse().unwrap(), &"A2x2".parse().unwrap()).is_err());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let mut rep = QuiverRep::zero("A1x1".parse().unwrap());
        let (e, one): (Partition, Partition) = ("0".parse().unwrap(), "1".parse().unwrap());
        rep.dims.insert(e.clone(), 1);
        rep.dims.insert(one.clone(), 1);
        rep.p.insert(
            (e.clone(), one.clone()),
            QMatrix::from_ints(1, 1, &[1]).unwrap(),
        );
        let s = serde_json::to_string(&rep).unwrap();
        assert_eq!(serde_json::from_str::<QuiverRep>(&s).unwrap(), rep);
        rep.p
            .insert((one, e), QMatrix::from_ints(1, 2, &[1, 0]).unwrap());
        assert!(matches!(rep.validate(), Err(Error::Dimension(_))));
    }
}
