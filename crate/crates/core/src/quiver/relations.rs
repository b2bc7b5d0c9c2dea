use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::BoxGraph;
use super::qmatrix::QMatrix;
use super::rep::QuiverRep;
use crate::combinatorics::{lambda_pairs, lambda_pairs_d, BoxShape, Flavor, HalfInt, Window};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationId {
    R1,
    R2,
    R3,
    R4a,
    R4b,
    R2s,
    R3s,
    R4sA,
    R4sB,
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationId::R1 => "R1",
            RelationId::R2 => "R2",
            RelationId::R3 => "R3",
            RelationId::R4a => "R4a",
            RelationId::R4b => "R4b",
            RelationId::R2s => "R2s",
            RelationId::R3s => "R3s",
            RelationId::R4sA => "R4s-a",
            RelationId::R4sB => "R4s-b",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub id: RelationId,
    pub instance: String,
    /// Left side minus right side.
    pub residual: QMatrix,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    /// Instances checked per relation.
    pub checked: BTreeMap<RelationId, usize>,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, id: RelationId) -> bool {
        self.failures.iter().any(|f| f.id == id)
    }

    fn record(
        &mut self,
        id: RelationId,
        instance: impl FnOnce() -> String,
        lhs: &QMatrix,
        rhs: &QMatrix,
    ) -> Result<()> {
        *self.checked.entry(id).or_insert(0) += 1;
        let residual = lhs.try_sub(rhs)?;
        if !residual.is_zero() {
            self.failures.push(RelationFailure {
                id,
                instance: instance(),
                residual,
            });
        }
        Ok(())
    }
}

/// Checks every instance of relations 1–4 (type A) or 1, 2s–4s (type D) over the box.
/// Shape errors are returned as `Err`; relation failures land in the report.
pub fn check_relations(rep: &QuiverRep) -> Result<RelationReport> {
    rep.validate()?;
    let g = BoxGraph::new(rep.shape)?;
    check_relations_in(rep, &g)
}

pub fn check_relations_in(rep: &QuiverRep, g: &BoxGraph) -> Result<RelationReport> {
    rep.validate()?;
    let d = g.flavor() == Flavor::D;
    let id = |a: RelationId, s: RelationId| if d { s } else { a };
    let mut report = RelationReport::default();
    let nodes = &g.nodes;
    let active = g.active_range();
    let mut t: BTreeMap<(HalfInt, usize), QMatrix> = BTreeMap::new();
    for (i, lam) in nodes.iter().enumerate() {
        for &a in &active {
            t.insert((a, i), rep.t(a, lam)?);
        }
    }
    let tt = |a: HalfInt, i: usize| -> Result<QMatrix> {
        match t.get(&(a, i)) {
            Some(m) => Ok(m.clone()),
            None => rep.t(a, &nodes[i]),
        }
    };

    // (1)
    for (i, lam) in nodes.iter().enumerate() {
        if rep.dim(lam) == 0 {
            continue;
        }
        for (x, &a) in active.iter().enumerate() {
            for &b in &active[x + 1..] {
                let (ta, tb) = (&t[&(a, i)], &t[&(b, i)]);
                report.record(
                    RelationId::R1,
                    || format!("t_{a} t_{b} = t_{b} t_{a} on V_{lam}"),
                    &(ta * tb),
                    &(tb * ta),
                )?;
            }
        }
    }
    for (i, j) in g.edges() {
        let p = rep.p(&nodes[i], &nodes[j]);
        if p.is_zero() {
            continue;
        }
        for &a in &active {
            report.record(
                RelationId::R1,
                || {
                    format!(
                        "t_{a} p({}, {}) = p({}, {}) t_{a}",
                        nodes[i], nodes[j], nodes[i], nodes[j]
                    )
                },
                &(&t[&(a, i)] * &p),
                &(&p * &t[&(a, j)]),
            )?;
        }
    }

    // (2) / (2s)
    let r2 = id(RelationId::R2, RelationId::R2s);
    let window = Window {
        lo: active[0],
        hi: *active.last().expect("nonempty range"),
    };
    for (i, lam) in nodes.iter().enumerate() {
        let pairs = match g.shape {
            BoxShape::A { k, l } => lambda_pairs(lam, window, Some((k, l))).pairs,
            BoxShape::D { k } => lambda_pairs_d(lam, window, Some(k))?.pairs,
        };
        let one = QMatrix::identity(rep.dim(lam));
        for pi in pairs {
            let prod = &tt(pi.alpha, i)? * &tt(pi.beta, i)?;
            report.record(
                r2,
                || {
                    format!(
                        "t_{} t_{} = 1 on V_{lam} for the pair {pi}",
                        pi.alpha, pi.beta
                    )
                },
                &prod,
                &one,
            )?;
        }
    }
    for ((a, lam), m) in &rep.t {
        let one = QMatrix::identity(rep.dim(lam));
        if !g.active(*a) {
            report.record(
                r2,
                || format!("t_{a} = 1 on V_{lam} outside the range"),
                m,
                &one,
            )?;
        } else if d {
            let other = rep.t(-*a, lam)?;
            report.record(
                r2,
                || format!("t_{a} t_{} = 1 on V_{lam}", -*a),
                &(m * &other),
                &one,
            )?;
        }
    }

    // (3) / (3s)
    let r3 = id(RelationId::R3, RelationId::R3s);
    for v in 0..g.len() {
        for &(pi, a) in &g.up[v] {
            let second = g.second_generator(v, &pi)?;
            let eta = pi.beta.eta() as i64;
            for (here, there) in [(a, v), (v, a)] {
                let lhs = rep.mu(&nodes[here], &nodes[there])?.pow(eta).ok();
                let rhs = &tt(pi.alpha, here)? * &tt(second, here)?;
                let what = || {
                    format!(
                        "mu({}, {})^{eta} = t_{} t_{second} for {} -{pi}-> {}",
                        nodes[here], nodes[there], pi.alpha, nodes[v], nodes[a]
                    )
                };
                match lhs {
                    Some(lhs) => report.record(r3, what, &lhs, &rhs)?,
                    None => {
                        *report.checked.entry(r3).or_insert(0) += 1;
                        report.failures.push(RelationFailure {
                            id: r3,
                            instance: what() + " (mu singular)",
                            residual: rhs,
                        });
                    }
                }
            }
        }
    }

    // (4), first sentence
    let r4a = id(RelationId::R4a, RelationId::R4sA);
    let comp =
        |a: usize, b: usize, c: usize| &rep.p(&nodes[a], &nodes[b]) * &rep.p(&nodes[b], &nodes[c]);
    for [a, b, c, dd] in g.diamonds() {
        if b > dd {
            continue;
        }
        report.record(
            r4a,
            || {
                format!(
                    "p({2}, {1}) p({1}, {0}) = p({2}, {3}) p({3}, {0})",
                    nodes[a], nodes[b], nodes[c], nodes[dd]
                )
            },
            &comp(c, b, a),
            &comp(c, dd, a),
        )?;
    }

    // (4) second sentence, 4s(a) and 4s(b)
    let chains: Vec<(usize, usize, usize)> = if d { g.chains_4sb() } else { vec![] };
    for &(a, b, c) in &g.vanishing {
        let is_b = chains.iter().any(|&x| x == (a, b, c) || x == (c, b, a));
        let rid = if is_b {
            RelationId::R4sB
        } else {
            id(RelationId::R4b, RelationId::R4sA)
        };
        let m = comp(a, b, c);
        let zero = QMatrix::zeros(m.rows(), m.cols());
        report.record(
            rid,
            || {
                format!(
                    "p({}, {}) p({}, {}) = 0",
                    nodes[a], nodes[b], nodes[b], nodes[c]
                )
            },
            &m,
            &zero,
        )?;
    }
    Ok(report)
}
