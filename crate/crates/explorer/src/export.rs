use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use lambda_pairs::combinatorics::{arrows_from, cell_dim, BoxShape, Flavor, Partition};
use lambda_pairs::orbit::{
    closure_leq, codim_one_degenerations, enumerate_matrices, is_open_in_slice, orbit_dim,
    slice_by_flips, Cell, Region, ZeroOneMatrix,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Bumped whenever a JSON payload changes shape; see `docs/schemas.md`.
pub const SCHEMA_VERSION: u32 = 1;

/// Refuse to build posets over boxes with more partitions than this.
pub const MAX_PARTITIONS: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u32,
    #[serde(rename = "box", skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    pub flavor: String,
}

impl Provenance {
    pub fn new(shape: Option<BoxShape>, flavor: Flavor) -> Self {
        Provenance {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            schema: SCHEMA_VERSION,
            shape: shape.map(|b| b.to_string()),
            flavor: format!("{flavor:?}"),
        }
    }
}

/// A payload with its provenance, rendered in one of the three formats.
#[derive(Clone, Debug)]
pub struct ExportBundle {
    pub provenance: Provenance,
    pub payload: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl ExportBundle {
    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => {
                let doc = json!({ "provenance": self.provenance, "payload": self.payload });
                Some(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
            }
            Format::Text => Some(self.text.clone()),
            Format::Dot => self.dot.as_ref().map(|d| {
                let p = &self.provenance;
                let shape = p.shape.as_deref().unwrap_or("-");
                format!(
                    "// {} {} box={shape} flavor={}\n{d}",
                    p.tool, p.version, p.flavor
                )
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetNode {
    pub id: usize,
    pub label: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetEdge {
    pub from: usize,
    pub to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A Hasse diagram; edges run from the smaller to the larger element.
#[derive(Clone, Debug, Serialize)]
pub struct Poset {
    pub kind: String,
    pub nodes: Vec<PosetNode>,
    pub edges: Vec<PosetEdge>,
}

impl Poset {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "  n{} [label=\"{}\\ndim {}\"];",
                n.id,
                n.label.replace('"', "\\\""),
                n.dim
            );
        }
        let mut by_dim: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for n in &self.nodes {
            by_dim.entry(n.dim).or_default().push(n.id);
        }
        for ids in by_dim.values() {
            let names: Vec<String> = ids.iter().map(|i| format!("n{i}")).collect();
            let _ = writeln!(s, "  {{ rank=same; {}; }}", names.join("; "));
        }
        for e in &self.edges {
            match &e.label {
                Some(l) => {
                    let _ = writeln!(s, "  n{} -> n{} [label=\"{l}\"];", e.from, e.to);
                }
                None => {
                    let _ = writeln!(s, "  n{} -> n{};", e.from, e.to);
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.nodes {
            let _ = writeln!(s, "{}\t{}\tdim {}", n.id, n.label, n.dim);
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "{} -> {}{}",
                e.from,
                e.to,
                e.label
                    .as_ref()
                    .map(|l| format!("\t{l}"))
                    .unwrap_or_default()
            );
        }
        s
    }

    pub fn bundle(&self, provenance: Provenance) -> ExportBundle {
        ExportBundle {
            provenance,
            payload: serde_json::to_value(self).expect("serializable"),
            text: self.to_text(),
            dot: Some(self.to_dot()),
        }
    }
}

/// The partitions of a box with their arrows.
pub fn cells_poset(shape: &BoxShape) -> lambda_pairs::Result<Poset> {
    let nodes = shape.enumerate();
    let index: BTreeMap<&Partition, usize> =
        nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = vec![];
    for (i, lam) in nodes.iter().enumerate() {
        for (pi, to) in arrows_from(lam, shape)? {
            edges.push(PosetEdge {
                from: i,
                to: index[&to],
                label: Some(pi.to_string()),
            });
        }
    }
    let nodes = nodes
        .iter()
        .enumerate()
        .map(|(id, lam)| PosetNode {
            id,
            label: lam.to_string(),
            dim: cell_dim(lam, shape.flavor()) as usize,
            data: Value::Null,
        })
        .collect();
    Ok(Poset {
        kind: "cells".into(),
        nodes,
        edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fiber {
    /// Orbits on the conormal fiber `M_λ`.
    Primal,
    /// Orbits on the dual space `M*_λ`, labelled by their slice partition.
    Dual,
}

fn support_label(a: &ZeroOneMatrix) -> String {
    let cells: Vec<String> = a.support.iter().map(|(i, j)| format!("{i}{j}")).collect();
    if cells.is_empty() {
        "0".into()
    } else {
        cells.join(",")
    }
}

/// `rank A_ρ ≤ rank A'_ρ` over all rectangles in `R_λ` containing the far corner.
pub fn dual_closure_leq(small: &ZeroOneMatrix, big: &ZeroOneMatrix) -> bool {
    let r = &small.region;
    let (k, l) = (r.rows(), r.cols());
    for a in 1..=k {
        for b in 1..=l {
            let rect_ok = (a..=k).all(|i| (b..=l).all(|j| r.contains((i, j))));
            if !rect_ok {
                continue;
            }
            let count =
                |m: &ZeroOneMatrix| m.support.iter().filter(|c| c.0 >= a && c.1 >= b).count();
            if count(small) > count(big) {
                return false;
            }
        }
    }
    true
}

/// Dimension of a `B_λ`-orbit as the rank of its tangent map: the span of
/// `E·A` and `A·E` over the elementary generators, truncated to `R_λ`.
pub fn tangent_dim(a: &ZeroOneMatrix, fiber: Fiber) -> usize {
    let r = &a.region;
    let (k, l) = (r.rows(), r.cols());
    let cells: Vec<Cell> = r.cells();
    let pos: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut vectors: Vec<Vec<i64>> = vec![];
    let forward = fiber == Fiber::Primal;
    // row i moves into row i2
    for i in 1..=k {
        for i2 in 1..=k {
            if i != i2 && (i < i2) != forward {
                continue;
            }
            let mut v = vec![0; cells.len()];
            for &(x, y) in &a.support {
                if x == i {
                    if let Some(&p) = pos.get(&(i2, y)) {
                        v[p] += 1;
                    }
                }
            }
            vectors.push(v);
        }
    }
    for j in 1..=l {
        for j2 in 1..=l {
            if j != j2 && (j < j2) != forward {
                continue;
            }
            let mut v = vec![0; cells.len()];
            for &(x, y) in &a.support {
                if y == j {
                    if let Some(&p) = pos.get(&(x, j2)) {
                        v[p] += 1;
                    }
                }
            }
            vectors.push(v);
        }
    }
    integer_rank(vectors)
}

fn integer_rank(mut m: Vec<Vec<i64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x = *x * a - y * b;
                }
            }
        }
        r += 1;
    }
    r
}

fn hasse(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = vec![];
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq(a, b) {
                continue;
            }
            let between = (0..n).any(|c| c != a && c != b && leq(a, c) && leq(c, b));
            if !between {
                out.push((a, b));
            }
        }
    }
    out
}

/// Orbits of `B_λ` on `M_λ` or `M*_λ` with their closure order.
pub fn orbit_poset(lam: &Partition, shape: &BoxShape, fiber: Fiber) -> lambda_pairs::Result<Poset> {
    let region = Region::new(lam.clone(), *shape)?;
    let all = enumerate_matrices(&region);
    let mut nodes = vec![];
    for (id, a) in all.iter().enumerate() {
        let node = match fiber {
            Fiber::Primal => PosetNode {
                id,
                label: support_label(a),
                dim: orbit_dim(a)?,
                data: json!({ "support": a.support }),
            },
            Fiber::Dual => {
                if shape.flavor() == Flavor::D {
                    return Err(lambda_pairs::Error::Domain(
                        "dual orbit posets cover type A boxes only".into(),
                    ));
                }
                let slice = slice_by_flips(a)?;
                let open = is_open_in_slice(a)?.is_some();
                PosetNode {
                    id,
                    label: format!(
                        "{}{} [{}]",
                        support_label(a),
                        if open { "" } else { "*" },
                        slice
                    ),
                    dim: tangent_dim(a, Fiber::Dual),
                    data: json!({ "support": a.support, "slice": slice.literal(), "open_in_slice": open }),
                }
            }
        };
        nodes.push(node);
    }
    let edges: Vec<PosetEdge> = match fiber {
        Fiber::Primal => {
            let idx: BTreeMap<&BTreeSet<Cell>, usize> = all
                .iter()
                .enumerate()
                .map(|(i, a)| (&a.support, i))
                .collect();
            let mut e = vec![];
            for (i, a) in all.iter().enumerate() {
                for d in codim_one_degenerations(a)? {
                    e.push(PosetEdge {
                        from: idx[&d.support],
                        to: i,
                        label: None,
                    });
                }
            }
            e
        }
        Fiber::Dual => hasse(all.len(), |x, y| dual_closure_leq(&all[x], &all[y]))
            .into_iter()
            .map(|(from, to)| PosetEdge {
                from,
                to,
                label: None,
            })
            .collect(),
    };
    debug_assert!(
        fiber == Fiber::Dual || edges.iter().all(|e| closure_leq(&all[e.from], &all[e.to]))
    );
    Ok(Poset {
        kind: format!("orbits-{fiber:?}").to_lowercase(),
        nodes,
        edges,
    })
}
