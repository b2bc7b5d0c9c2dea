use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::combinatorics::{
    arrows_from, completions, is_pair_d, parent, zeta, BoxShape, Flavor, HalfInt, LambdaPair,
    Partition,
};
use crate::error::Result;

/// The partitions of a box with the relation `↔`, arrows oriented upward.
#[derive(Clone, Debug)]
pub struct BoxGraph {
    pub shape: BoxShape,
    pub nodes: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    /// `up[i]`: arrows `nodes[i] →π nodes[j]` inside the box.
    pub up: Vec<Vec<(LambdaPair, usize)>>,
    /// `down[j]`: arrows `nodes[i] →π nodes[j]`, as `(π, i)`.
    pub down: Vec<Vec<(LambdaPair, usize)>>,
    /// Triples `(a, b, c)` with `p(a, b) p(b, c) = 0` by relation 4 / 4s.
    pub vanishing: BTreeSet<(usize, usize, usize)>,
    max_path: OnceLock<usize>,
}

impl BoxGraph {
    pub fn new(shape: BoxShape) -> Result<BoxGraph> {
        let nodes = shape.enumerate();
        let index: BTreeMap<Partition, usize> = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let n = nodes.len();
        let mut up = vec![vec![]; n];
        let mut down = vec![vec![]; n];
        for (i, lam) in nodes.iter().enumerate() {
            for (pi, to) in arrows_from(lam, &shape)? {
                let j = index[&to];
                up[i].push((pi, j));
                down[j].push((pi, i));
            }
        }
        let mut g = BoxGraph {
            shape,
            nodes,
            index,
            up,
            down,
            vanishing: BTreeSet::new(),
            max_path: OnceLock::new(),
        };
        g.vanishing = g.find_vanishing()?;
        Ok(g)
    }

    pub fn flavor(&self) -> Flavor {
        self.shape.flavor()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Length of the longest valley-free path; every longer path is zero in the algebra.
    pub fn max_valley_free_length(&self) -> usize {
        *self.max_path.get_or_init(|| {
            super::paths::valley_free_basis(self)
                .iter()
                .map(|p| p.len() - 1)
                .max()
                .unwrap_or(0)
        })
    }

    pub fn id(&self, lam: &Partition) -> Option<usize> {
        self.index.get(lam).copied()
    }

    /// The pair of the arrow `i → j`, if any.
    pub fn arrow(&self, i: usize, j: usize) -> Option<LambdaPair> {
        self.up[i].iter().find(|x| x.1 == j).map(|x| x.0)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.arrow(i, j).is_some() || self.arrow(j, i).is_some()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.up[i]
            .iter()
            .chain(&self.down[i])
            .map(|x| x.1)
            .collect();
        v.sort();
        v
    }

    /// `j` lies above its neighbour `i`.
    pub fn above(&self, j: usize, i: usize) -> bool {
        self.arrow(i, j).is_some()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.neighbors(i).into_iter().map(move |j| (i, j)))
            .collect()
    }

    /// Diamonds `(a, b, c, d)` inside the box, every rotation and reflection listed.
    pub fn diamonds(&self) -> Vec<[usize; 4]> {
        let mut out = vec![];
        for a in 0..self.len() {
            for c in 0..self.len() {
                if a == c || self.adjacent(a, c) {
                    continue;
                }
                let na: BTreeSet<usize> = self.neighbors(a).into_iter().collect();
                let common: Vec<usize> = self
                    .neighbors(c)
                    .into_iter()
                    .filter(|x| na.contains(x))
                    .collect();
                for &b in &common {
                    for &d in &common {
                        if b != d {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    fn find_vanishing(&self) -> Result<BTreeSet<(usize, usize, usize)>> {
        let flavor = self.flavor();
        let mut out = BTreeSet::new();
        for b in 0..self.len() {
            let nb = self.neighbors(b);
            for &a in &nb {
                for &c in &nb {
                    if a == c {
                        continue;
                    }
                    let leaves =
                        completions(&self.nodes[b], &self.nodes[a], &self.nodes[c], flavor)
                            .iter()
                            .any(|d| !self.shape.contains(d));
                    if leaves {
                        out.insert((a, b, c));
                    }
                }
            }
        }
        if flavor == Flavor::D {
            for (a, b, c) in self.chains_4sb() {
                out.insert((a, b, c));
                out.insert((c, b, a));
            }
        }
        Ok(out)
    }

    /// `λ →π λ' →π' λ''` with `π = (α, β)`, `α < 0`, and `π' ∉ Π^s(λ)`.
    pub fn chains_4sb(&self) -> Vec<(usize, usize, usize)> {
        let mut out = vec![];
        for a in 0..self.len() {
            for &(pi, b) in &self.up[a] {
                if !pi.alpha.is_negative() {
                    continue;
                }
                for &(pi2, c) in &self.up[b] {
                    if !is_pair_d(&self.nodes[a], &pi2) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Whether `γ` carries a generator `t_γ` that can differ from 1.
    pub fn active(&self, g: HalfInt) -> bool {
        let (lo, hi) = match self.shape {
            BoxShape::A { k, l } => (-(k as i64), l as i64),
            BoxShape::D { k } => (-(k as i64), k as i64),
        };
        HalfInt::plus_half(lo) <= g && g <= HalfInt::minus_half(hi)
    }

    pub fn active_range(&self) -> Vec<HalfInt> {
        let (lo, hi) = match self.shape {
            BoxShape::A { k, l } => (-(k as i64), l as i64),
            BoxShape::D { k } => (-(k as i64), k as i64),
        };
        HalfInt::range(HalfInt::plus_half(lo), HalfInt::minus_half(hi)).collect()
    }

    /// `t_γ|V_λ` as a product `∏ μ(λ, u)^{e_u}` over arrows `λ → u` in the box:
    /// the telescoping identity, in the sign its proof produces.
    pub fn t_as_mu(&self, lam: usize, g: HalfInt) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        if !self.active(g) {
            return out;
        }
        let (g, outer) = if self.flavor() == Flavor::D && g.is_negative() {
            (-g, -1)
        } else {
            (g, 1)
        };
        let phi = self.nodes[lam].phi(g) as i64;
        for &(pi, u) in &self.up[lam] {
            if pi.contains(g) {
                *out.entry(u).or_insert(0) += outer * -phi * pi.beta.eta() as i64;
            }
        }
        out.retain(|_, e| *e != 0);
        out
    }

    /// The second generator in relation 3 / 3s for the arrow `v →π a`:
    /// `β'` of the parent, or `ζ`.
    pub fn second_generator(&self, v: usize, pi: &LambdaPair) -> Result<HalfInt> {
        match self.flavor() {
            Flavor::A => Ok(parent(&self.nodes[v], pi).beta),
            Flavor::D => zeta(&self.nodes[v], pi),
        }
    }

    /// `μ(a, v)` for the arrow `v → a`, as a product of `μ(a, u)` over arrows
    /// `a → u` (relation 3 on `V_a` with `t` eliminated by telescoping).
    pub fn mu_down_as_mu_up(&self, a: usize, v: usize) -> Result<BTreeMap<usize, i64>> {
        let pi = self
            .arrow(v, a)
            .ok_or_else(|| crate::Error::Domain("no arrow".into()))?;
        let eta = pi.beta.eta() as i64;
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for g in [pi.alpha, self.second_generator(v, &pi)?] {
            for (u, e) in self.t_as_mu(a, g) {
                *out.entry(u).or_insert(0) += eta * e;
            }
        }
        out.retain(|_, e| *e != 0);
        Ok(out)
    }
}
