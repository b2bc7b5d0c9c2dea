use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graph::BoxGraph;
use super::qmatrix::{binomial_series, QMatrix};
use super::rep::QuiverRep;
use crate::error::{Error, Result};

/// Rewrite steps allowed per call of [`reduce_to_valley_free`].
pub const DEFAULT_STEP_CAP: usize = 100_000;

/// A rational combination of paths in the graph of a box, nodes given by
/// their index in a [`BoxGraph`]. The path `[x0, x1, …, xn]` stands for
/// `p(x0, x1) p(x1, x2) ⋯ p(x_{n-1}, xn)`; a single node is `e_x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathElement {
    pub terms: BTreeMap<Vec<usize>, BigRational>,
}

impl PathElement {
    pub fn zero() -> Self {
        PathElement::default()
    }

    pub fn monomial(path: Vec<usize>) -> Self {
        let mut x = PathElement::zero();
        x.add_term(path, BigRational::one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, path: Vec<usize>, c: BigRational) {
        let e = self
            .terms
            .entry(path.clone())
            .or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&path);
        }
    }

    pub fn add(&mut self, other: &PathElement, scale: &BigRational) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * scale);
        }
    }

    /// Concatenation product; paths that do not meet are zero.
    pub fn mul(&self, other: &PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if p.last() == q.first() {
                    let mut r = p.clone();
                    r.extend_from_slice(&q[1..]);
                    out.add_term(r, c * d);
                }
            }
        }
        out
    }

    /// Number of edges of the shortest path present.
    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.len() - 1).min()
    }

    /// Every path consists of edges of `g`.
    pub fn is_well_formed(&self, g: &BoxGraph) -> bool {
        self.terms
            .keys()
            .all(|p| !p.is_empty() && p.windows(2).all(|w| g.adjacent(w[0], w[1])))
    }

    /// The element acting on `⊕ V_λ`, block `(x0, xn)` for the path `[x0, …, xn]`.
    pub fn evaluate(&self, rep: &QuiverRep, g: &BoxGraph) -> Result<QMatrix> {
        let dims: Vec<usize> = g.nodes.iter().map(|l| rep.dim(l)).collect();
        let mut blocks: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
        for (path, c) in &self.terms {
            let mut m = QMatrix::identity(dims[path[0]]);
            for w in path.windows(2) {
                if !g.adjacent(w[0], w[1]) {
                    return Err(Error::Domain(format!(
                        "{} and {} are not adjacent",
                        g.nodes[w[0]], g.nodes[w[1]]
                    )));
                }
                m = m.try_mul(&rep.p(&g.nodes[w[0]], &g.nodes[w[1]]))?;
            }
            let key = (path[0], *path.last().expect("nonempty path"));
            let b = blocks
                .entry(key)
                .or_insert_with(|| QMatrix::zeros(dims[key.0], dims[key.1]));
            *b = b.try_add(&m.scale(c))?;
        }
        let blocks: Vec<(usize, usize, QMatrix)> =
            blocks.into_iter().map(|((i, j), m)| (i, j, m)).collect();
        Ok(QMatrix::block(&dims, &dims, &blocks))
    }

    pub fn display<'a>(&'a self, g: &'a BoxGraph) -> impl fmt::Display + 'a {
        Shown(self, g)
    }
}

struct Shown<'a>(&'a PathElement, &'a BoxGraph);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (n, (p, c)) in self.0.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let nodes: Vec<String> = p.iter().map(|&i| self.1.nodes[i].to_string()).collect();
            write!(f, "{c}·({})", nodes.join(", "))?;
        }
        Ok(())
    }
}

/// Indices `i` with `path[i]` strictly below both neighbours.
fn valleys<'a>(g: &'a BoxGraph, path: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    (1..path.len().saturating_sub(1))
        .filter(move |&i| g.above(path[i - 1], path[i]) && g.above(path[i + 1], path[i]))
}

pub fn has_valley(g: &BoxGraph, path: &[usize]) -> bool {
    valleys(g, path).next().is_some()
}

/// Increasing paths from `start`, including the trivial one.
fn rising(g: &BoxGraph, start: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![start]];
    for &(_, u) in &g.up[start] {
        for mut tail in rising(g, u) {
            tail.insert(0, start);
            out.push(tail);
        }
    }
    out
}

/// All valley-free paths: an increasing path followed by a decreasing one.
pub fn valley_free_basis(g: &BoxGraph) -> Vec<Vec<usize>> {
    let mut out = vec![];
    for s in 0..g.len() {
        for up in rising(g, s) {
            let top = *up.last().expect("nonempty");
            for down in (0..g.len())
                .flat_map(|e| rising(g, e))
                .filter(|d| d.last() == Some(&top))
            {
                let mut p = up.clone();
                p.extend(down.iter().rev().skip(1));
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// The number of valley-free paths, an upper bound for the dimension of the algebra.
pub fn algebra_dim_bound(g: &BoxGraph) -> usize {
    valley_free_basis(g).len()
}

/// `(1 + P)^e` with `P` the loop `a → u → a`, truncated past `max_len`.
pub fn mu_power(a: usize, u: usize, e: i64, max_len: usize) -> PathElement {
    let mut out = PathElement::zero();
    for (m, c) in binomial_series(e, max_len / 2).into_iter().enumerate() {
        let mut p = vec![a];
        for _ in 0..m {
            p.extend([u, a]);
        }
        out.add_term(p, c);
    }
    out
}

/// `∏ μ(a, u)^{e_u}` as a path element, truncated past `max_len`.
pub fn mu_product(a: usize, exps: &BTreeMap<usize, i64>, max_len: usize) -> PathElement {
    let mut out = PathElement::monomial(vec![a]);
    for (&u, &e) in exps {
        out = truncate(out.mul(&mu_power(a, u, e, max_len)), max_len);
    }
    out
}

fn truncate(mut x: PathElement, max_len: usize) -> PathElement {
    x.terms.retain(|p, _| p.len() - 1 <= max_len);
    x
}

/// Rewrites `x` into a combination of valley-free paths: a valley between
/// distinct neighbours becomes the other side of its diamond (or zero when
/// the diamond leaves the box); a valley `a → v → a` becomes `μ(a, v) - 1`
/// with `μ(a, v)` written through the `μ(a, u)` for `u` above `a`. Lowest
/// valleys go first.
pub fn reduce_to_valley_free(x: &PathElement, g: &BoxGraph) -> Result<PathElement> {
    reduce_with_cap(x, g, DEFAULT_STEP_CAP)
}

pub fn reduce_with_cap(x: &PathElement, g: &BoxGraph, cap: usize) -> Result<PathElement> {
    let max_len = g.max_valley_free_length();
    let mut todo = truncate(x.clone(), max_len);
    let mut done = PathElement::zero();
    let mut steps = 0;
    let size = |i: usize| g.nodes[i].size();
    while let Some((path, c)) = todo.terms.pop_first() {
        let Some(i) = valleys(g, &path).min_by_key(|&i| (size(path[i]), i)) else {
            done.add_term(path, c);
            continue;
        };
        steps += 1;
        if steps > cap {
            return Err(Error::NonTermination(cap));
        }
        let (a, v, b) = (path[i - 1], path[i], path[i + 1]);
        let (head, tail) = (&path[..i], &path[i + 1..]);
        let middle = if a != b {
            if g.vanishing.contains(&(a, v, b)) {
                continue;
            }
            let d = g
                .neighbors(a)
                .into_iter()
                .find(|&d| d != v && g.adjacent(d, b))
                .ok_or_else(|| {
                    Error::Invariant(format!(
                        "no diamond through {}, {}, {}",
                        g.nodes[a], g.nodes[v], g.nodes[b]
                    ))
                })?;
            PathElement::monomial(vec![a, d, b])
        } else {
            let mut m = mu_product(a, &g.mu_down_as_mu_up(a, v)?, max_len);
            m.add_term(vec![a], -BigRational::one());
            m
        };
        let whole = PathElement::monomial(head.to_vec())
            .mul(&middle)
            .mul(&PathElement::monomial(tail.to_vec()));
        todo.add(&truncate(whole, max_len), &c);
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_box() {
        let g = BoxGraph::new("A1x1".parse().unwrap()).unwrap();
        assert_eq!(algebra_dim_bound(&g), 5);
        let (e, one) = (
            g.id(&"0".parse().unwrap()).unwrap(),
            g.id(&"1".parse().unwrap()).unwrap(),
        );
        let x = PathElement::monomial(vec![one, e, one]);
        let r = reduce_to_valley_free(&x, &g).unwrap();
        assert!(r.terms.keys().all(|p| !has_valley(&g, p)));
        assert_eq!(
            reduce_to_valley_free(&PathElement::monomial(vec![e]), &g).unwrap(),
            PathElement::monomial(vec![e])
        );
        assert_eq!(
            BoxGraph::new("A0x3".parse().unwrap())
                .map(|g| algebra_dim_bound(&g))
                .unwrap(),
            1
        );
    }
}
