use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::BoxGraph;
use super::qmatrix::QMatrix;
use super::relations::check_relations_in;
use super::rep::QuiverRep;
use crate::combinatorics::{BoxShape, Flavor, HalfInt, Partition};
use crate::error::{Error, Result};

pub fn mu(rep: &QuiverRep, lam: &Partition, lam2: &Partition) -> Result<QMatrix> {
    rep.mu(lam, lam2)
}

/// `μ - 1` is nilpotent on every edge, both orientations.
pub fn check_unipotence(rep: &QuiverRep) -> Result<bool> {
    let g = BoxGraph::new(rep.shape)?;
    for (i, j) in g.edges() {
        if !rep.mu(&g.nodes[i], &g.nodes[j])?.is_unipotent() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `∏ μ(λ, λ')^{η(β)}` over arrows `λ →(α, β) λ'` in the box with `α ≤ γ ≤ β`.
pub fn telescoping_product(
    rep: &QuiverRep,
    g: &BoxGraph,
    lam: &Partition,
    gamma: HalfInt,
) -> Result<QMatrix> {
    let i = g
        .id(lam)
        .ok_or_else(|| Error::Domain(format!("{lam} is not in {}", g.shape)))?;
    let mut out = QMatrix::identity(rep.dim(lam));
    for &(pi, u) in &g.up[i] {
        if pi.contains(gamma) {
            out = out.try_mul(&rep.mu(lam, &g.nodes[u])?.pow(pi.beta.eta() as i64)?)?;
        }
    }
    Ok(out)
}

/// `(t_γ|_{V_λ})^{-φ_λ(γ)}` equals the telescoping product. The exponent is
/// the one produced by telescoping relations 2 and 3.
pub fn t_from_mu_identity(rep: &QuiverRep, lam: &Partition, gamma: HalfInt) -> Result<bool> {
    if rep.shape.flavor() == Flavor::D && !gamma.is_positive() {
        return Err(Error::Domain(format!(
            "type D telescoping needs γ > 0, got {gamma}"
        )));
    }
    let g = BoxGraph::new(rep.shape)?;
    let lhs = rep.t(gamma, lam)?.pow(-(lam.phi(gamma) as i64))?;
    Ok(lhs == telescoping_product(rep, &g, lam, gamma)?)
}

/// Fills in every `t_γ` from the `p`'s by the telescoping identity; `None`
/// when some `μ` needed on the way is singular.
pub fn with_derived_t(rep: &QuiverRep, g: &BoxGraph) -> Result<Option<QuiverRep>> {
    let mut out = rep.clone();
    out.t.clear();
    for (i, lam) in g.nodes.iter().enumerate() {
        if rep.dim(lam) == 0 {
            continue;
        }
        for gamma in g.active_range() {
            if g.flavor() == Flavor::D && !gamma.is_positive() {
                continue;
            }
            let mut t = QMatrix::identity(rep.dim(lam));
            for (u, e) in g.t_as_mu(i, gamma) {
                match rep.mu(lam, &g.nodes[u])?.pow(e) {
                    Ok(m) => t = &t * &m,
                    Err(_) => return Ok(None),
                }
            }
            if !t.is_identity() {
                out.t.insert((gamma, lam.clone()), t);
            }
        }
    }
    Ok(Some(out))
}

/// Relation-passing representations with small dimension vectors, found by
/// seeded rejection sampling over sparse `{-1, 0, 1}` maps; `t` is derived
/// from the `p`'s.
pub fn random_fixtures(
    shape: &BoxShape,
    seed: u64,
    want: usize,
    tries: usize,
) -> Result<Vec<QuiverRep>> {
    let g = BoxGraph::new(*shape)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    for _ in 0..tries {
        if out.len() >= want {
            break;
        }
        let mut rep = QuiverRep::zero(*shape);
        for lam in &g.nodes {
            let d = [0, 1, 1, 2][rng.gen_range(0..4)];
            if d > 0 {
                rep.dims.insert(lam.clone(), d);
            }
        }
        // half the samples load both directions of one or two edges, where μ ≠ 1 can occur
        let edges = g.edges();
        let focus: Vec<(usize, usize)> = if rng.gen_bool(0.5) {
            (0..rng.gen_range(1..=2))
                .map(|_| edges[rng.gen_range(0..edges.len())])
                .collect()
        } else {
            vec![]
        };
        for &(i, j) in &edges {
            let (r, c) = (rep.dim(&g.nodes[i]), rep.dim(&g.nodes[j]));
            let loaded = focus
                .iter()
                .any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i));
            if r == 0 || c == 0 || !(loaded || (focus.is_empty() && rng.gen_bool(0.5))) {
                continue;
            }
            let entries: Vec<i64> = (0..r * c)
                .map(|_| [-1, 0, 0, 1][rng.gen_range(0..4)])
                .collect();
            let m = QMatrix::from_ints(r, c, &entries)?;
            if !m.is_zero() {
                rep.p.insert((g.nodes[i].clone(), g.nodes[j].clone()), m);
            }
        }
        let Some(rep) = with_derived_t(&rep, &g)? else {
            continue;
        };
        if check_relations_in(&rep, &g)?.passes() {
            out.push(rep);
        }
    }
    Ok(out)
}

/// `V_λ = Q²`, `V_λ' = Q` and `p(λ, λ') p(λ', λ)` a nonzero nilpotent on `V_λ`,
/// with `t` derived; `None` when that violates a relation.
pub fn nilpotent_loop(
    shape: &BoxShape,
    lam: &Partition,
    lam2: &Partition,
) -> Result<Option<QuiverRep>> {
    let g = BoxGraph::new(*shape)?;
    let mut rep = QuiverRep::zero(*shape);
    rep.dims.insert(lam.clone(), 2);
    rep.dims.insert(lam2.clone(), 1);
    rep.p.insert(
        (lam.clone(), lam2.clone()),
        QMatrix::from_ints(2, 1, &[1, 0])?,
    );
    rep.p.insert(
        (lam2.clone(), lam.clone()),
        QMatrix::from_ints(1, 2, &[0, 1])?,
    );
    rep.validate()?;
    let Some(rep) = with_derived_t(&rep, &g)? else {
        return Ok(None);
    };
    Ok(check_relations_in(&rep, &g)?.passes().then_some(rep))
}

/// Simples, every passing [`nilpotent_loop`] over the edges of the box, and
/// `random` sampled fixtures.
pub fn fixtures(shape: &BoxShape, seed: u64, random: usize) -> Result<Vec<QuiverRep>> {
    let g = BoxGraph::new(*shape)?;
    let mut out = super::rep::enumerate_simples(shape);
    for (i, j) in g.edges() {
        out.extend(nilpotent_loop(shape, &g.nodes[i], &g.nodes[j])?);
    }
    out.extend(random_fixtures(shape, seed, random, 50 * random)?);
    Ok(out)
}

/// Box `A(1,1)` with `V_∅ = Q²`, `V_(1) = Q` and `p(∅,(1)) p((1),∅)` a nonzero nilpotent.
pub fn nilpotent_fixture() -> QuiverRep {
    let shape: BoxShape = "A1x1".parse().expect("literal");
    nilpotent_loop(&shape, &Partition::empty(), &"1".parse().expect("literal"))
        .expect("small box")
        .expect("passes")
}
