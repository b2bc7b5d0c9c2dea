use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use lambda_pairs::combinatorics::*;
use lambda_pairs::orbit::*;
use lambda_pairs::quiver::*;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::export::MAX_PARTITIONS;
use crate::oracle::{ff_orbit_oracle, MAX_CELLS};

pub const SUITES: [&str; 12] = [
    "pairs",
    "closure-triple",
    "tau-roundtrip",
    "dim-length",
    "codim1-count",
    "codim2-class",
    "parity",
    "pi1",
    "relations",
    "rewrite",
    "simples",
    "ff-oracle",
];

/// Boxes with more partitions than this are refused by the algebra suites.
pub const MAX_ALGEBRA_NODES: usize = 20;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; known suites: {list}", list = SUITES.join(", "))]
    Unknown(String),
    #[error("suite {suite} does not apply to {shape}: {why}")]
    NotApplicable {
        suite: String,
        shape: BoxShape,
        why: String,
    },
    #[error(transparent)]
    Core(#[from] lambda_pairs::Error),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct SuiteFailure {
    /// Sortable case id, e.g. the partition literal.
    pub case: String,
    /// Everything needed to reproduce the case.
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    #[serde(rename = "box")]
    pub shape: String,
    pub cases: usize,
    pub failures: Vec<SuiteFailure>,
    pub wall_ms: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<SuiteFailure>,
}

impl Tally {
    fn check(
        &mut self,
        ok: bool,
        case: &str,
        input: impl FnOnce() -> String,
        detail: impl FnOnce() -> String,
    ) {
        self.cases += 1;
        if !ok {
            self.failures.push(SuiteFailure {
                case: case.into(),
                input: input(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, case: &str, input: String, e: impl std::fmt::Display) {
        self.cases += 1;
        self.failures.push(SuiteFailure {
            case: case.into(),
            input,
            detail: format!("error: {e}"),
        });
    }
}

type Case = fn(&BoxShape, &Partition, &mut Tally) -> lambda_pairs::Result<()>;

/// Runs `case` for every partition of the box on the worker pool; results are
/// merged in partition order.
fn per_partition(shape: &BoxShape, case: Case) -> Tally {
    let parts = shape.enumerate();
    let tallies: Vec<Tally> = parts
        .par_iter()
        .map(|lam| {
            let mut t = Tally::default();
            if let Err(e) = case(shape, lam, &mut t) {
                t.error(&lam.literal(), format!("{shape} {}", lam.literal()), e);
            }
            t
        })
        .collect();
    let mut out = Tally::default();
    for t in tallies {
        out.cases += t.cases;
        out.failures.extend(t.failures);
    }
    out
}

pub fn run_suite(name: &str, shape: &BoxShape) -> Result<SuiteResult, SuiteError> {
    if !SUITES.contains(&name) {
        return Err(SuiteError::Unknown(name.into()));
    }
    let refuse = |why: String| SuiteError::NotApplicable {
        suite: name.into(),
        shape: *shape,
        why,
    };
    if shape.size_hint() > MAX_PARTITIONS {
        return Err(refuse(format!(
            "more than {MAX_PARTITIONS} partitions; try a smaller box"
        )));
    }
    let start = Instant::now();
    let tally = match name {
        "pairs" => per_partition(shape, pairs_case),
        "closure-triple" => per_partition(shape, closure_case),
        "tau-roundtrip" => per_partition(shape, tau_case),
        "dim-length" => per_partition(shape, dim_length_case),
        "codim1-count" => per_partition(shape, codim_one_case),
        "codim2-class" => per_partition(shape, codim_two_case),
        "parity" => per_partition(shape, parity_case),
        "pi1" => per_partition(shape, pi1_case),
        "ff-oracle" => {
            if shape.flavor() != Flavor::A {
                return Err(refuse("the finite-field oracle covers type A boxes".into()));
            }
            per_partition(shape, ff_case)
        }
        _ => {
            if shape.enumerate().len() > MAX_ALGEBRA_NODES {
                return Err(refuse(format!(
                    "more than {MAX_ALGEBRA_NODES} partitions; try A2x2, A2x3 or D3"
                )));
            }
            match name {
                "relations" => relations_suite(shape)?,
                "simples" => simples_suite(shape)?,
                _ => rewrite_suite(shape)?,
            }
        }
    };
    let mut failures = tally.failures;
    failures.sort();
    Ok(SuiteResult {
        suite: name.into(),
        shape: shape.to_string(),
        cases: tally.cases,
        failures,
        wall_ms: start.elapsed().as_millis(),
    })
}

fn input(shape: &BoxShape, lam: &Partition) -> impl Fn() -> String {
    let s = format!("{shape} {}", lam.literal());
    move || s.clone()
}

fn pairs_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let case = lam.literal();
    let inp = input(shape, lam);
    let w = shape.default_window();
    match shape.flavor() {
        Flavor::A => {
            let f = lambda_pairs(lam, w, None);
            for g in HalfInt::range(w.lo, w.hi) {
                let n = f
                    .pairs
                    .iter()
                    .filter(|p| p.alpha == g || p.beta == g)
                    .count();
                t.check(n == 1, &case, &inp, || format!("{g} lies in {n} pairs"));
            }
            let nested = f.pairs.iter().all(|p| {
                f.pairs
                    .iter()
                    .all(|q| p.beta < q.alpha || q.beta < p.alpha || p.le(q) || q.le(p))
            });
            t.check(nested, &case, &inp, || "two pairs overlap partially".into());
        }
        Flavor::D => {
            let f = lambda_pairs_d(lam, w, None)?;
            let r = w.hi.max(-w.lo);
            for g in HalfInt::range(HalfInt::plus_half(0), r) {
                let n = f
                    .pairs
                    .iter()
                    .filter(|p| [p.alpha, p.beta].iter().any(|&x| x == g || x == -g))
                    .count();
                t.check(n == 1, &case, &inp, || format!("±{g} lies in {n} pairs"));
            }
        }
    }
    let small = shape.forest_in(lam, w)?;
    let big = shape.forest_in(lam, w.enlarge(2))?;
    t.check(small.box_pairs() == big.box_pairs(), &case, &inp, || {
        "box pairs change with the window".into()
    });
    for p in small.box_pairs() {
        t.check(
            small.parent_of(&p) == big.parent_of(&p),
            &case,
            &inp,
            || format!("parent of {p} changes with the window"),
        );
    }
    let back = partition_from_phi(&lam.natural_profile(2))?;
    t.check(&back == lam, &case, &inp, || {
        format!("profile roundtrip gave {back}")
    });
    for (pi, to) in arrows_from(lam, shape)? {
        t.check(lam.size() < to.size(), &case, &inp, || {
            format!("arrow {pi} does not grow")
        });
    }
    Ok(())
}

fn region_of(shape: &BoxShape, lam: &Partition) -> lambda_pairs::Result<Region> {
    Region::new(lam.clone(), *shape)
}

fn closure_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let r = region_of(shape, lam)?;
    let case = lam.literal();
    let all = enumerate_matrices(&r);
    let n = r.default_window();
    let sig = all
        .iter()
        .map(|a| hat_completion(a, n))
        .collect::<lambda_pairs::Result<Vec<_>>>()?;
    let idx: BTreeMap<_, _> = all
        .iter()
        .enumerate()
        .map(|(i, a)| (a.support.clone(), i))
        .collect();
    let mut down = vec![];
    for a in &all {
        down.push(
            codim_one_degenerations(a)?
                .iter()
                .map(|d| idx[&d.support])
                .collect::<Vec<usize>>(),
        );
    }
    for (i, a) in all.iter().enumerate() {
        let mut reach = BTreeSet::from([i]);
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            for &y in &down[x] {
                if reach.insert(y) {
                    stack.push(y);
                }
            }
        }
        for (j, b) in all.iter().enumerate() {
            let rank = closure_leq(b, a);
            let bruhat = bruhat_leq(&sig[i], &sig[j]);
            let ok = rank == bruhat && rank == reach.contains(&j);
            t.check(
                ok,
                &case,
                || {
                    format!(
                        "{shape} {} A={:?} A'={:?}",
                        lam.literal(),
                        a.support,
                        b.support
                    )
                },
                || {
                    format!(
                        "rank {rank}, bruhat {bruhat}, degeneration {}",
                        reach.contains(&j)
                    )
                },
            );
        }
    }
    Ok(())
}

fn tau_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let r = region_of(shape, lam)?;
    for a in enumerate_matrices(&r) {
        let back = matrix_from_tau(&tau(&a), &r)?;
        t.check(
            back == a,
            &lam.literal(),
            || format!("{shape} {} A={:?}", lam.literal(), a.support),
            || format!("reconstructed {:?}", back.support),
        );
    }
    Ok(())
}

fn dim_length_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let r = region_of(shape, lam)?;
    let n = r.default_window();
    let zero_len = hat_completion(&ZeroOneMatrix::zero(r.clone()), n)?.length();
    for a in enumerate_matrices(&r) {
        let len = hat_completion(&a, n)?.length();
        let dim = orbit_dim(&a)?;
        let ok = match r.flavor() {
            Flavor::A => len + dim == r.rows() * r.cols(),
            Flavor::D => len + 2 * dim == zero_len,
        };
        t.check(
            ok,
            &lam.literal(),
            || format!("{shape} {} A={:?}", lam.literal(), a.support),
            || format!("length {len}, dim {dim}"),
        );
    }
    Ok(())
}

fn codim_one_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let case = lam.literal();
    let inp = input(shape, lam);
    let orbits = codim_one_orbits(lam, shape)?;
    let pairs = shape.box_pairs(lam)?;
    t.check(orbits.len() == pairs.len(), &case, &inp, || {
        format!("{} orbits, {} pairs", orbits.len(), pairs.len())
    });
    let top = top_matrix(lam, shape)?;
    let degen: BTreeSet<_> = codim_one_degenerations(&top)?
        .into_iter()
        .map(|m| m.support)
        .collect();
    let built: BTreeSet<_> = orbits.iter().map(|o| o.matrix.support.clone()).collect();
    t.check(built == degen, &case, &inp, || {
        "codim-one orbits differ from the degenerations of the top".into()
    });
    let targets: BTreeSet<Partition> = orbits.iter().map(|o| o.target.clone()).collect();
    let arrows: BTreeSet<Partition> = arrows_from(lam, shape)?.into_iter().map(|x| x.1).collect();
    t.check(targets == arrows, &case, &inp, || {
        "labels differ from the arrow neighbours".into()
    });
    Ok(())
}

fn codim_two_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let case = lam.literal();
    let inp = input(shape, lam);
    let got = codim_two_orbits(lam, shape)?;
    let want = orbits_by_codim(lam, shape, 2)?[2].len();
    t.check(got.len() == want, &case, &inp, || {
        format!("{} labelled, {want} orbits", got.len())
    });
    let ones = codim_one_orbits(lam, shape)?;
    for o in &got {
        t.check(matches!(o.covers.len(), 1 | 2), &case, &inp, || {
            format!("{} has {} covers", o.label, o.covers.len())
        });
        if matches!(o.label, OrbitLabel::Child(_)) {
            t.check(o.diamond.is_none(), &case, &inp, || {
                format!("{} has a diamond", o.label)
            });
            continue;
        }
        let Some(d) = &o.diamond else {
            t.check(false, &case, &inp, || format!("{} has no diamond", o.label));
            continue;
        };
        let covered: BTreeSet<Partition> = ones
            .iter()
            .filter(|c| o.covers.contains(&c.pair))
            .map(|c| c.target.clone())
            .collect();
        let sides: BTreeSet<Partition> = [&d.0[1], &d.0[3]]
            .into_iter()
            .filter(|m| shape.contains(m))
            .cloned()
            .collect();
        t.check(covered == sides && d.0[2] == o.target, &case, &inp, || {
            format!("{} diamond mismatch", o.label)
        });
    }
    Ok(())
}

fn parity_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let f = shape.flavor();
    for (pi, to) in arrows_from(lam, shape)? {
        let d = cell_dim(&to, f) as i64 - cell_dim(lam, f) as i64;
        t.check(
            d.rem_euclid(2) == 1,
            &lam.literal(),
            || format!("{shape} {} {pi}", lam.literal()),
            || format!("cell dimension changes by {d}"),
        );
    }
    Ok(())
}

fn pi1_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let case = lam.literal();
    let inp = input(shape, lam);
    let pres = pi1_presentation(lam, shape)?;
    let pairs = shape.box_pairs(lam)?;
    t.check(pres.rank() == pairs.len(), &case, &inp, || {
        format!("rank {} vs {} pairs", pres.rank(), pairs.len())
    });
    t.check(pres.is_torsion_free(), &case, &inp, || {
        format!("torsion {:?}", pres.invariant_factors)
    });
    for o in codim_one_orbits(lam, shape)? {
        let l = loop_class(lam, shape, &o.pair)?;
        t.check(loop_weight(lam, &l, o.dual)? == 1, &case, &inp, || {
            format!("loop {l} misses the dual cell of {}", o.pair)
        });
        for &c in &o.matrix.full_support() {
            t.check(loop_weight(lam, &l, c)? == 0, &case, &inp, || {
                format!("loop {l} moves {c:?}")
            });
        }
    }
    Ok(())
}

fn ff_case(shape: &BoxShape, lam: &Partition, t: &mut Tally) -> lambda_pairs::Result<()> {
    let r = region_of(shape, lam)?;
    if r.cells().len() > MAX_CELLS {
        return Ok(());
    }
    match ff_orbit_oracle(lam, shape, 2) {
        Ok(o) => t.check(
            o.matches_classification(&r),
            &lam.literal(),
            input(shape, lam),
            || {
                format!(
                    "{} orbits over F2 disagree with the 0-1 classification",
                    o.orbits.len()
                )
            },
        ),
        Err(e) => t.error(&lam.literal(), input(shape, lam)(), e),
    }
    Ok(())
}

fn relations_suite(shape: &BoxShape) -> lambda_pairs::Result<Tally> {
    let mut t = Tally::default();
    for (i, rep) in fixtures(shape, 1, 10)?.iter().enumerate() {
        let report = check_relations(rep)?;
        let case = format!("fixture {i:03}");
        let json = || serde_json::to_string(rep).unwrap_or_default();
        t.check(report.passes(), &case, json, || {
            format!("{:?}", report.failures.first().map(|f| &f.instance))
        });
        t.check(check_unipotence(rep)?, &case, json, || {
            "some μ is not unipotent".into()
        });
        let g = BoxGraph::new(*shape)?;
        for lam in &g.nodes {
            for gamma in g.active_range() {
                if shape.flavor() == Flavor::D && !gamma.is_positive() {
                    continue;
                }
                t.check(t_from_mu_identity(rep, lam, gamma)?, &case, json, || {
                    format!("telescoping fails at {lam}, {gamma}")
                });
            }
        }
    }
    Ok(t)
}

fn simples_suite(shape: &BoxShape) -> lambda_pairs::Result<Tally> {
    let mut t = Tally::default();
    let simples = enumerate_simples(shape);
    let n = shape.enumerate().len();
    t.check(
        simples.len() == n,
        "count",
        || shape.to_string(),
        || format!("{} simples for {n} partitions", simples.len()),
    );
    for rep in &simples {
        let lam = rep.dims.keys().next().cloned().unwrap_or_default();
        t.check(
            check_relations(rep)?.passes(),
            &lam.literal(),
            || format!("{shape} {}", lam.literal()),
            || "simple module fails a relation".into(),
        );
    }
    Ok(t)
}

/// All paths with at most `max_len` edges.
pub fn monomials(g: &BoxGraph, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..g.len()).map(|i| vec![i]).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = vec![];
        for p in &frontier {
            for n in g.neighbors(*p.last().expect("nonempty")) {
                let mut q = p.clone();
                q.push(n);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn rewrite_suite(shape: &BoxShape) -> lambda_pairs::Result<Tally> {
    let g = BoxGraph::new(*shape)?;
    let reps = fixtures(shape, 1, 10)?;
    let tallies: Vec<Tally> = monomials(&g, 6)
        .par_iter()
        .map(|path| {
            let mut t = Tally::default();
            let names: Vec<String> = path.iter().map(|&i| g.nodes[i].literal()).collect();
            let case = names.join(" ");
            let inp = || format!("{shape} path {case}");
            let x = PathElement::monomial(path.clone());
            let r = match reduce_to_valley_free(&x, &g) {
                Ok(r) => r,
                Err(e) => {
                    t.error(&case, inp(), e);
                    return t;
                }
            };
            t.check(
                r.terms.keys().all(|p| !has_valley(&g, p)),
                &case,
                inp,
                || "valley left".into(),
            );
            t.check(
                r.min_length().is_none_or(|l| l + 1 >= path.len()),
                &case,
                inp,
                || "path shortened".into(),
            );
            t.check(
                reduce_to_valley_free(&r, &g).ok().as_ref() == Some(&r),
                &case,
                inp,
                || "not idempotent".into(),
            );
            for (i, rep) in reps.iter().enumerate() {
                let same =
                    matches!((x.evaluate(rep, &g), r.evaluate(rep, &g)), (Ok(a), Ok(b)) if a == b);
                t.check(same, &case, inp, || {
                    format!("evaluation differs on fixture {i}")
                });
            }
            t
        })
        .collect();
    let mut out = Tally::default();
    for t in tallies {
        out.cases += t.cases;
        out.failures.extend(t.failures);
    }
    Ok(out)
}
