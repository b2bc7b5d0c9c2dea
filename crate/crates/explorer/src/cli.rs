use std::path::PathBuf;

use clap::{Parser, Subcommand};
use lambda_pairs::combinatorics::*;
use lambda_pairs::orbit::*;
use lambda_pairs::quiver::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::export::{
    cells_poset, orbit_poset, ExportBundle, Fiber, Format, Provenance, MAX_PARTITIONS,
};
use crate::oracle::{ff_orbit_oracle, OracleError};
use crate::suites::{run_suite, SuiteError};

#[derive(Parser, Debug)]
#[command(
    name = "lambda-explorer",
    version,
    about = "Explore lambda-pairs, orbit posets and quiver relations"
)]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The λ-pairs of a partition with parents and box flags.
    Pairs {
        lambda: String,
        #[arg(long = "type", default_value = "A")]
        flavor: String,
        #[arg(long = "box")]
        shape: Option<String>,
        /// Window `[-r, r]`; defaults to the smallest one holding the diagram.
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Apply the move along a pair.
    Move {
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        beta: String,
        #[arg(long = "type", default_value = "A")]
        flavor: String,
    },
    /// Complete λ → λ1, λ → λ2 to diamonds.
    Diamond {
        lambda: String,
        lambda1: String,
        lambda2: String,
        #[arg(long = "type", default_value = "A")]
        flavor: String,
    },
    /// Hasse diagram of the cells of a box or of the orbits over one cell.
    Poset {
        #[arg(value_parser = ["cells", "orbits"])]
        scope: String,
        #[arg(long = "box")]
        shape: String,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value = "primal")]
        fiber: Fiber,
    },
    /// Orbits of codimension at most two over one cell, with labels.
    Orbits {
        #[arg(long = "box")]
        shape: String,
        #[arg(long)]
        lambda: String,
    },
    /// Presentation of the fundamental group of the open orbit and the loop classes.
    Pi1 {
        #[arg(long = "box")]
        shape: String,
        #[arg(long)]
        lambda: String,
    },
    /// Path algebra tools.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Run a consistency suite.
    Check {
        suite: String,
        #[arg(long = "box")]
        shape: String,
    },
    /// Brute-force orbits over a finite field.
    Oracle {
        #[arg(long = "box")]
        shape: String,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        field: u8,
    },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraAction {
    /// The valley-free paths of a box.
    Basis {
        #[arg(long = "box")]
        shape: String,
    },
    /// Reduce a path, given as partitions separated by `;`.
    Reduce {
        #[arg(long = "box")]
        shape: String,
        path: String,
    },
    /// Check a representation stored as JSON.
    CheckRep { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<lambda_pairs::Error> for CliError {
    fn from(e: lambda_pairs::Error) -> Self {
        match e {
            lambda_pairs::Error::InvalidPartition(_) | lambda_pairs::Error::NotSymmetric(_) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Core(e) => e.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Core(e) => e.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

/// Rendered output and whether the command's check passed.
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn partition(s: &str) -> Result<Partition, CliError> {
    s.parse().map_err(usage)
}

fn shape(s: &str) -> Result<BoxShape, CliError> {
    s.parse().map_err(usage)
}

/// Accepts `3x3` for `A3x3` when the type is given separately.
fn box_for(s: &str, f: Flavor) -> Result<BoxShape, CliError> {
    let b = if s.starts_with(|c: char| c.is_ascii_digit()) {
        shape(&format!("{f:?}{s}"))?
    } else {
        shape(s)?
    };
    if b.flavor() != f {
        return Err(CliError::Usage(format!("box {b} does not have type {f:?}")));
    }
    Ok(b)
}

fn flavor(s: &str) -> Result<Flavor, CliError> {
    match s {
        "A" | "a" => Ok(Flavor::A),
        "D" | "d" => Ok(Flavor::D),
        _ => Err(CliError::Usage(format!(
            "unknown type {s:?}; expected A or D"
        ))),
    }
}

fn half(s: &str) -> Result<HalfInt, CliError> {
    s.parse().map_err(usage)
}

fn guard(b: &BoxShape) -> Result<(), CliError> {
    if b.size_hint() > MAX_PARTITIONS {
        return Err(CliError::Usage(format!(
            "{b} has {} partitions, more than {MAX_PARTITIONS}; pick a smaller box",
            b.size_hint()
        )));
    }
    Ok(())
}

fn bundle(provenance: Provenance, payload: Value, text: String) -> ExportBundle {
    ExportBundle {
        provenance,
        payload,
        text,
        dot: None,
    }
}

fn pair_json(p: &LambdaPair) -> Value {
    json!([p.alpha.to_string(), p.beta.to_string()])
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (b, passed) = build(&cli.command)?;
    let output = b.render(cli.format).ok_or_else(|| {
        CliError::Usage("this command has no DOT form; use --format json or text".into())
    })?;
    Ok(Outcome { output, passed })
}

fn build(cmd: &Command) -> Result<(ExportBundle, bool), CliError> {
    match cmd {
        Command::Pairs {
            lambda,
            flavor: f,
            shape: s,
            radius,
        } => {
            let lam = partition(lambda)?;
            let f = flavor(f)?;
            let b = s.as_deref().map(|s| box_for(s, f)).transpose()?;
            let window = Window::symmetric(radius.unwrap_or_else(|| lam.support_radius()).max(1));
            let forest = match (f, b) {
                (Flavor::A, Some(BoxShape::A { k, l })) => lambda_pairs(&lam, window, Some((k, l))),
                (Flavor::A, _) => lambda_pairs(&lam, window, None),
                (Flavor::D, Some(BoxShape::D { k })) => lambda_pairs_d(&lam, window, Some(k))?,
                (Flavor::D, _) => lambda_pairs_d(&lam, window, None)?,
            };
            let mut text = format!("pairs of {lam} in [{}, {}]\n", window.lo, window.hi);
            let mut rows = vec![];
            for (i, p) in forest.pairs.iter().enumerate() {
                let meets =
                    |g: HalfInt| window.contains(g) || (f == Flavor::D && window.contains(-g));
                if !meets(p.alpha) && !meets(p.beta) {
                    continue;
                }
                let parent = forest.parent[i].map(|j| forest.pairs[j]);
                let flag = if forest.in_box[i] { "  box" } else { "" };
                let par = parent.map(|q| format!("  parent {q}")).unwrap_or_default();
                text.push_str(&format!("{p}{par}{flag}\n"));
                rows.push(json!({
                    "pair": pair_json(p),
                    "parent": parent.as_ref().map(pair_json),
                    "in_box": forest.in_box[i],
                }));
            }
            let payload = json!({ "lambda": lam.literal(), "window": [window.lo.to_string(), window.hi.to_string()], "pairs": rows });
            Ok((bundle(Provenance::new(b, f), payload, text), true))
        }
        Command::Move {
            lambda,
            alpha,
            beta,
            flavor: f,
        } => {
            let lam = partition(lambda)?;
            let f = flavor(f)?;
            let pair = LambdaPair::new(half(alpha)?, half(beta)?, f);
            let to = apply_move(&lam, &pair)?;
            let payload = json!({ "lambda": lam.literal(), "pair": pair_json(&pair), "result": to.literal() });
            Ok((
                bundle(
                    Provenance::new(None, f),
                    payload,
                    format!("{lam} -{pair}-> {to}\n"),
                ),
                true,
            ))
        }
        Command::Diamond {
            lambda,
            lambda1,
            lambda2,
            flavor: f,
        } => {
            let (lam, l1, l2) = (partition(lambda)?, partition(lambda1)?, partition(lambda2)?);
            let f = flavor(f)?;
            let far = complete_diamond(&lam, &l1, &l2, f)?;
            let names: Vec<String> = far.iter().map(Partition::literal).collect();
            let text = if far.is_empty() {
                "no completion\n".to_string()
            } else {
                far.iter()
                    .map(|x| format!("{{{lam}, {l1}, {x}, {l2}}}\n"))
                    .collect()
            };
            let payload = json!({ "lambda": lam.literal(), "lambda1": l1.literal(), "lambda2": l2.literal(), "completions": names });
            Ok((bundle(Provenance::new(None, f), payload, text), true))
        }
        Command::Poset {
            scope,
            shape: s,
            lambda,
            fiber,
        } => {
            let b = shape(s)?;
            guard(&b)?;
            let poset = if scope == "cells" {
                cells_poset(&b)?
            } else {
                let lam = partition(
                    lambda
                        .as_deref()
                        .ok_or_else(|| usage("poset orbits needs --lambda"))?,
                )?;
                orbit_poset(&lam, &b, *fiber)?
            };
            Ok((poset.bundle(Provenance::new(Some(b), b.flavor())), true))
        }
        Command::Orbits { shape: s, lambda } => {
            let b = shape(s)?;
            let lam = partition(lambda)?;
            let top = top_matrix(&lam, &b)?;
            let mut text = format!("top {:?} dim {}\n", top.support, orbit_dim(&top)?);
            let mut ones = vec![];
            for o in codim_one_orbits(&lam, &b)? {
                text.push_str(&format!(
                    "codim 1  O^{}  {:?}  -> {}\n",
                    o.pair, o.matrix.support, o.target
                ));
                ones.push(json!({ "pair": pair_json(&o.pair), "support": o.matrix.support, "dual": o.dual, "target": o.target.literal() }));
            }
            let mut twos = vec![];
            for o in codim_two_orbits(&lam, &b)? {
                text.push_str(&format!(
                    "codim 2  {}  {:?}  -> {}\n",
                    o.label, o.matrix.support, o.target
                ));
                twos.push(json!({
                    "label": o.label.to_string(),
                    "support": o.matrix.support,
                    "dual": o.dual,
                    "target": o.target.literal(),
                    "covers": o.covers.iter().map(pair_json).collect::<Vec<_>>(),
                    "diamond": o.diamond.as_ref().map(|d| d.0.iter().map(Partition::literal).collect::<Vec<_>>()),
                }));
            }
            let payload = json!({ "lambda": lam.literal(), "top": top.support, "codim1": ones, "codim2": twos });
            Ok((
                bundle(Provenance::new(Some(b), b.flavor()), payload, text),
                true,
            ))
        }
        Command::Pi1 { shape: s, lambda } => {
            let b = shape(s)?;
            let lam = partition(lambda)?;
            let pres = pi1_presentation(&lam, &b)?;
            let gens: Vec<String> = pres.generators.iter().map(|g| g.to_string()).collect();
            let mut text = format!("generators {}\nrank {}\n", gens.join(" "), pres.rank());
            let mut loops = vec![];
            for p in b.box_pairs(&lam)? {
                let l = loop_class(&lam, &b, &p)?;
                text.push_str(&format!("loop {p}: {l}\n"));
                loops.push(json!({ "pair": pair_json(&p), "word": l.word.iter().map(|g| g.to_string()).collect::<Vec<_>>() }));
            }
            let payload = json!({
                "lambda": lam.literal(),
                "generators": gens,
                "relations": pres.relations,
                "invariant_factors": pres.invariant_factors,
                "rank": pres.rank(),
                "loops": loops,
            });
            Ok((
                bundle(Provenance::new(Some(b), b.flavor()), payload, text),
                true,
            ))
        }
        Command::Algebra { action } => algebra(action),
        Command::Check { suite, shape: s } => {
            let b = shape(s)?;
            let r = run_suite(suite, &b)?;
            let mut text = format!(
                "{} {} {}: {} cases, {} failures, {} ms\n",
                if r.passed() { "PASS" } else { "FAIL" },
                r.suite,
                r.shape,
                r.cases,
                r.failures.len(),
                r.wall_ms
            );
            for f in r.failures.iter().take(20) {
                text.push_str(&format!("  {}: {} [{}]\n", f.case, f.detail, f.input));
            }
            let passed = r.passed();
            Ok((
                bundle(
                    Provenance::new(Some(b), b.flavor()),
                    serde_json::to_value(&r).expect("serializable"),
                    text,
                ),
                passed,
            ))
        }
        Command::Oracle {
            shape: s,
            lambda,
            field,
        } => {
            let b = shape(s)?;
            let lam = partition(lambda)?;
            let o = ff_orbit_oracle(&lam, &b, *field)?;
            let region = Region::new(lam.clone(), b)?;
            let ok = o.matches_classification(&region);
            let mut text = format!(
                "{} orbits on {} matrices over F{}\n",
                o.orbits.len(),
                o.matrices,
                o.field
            );
            for orbit in &o.orbits {
                text.push_str(&format!(
                    "  size {:>4}  0-1 {:?}\n",
                    orbit.size, orbit.zero_one
                ));
            }
            text.push_str(if ok {
                "matches the 0-1 classification\n"
            } else {
                "DISAGREES with the 0-1 classification\n"
            });
            let mut payload = serde_json::to_value(&o).expect("serializable");
            payload["lambda"] = json!(lam.literal());
            payload["matches_classification"] = json!(ok);
            Ok((
                bundle(Provenance::new(Some(b), b.flavor()), payload, text),
                ok,
            ))
        }
    }
}

fn algebra(action: &AlgebraAction) -> Result<(ExportBundle, bool), CliError> {
    match action {
        AlgebraAction::Basis { shape: s } => {
            let b = shape(s)?;
            guard(&b)?;
            let g = BoxGraph::new(b)?;
            let basis = valley_free_basis(&g);
            let paths: Vec<Vec<String>> = basis
                .iter()
                .map(|p| p.iter().map(|&i| g.nodes[i].literal()).collect())
                .collect();
            let mut text = format!("{} valley-free paths\n", paths.len());
            for p in &paths {
                text.push_str(&format!("({})\n", p.join(", ")));
            }
            let payload = json!({ "count": paths.len(), "longest": g.max_valley_free_length(), "paths": paths });
            Ok((
                bundle(Provenance::new(Some(b), b.flavor()), payload, text),
                true,
            ))
        }
        AlgebraAction::Reduce { shape: s, path } => {
            let b = shape(s)?;
            guard(&b)?;
            let g = BoxGraph::new(b)?;
            let mut ids = vec![];
            for lit in path.split(';').map(str::trim) {
                let lam = partition(lit)?;
                ids.push(
                    g.id(&lam)
                        .ok_or_else(|| usage(format!("{lam} is not in {b}")))?,
                );
            }
            if ids.windows(2).any(|w| !g.adjacent(w[0], w[1])) {
                return Err(usage("consecutive path nodes must be adjacent"));
            }
            let r = reduce_to_valley_free(&PathElement::monomial(ids), &g)?;
            let terms: Vec<Value> = r
                .terms
                .iter()
                .map(|(p, c)| json!({ "path": p.iter().map(|&i| g.nodes[i].literal()).collect::<Vec<_>>(), "coefficient": c.to_string() }))
                .collect();
            let text = format!("{}\n", r.display(&g));
            Ok((
                bundle(
                    Provenance::new(Some(b), b.flavor()),
                    json!({ "terms": terms }),
                    text,
                ),
                true,
            ))
        }
        AlgebraAction::CheckRep { file } => {
            let raw = std::fs::read_to_string(file)
                .map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let rep: QuiverRep = serde_json::from_str(&raw).map_err(usage)?;
            let report = check_relations(&rep)?;
            let mut text = format!("{}\n", if report.passes() { "PASS" } else { "FAIL" });
            for (id, n) in &report.checked {
                text.push_str(&format!("  {id}: {n} instances\n"));
            }
            for f in &report.failures {
                text.push_str(&format!("  failed {}: {}\n", f.id, f.instance));
            }
            let passed = report.passes();
            let payload = serde_json::to_value(&report).expect("serializable");
            Ok((
                bundle(
                    Provenance::new(Some(rep.shape), rep.shape.flavor()),
                    payload,
                    text,
                ),
                passed,
            ))
        }
    }
}
