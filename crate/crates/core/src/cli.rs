//! Command-line front end. Reports are JSON on stdout (or `--output`);
//! human-readable summaries go to stderr.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::koszul::{homology_dims, w_dims};
use crate::orbit::{standard_polarization, Functional};
use crate::series::{freeness_identity, hilbert_ym, lie_dims_moebius, pbw_check, w_series, TruncatedSeries};
use crate::verify;
use crate::weyl::{pullback_module, ym_weyl_map, WeylElement, WeylMapOptions};
use crate::ymquotient::{build, GradedNilpotentLie};

#[derive(Parser, Debug)]
#[command(name = "ymalg", version, about = "Exact computations on Yang-Mills Lie algebras")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert series, Lie dimensions, W(n) and the PBW/freeness checks.
    Series {
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        d: usize,
    },
    /// Builds ym(n)/C^l.
    Quotient {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Check the right-nested basis B_l (n = 3, l <= 4).
        #[arg(long = "verify-paper-basis")]
        verify_named_basis: bool,
        #[arg(long)]
        identities: bool,
    },
    /// Homology of the Koszul complex slice by slice.
    Koszul {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_p: usize,
    },
    /// Standard polarization of a functional.
    Orbit {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        functional: PathBuf,
    },
    /// Map U(ym(n)/C^l) -> A_r for a functional.
    Weylmap {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        functional: PathBuf,
        #[arg(long, default_value_t = 3)]
        surjectivity_depth: usize,
        #[arg(long)]
        pullback_degree: Option<usize>,
    },
    /// Runs every numbered check; nonzero exit on any failure.
    VerifyAll {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Deserialize)]
struct AlgebraSpec {
    n: usize,
    l: usize,
}

#[derive(Deserialize)]
struct FunctionalFile {
    algebra: AlgebraSpec,
    coords: BTreeMap<String, Rational>,
}

/// JSON report and whether every check in it passed.
pub struct Report {
    pub json: Value,
    pub ok: bool,
}

fn series_json(s: &TruncatedSeries) -> Value {
    json!(s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn load_functional(path: &Path, n: Option<usize>, l: Option<usize>) -> Result<(GradedNilpotentLie, Functional)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let file: FunctionalFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("bad functional file {}: {e}", path.display())))?;
    for (flag, given, stored) in [("n", n, file.algebra.n), ("l", l, file.algebra.l)] {
        if given.is_some_and(|v| v != stored) {
            return Err(Error::InvalidInput(format!(
                "--{flag} {} disagrees with the functional file ({stored})",
                given.unwrap_or_default()
            )));
        }
    }
    let g = build(file.algebra.n, file.algebra.l)?;
    let f = Functional::from_labels(&g, &file.coords)?;
    Ok((g, f))
}

fn labelled_vec(g: &GradedNilpotentLie, v: &[Rational]) -> Value {
    let mut m = serde_json::Map::new();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            m.insert(g.label(i), json!(c));
        }
    }
    Value::Object(m)
}

fn weyl_json(w: &WeylElement) -> Value {
    json!(w
        .term_list()
        .into_iter()
        .map(|((a, b), c)| json!([[a, b], c]))
        .collect::<Vec<_>>())
}

pub fn series_report(n: usize, d: usize) -> Result<Report> {
    let lie = lie_dims_moebius(n, d)?;
    let pbw = pbw_check(n, &lie, d)?;
    let free = freeness_identity(n, d)?;
    Ok(Report {
        json: json!({
            "n": n,
            "D": d,
            "hilbert": series_json(&hilbert_ym(n, d)?),
            "lie_dims": (1..=d).map(|j| lie.get(j).map(|v| v.to_string())).collect::<Vec<_>>(),
            "w": series_json(&w_series(n, d)?),
            "pbw_check": pbw,
            "freeness": free,
        }),
        ok: pbw && free,
    })
}

pub fn quotient_report(n: usize, l: usize, named_basis: bool, identities: bool) -> Result<Report> {
    let g = build(n, l)?;
    let mut ok = true;
    let mut out = json!({
        "n": n,
        "l": l,
        "dim": g.dim(),
        "dims": g.dims(),
        "labels": g.labels(),
    });
    if named_basis {
        let v = g.verify_named_basis()?;
        ok &= v;
        out["named_basis"] = json!(v);
    }
    if identities {
        let ids = g.check_identities()?;
        ok &= ids.iter().all(|(_, b)| *b);
        out["identities"] = json!(ids
            .into_iter()
            .map(|(s, b)| json!({"identity": s, "holds": b}))
            .collect::<Vec<_>>());
    }
    Ok(Report { json: out, ok })
}

pub fn koszul_report(n: usize, max_p: usize) -> Result<Report> {
    let slices = (0..=max_p)
        .map(|p| Ok(json!({"p": p, "dims": homology_dims(n, p)?.as_array()})))
        .collect::<Result<Vec<_>>>()?;
    let w = w_dims(n, max_p + 1)?;
    Ok(Report {
        json: json!({"n": n, "max_p": max_p, "slices": slices, "w": w}),
        ok: true,
    })
}

pub fn orbit_report(g: &GradedNilpotentLie, f: &Functional) -> Result<Report> {
    let rep = standard_polarization(g, f)?;
    Ok(Report {
        json: json!({
            "n": g.n(),
            "l": g.l(),
            "radical_dim": rep.radical_dim,
            "polarization_basis": rep.polarization.basis().iter().map(|v| labelled_vec(g, v)).collect::<Vec<_>>(),
            "weight": rep.weight,
        }),
        ok: true,
    })
}

pub fn weylmap_report(g: &GradedNilpotentLie, f: &Functional, depth: usize, pullback: Option<usize>) -> Result<Report> {
    let rep = ym_weyl_map(
        g,
        f,
        &WeylMapOptions {
            truncation: None,
            surjectivity_depth: depth,
        },
    )?;
    let mut images = serde_json::Map::new();
    for (label, img) in rep.labels.iter().zip(&rep.basis_images) {
        images.insert(label.clone(), weyl_json(img));
    }
    let mut out = json!({
        "n": rep.n,
        "l": rep.l,
        "weight": rep.weight,
        "complement": rep.complement.iter().map(|&i| g.label(i)).collect::<Vec<_>>(),
        "images": images,
        "hom_check": rep.hom_check,
        "relator_check": rep.relator_check,
    });
    let mut ok = rep.hom_check && rep.relator_check;
    if let Some(s) = &rep.surjectivity {
        let status = if s.surjective { "surjective" } else { "inconclusive" };
        out["surjectivity"] = json!({
            "status": status,
            "max_length": s.max_length,
            "length_reached": s.length_reached,
            "witnesses": s.witnesses.iter().map(|w| json!({
                "target": w.target,
                "expression": w.expression.iter().map(|(word, c)| {
                    json!([word.iter().map(|&i| rep.labels[i].clone()).collect::<Vec<_>>(), c])
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
    }
    if let Some(d) = pullback {
        let m = pullback_module(&rep, d)?;
        out["pullback"] = json!({
            "degree": d,
            "monomials": m.monomials,
            "matrices": m.matrices.iter().map(|mat| mat.row_vecs()).collect::<Vec<_>>(),
        });
    }
    ok &= rep.surjectivity.as_ref().is_none_or(|s| s.surjective);
    Ok(Report { json: out, ok })
}

/// Outcome lines go to stderr with timings; the JSON carries no timings.
pub fn verify_report(seed: u64) -> Result<Report> {
    let mut rows = Vec::new();
    let mut ok = true;
    for id in 1..=11 {
        let t = verify::run(id, seed)?;
        eprintln!(
            "criterion {:>2} {:<28} {} ({:.2?}) {}",
            id,
            t.outcome.name,
            if t.outcome.passed { "PASS" } else { "FAIL" },
            t.elapsed,
            t.outcome.detail
        );
        ok &= t.outcome.passed;
        rows.push(json!({
            "id": id,
            "name": t.outcome.name,
            "passed": t.outcome.passed,
            "detail": t.outcome.detail,
        }));
    }
    Ok(Report {
        json: json!({"seed": seed, "criteria": rows, "all_passed": ok}),
        ok,
    })
}

pub fn report(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Series { n, d } => series_report(*n, *d),
        Command::Quotient {
            n,
            l,
            verify_named_basis,
            identities,
        } => quotient_report(*n, *l, *verify_named_basis, *identities),
        Command::Koszul { n, max_p } => koszul_report(*n, *max_p),
        Command::Orbit { n, l, functional } => {
            let (g, f) = load_functional(functional, *n, *l)?;
            orbit_report(&g, &f)
        }
        Command::Weylmap {
            n,
            l,
            functional,
            surjectivity_depth,
            pullback_degree,
        } => {
            let (g, f) = load_functional(functional, *n, *l)?;
            weylmap_report(&g, &f, *surjectivity_depth, *pullback_degree)
        }
        Command::VerifyAll { seed } => verify_report(*seed),
    }
}

/// Runs the command and returns the process exit code:
/// 0 success, 1 failed check or internal inconsistency, 2 bad input.
pub fn run(cli: &Cli) -> i32 {
    let outcome = report(cli).and_then(|r| {
        let text = serde_json::to_string_pretty(&r.json).expect("JSON values serialize") + "\n";
        match &cli.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(r.ok)
    });
    match outcome {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("error: one or more checks failed");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}
