use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use curvecal::cobordism::{normalize, CobordismChain};
use curvecal::diagram::{reduce_to_minimal, CrossingDiagram};
use curvecal::heegaard::{
    classify, parse_diagram_file, presentation, ClassificationReport, HeegaardDiagram,
};
use curvecal::intersection::{
    basis_matrix, degree_lower_bound, linear_expression, mu_coords, pairing, verify_basis,
    BasisCandidate,
};
use curvecal::words::{parse_word_with, CurveWord, ParseOptions};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

const MAX_EXP_VAR: &str = "CURVECAL_MAX_EXP";

/// Bad invocation detected after argument parsing; exits like a clap error.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser)]
#[command(
    name = "curvecal",
    version,
    about = "Curve intersection calculus and handle-data fundamental groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct Genus {
    /// Surface genus k.
    #[arg(short = 'g', long = "genus", value_parser = clap::value_parser!(u32).range(1..))]
    genus: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic intersection number l·g.
    Intersect {
        #[command(flatten)]
        genus: Genus,
        /// First word (or @file).
        l: String,
        /// Second word (or @file).
        g: String,
        #[command(flatten)]
        out: Output,
    },
    /// Lower bound on the number of crossings of l and g.
    DegreeBound {
        #[command(flatten)]
        genus: Genus,
        l: String,
        g: String,
        #[command(flatten)]
        out: Output,
    },
    /// Homology class of a word in the canonical basis.
    Express {
        #[command(flatten)]
        genus: Genus,
        word: String,
        #[command(flatten)]
        out: Output,
    },
    /// Checks whether (theta, gamma) is a unimodular change of basis.
    BasisCheck {
        #[command(flatten)]
        genus: Genus,
        /// The k words theta_1..theta_k.
        #[arg(long, num_args = 1.., required = true)]
        theta: Vec<String>,
        /// The k words gamma_1..gamma_k.
        #[arg(long, num_args = 1.., required = true)]
        gamma: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Removes bigons from a crossing diagram (JSON file) until none remain.
    DiagramReduce {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Fundamental-group presentation of the manifold given by attaching words.
    Pi1 {
        #[command(flatten)]
        genus: Genus,
        words: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Block decomposition and free-product classification.
    Classify {
        #[arg(short = 'g', long = "genus", value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "diagram")]
        genus: Option<u32>,
        /// Diagram file: "genus k" followed by k attaching words.
        #[arg(long)]
        diagram: Option<PathBuf>,
        words: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Cancels critical points of a cobordism chain (JSON file).
    CobordismNormalize {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Fundamental groups of the genus-1 diagrams a1^q b1^p.
    LensTable {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..))]
        min_p: i64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        max_p: i64,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_options() -> Result<ParseOptions> {
    let mut opts = ParseOptions::default();
    if let Ok(raw) = std::env::var(MAX_EXP_VAR) {
        opts.max_exponent = raw
            .trim()
            .parse::<i64>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| {
                usage(format!(
                    "{MAX_EXP_VAR} must be a positive integer, got {raw:?}"
                ))
            })?;
    }
    Ok(opts)
}

/// Word argument text, following `@path` indirection.
fn word_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
            Ok(text.trim().to_string())
        }
        None => Ok(arg.to_string()),
    }
}

fn word(arg: &str, genus: u32, opts: ParseOptions) -> Result<CurveWord> {
    let text = word_text(arg)?;
    parse_word_with(&text, genus, opts).with_context(|| format!("in word {text:?}"))
}

fn words(args: &[String], genus: u32, opts: ParseOptions) -> Result<Vec<CurveWord>> {
    args.iter().map(|a| word(a, genus, opts)).collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid input in {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn report_json(r: &ClassificationReport) -> serde_json::Value {
    serde_json::to_value(r).expect("report serializes")
}

fn print_report(r: &ClassificationReport) {
    println!("pi1: {}", r.pi1);
    if r.is_decided() {
        let join = |v: Vec<String>| v.join(" ");
        println!(
            "sigma: {}",
            join(r.sigma.iter().map(ToString::to_string).collect())
        );
        println!(
            "orders: {}",
            join(r.orders.iter().map(ToString::to_string).collect())
        );
    }
    println!("simply_connected: {}", r.simply_connected);
    println!("finite: {}", r.finite);
    println!("prime: {}", r.prime);
}

fn heegaard(genus: u32, args: &[String], opts: ParseOptions) -> Result<HeegaardDiagram> {
    Ok(HeegaardDiagram::new(genus, words(args, genus, opts)?)?)
}

fn run(cli: Cli) -> Result<()> {
    let opts = parse_options()?;
    match cli.command {
        Command::Intersect { genus, l, g, out } => {
            let v = pairing(&word(&l, genus.genus, opts)?, &word(&g, genus.genus, opts)?)?;
            if out.json {
                print_json(&json!({ "pairing": v }))?;
            } else {
                println!("{v}");
            }
        }
        Command::DegreeBound { genus, l, g, out } => {
            let v =
                degree_lower_bound(&word(&l, genus.genus, opts)?, &word(&g, genus.genus, opts)?)?;
            if out.json {
                print_json(&json!({ "degree_lower_bound": v }))?;
            } else {
                println!("{v}");
            }
        }
        Command::Express {
            genus,
            word: w,
            out,
        } => {
            let w = word(&w, genus.genus, opts)?;
            let expr = linear_expression(&w);
            if out.json {
                let mu = mu_coords(&w);
                print_json(&json!({
                    "expression": expr,
                    "dot_alpha": mu.dot_alpha,
                    "dot_beta": mu.dot_beta,
                }))?;
            } else {
                println!("{expr}");
            }
        }
        Command::BasisCheck {
            genus,
            theta,
            gamma,
            out,
        } => {
            let k = genus.genus;
            let c = BasisCandidate::new(k, words(&theta, k, opts)?, words(&gamma, k, opts)?)?;
            let m = basis_matrix(&c)?;
            let v = verify_basis(&m);
            let sigma: Option<Vec<usize>> = v
                .block_permutation
                .as_ref()
                .map(|s| s.iter().map(|j| j + 1).collect());
            if out.json {
                print_json(&json!({
                    "matrix": m,
                    "unimodular": v.unimodular,
                    "block_permutation": sigma,
                    "block_determinants": v.block_determinants,
                    "diagnostics": v.diagnostics,
                }))?;
            } else {
                println!("H =");
                for row in &m.h {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                    println!("  [{} ]", cells.join(""));
                }
                println!("det: {}", m.det);
                println!("unimodular: {}", v.unimodular);
                match &sigma {
                    Some(s) => {
                        let s: Vec<String> = s.iter().map(ToString::to_string).collect();
                        println!("sigma: {}", s.join(" "));
                    }
                    None => println!("sigma: none"),
                }
                if !v.diagnostics.is_empty() {
                    println!("diagnostics: {}", v.diagnostics);
                }
            }
        }
        Command::DiagramReduce { file, out } => {
            let d: CrossingDiagram = read_json(&file)?;
            let r = reduce_to_minimal(&d);
            if out.json {
                print_json(&json!({
                    "diagram": r.diagram,
                    "steps": r.steps,
                    "trace": r.trace.iter().map(|b| [&b.p, &b.q]).collect::<Vec<_>>(),
                }))?;
            } else {
                for b in &r.trace {
                    println!("removed {} {}", b.p, b.q);
                }
                println!("crossings: {} -> {}", d.len(), r.diagram.len());
                println!("algebraic sum: {}", r.diagram.algebraic_sum());
            }
        }
        Command::Pi1 {
            genus,
            words: args,
            out,
        } => {
            let d = heegaard(genus.genus, &args, opts)?;
            let p = presentation(&d);
            let r = classify(&d);
            if out.json {
                let mut v = report_json(&r);
                v["generators"] = json!(p.generators());
                v["relators"] = json!(p.relator_strings());
                v["presentation"] = json!(p.to_string());
                print_json(&v)?;
            } else {
                println!("{p}");
                println!("{}", r.pi1);
            }
        }
        Command::Classify {
            genus,
            diagram,
            words: args,
            out,
        } => {
            let d = match (diagram, genus) {
                (Some(path), _) => {
                    if !args.is_empty() {
                        return Err(usage("--diagram takes no word arguments"));
                    }
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("cannot read {}", path.display()))?;
                    parse_diagram_file(&text, opts)?
                }
                (None, Some(k)) => heegaard(k, &args, opts)?,
                (None, None) => {
                    return Err(usage(
                        "either -g <k> with k words or --diagram <file> is required",
                    ))
                }
            };
            let r = classify(&d);
            if out.json {
                print_json(&r)?;
            } else {
                print_report(&r);
            }
        }
        Command::CobordismNormalize { file, out } => {
            let chain: CobordismChain = read_json(&file)?;
            let n = normalize(&chain);
            if out.json {
                print_json(&n)?;
            } else {
                for m in &n.moves {
                    println!(
                        "cancel {} ({}) / {} ({}) -> {:?}",
                        m.lower, m.indices[0], m.upper, m.indices[1], m.type_after
                    );
                }
                println!("type: {:?} -> {:?}", chain.type_vector(), n.final_type);
            }
        }
        Command::LensTable { min_p, max_p, out } => {
            if min_p > max_p {
                return Err(usage(format!("empty range: min-p {min_p} > max-p {max_p}")));
            }
            let rows: Vec<(i64, i64, ClassificationReport)> = (min_p..=max_p)
                .into_par_iter()
                .map(|p| {
                    (1..=p)
                        .filter(|&q| gcd(p, q) == 1)
                        .map(|q| {
                            let text = format!("a1^{q} b1^{p}");
                            let d = curvecal::heegaard::build_heegaard_with(1, &[text], opts)?;
                            Ok((p, q, classify(&d)))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            if out.json {
                let table: Vec<_> = rows
                    .iter()
                    .map(|(p, q, r)| json!({ "p": p, "q": q, "pi1": r.pi1, "finite": r.finite }))
                    .collect();
                print_json(&table)?;
            } else {
                println!("{:>3} {:>3}  pi1", "p", "q");
                for (p, q, r) in &rows {
                    println!("{p:>3} {q:>3}  {}", r.pi1);
                }
            }
        }
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
