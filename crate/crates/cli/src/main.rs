//! `bredon`: group information, Mackey functor validation, Bredon cohomology and
//! collapse verification from the command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input or validation error.

mod input;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use bredon_core::bredon::{assemble_bh, chern_target, verify_collapse, Parity};
use bredon_core::selftest::{self, Corpus};
use bredon_core::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use input::Coeff;

#[derive(Parser, Debug)]
#[command(name = "bredon", version, about = "Exact Bredon cohomology with Mackey coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subgroup classes, normalizers, centralizers and Weyl groups.
    Info(InfoArgs),
    /// Checks the Mackey axioms for a coefficient functor.
    Mackey(MackeyArgs),
    /// Assembled Bredon cohomology of a G-CW complex.
    Bredon(ComputeArgs),
    /// Compares Bredon cohomology with the Chern character target.
    Chern(ChernArgs),
    /// Runs the invariant suite on the bundled corpus or a data directory.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum QParity {
    All,
    Even,
    Odd,
}

impl From<QParity> for Parity {
    fn from(p: QParity) -> Self {
        match p {
            QParity::All => Parity::All,
            QParity::Even => Parity::Even,
            QParity::Odd => Parity::Odd,
        }
    }
}

#[derive(Args, Debug)]
struct InfoArgs {
    /// Bundled group name or path to a group table.
    #[arg(long)]
    group: String,
    /// Largest group order accepted.
    #[arg(long, default_value_t = 64)]
    cap: usize,
    /// Also list double cosets `K\G/H` for the class representatives with these indices.
    #[arg(long, num_args = 2, value_names = ["K", "H"])]
    double_cosets: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CoeffArgs {
    #[arg(long, value_enum, default_value_t = Coeff::Constant)]
    coeff: Coeff,
    /// Mackey functor file, for `--coeff file`.
    #[arg(long)]
    coeff_file: Option<PathBuf>,
    /// Extra character tables for non-abelian subgroups.
    #[arg(long)]
    chartab: Vec<PathBuf>,
    #[arg(long, default_value_t = 64)]
    cap: usize,
}

#[derive(Args, Debug)]
struct MackeyArgs {
    #[arg(long)]
    group: String,
    #[command(flatten)]
    coeffs: CoeffArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Bundled space, `point`, `orbit:{..}` or a path to a G-CW file.
    #[arg(long)]
    space: String,
    /// Group, when the space does not name one.
    #[arg(long)]
    group: Option<String>,
    #[command(flatten)]
    coeffs: CoeffArgs,
    /// Degrees q carrying the functor.
    #[arg(long, value_parser = input::parse_range, default_value = "0..0", allow_hyphen_values = true)]
    q_range: RangeInclusive<i64>,
    #[arg(long, value_enum, default_value_t = QParity::All)]
    q_parity: QParity,
    /// Total degrees n; defaults to 0..dim X.
    #[arg(long, value_parser = input::parse_range, allow_hyphen_values = true)]
    n_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ChernArgs {
    #[command(flatten)]
    compute: ComputeArgs,
    /// Only print the target side.
    #[arg(long)]
    target_only: bool,
    #[arg(long, hide = true)]
    inject_fault: Option<i64>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Restrict to groups of order at most 8.
    #[arg(long)]
    quick: bool,
    /// Directory with `groups/`, `chartabs/` and `spaces/`; defaults to the bundled corpus.
    #[arg(long)]
    data_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Info(a) => info(&a),
        Command::Mackey(a) => mackey(&a),
        Command::Bredon(a) => bredon(&a),
        Command::Chern(a) => chern(&a),
        Command::Selftest(a) => run_selftest(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn text_set(elems: &[usize]) -> String {
    let parts: Vec<String> = elems.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn info(a: &InfoArgs) -> Result<u8> {
    let g = input::group(&a.group)?;
    let t = input::table(&g, a.cap)?;
    let mut classes = Vec::new();
    for (k, c) in t.classes().iter().enumerate() {
        classes.push(json!({
            "index": k,
            "rep": c.rep.elements(),
            "order": c.rep.order(),
            "size": c.members.len(),
            "normalizer": c.normalizer.order(),
            "centralizer": c.centralizer.order(),
            "weyl": c.weyl.order(),
        }));
    }
    let double = match &a.double_cosets {
        Some(v) => {
            let (k, h) = (v[0], v[1]);
            if k >= t.num_classes() || h >= t.num_classes() {
                return Err(bredon_core::Error::Unknown {
                    kind: "class index",
                    name: format!("{k} or {h}"),
                });
            }
            let d = t.double_cosets(&t.rep(k), &t.rep(h));
            Some((k, h, d.representatives, d.cosets))
        }
        None => None,
    };
    match a.format {
        Format::Json => {
            let mut doc = json!({ "group": g.name(), "order": g.order(), "classes": classes });
            if let Some((k, h, reps, cosets)) = &double {
                doc["double_cosets"] = json!({ "left": k, "right": h, "representatives": reps, "cosets": cosets });
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Text => {
            println!("group {} order {} classes {}", g.name(), g.order(), t.num_classes());
            for c in &classes {
                let rep: Vec<usize> = serde_json::from_value(c["rep"].clone()).expect("elements");
                println!(
                    "class {} rep={} order={} conjugates={} normalizer={} centralizer={} weyl={}",
                    c["index"], text_set(&rep), c["order"], c["size"], c["normalizer"], c["centralizer"], c["weyl"]
                );
            }
            if let Some((k, h, reps, cosets)) = &double {
                println!("double cosets {}\\G/{}: {}", text_set(&t.rep(*k).elements()), text_set(&t.rep(*h).elements()), reps.len());
                for (r, c) in reps.iter().zip(cosets) {
                    println!("  {r}: {}", text_set(c));
                }
            }
        }
    }
    Ok(0)
}

fn mackey(a: &MackeyArgs) -> Result<u8> {
    let g = input::group(&a.group)?;
    let t = input::table(&g, a.coeffs.cap)?;
    let lib = input::library(&a.coeffs.chartab)?;
    let m = input::mackey(a.coeffs.coeff, a.coeffs.coeff_file.as_deref(), &t, &lib)?;
    let report = m.validate();
    match a.format {
        Format::Text => print!("{report}"),
        Format::Json => {
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| json!({ "axiom": c.axiom.label(), "cases": c.cases, "witness": c.witness }))
                .collect();
            let doc = json!({
                "functor": report.functor,
                "group": report.group,
                "passed": report.passed(),
                "checks": checks,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(if report.passed() { 0 } else { 2 })
}

struct Prepared {
    space: bredon_core::gcw::GCWComplex,
    coeffs: bredon_core::bredon::CoefficientSystem,
    ns: RangeInclusive<i64>,
}

fn prepare(a: &ComputeArgs) -> Result<Prepared> {
    let space = input::space(&a.space, a.group.as_deref())?;
    let t = input::table(space.group(), a.coeffs.cap)?;
    let lib = input::library(&a.coeffs.chartab)?;
    let m = input::mackey(a.coeffs.coeff, a.coeffs.coeff_file.as_deref(), &t, &lib)?;
    m.validate().into_result()?;
    let coeffs = input::coefficients(m, a.q_range.clone(), a.q_parity.into())?;
    let ns = a.n_range.clone().unwrap_or(0..=space.dim() as i64);
    Ok(Prepared { space, coeffs, ns })
}

fn bredon(a: &ComputeArgs) -> Result<u8> {
    let p = prepare(a)?;
    let report = assemble_bh(&p.space, &p.coeffs, p.ns)?;
    match a.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(0)
}

fn chern(a: &ChernArgs) -> Result<u8> {
    let p = prepare(&a.compute)?;
    if a.target_only {
        let report = chern_target(&p.space, &p.coeffs, p.ns)?;
        match a.compute.format {
            Format::Text => print!("{}", report.to_text()),
            Format::Json => println!("{}", report.to_json()),
        }
        return Ok(0);
    }
    let mut report = verify_collapse(&p.space, &p.coeffs, p.ns)?;
    if let Some(n) = a.inject_fault {
        report.inject_fault(n);
    }
    match a.compute.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    let mismatches = report.mismatches();
    if mismatches.is_empty() {
        return Ok(0);
    }
    for (n, b, c) in mismatches {
        eprintln!("mismatch at n={n}: bredon={b} chern={c}");
        for r in report.records.iter().filter(|r| r.n == n) {
            eprintln!("  {r}");
        }
    }
    Ok(1)
}

fn run_selftest(a: &SelftestArgs) -> Result<u8> {
    let corpus = match &a.data_dir {
        Some(dir) => Corpus::from_dir(dir)?,
        None => Corpus::bundled(),
    };
    let report = selftest::run(&corpus, a.quick);
    print!("{report}");
    for f in report.failures() {
        eprintln!("failed: {} ({})", f.file, f.check);
    }
    Ok(if report.passed() { 0 } else { 2 })
}
