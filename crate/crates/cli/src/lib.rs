//! Command-line front end for `sasakian-products`.
//!
//! Factors are given either as catalog names (`su2`, `h3`, `sl2r`, `h5`,
//! `heisenberg(3)`, `abelian1`, ...) or as paths to JSON
//! [`AlgebraDocument`](document::AlgebraDocument)s. Catalog names win when a
//! file of the same name exists.

pub mod document;
pub mod error;
pub mod report;
pub mod solve;
pub mod sweep;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sasakian_products::scalar::{float_epsilon, format_rational};
use sasakian_products::{
    catalog, parse_rational, HermitianParams, ProductHermitian, Rational, SasakiStructure, Scalar,
};
use serde::Serialize;

use document::AlgebraDocument;
use error::{exit, CliError};
use report::{Analysis, AnalysisReport, FactorEcho, FactorReport, InputEcho};

#[derive(Debug, Parser)]
#[command(name = "sasprod", version, about = "Hermitian structures on products of Sasakian Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full analysis of one product S1 x S2 with parameters (a, b).
    Analyze(AnalyzeArgs),
    /// Solve for CYT or Bismut-Ricci-flat parameters.
    Solve {
        #[command(subcommand)]
        mode: solve::SolveMode,
    },
    /// Evaluate flags over a rational (a, b) grid.
    Sweep(sweep::SweepArgs),
    /// Built-in Sasakian algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Names and brackets of the built-in algebras.
    List,
    /// Print an entry as an algebra document.
    Show { name: String },
}

#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    /// First factor: catalog name or document path.
    pub factor1: String,
    /// Second factor: catalog name or document path.
    pub factor2: String,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub a: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub b: Rational,
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    pub backend: Backend,
    /// Include connection, curvature and torsion tensors in the report.
    #[arg(long)]
    pub include_tensors: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Text written to stdout and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn success(stdout: String) -> Self {
        Self {
            stdout,
            code: exit::SUCCESS,
        }
    }
}

pub fn render(value: &impl Serialize, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report::to_text(value),
    }
}

/// A resolved factor argument.
#[derive(Clone, Debug)]
pub enum Factor {
    Catalog(String),
    File { path: PathBuf, document: AlgebraDocument },
}

impl Factor {
    pub fn resolve(arg: &str) -> Result<Self, CliError> {
        if catalog::contains(arg) {
            return Ok(Factor::Catalog(arg.to_string()));
        }
        let path = Path::new(arg);
        if path.is_file() {
            let document = AlgebraDocument::load(path)?;
            return Ok(Factor::File {
                path: path.to_path_buf(),
                document,
            });
        }
        Err(CliError::Usage(format!(
            "{arg:?} is neither a catalog entry nor a readable file (see `sasprod catalog list`)"
        )))
    }

    pub fn structure<S: Scalar>(&self) -> Result<SasakiStructure<S>, CliError> {
        match self {
            Factor::Catalog(name) => Ok(catalog::by_name(name)?),
            Factor::File { document, .. } => document.to_structure(),
        }
    }

    pub fn echo(&self) -> FactorEcho {
        match self {
            Factor::Catalog(name) => FactorEcho {
                name: name.clone(),
                source: "catalog",
                path: None,
                document: None,
            },
            Factor::File { path, document } => FactorEcho {
                name: document.name.clone(),
                source: "file",
                path: Some(path.display().to_string()),
                document: Some(document.clone()),
            },
        }
    }
}

fn tolerance<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        float_epsilon()
    }
}

/// Loads both factors over `S` and rejects non-Sasakian ones with the
/// failed axioms.
pub(crate) fn load_pair<S: Scalar>(
    f1: &Factor,
    f2: &Factor,
) -> Result<(SasakiStructure<S>, SasakiStructure<S>, Vec<FactorReport>), CliError> {
    let s1 = f1.structure::<S>()?;
    let s2 = f2.structure::<S>()?;
    let reports = vec![FactorReport::new(&s1), FactorReport::new(&s2)];
    for r in &reports {
        if !r.sasakian {
            return Err(CliError::Validation(format!(
                "{} is not Sasakian: {}",
                r.name,
                r.failures.join("; ")
            )));
        }
    }
    Ok((s1, s2, reports))
}

pub(crate) fn build_product<S: Scalar>(
    s1: SasakiStructure<S>,
    s2: SasakiStructure<S>,
    a: &Rational,
    b: &Rational,
) -> Result<ProductHermitian<S>, CliError> {
    let params = HermitianParams::new(S::from_rational(a), S::from_rational(b))?;
    Ok(ProductHermitian::new(s1, s2, params)?)
}

fn analyze_with<S: Scalar>(args: &AnalyzeArgs, f1: &Factor, f2: &Factor) -> Result<AnalysisReport, CliError> {
    let (s1, s2, factors) = load_pair::<S>(f1, f2)?;
    let p = build_product(s1, s2, &args.a, &args.b)?;
    let analysis = Analysis::run(&p, args.include_tensors)?;
    Ok(AnalysisReport {
        input: InputEcho {
            factor1: f1.echo(),
            factor2: f2.echo(),
            a: format_rational(&args.a),
            b: format_rational(&args.b),
        },
        backend: S::BACKEND,
        tolerance: tolerance::<S>(),
        factors,
        hermitian: analysis.hermitian,
        harmonicity: analysis.harmonicity,
        bismut: analysis.bismut,
        tensors: analysis.tensors,
    })
}

pub fn analyze(args: &AnalyzeArgs) -> Result<AnalysisReport, CliError> {
    let f1 = Factor::resolve(&args.factor1)?;
    let f2 = Factor::resolve(&args.factor2)?;
    match args.backend {
        Backend::Exact => analyze_with::<Rational>(args, &f1, &f2),
        Backend::Float => analyze_with::<f64>(args, &f1, &f2),
    }
}

#[derive(Serialize)]
struct CatalogEntry {
    name: &'static str,
    description: &'static str,
}

fn catalog_command(action: &CatalogAction, format: Format) -> Result<Outcome, CliError> {
    match action {
        CatalogAction::List => {
            let entries: Vec<CatalogEntry> = catalog::ENTRIES
                .iter()
                .map(|(name, description)| CatalogEntry { name, description })
                .collect();
            let out = match format {
                Format::Json => render(&entries, format),
                Format::Text => entries
                    .iter()
                    .map(|e| format!("{:<15} {}\n", e.name, e.description))
                    .collect(),
            };
            Ok(Outcome::success(out))
        }
        CatalogAction::Show { name } => {
            let s = catalog::by_name::<Rational>(name)?;
            Ok(Outcome::success(render(&AlgebraDocument::from_structure(&s), format)))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze(args) => Ok(Outcome::success(render(&analyze(args)?, cli.format))),
        Command::Solve { mode } => solve::run(mode, cli.format),
        Command::Sweep(args) => Ok(Outcome::success(sweep::run(args, cli.format)?)),
        Command::Catalog { action } => catalog_command(action, cli.format),
    }
}
