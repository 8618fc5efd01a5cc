//! Flag evaluation over a rational grid of `(a, b)`.
//!
//! Ranges are `lo` or `lo:hi` (inclusive). Predicates are comma-separated
//! flag names, each optionally negated with `!`; a row matches when every
//! named flag is `true` (or `false` when negated). Flags that do not apply
//! to the product never match.

use num_traits::Zero;
use rayon::prelude::*;
use sasakian_products::scalar::{float_epsilon, format_rational};
use sasakian_products::{Rational, Scalar};
use serde::Serialize;

use crate::error::CliError;
use crate::report::{Analysis, Flags, FLAG_NAMES};
use crate::{build_product, load_pair, rational_arg, render, Backend, Factor, Format};

/// Upper bound on the number of grid points.
pub const MAX_POINTS: usize = 10_000;

#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    pub factor1: String,
    pub factor2: String,
    /// Range of a: `lo` or `lo:hi`.
    #[arg(long, value_parser = range_arg, allow_hyphen_values = true)]
    pub a: RationalRange,
    /// Range of b: `lo` or `lo:hi`; b = 0 is skipped.
    #[arg(long, value_parser = range_arg, allow_hyphen_values = true)]
    pub b: RationalRange,
    /// Grid step for both ranges.
    #[arg(long, value_parser = rational_arg)]
    pub step: Option<Rational>,
    #[arg(long, value_parser = rational_arg)]
    pub a_step: Option<Rational>,
    #[arg(long, value_parser = rational_arg)]
    pub b_step: Option<Rational>,
    /// Keep only rows satisfying e.g. `astheno_kahler` or `skt,!cyt`.
    #[arg(long, allow_hyphen_values = true)]
    pub predicate: Option<String>,
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    pub backend: Backend,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalRange {
    pub lo: Rational,
    pub hi: Rational,
}

pub fn range_arg(s: &str) -> Result<RationalRange, String> {
    match s.split_once(':') {
        Some((lo, hi)) => Ok(RationalRange {
            lo: rational_arg(lo)?,
            hi: rational_arg(hi)?,
        }),
        None => {
            let v = rational_arg(s)?;
            Ok(RationalRange { lo: v.clone(), hi: v })
        }
    }
}

impl RationalRange {
    /// `lo, lo + step, ...` up to `hi`.
    pub fn points(&self, step: Option<&Rational>) -> Result<Vec<Rational>, CliError> {
        if self.lo > self.hi {
            return Err(CliError::Usage(format!(
                "empty range {}:{}",
                format_rational(&self.lo),
                format_rational(&self.hi)
            )));
        }
        if self.lo == self.hi {
            return Ok(vec![self.lo.clone()]);
        }
        let step = step.ok_or_else(|| CliError::Usage("a range needs --step".into()))?;
        if *step <= Rational::zero() {
            return Err(CliError::Usage("step must be positive".into()));
        }
        let mut out = Vec::new();
        let mut x = self.lo.clone();
        while x <= self.hi {
            if out.len() == MAX_POINTS {
                return Err(CliError::Usage(format!("grid exceeds {MAX_POINTS} points")));
            }
            out.push(x.clone());
            x += step;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Predicate {
    terms: Vec<(bool, String)>,
}

impl Predicate {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut terms = Vec::new();
        for raw in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (negated, name) = match raw.strip_prefix('!') {
                Some(rest) => (true, rest.trim()),
                None => (false, raw),
            };
            let known = FLAG_NAMES.contains(&name)
                || matches!(name, "astheno" | "static")
                || name
                    .strip_prefix("k_gauduchon:")
                    .is_some_and(|k| k.parse::<usize>().is_ok());
            if !known {
                return Err(CliError::Usage(format!(
                    "unknown flag {name:?}; expected one of {} or k_gauduchon:<k>",
                    FLAG_NAMES.join(", ")
                )));
            }
            terms.push((negated, name.to_string()));
        }
        Ok(Self { terms })
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn matches(&self, flags: &Flags) -> bool {
        self.terms.iter().all(|(negated, name)| {
            flags.get(name).expect("names checked when parsing") == Some(!negated)
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub a: String,
    pub b: String,
    pub flags: Flags,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub factor1: String,
    pub factor2: String,
    pub backend: &'static str,
    pub tolerance: f64,
    pub predicate: Option<String>,
    pub evaluated: usize,
    pub matched: usize,
    pub rows: Vec<SweepRow>,
}

/// Grid in lexicographic `(a, b)` order, without `b = 0`.
pub fn grid(args: &SweepArgs) -> Result<Vec<(Rational, Rational)>, CliError> {
    let a = args.a.points(args.a_step.as_ref().or(args.step.as_ref()))?;
    let b = args.b.points(args.b_step.as_ref().or(args.step.as_ref()))?;
    let total = a.len().saturating_mul(b.len());
    if total > MAX_POINTS {
        return Err(CliError::Usage(format!("grid of {total} points exceeds {MAX_POINTS}")));
    }
    let pts: Vec<_> = a
        .iter()
        .flat_map(|x| b.iter().filter(|y| !y.is_zero()).map(move |y| (x.clone(), y.clone())))
        .collect();
    if pts.is_empty() {
        return Err(CliError::Usage("the grid is empty once b = 0 is removed".into()));
    }
    Ok(pts)
}

fn sweep_with<S: Scalar>(
    args: &SweepArgs,
    predicate: &Predicate,
    pts: &[(Rational, Rational)],
) -> Result<SweepReport, CliError> {
    let f1 = Factor::resolve(&args.factor1)?;
    let f2 = Factor::resolve(&args.factor2)?;
    let (s1, s2, reports) = load_pair::<S>(&f1, &f2)?;
    let evaluated: Vec<SweepRow> = pts
        .par_iter()
        .map(|(a, b)| {
            let p = build_product(s1.clone(), s2.clone(), a, b)?;
            Ok(SweepRow {
                a: format_rational(a),
                b: format_rational(b),
                flags: Analysis::run(&p, false)?.flags(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    let total = evaluated.len();
    let rows: Vec<SweepRow> = evaluated
        .into_iter()
        .filter(|r| predicate.matches(&r.flags))
        .collect();
    Ok(SweepReport {
        factor1: reports[0].name.clone(),
        factor2: reports[1].name.clone(),
        backend: S::BACKEND,
        tolerance: if S::EXACT { 0.0 } else { float_epsilon() },
        predicate: (!predicate.is_empty()).then(|| args.predicate.clone().unwrap_or_default()),
        evaluated: total,
        matched: rows.len(),
        rows,
    })
}

pub fn sweep(args: &SweepArgs) -> Result<SweepReport, CliError> {
    let predicate = Predicate::parse(args.predicate.as_deref().unwrap_or(""))?;
    let pts = grid(args)?;
    match args.backend {
        Backend::Exact => sweep_with::<Rational>(args, &predicate, &pts),
        Backend::Float => sweep_with::<f64>(args, &predicate, &pts),
    }
}

fn cell(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "T",
        Some(false) => "F",
        None => "-",
    }
}

fn table(report: &SweepReport) -> String {
    let mut out = format!("a\tb\t{}\tk_gauduchon\n", FLAG_NAMES.join("\t"));
    for row in &report.rows {
        let cells: Vec<&str> = FLAG_NAMES
            .iter()
            .map(|n| cell(row.flags.get(n).expect("known flag")))
            .collect();
        let kg: Vec<String> = row
            .flags
            .k_gauduchon
            .iter()
            .map(|e| format!("{}:{}", e.k, cell(Some(e.holds))))
            .collect();
        out.push_str(&format!("{}\t{}\t{}\t{}\n", row.a, row.b, cells.join("\t"), kg.join(",")));
    }
    out
}

pub fn run(args: &SweepArgs, format: Format) -> Result<String, CliError> {
    let report = sweep(args)?;
    Ok(match format {
        Format::Json => render(&report, format),
        Format::Text => table(&report),
    })
}
