use clap::Subcommand;
use sasakian_products::scalar::format_rational;
use sasakian_products::solve::{cyt_solve, ric_b_zero_solve, se_product_params};
use sasakian_products::{CytCase, CytSolution, Rational, SolveError};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{exit, CliError};
use crate::{rational_arg, render, Format, Outcome};

#[derive(Debug, Subcommand)]
pub enum SolveMode {
    /// (a, b) with vanishing Bismut-Ricci form, from the eta-Einstein data.
    Cyt {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        l1: Rational,
        #[arg(long)]
        n1: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        l2: Rational,
        #[arg(long)]
        n2: usize,
    },
    /// The circle of (a, b) with vanishing Bismut-Ricci tensor.
    Ricb {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        l1: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        l2: Rational,
    },
    /// CYT parameters for two Sasaki-Einstein factors.
    Se {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
    },
}

#[derive(Serialize)]
struct SolutionJson {
    a: String,
    b_squared: String,
    /// Positive root, exact when it lies in a small quadratic field.
    b: Option<String>,
    b_approx: f64,
    case: &'static str,
    note: &'static str,
}

impl From<&CytSolution> for SolutionJson {
    fn from(s: &CytSolution) -> Self {
        Self {
            a: format_rational(&s.a),
            b_squared: format_rational(&s.b_squared),
            b: s.exact_b.as_ref().map(ToString::to_string),
            b_approx: s.b_f64(),
            case: s.case.label(),
            note: s.case.note(),
        }
    }
}

fn q(r: &Rational) -> String {
    format_rational(r)
}

/// Document for a solver outcome; `case` only matters for no-solution.
fn outcome(mode: &str, input: Value, result: Result<Value, SolveError>, case: Option<CytCase>) -> Result<(Value, i32), CliError> {
    match result {
        Ok(body) => {
            let mut doc = json!({ "mode": mode, "input": input, "status": "solved" });
            if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
                d.extend(b);
            }
            Ok((doc, exit::SUCCESS))
        }
        Err(SolveError::NoSolution { reason, value }) => {
            let mut doc = json!({
                "mode": mode,
                "input": input,
                "status": "no_solution",
                "reason": reason,
                "value": value.as_ref().map(q),
            });
            if let (Value::Object(d), Some(c)) = (&mut doc, case) {
                d.insert("case".into(), json!(c.label()));
                d.insert("note".into(), json!(c.note()));
            }
            Ok((doc, exit::NO_SOLUTION))
        }
        Err(e) => Err(e.into()),
    }
}

fn solution(s: CytSolution) -> Value {
    json!({ "solution": SolutionJson::from(&s) })
}

pub fn run(mode: &SolveMode, format: Format) -> Result<Outcome, CliError> {
    let (doc, code) = match mode {
        SolveMode::Cyt { l1, n1, l2, n2 } => {
            let input = json!({ "lambda1": q(l1), "n1": n1, "lambda2": q(l2), "n2": n2 });
            let case = if *n1 == 0 || *n2 == 0 {
                CytCase::Degenerate
            } else {
                CytCase::of(l1)
            };
            outcome("cyt", input, cyt_solve(l1, *n1, l2, *n2).map(solution), Some(case))?
        }
        SolveMode::Ricb { l1, l2 } => {
            let input = json!({ "lambda1": q(l1), "lambda2": q(l2) });
            let result = ric_b_zero_solve(l1, l2).map(|c| {
                json!({
                    "constraint": { "equation": c.to_string(), "norm2": q(&c.norm2) },
                    "note": "every point of the circle with b != 0 is a solution",
                })
            });
            outcome("ricb", input, result, None)?
        }
        SolveMode::Se { n1, n2 } => {
            let input = json!({ "n1": n1, "n2": n2 });
            outcome("se", input, se_product_params(*n1, *n2).map(solution), None)?
        }
    };
    Ok(Outcome {
        stdout: render(&doc, format),
        code,
    })
}
