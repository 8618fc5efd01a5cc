//! Inverse problems: which `(a, b)` make a product of η-Einstein factors
//! Calabi-Yau with torsion or Bismut-Ricci-flat.
//!
//! Inputs are the η-Einstein constants `λ_i` and half-dimensions `n_i` of
//! the factors; everything is exact.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::quadratic::QuadSurd;
use crate::scalar::format_rational;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("no solution: {reason}")]
    NoSolution {
        reason: String,
        /// Offending value (`b²`, `λ₁`, …) when there is one.
        value: Option<Rational>,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

fn no_solution(reason: impl Into<String>, value: Option<Rational>) -> SolveError {
    SolveError::NoSolution {
        reason: reason.into(),
        value,
    }
}

/// Which branch of the CYT analysis the first factor falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CytCase {
    /// `λ₁ = −2`.
    Null,
    /// `λ₁ > −2`.
    Positive,
    /// `λ₁ < −2`.
    Negative,
    /// A factor is one-dimensional.
    Degenerate,
}

impl CytCase {
    /// Branch selected by `λ₁` alone, ignoring one-dimensional factors.
    pub fn of(lambda1: &Rational) -> Self {
        let m2 = -Rational::from_integer(2.into());
        if *lambda1 == m2 {
            CytCase::Null
        } else if *lambda1 > m2 {
            CytCase::Positive
        } else {
            CytCase::Negative
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CytCase::Null => "(i)",
            CytCase::Positive => "(ii)",
            CytCase::Negative => "(iii)",
            CytCase::Degenerate => "degenerate",
        }
    }

    pub fn note(self) -> &'static str {
        match self {
            CytCase::Null => "case (i): lambda1 = -2 gives a = -n1/n2 and b^2 = (lambda2 + 2)/(4 n2), so lambda2 > -2",
            CytCase::Positive => "case (ii): lambda1 > -2, lambda2 may have any sign",
            CytCase::Negative => "case (iii): lambda1 < -2 forces lambda2 > -2",
            CytCase::Degenerate => "one factor is one-dimensional; a single equation remains",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CytSolution {
    pub a: Rational,
    pub b_squared: Rational,
    /// `b > 0` with `b² = b_squared`, when the square-free part is small
    /// enough to certify.
    pub exact_b: Option<QuadSurd>,
    pub case: CytCase,
}

impl CytSolution {
    fn new(a: Rational, b_squared: Rational, case: CytCase) -> Self {
        let exact_b = QuadSurd::sqrt_of(&b_squared);
        Self {
            a,
            b_squared,
            exact_b,
            case,
        }
    }

    /// `b` as a float, for when `exact_b` is irrational or absent.
    pub fn b_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.b_squared)
            .unwrap_or(f64::NAN)
            .sqrt()
    }

    /// `b` as a rational when `b²` is a rational square.
    pub fn b_rational(&self) -> Option<Rational> {
        self.exact_b
            .as_ref()
            .filter(|b| b.is_rational())
            .map(|b| b.rational_part().clone())
    }
}

impl std::fmt::Display for CytSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "a = {}, b^2 = {} [{}]",
            format_rational(&self.a),
            format_rational(&self.b_squared),
            self.case.label()
        )
    }
}

fn int(v: usize) -> Rational {
    Rational::from_integer((v as i64).into())
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Solves `λ₁ = 4(n₁ + an₂) − 2`, `λ₂ = 4(an₁ + (a²+b²)n₂) − 2` for
/// `(a, b)` with `b > 0`.
///
/// A one-dimensional factor (`n_i = 0`) leaves a single equation: for
/// `n₁ = 0` it fixes `a² + b²` and the returned solution has `a = 0`; for
/// `n₂ = 0` it is a condition on `λ₁` alone and any `(a, b)` works, reported
/// as `(0, 1)`.
pub fn cyt_solve(
    lambda1: &Rational,
    n1: usize,
    lambda2: &Rational,
    n2: usize,
) -> Result<CytSolution, SolveError> {
    let two = r(2);
    match (n1, n2) {
        (0, 0) => return Ok(CytSolution::new(r(0), r(1), CytCase::Degenerate)),
        (_, 0) => {
            let need = r(4) * int(n1) - two;
            return if *lambda1 == need {
                Ok(CytSolution::new(r(0), r(1), CytCase::Degenerate))
            } else {
                Err(no_solution(
                    format!("a trivial second factor needs lambda1 = {}", format_rational(&need)),
                    Some(lambda1.clone()),
                ))
            };
        }
        (0, _) => {
            let norm2 = (lambda2 + two) / (r(4) * int(n2));
            return if norm2.is_positive() {
                Ok(CytSolution::new(r(0), norm2, CytCase::Degenerate))
            } else {
                Err(no_solution("a^2 + b^2 must be positive", Some(norm2)))
            };
        }
        _ => {}
    }
    let case = CytCase::of(lambda1);
    let (n1q, n2q) = (int(n1), int(n2));
    let a = (lambda1 + &two - r(4) * &n1q) / (r(4) * &n2q);
    let b_squared = (lambda2 + &two - r(4) * &a * &n1q) / (r(4) * &n2q) - &a * &a;
    if !b_squared.is_positive() {
        return Err(no_solution(
            format!("b^2 = {} is not positive; {}", format_rational(&b_squared), case.note()),
            Some(b_squared),
        ));
    }
    Ok(CytSolution::new(a, b_squared, case))
}

/// Parameters with `Ric^B = 0`: the circle `a² + b² = norm2`.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciFlatConstraint {
    pub norm2: Rational,
}

impl RicciFlatConstraint {
    pub fn contains(&self, a: &Rational, b: &Rational) -> bool {
        !b.is_zero() && a * a + b * b == self.norm2
    }
}

impl std::fmt::Display for RicciFlatConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a^2 + b^2 = {}", format_rational(&self.norm2))
    }
}

/// `Ric^B = 0` needs `λ₁ = 2` and `λ₂ = 2(2a² + 2b² − 1)` with `b ≠ 0`.
pub fn ric_b_zero_solve(lambda1: &Rational, lambda2: &Rational) -> Result<RicciFlatConstraint, SolveError> {
    if *lambda1 != r(2) {
        return Err(no_solution("Ric^B = 0 needs lambda1 = 2", Some(lambda1.clone())));
    }
    let norm2 = (lambda2 + r(2)) / r(4);
    if !norm2.is_positive() {
        return Err(no_solution("Ric^B = 0 needs lambda2 > -2", Some(lambda2.clone())));
    }
    Ok(RicciFlatConstraint { norm2 })
}

/// CYT parameters for a product of Sasaki-Einstein factors (`λ_i = 2n_i`):
/// `a = −(n₁−1)/(2n₂)`, `b² = ((n₁−1)(n₁+1) + 2n₂(n₂+1))/(4n₂²)`.
pub fn se_product_params(n1: usize, n2: usize) -> Result<CytSolution, SolveError> {
    if n1 == 0 || n2 == 0 {
        return Err(SolveError::InvalidInput("n1 and n2 must be at least 1".into()));
    }
    let (n1q, n2q) = (int(n1), int(n2));
    let one = Rational::one();
    let a = -(&n1q - &one) / (r(2) * &n2q);
    let b_squared = ((&n1q - &one) * (&n1q + &one) + r(2) * &n2q * (&n2q + &one))
        / (r(4) * &n2q * &n2q);
    Ok(CytSolution::new(a, b_squared, CytCase::Positive))
}

/// D-homothety factors and CYT parameters realising the normal forms of the
/// case analysis. Deforming `S_i` by `s_i` turns `λ_i` into `λ_i'`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomothetyNormalization {
    pub s1: Rational,
    pub s2: Rational,
    pub lambda1: Rational,
    pub lambda2: Rational,
    pub solution: CytSolution,
}

/// `s` with `(λ + 2 − 2s)/s = λ'`, i.e. `s = (λ + 2)/(λ' + 2)`.
pub fn homothety_factor(lambda: &Rational, target: &Rational) -> Result<Rational, SolveError> {
    let den = target + r(2);
    if den.is_zero() {
        return if (lambda + r(2)).is_zero() {
            Ok(Rational::one())
        } else {
            Err(no_solution("a D-homothety preserves the sign of lambda + 2", Some(lambda.clone())))
        };
    }
    let s = (lambda + r(2)) / den;
    if !s.is_positive() {
        return Err(no_solution("a D-homothety preserves the sign of lambda + 2", Some(s)));
    }
    Ok(s)
}

/// Normal forms after D-homotheties on both factors (`n_i ≥ 1`). Fails
/// exactly when neither factor is positive.
pub fn homothety_normalization(
    lambda1: &Rational,
    n1: usize,
    lambda2: &Rational,
    n2: usize,
) -> Result<HomothetyNormalization, SolveError> {
    if n1 == 0 || n2 == 0 {
        return Err(SolveError::InvalidInput("n1 and n2 must be at least 1".into()));
    }
    let (n1q, n2q) = (int(n1), int(n2));
    let m2 = r(-2);
    let case = CytCase::of(lambda1);
    let positive2 = *lambda2 > m2;
    let (l1, l2) = match case {
        CytCase::Null => {
            if !positive2 {
                return Err(no_solution(case.note(), Some(lambda2.clone())));
            }
            (lambda1.clone(), lambda2.clone())
        }
        CytCase::Positive => {
            let l1 = r(2) * &n1q - r(2);
            let l2 = if *lambda2 == m2 {
                m2.clone()
            } else if positive2 {
                r(3) * &n1q * &n1q / &n2q - r(2)
            } else {
                -r(3) * &n1q * &n1q / (r(4) * &n2q) - r(2)
            };
            (l1, l2)
        }
        CytCase::Negative => {
            if !positive2 {
                return Err(no_solution(case.note(), Some(lambda2.clone())));
            }
            (-&n1q - r(2), r(3) * &n1q * &n1q / (r(2) * &n2q) - r(2))
        }
        CytCase::Degenerate => unreachable!("n1, n2 >= 1"),
    };
    let s1 = homothety_factor(lambda1, &l1)?;
    let s2 = homothety_factor(lambda2, &l2)?;
    let solution = cyt_solve(&l1, n1, &l2, n2)?;
    Ok(HomothetyNormalization {
        s1,
        s2,
        lambda1: l1,
        lambda2: l2,
        solution,
    })
}
