//! Scalar backends.
//!
//! Every geometric computation in this crate is generic over [`Scalar`]. Three
//! backends are provided:
//!
//! * [`BigRational`]: exact arbitrary-precision rationals (the default),
//! * [`QuadSurd`](crate::QuadSurd): exact elements of a real quadratic field,
//! * `f64`: floating point, where zero-testing uses a relative tolerance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::GeometryError;

/// Default relative tolerance of the float backend.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Environment variable that overrides the float tolerance.
pub const EPSILON_ENV: &str = "SASPROD_EPSILON";

static EPSILON_BITS: AtomicU64 = AtomicU64::new(0);

/// Current float tolerance. Reads [`EPSILON_ENV`] once, falling back to
/// [`DEFAULT_EPSILON`].
pub fn float_epsilon() -> f64 {
    let bits = EPSILON_BITS.load(Ordering::Relaxed);
    if bits != 0 {
        return f64::from_bits(bits);
    }
    let eps = std::env::var(EPSILON_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|e| e.is_finite() && *e > 0.0)
        .unwrap_or(DEFAULT_EPSILON);
    EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
    eps
}

/// Overrides the float tolerance for the rest of the process.
pub fn set_float_epsilon(eps: f64) {
    assert!(eps.is_finite() && eps > 0.0, "epsilon must be positive");
    EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
}

/// A field element usable by every module of the crate.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when equality and zero-testing are decidable exactly.
    const EXACT: bool;

    /// Short backend label used in reports.
    const BACKEND: &'static str;

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test. Exact backends ignore `scale`; the float backend accepts
    /// `|x| <= eps * (1 + scale)`.
    fn is_negligible(&self, scale: f64) -> bool;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero() && !self.is_negligible(self.magnitude())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact";

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        Scalar::to_f64(&self.abs())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const BACKEND: &'static str = "float";

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= float_epsilon() * (1.0 + scale.abs())
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.75"` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<BigRational, GeometryError> {
    let s = text.trim();
    let bad = || GeometryError::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(GeometryError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = BigInt::from_str(frac).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let mut frac = BigRational::new(digits, den);
        if negative {
            frac = -frac;
        }
        return Ok(BigRational::from_integer(int_part) + frac);
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convenience constructor for exact rationals.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Largest magnitude over a collection of scalars; the `scale` fed to
/// [`Scalar::is_negligible`].
pub fn max_magnitude<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> f64 {
    values
        .into_iter()
        .map(Scalar::magnitude)
        .fold(0.0, f64::max)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}
