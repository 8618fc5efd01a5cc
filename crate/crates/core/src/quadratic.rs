//! Exact arithmetic in real quadratic fields `Q(sqrt d)`.
//!
//! Solver outputs such as `b^2 = 7/4` have irrational square roots; this type
//! lets the whole geometric pipeline run on them without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{format_rational, Scalar};

/// `rational + irrational * sqrt(radicand)` with `radicand` square-free.
///
/// A radicand of 1 marks a plain rational (the irrational part is then zero).
/// Values over different radicands cannot be combined; doing so panics.
#[derive(Clone, Debug)]
pub struct QuadSurd {
    rational: BigRational,
    irrational: BigRational,
    radicand: u64,
}

impl QuadSurd {
    /// Builds `p + q sqrt(d)`; `d` must be square-free (1 allowed).
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Self {
        assert!(d >= 1, "radicand must be positive");
        assert!(
            d == 1 || squarefree_decomposition(&BigInt::from(d)) == Some((BigInt::one(), d)),
            "radicand {d} is not square-free"
        );
        let mut v = Self {
            rational: p,
            irrational: q,
            radicand: d,
        };
        v.normalize();
        v
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irrational
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    /// Exact non-negative square root of a non-negative rational, or `None`
    /// when the square-free part of the radicand is too large to certify.
    pub fn sqrt_of(r: &BigRational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(p/q) = sqrt(p q) / q
        let pq = r.numer() * r.denom();
        let (root, d) = squarefree_decomposition(&pq)?;
        let coeff = BigRational::new(root, r.denom().clone());
        Some(if d == 1 {
            Self::from_rational(&coeff)
        } else {
            Self::new(BigRational::zero(), coeff, d)
        })
    }

    fn normalize(&mut self) {
        if self.irrational.is_zero() {
            self.radicand = 1;
        }
        if self.radicand == 1 && !self.irrational.is_zero() {
            // sqrt(1) = 1
            self.rational = &self.rational + &self.irrational;
            self.irrational = BigRational::zero();
        }
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("cannot mix Q(sqrt {d}) and Q(sqrt {e})"),
        }
    }

    fn conjugate(&self) -> Self {
        Self {
            rational: self.rational.clone(),
            irrational: -self.irrational.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `p^2 - d q^2`.
    fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        &self.rational * &self.rational - d * &self.irrational * &self.irrational
    }

    fn signum(&self) -> Ordering {
        let p = self.rational.cmp(&BigRational::zero());
        let q = self.irrational.cmp(&BigRational::zero());
        if q == Ordering::Equal {
            return p;
        }
        if p == Ordering::Equal || p == q {
            return q;
        }
        // opposite signs: compare p^2 with d q^2
        match self.norm().cmp(&BigRational::zero()) {
            Ordering::Greater => p,
            Ordering::Less => q,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

/// Writes `n = root^2 * d` with `d` square-free. Returns `None` when the
/// square-free part cannot be certified (or exceeds `u64`).
fn squarefree_decomposition(n: &BigInt) -> Option<(BigInt, u64)> {
    const TRIAL_LIMIT: u64 = 1_000_000;
    let mut rest = n.abs();
    if rest.is_zero() {
        return Some((BigInt::zero(), 1));
    }
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pp = BigInt::from(p);
        if &pp * &pp > rest {
            break;
        }
        let mut count = 0u32;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            count += 1;
        }
        for _ in 0..count / 2 {
            root *= &pp;
        }
        if count % 2 == 1 {
            free *= &pp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else {
            // rest has no prime factor below TRIAL_LIMIT; below TRIAL_LIMIT^3 it
            // is then a prime or a product of two distinct primes
            let cube = BigInt::from(TRIAL_LIMIT).pow(3);
            if rest >= cube {
                return None;
            }
            free *= rest;
        }
    }
    free.to_u64().map(|d| (root, d))
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.rational));
        }
        let q = format_rational(&self.irrational);
        if self.rational.is_zero() {
            write!(f, "{q}*sqrt({})", self.radicand)
        } else {
            write!(
                f,
                "{} + {q}*sqrt({})",
                format_rational(&self.rational),
                self.radicand
            )
        }
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        if self.radicand != other.radicand {
            return self.irrational.is_zero()
                && other.irrational.is_zero()
                && self.rational == other.rational;
        }
        self.rational == other.rational && self.irrational == other.irrational
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.clone() - other.clone()).signum())
    }
}

impl Zero for QuadSurd {
    fn zero() -> Self {
        Self {
            rational: BigRational::zero(),
            irrational: BigRational::zero(),
            radicand: 1,
        }
    }

    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }
}

impl One for QuadSurd {
    fn one() -> Self {
        Self {
            rational: BigRational::one(),
            irrational: BigRational::zero(),
            radicand: 1,
        }
    }
}

impl Neg for QuadSurd {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            rational: -self.rational,
            irrational: -self.irrational,
            radicand: self.radicand,
        }
    }
}

impl Add for QuadSurd {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let mut v = Self {
            rational: self.rational + rhs.rational,
            irrational: self.irrational + rhs.irrational,
            radicand: d,
        };
        v.normalize();
        v
    }
}

impl Sub for QuadSurd {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for QuadSurd {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let dr = BigRational::from_integer(BigInt::from(d));
        let mut v = Self {
            rational: &self.rational * &rhs.rational + dr * &self.irrational * &rhs.irrational,
            irrational: &self.rational * &rhs.irrational + &self.irrational * &rhs.rational,
            radicand: d,
        };
        v.normalize();
        v
    }
}

impl Div for QuadSurd {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in Q(sqrt d)");
        let norm = rhs.norm();
        let num = self * rhs.conjugate();
        let mut v = Self {
            rational: num.rational / &norm,
            irrational: num.irrational / &norm,
            radicand: num.radicand,
        };
        v.normalize();
        v
    }
}

impl Scalar for QuadSurd {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact-quadratic";

    fn from_rational(r: &BigRational) -> Self {
        Self {
            rational: r.clone(),
            irrational: BigRational::zero(),
            radicand: 1,
        }
    }

    fn to_f64(&self) -> f64 {
        let p = ToPrimitive::to_f64(&self.rational).unwrap_or(f64::NAN);
        let q = ToPrimitive::to_f64(&self.irrational).unwrap_or(f64::NAN);
        p + q * (self.radicand as f64).sqrt()
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}
