#![allow(dead_code)]

pub mod suites;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sasakian_products::catalog;
use sasakian_products::scalar::rat;
use sasakian_products::tensor::{basis_vector, Vector};
use sasakian_products::{HermitianParams, ProductHermitian, Rational, SasakiStructure, Scalar};

pub type Q = Rational;

pub fn q(n: i64, d: i64) -> Q {
    rat(n, d)
}

pub fn zero() -> Q {
    q(0, 1)
}

/// Catalog structures used by the property suites.
pub const STRUCTURES: &[&str] = &["su2", "h3", "sl2r", "h5", "h7", "abelian1"];

pub fn structure(name: &str) -> SasakiStructure<Q> {
    catalog::by_name(name).unwrap()
}

pub fn product(f1: &str, f2: &str, a: Q, b: Q) -> ProductHermitian<Q> {
    ProductHermitian::new(structure(f1), structure(f2), HermitianParams::new(a, b).unwrap()).unwrap()
}

pub fn product_of<S: Scalar>(s1: SasakiStructure<S>, s2: SasakiStructure<S>, a: S, b: S) -> ProductHermitian<S> {
    ProductHermitian::new(s1, s2, HermitianParams::new(a, b).unwrap()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational `p/q` with `|p| <= 6`, `1 <= q <= 5`.
pub fn random_rational(r: &mut ChaCha8Rng) -> Q {
    let num: i64 = r.gen_range(-6..=6);
    let den: i64 = r.gen_range(1..=5);
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Random `(a, b)` with `b != 0`.
pub fn random_params(r: &mut ChaCha8Rng) -> (Q, Q) {
    let a = random_rational(r);
    let mut b = random_rational(r);
    while b == zero() {
        b = random_rational(r);
    }
    (a, b)
}

pub fn random_params_list(seed: u64, count: usize) -> Vec<(Q, Q)> {
    let mut r = rng(seed);
    (0..count).map(|_| random_params(&mut r)).collect()
}

pub fn basis(n: usize) -> Vec<Vector<Q>> {
    (0..n).map(|i| basis_vector(n, i)).collect()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| *x == zero())
}

pub fn add(x: &[Q], y: &[Q]) -> Vector<Q> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Q], y: &[Q]) -> Vector<Q> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &Q, x: &[Q]) -> Vector<Q> {
    x.iter().map(|a| c * a).collect()
}

/// `Σ c_i v_i`.
pub fn combo(terms: &[(Q, &[Q])]) -> Vector<Q> {
    let n = terms[0].1.len();
    terms.iter().fold(vec![zero(); n], |acc, (c, v)| add(&acc, &scale(c, v)))
}

pub fn dot(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).fold(zero(), |acc, (a, b)| acc + a * b)
}
