//! Sparse exterior forms on a finite-dimensional vector space.
//!
//! A `k`-form is stored as a map from strictly increasing index tuples `I` to
//! coefficients `α_I`, meaning `α = Σ α_I e^I`. The monomials are normalized
//! by `e^{i_1}∧…∧e^{i_k}(b_{j_1},…,b_{j_k}) = det[δ^{i_a}_{j_b}]`, so that
//! `e^1∧e^2(b_1, b_2) = 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{GeometryError, Result};
use crate::scalar::{max_magnitude, Scalar};
use crate::tensor::DenseTensor;

#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorForm<S> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, S>,
}

/// Sign of the permutation sorting `idx`, together with the sorted tuple;
/// `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    // insertion sort keeps track of transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// All strictly increasing `k`-tuples drawn from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Determinant by Gaussian elimination (exact for exact backends).
pub fn determinant<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return S::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / pivot.clone();
            for c in col..n {
                m[r][c] = m[r][c].clone() - f.clone() * m[col][c].clone();
            }
        }
    }
    det
}

impl<S: Scalar> ExteriorForm<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A 0-form (constant function).
    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Self::zero(dim, 0);
        f.insert(vec![], c);
        f
    }

    /// The 1-form with the given coefficients `Σ c_i e^i`.
    pub fn from_covector(c: &[S]) -> Self {
        let mut f = Self::zero(c.len(), 1);
        for (i, v) in c.iter().enumerate() {
            f.insert(vec![i], v.clone());
        }
        f
    }

    /// The monomial `e^{i_1}∧…∧e^{i_k}` for an arbitrary index list.
    pub fn monomial(dim: usize, idx: &[usize]) -> Result<Self> {
        for &i in idx {
            if i >= dim {
                return Err(GeometryError::IndexOutOfRange { index: i, dim });
            }
        }
        let mut f = Self::zero(dim, idx.len());
        if let Some((sorted, odd)) = sort_with_sign(idx) {
            f.insert(sorted, if odd { -S::one() } else { S::one() });
        }
        Ok(f)
    }

    /// 2-form with `α(b_i, b_j) = B[i, j]` for `i < j`. The caller is
    /// responsible for `B` being antisymmetric.
    pub fn from_antisymmetric(b: &DenseTensor<S>) -> Self {
        let n = b.dim();
        let mut f = Self::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                f.insert(vec![i, j], b.get(&[i, j]).clone());
            }
        }
        f
    }

    /// Builds a `k`-form from its values on increasing basis tuples.
    pub fn from_basis_values(dim: usize, degree: usize, mut value: impl FnMut(&[usize]) -> S) -> Self {
        let mut f = Self::zero(dim, degree);
        for idx in increasing_tuples(dim, degree) {
            let v = value(&idx);
            f.insert(idx, v);
        }
        f
    }

    fn insert(&mut self, idx: Vec<usize>, value: S) {
        if value.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, value);
        }
    }

    fn accumulate(&mut self, idx: Vec<usize>, value: S) {
        let cur = self.coeffs.remove(&idx).unwrap_or_else(S::zero);
        self.insert(idx, cur + value);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient on an increasing tuple.
    pub fn coefficient(&self, idx: &[usize]) -> S {
        self.coeffs.get(idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn max_abs(&self) -> f64 {
        max_magnitude(self.coeffs.values())
    }

    pub fn is_zero_within(&self, scale: f64) -> bool {
        self.coeffs.values().all(|c| c.is_negligible(scale))
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero_within(0.0)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.degree != other.degree {
            return false;
        }
        let scale = self.max_abs().max(other.max_abs());
        match self.try_sub(other) {
            Ok(d) => d.is_zero_within(scale),
            Err(_) => false,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(GeometryError::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-S::one()))
    }

    /// Sum of same-shaped forms. Panics on a shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("form shapes differ")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("form shapes differ")
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.insert(k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Graded-antisymmetric product. Degrees past the dimension give the zero
    /// form of the summed degree.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return Ok(out);
        }
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if i.iter().any(|x| j.binary_search(x).is_ok()) {
                    continue;
                }
                let cat: Vec<usize> = i.iter().chain(j).copied().collect();
                let (sorted, odd) = sort_with_sign(&cat).expect("disjoint indices");
                let v = a.clone() * b.clone();
                out.accumulate(sorted, if odd { -v } else { v });
            }
        }
        Ok(out)
    }

    /// `α^k`, with `α^0` the constant 1.
    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::constant(self.dim, S::one());
        for _ in 0..k {
            out = out.wedge(self).expect("same dimension");
        }
        out
    }

    /// Successive powers `α^0, …, α^k`, each computed from the previous one.
    pub fn powers(&self, k: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(Self::constant(self.dim, S::one()));
        for p in 1..=k {
            let next = out[p - 1].wedge(self).expect("same dimension");
            out.push(next);
        }
        out
    }

    /// Value on basis vectors `b_{i_1}, …, b_{i_k}` in any order.
    pub fn eval_basis(&self, idx: &[usize]) -> S {
        debug_assert_eq!(idx.len(), self.degree);
        match sort_with_sign(idx) {
            None => S::zero(),
            Some((sorted, odd)) => {
                let v = self.coefficient(&sorted);
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Full antisymmetric multilinear evaluation on coordinate vectors.
    pub fn eval(&self, vectors: &[Vec<S>]) -> Result<S> {
        if vectors.len() != self.degree {
            return Err(GeometryError::Arity {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        for v in vectors {
            if v.len() != self.dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let mut acc = S::zero();
        for (idx, c) in &self.coeffs {
            let m: Vec<Vec<S>> = idx
                .iter()
                .map(|&row| vectors.iter().map(|v| v[row].clone()).collect())
                .collect();
            let d = determinant(m);
            if !d.is_zero() {
                acc = acc + c.clone() * d;
            }
        }
        Ok(acc)
    }

    /// Pullback by an endomorphism: `(A*α)(X_1, …) = α(A X_1, …)`.
    ///
    /// Expands `A*e^{i_1} ∧ … ∧ A*e^{i_k}` using the sparsity of the rows of
    /// `A`, which is cheap for the structured endomorphisms used here.
    pub fn pullback(&self, a: &DenseTensor<S>) -> Self {
        let n = self.dim;
        let rows: Vec<Vec<(usize, S)>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !a.get(&[i, j]).is_zero())
                    .map(|j| (j, a.get(&[i, j]).clone()))
                    .collect()
            })
            .collect();
        let mut out = Self::zero(n, self.degree);
        let mut chosen = Vec::with_capacity(self.degree);
        for (idx, c) in &self.coeffs {
            expand_rows(&rows, idx, c.clone(), &mut chosen, &mut out);
        }
        out
    }

    /// Interior product `ι_v α`.
    pub fn interior(&self, v: &[S]) -> Self {
        let mut out = Self::zero(self.dim, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (idx, c) in &self.coeffs {
            for (pos, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let term = c.clone() * v[i].clone();
                out.accumulate(rest, if pos % 2 == 1 { -term } else { term });
            }
        }
        out
    }

    /// Coefficients as a dense antisymmetric matrix (2-forms only).
    pub fn to_matrix(&self) -> DenseTensor<S> {
        assert_eq!(self.degree, 2, "only 2-forms have a matrix");
        crate::tensor::bilinear(self.dim, |i, j| self.eval_basis(&[i, j]))
    }
}

fn expand_rows<S: Scalar>(
    rows: &[Vec<(usize, S)>],
    idx: &[usize],
    weight: S,
    chosen: &mut Vec<usize>,
    out: &mut ExteriorForm<S>,
) {
    let p = chosen.len();
    if p == idx.len() {
        let (sorted, odd) = sort_with_sign(chosen).expect("distinct indices");
        out.accumulate(sorted, if odd { -weight } else { weight });
        return;
    }
    for (j, v) in &rows[idx[p]] {
        if chosen.contains(j) {
            continue;
        }
        chosen.push(*j);
        expand_rows(rows, idx, weight.clone() * v.clone(), chosen, out);
        chosen.pop();
    }
}

impl<S: Scalar> fmt::Display for ExteriorForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {}", mono.join("^"))?;
            }
        }
        Ok(())
    }
}
