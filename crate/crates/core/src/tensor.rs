//! Dense coordinate tensors and the small amount of linear algebra the
//! geometry needs.
//!
//! Index conventions used throughout the crate:
//!
//! * an endomorphism `A` is an order-2 tensor with `A[i, j]` the `i`-th
//!   component of `A(b_j)` (slots: contravariant, covariant);
//! * a bilinear form `B` has `B[i, j] = B(b_i, b_j)`;
//! * a connection has `Γ[i, j, k]` the `k`-th component of `∇_{b_i} b_j`;
//! * a curvature tensor has `R[i, j, k, l]` the `l`-th component of
//!   `R(b_i, b_j) b_k`.

use crate::error::{GeometryError, Result};
use crate::scalar::{max_magnitude, Scalar};

/// Coordinate vector (or covector) with respect to the working basis.
pub type Vector<S> = Vec<S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

use Variance::{Contravariant, Covariant};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<S> {
    dim: usize,
    variance: Vec<Variance>,
    data: Vec<S>,
}

impl<S: Scalar> DenseTensor<S> {
    pub fn zeros(dim: usize, variance: &[Variance]) -> Self {
        assert!(variance.len() <= 4, "tensors of order > 4 are not supported");
        let len = dim.pow(variance.len() as u32);
        Self {
            dim,
            variance: variance.to_vec(),
            data: vec![S::zero(); len],
        }
    }

    pub fn from_fn(dim: usize, variance: &[Variance], mut f: impl FnMut(&[usize]) -> S) -> Self {
        let mut t = Self::zeros(dim, variance);
        let order = variance.len();
        let mut idx = vec![0usize; order];
        for flat in 0..t.data.len() {
            let mut rem = flat;
            for slot in (0..order).rev() {
                idx[slot] = rem % dim;
                rem /= dim;
            }
            t.data[flat] = f(&idx);
        }
        t
    }

    pub fn from_data(dim: usize, variance: &[Variance], data: Vec<S>) -> Result<Self> {
        let len = dim.pow(variance.len() as u32);
        if data.len() != len {
            return Err(GeometryError::DimensionMismatch {
                expected: len,
                found: data.len(),
            });
        }
        Ok(Self {
            dim,
            variance: variance.to_vec(),
            data,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: S) {
        let f = self.flat(idx);
        self.data[f] = value;
    }

    pub fn max_abs(&self) -> f64 {
        max_magnitude(&self.data)
    }

    /// All entries vanish under the backend's zero test relative to `scale`.
    pub fn is_zero_within(&self, scale: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(scale))
    }

    /// All entries vanish relative to the tensor's own magnitude.
    pub fn is_zero(&self) -> bool {
        self.is_zero_within(0.0)
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        assert_eq!(self.order(), other.order(), "order mismatch");
        Self {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    /// Entrywise comparison under the backend's zero test, with the scale
    /// taken from both operands.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.order() != other.order() {
            return false;
        }
        let scale = self.max_abs().max(other.max_abs());
        self.sub(other).is_zero_within(scale)
    }

    /// Reorders slots: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order(), "permutation length");
        let var: Vec<Variance> = perm.iter().map(|&p| self.variance[p]).collect();
        let mut src = vec![0usize; perm.len()];
        Self::from_fn(self.dim, &var, |ix| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = ix[k];
            }
            self.get(&src).clone()
        })
    }

    /// Contracts two covariant slots against an inverse metric:
    /// `sum_{a,b} g^{ab} T(.., b_a, .., b_b, ..)`. The remaining slots keep
    /// their order.
    pub fn contract_pair(&self, g_inv: &DenseTensor<S>, slots: (usize, usize)) -> Result<Self> {
        let (s, t) = slots;
        let order = self.order();
        for slot in [s, t] {
            if slot >= order {
                return Err(GeometryError::SlotOutOfRange { slot, order });
            }
            if self.variance[slot] != Covariant {
                return Err(GeometryError::NotCovariant { slot });
            }
        }
        if s == t {
            return Err(GeometryError::SlotOutOfRange { slot: t, order });
        }
        if g_inv.order() != 2 || g_inv.dim != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: g_inv.dim,
            });
        }
        let n = self.dim;
        let remaining: Vec<Variance> = (0..order)
            .filter(|&k| k != s && k != t)
            .map(|k| self.variance[k])
            .collect();
        let mut full = vec![0usize; order];
        Ok(Self::from_fn(n, &remaining, |rest| {
            let mut it = rest.iter();
            for (k, slot) in full.iter_mut().enumerate() {
                if k != s && k != t {
                    *slot = *it.next().unwrap();
                }
            }
            let mut acc = S::zero();
            for a in 0..n {
                for b in 0..n {
                    let w = g_inv.get(&[a, b]);
                    if w.is_zero() {
                        continue;
                    }
                    full[s] = a;
                    full[t] = b;
                    acc = acc + w.clone() * self.get(&full).clone();
                }
            }
            acc
        }))
    }
}

/// Endomorphism (1,1)-tensor from a closure `f(i, j)` = component `i` of
/// the image of `b_j`.
pub fn endomorphism<S: Scalar>(dim: usize, f: impl Fn(usize, usize) -> S) -> DenseTensor<S> {
    DenseTensor::from_fn(dim, &[Contravariant, Covariant], |ix| f(ix[0], ix[1]))
}

/// Symmetric or general bilinear form from a closure.
pub fn bilinear<S: Scalar>(dim: usize, f: impl Fn(usize, usize) -> S) -> DenseTensor<S> {
    DenseTensor::from_fn(dim, &[Covariant, Covariant], |ix| f(ix[0], ix[1]))
}

pub fn identity<S: Scalar>(dim: usize) -> DenseTensor<S> {
    endomorphism(dim, |i, j| if i == j { S::one() } else { S::zero() })
}

/// Matrix product of order-2 tensors. The result takes the row slot of `a`
/// and the column slot of `b`.
pub fn mat_mul<S: Scalar>(a: &DenseTensor<S>, b: &DenseTensor<S>) -> DenseTensor<S> {
    let n = a.dim();
    let var = [a.variance()[0], b.variance()[1]];
    DenseTensor::from_fn(n, &var, |ix| {
        (0..n).fold(S::zero(), |acc, k| {
            acc + a.get(&[ix[0], k]).clone() * b.get(&[k, ix[1]]).clone()
        })
    })
}

pub fn transpose<S: Scalar>(a: &DenseTensor<S>) -> DenseTensor<S> {
    let var = [a.variance()[1], a.variance()[0]];
    DenseTensor::from_fn(a.dim(), &var, |ix| a.get(&[ix[1], ix[0]]).clone())
}

/// Commutator `AB - BA` of endomorphisms.
pub fn commutator<S: Scalar>(a: &DenseTensor<S>, b: &DenseTensor<S>) -> DenseTensor<S> {
    mat_mul(a, b).sub(&mat_mul(b, a))
}

pub fn mat_vec<S: Scalar>(a: &DenseTensor<S>, v: &[S]) -> Vector<S> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            (0..n).fold(S::zero(), |acc, k| {
                acc + a.get(&[i, k]).clone() * v[k].clone()
            })
        })
        .collect()
}

/// `B(x, y)` for a bilinear form `B`.
pub fn pair<S: Scalar>(b: &DenseTensor<S>, x: &[S], y: &[S]) -> S {
    let n = b.dim();
    let mut acc = S::zero();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            acc = acc + x[i].clone() * b.get(&[i, j]).clone() * y[j].clone();
        }
    }
    acc
}

/// Lowers a vector with a metric: `(g x)_j = g(x, b_j)`.
pub fn lower<S: Scalar>(g: &DenseTensor<S>, x: &[S]) -> Vector<S> {
    let n = g.dim();
    (0..n)
        .map(|j| (0..n).fold(S::zero(), |acc, i| acc + x[i].clone() * g.get(&[i, j]).clone()))
        .collect()
}

pub fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    x.iter()
        .zip(y)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

pub fn basis_vector<S: Scalar>(dim: usize, i: usize) -> Vector<S> {
    (0..dim)
        .map(|k| if k == i { S::one() } else { S::zero() })
        .collect()
}

pub fn axpy<S: Scalar>(alpha: &S, x: &[S], y: &[S]) -> Vector<S> {
    x.iter()
        .zip(y)
        .map(|(a, b)| alpha.clone() * a.clone() + b.clone())
        .collect()
}

pub fn scale_vec<S: Scalar>(alpha: &S, x: &[S]) -> Vector<S> {
    x.iter().map(|a| alpha.clone() * a.clone()).collect()
}

pub fn sub_vec<S: Scalar>(x: &[S], y: &[S]) -> Vector<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

pub fn add_vec<S: Scalar>(x: &[S], y: &[S]) -> Vector<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn vec_is_zero<S: Scalar>(x: &[S], scale: f64) -> bool {
    x.iter().all(|v| v.is_negligible(scale))
}

/// Gauss-Jordan inverse with magnitude pivoting; `None` when singular.
pub fn inverse<S: Scalar>(a: &DenseTensor<S>) -> Option<DenseTensor<S>> {
    let n = a.dim();
    let scale = a.max_abs();
    let mut m: Vec<Vec<S>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(&[i, j]).clone()).collect())
        .collect();
    let mut inv: Vec<Vec<S>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_negligible(scale))
            .max_by(|&x, &y| m[x][col].magnitude().total_cmp(&m[y][col].magnitude()))?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = m[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                m[r][j] = m[r][j].clone() - f.clone() * m[col][j].clone();
                inv[r][j] = inv[r][j].clone() - f.clone() * inv[col][j].clone();
            }
        }
    }
    let var = [a.variance()[1], a.variance()[0]].map(flip);
    Some(DenseTensor::from_fn(n, &var, |ix| inv[ix[0]][ix[1]].clone()))
}

fn flip(v: Variance) -> Variance {
    match v {
        Covariant => Contravariant,
        Contravariant => Covariant,
    }
}

/// Leading principal minors of a symmetric matrix are all positive. Uses
/// elimination pivots, which equal ratios of consecutive minors.
pub fn is_positive_definite<S: Scalar>(a: &DenseTensor<S>) -> bool {
    let n = a.dim();
    let mut m: Vec<Vec<S>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(&[i, j]).clone()).collect())
        .collect();
    for k in 0..n {
        let p = m[k][k].clone();
        if !p.is_positive() {
            return false;
        }
        for r in k + 1..n {
            let f = m[r][k].clone() / p.clone();
            for c in k..n {
                m[r][c] = m[r][c].clone() - f.clone() * m[k][c].clone();
            }
        }
    }
    true
}

pub fn is_symmetric<S: Scalar>(a: &DenseTensor<S>) -> bool {
    a.approx_eq(&transpose(a))
}
