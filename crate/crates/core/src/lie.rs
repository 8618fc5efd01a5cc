//! Lie algebras given by structure constants, and the left-invariant
//! Riemannian geometry of a metric on them.
//!
//! Left-invariant vector fields have constant coefficients in the basis, so
//! every derivative below reduces to linear algebra on the structure
//! constants.

use crate::error::{GeometryError, Result};
use crate::forms::ExteriorForm;
use crate::scalar::Scalar;
use crate::tensor::{
    inverse, is_positive_definite, is_symmetric, mat_vec, DenseTensor, Variance, Vector,
};

use Variance::{Contravariant, Covariant};

/// Slot layout of a connection or structure-constant tensor.
pub const CONNECTION_SLOTS: [Variance; 3] = [Covariant, Covariant, Contravariant];

/// Slot layout of a curvature tensor `R[i, j, k, l]`.
pub const CURVATURE_SLOTS: [Variance; 4] = [Covariant, Covariant, Covariant, Contravariant];

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    /// `c[i, j, k] = c^k_{ij}`, i.e. `[b_i, b_j] = Σ_k c[i, j, k] b_k`.
    c: DenseTensor<S>,
    labels: Vec<String>,
}

/// Outcome of [`LieAlgebra::check_jacobi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiCheck {
    pub holds: bool,
    /// First basis triple `(i, j, k)`, `i < j < k`, whose cyclic sum is nonzero.
    pub violation: Option<(usize, usize, usize)>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Builds an algebra from a full structure-constant tensor, rejecting
    /// constants that are not antisymmetric in the first two slots.
    pub fn new(c: DenseTensor<S>) -> Result<Self> {
        if c.order() != 3 {
            return Err(GeometryError::Arity {
                expected: 3,
                found: c.order(),
            });
        }
        let n = c.dim();
        let scale = c.max_abs();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = c.get(&[i, j, k]).clone() + c.get(&[j, i, k]).clone();
                    if !s.is_negligible(scale) {
                        return Err(GeometryError::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        let c = DenseTensor::from_data(n, &CONNECTION_SLOTS, c.data().to_vec())?;
        Ok(Self {
            dim: n,
            c,
            labels: (1..=n).map(|i| format!("e{i}")).collect(),
        })
    }

    /// Builds an algebra from the brackets `[b_i, b_j]` with `i < j`; pairs not
    /// listed bracket to zero.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector<S>)]) -> Result<Self> {
        let mut c = DenseTensor::zeros(dim, &CONNECTION_SLOTS);
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx >= dim {
                    return Err(GeometryError::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                return Err(GeometryError::NotAntisymmetric { i, j, k: 0 });
            }
            if v.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            for (k, x) in v.iter().enumerate() {
                c.set(&[i, j, k], x.clone());
                c.set(&[j, i, k], -x.clone());
            }
        }
        Self::new(c)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(DenseTensor::zeros(dim, &CONNECTION_SLOTS)).expect("zero constants")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim, "one label per basis vector");
        self.labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &DenseTensor<S> {
        &self.c
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[b_i, b_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector<S> {
        (0..self.dim).map(|k| self.c.get(&[i, j, k]).clone()).collect()
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vector<S> {
        let n = self.dim;
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let w = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c.get(&[i, j, k]);
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x = [x, ·]`.
    pub fn ad(&self, x: &[S]) -> DenseTensor<S> {
        let n = self.dim;
        let cols: Vec<Vector<S>> = (0..n)
            .map(|j| self.bracket(x, &crate::tensor::basis_vector(n, j)))
            .collect();
        crate::tensor::endomorphism(n, |i, j| cols[j][i].clone())
    }

    pub fn check_jacobi(&self) -> JacobiCheck {
        let n = self.dim;
        let scale = self.c.max_abs().powi(2);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let bi = crate::tensor::basis_vector::<S>(n, i);
                    let bj = crate::tensor::basis_vector::<S>(n, j);
                    let bk = crate::tensor::basis_vector::<S>(n, k);
                    let t1 = self.bracket(&self.bracket_basis(i, j), &bk);
                    let t2 = self.bracket(&self.bracket_basis(j, k), &bi);
                    let t3 = self.bracket(&self.bracket_basis(k, i), &bj);
                    let ok = (0..n).all(|m| {
                        (t1[m].clone() + t2[m].clone() + t3[m].clone()).is_negligible(scale)
                    });
                    if !ok {
                        return JacobiCheck {
                            holds: false,
                            violation: Some((i, j, k)),
                        };
                    }
                }
            }
        }
        JacobiCheck {
            holds: true,
            violation: None,
        }
    }

    /// Rejects algebras that fail the Jacobi identity.
    pub fn validate(&self) -> Result<()> {
        match self.check_jacobi().violation {
            Some((i, j, k)) => Err(GeometryError::Jacobi { i, j, k }),
            None => Ok(()),
        }
    }

    /// Chevalley–Eilenberg differential of a left-invariant form:
    /// `dα(X_0, …, X_k) = Σ_{p<q} (−1)^{p+q} α([X_p, X_q], X_0, …, X̂_p, …, X̂_q, …)`.
    pub fn ce_differential(&self, alpha: &ExteriorForm<S>) -> Result<ExteriorForm<S>> {
        let n = self.dim;
        if alpha.dim() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                found: alpha.dim(),
            });
        }
        let k = alpha.degree();
        if k >= n || alpha.num_terms() == 0 {
            return Ok(ExteriorForm::zero(n, k + 1));
        }
        let mut args = vec![0usize; k];
        Ok(ExteriorForm::from_basis_values(n, k + 1, |idx| {
            let mut acc = S::zero();
            for p in 0..=k {
                for q in p + 1..=k {
                    let rest: Vec<usize> = idx
                        .iter()
                        .enumerate()
                        .filter(|&(r, _)| r != p && r != q)
                        .map(|(_, &v)| v)
                        .collect();
                    let mut term = S::zero();
                    for m in 0..n {
                        let c = self.c.get(&[idx[p], idx[q], m]);
                        if c.is_zero() || rest.contains(&m) {
                            continue;
                        }
                        args[0] = m;
                        args[1..].clone_from_slice(&rest);
                        let v = alpha.eval_basis(&args);
                        if !v.is_zero() {
                            term = term + c.clone() * v;
                        }
                    }
                    if (p + q) % 2 == 1 {
                        acc = acc - term;
                    } else {
                        acc = acc + term;
                    }
                }
            }
            acc
        }))
    }

    /// Direct sum `self ⊕ other`, with the basis of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let c = DenseTensor::from_fn(n, &CONNECTION_SLOTS, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            if i < n1 && j < n1 && k < n1 {
                self.c.get(&[i, j, k]).clone()
            } else if i >= n1 && j >= n1 && k >= n1 {
                other.c.get(&[i - n1, j - n1, k - n1]).clone()
            } else {
                S::zero()
            }
        });
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}'"))
            .chain(other.labels.iter().map(|l| format!("{l}''")))
            .collect();
        Self {
            dim: n,
            c,
            labels,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricLieAlgebra<S> {
    algebra: LieAlgebra<S>,
    g: DenseTensor<S>,
    g_inv: DenseTensor<S>,
}

impl<S: Scalar> MetricLieAlgebra<S> {
    pub fn new(algebra: LieAlgebra<S>, g: DenseTensor<S>) -> Result<Self> {
        if g.order() != 2 || g.dim() != algebra.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: algebra.dim(),
                found: g.dim(),
            });
        }
        if !is_symmetric(&g) {
            return Err(GeometryError::InvalidMetric("not symmetric".into()));
        }
        if !is_positive_definite(&g) {
            return Err(GeometryError::InvalidMetric(
                "a leading principal minor is not positive".into(),
            ));
        }
        let g = DenseTensor::from_data(g.dim(), &[Covariant, Covariant], g.data().to_vec())?;
        let g_inv = inverse(&g).ok_or_else(|| GeometryError::InvalidMetric("singular".into()))?;
        Ok(Self { algebra, g, g_inv })
    }

    /// The algebra with its basis declared orthonormal.
    pub fn orthonormal(algebra: LieAlgebra<S>) -> Self {
        let g = crate::tensor::bilinear(algebra.dim(), |i, j| {
            if i == j {
                S::one()
            } else {
                S::zero()
            }
        });
        Self::new(algebra, g).expect("identity metric")
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn metric(&self) -> &DenseTensor<S> {
        &self.g
    }

    pub fn inverse_metric(&self) -> &DenseTensor<S> {
        &self.g_inv
    }

    pub fn inner(&self, x: &[S], y: &[S]) -> S {
        crate::tensor::pair(&self.g, x, y)
    }

    /// Vector metrically dual to a covector.
    pub fn raise(&self, alpha: &[S]) -> Vector<S> {
        mat_vec(&self.g_inv, alpha)
    }

    pub fn lower(&self, x: &[S]) -> Vector<S> {
        crate::tensor::lower(&self.g, x)
    }

    /// Levi-Civita connection from the left-invariant Koszul formula
    /// `2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)`.
    pub fn koszul_connection(&self) -> DenseTensor<S> {
        let n = self.dim();
        let c = self.algebra.structure_constants();
        // c_low[i, j, l] = g([b_i, b_j], b_l)
        let c_low = DenseTensor::from_fn(n, &[Covariant; 3], |ix| {
            (0..n).fold(S::zero(), |acc, k| {
                let ck = c.get(&[ix[0], ix[1], k]);
                if ck.is_zero() {
                    acc
                } else {
                    acc + ck.clone() * self.g.get(&[k, ix[2]]).clone()
                }
            })
        });
        let half = S::ratio(1, 2);
        let gamma_low = DenseTensor::from_fn(n, &[Covariant; 3], |ix| {
            let (i, j, l) = (ix[0], ix[1], ix[2]);
            half.clone()
                * (c_low.get(&[i, j, l]).clone() - c_low.get(&[j, l, i]).clone()
                    + c_low.get(&[l, i, j]).clone())
        });
        raise_last(&gamma_low, &self.g_inv)
    }

    /// Ricci tensor `Ric(X, Y) = Σ g^{ij} g(R(b_i, X) Y, b_j)` of any
    /// curvature tensor.
    pub fn ricci_of(&self, r: &DenseTensor<S>) -> DenseTensor<S> {
        let low = lower_last(r, &self.g);
        low.contract_pair(&self.g_inv, (0, 3))
            .expect("curvature has four covariant slots after lowering")
    }

    pub fn levi_civita_curvature(&self) -> DenseTensor<S> {
        curvature(&self.algebra, &self.koszul_connection())
    }

    pub fn ricci_tensor(&self) -> DenseTensor<S> {
        self.ricci_of(&self.levi_civita_curvature())
    }
}

/// `T[.., k] = Σ_l g^{kl} T_low[.., l]` on the last slot.
pub fn raise_last<S: Scalar>(t: &DenseTensor<S>, g_inv: &DenseTensor<S>) -> DenseTensor<S> {
    let n = t.dim();
    let order = t.order();
    let mut var = t.variance().to_vec();
    var[order - 1] = Contravariant;
    let mut src = vec![0usize; order];
    DenseTensor::from_fn(n, &var, |ix| {
        src.copy_from_slice(ix);
        (0..n).fold(S::zero(), |acc, l| {
            let w = g_inv.get(&[ix[order - 1], l]);
            if w.is_zero() {
                return acc;
            }
            src[order - 1] = l;
            acc + w.clone() * t.get(&src).clone()
        })
    })
}

/// `T_low[.., l] = Σ_k T[.., k] g_{kl}` on the last slot.
pub fn lower_last<S: Scalar>(t: &DenseTensor<S>, g: &DenseTensor<S>) -> DenseTensor<S> {
    let n = t.dim();
    let order = t.order();
    let mut var = t.variance().to_vec();
    var[order - 1] = Covariant;
    let mut src = vec![0usize; order];
    DenseTensor::from_fn(n, &var, |ix| {
        src.copy_from_slice(ix);
        (0..n).fold(S::zero(), |acc, k| {
            let w = g.get(&[k, ix[order - 1]]);
            if w.is_zero() {
                return acc;
            }
            src[order - 1] = k;
            acc + t.get(&src).clone() * w.clone()
        })
    })
}

/// `∇_X Y` for constant-coefficient fields.
pub fn connection_apply<S: Scalar>(gamma: &DenseTensor<S>, x: &[S], y: &[S]) -> Vector<S> {
    let n = gamma.dim();
    let mut out = vec![S::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let w = x[i].clone() * y[j].clone();
            for (k, o) in out.iter_mut().enumerate() {
                let c = gamma.get(&[i, j, k]);
                if !c.is_zero() {
                    *o = o.clone() + w.clone() * c.clone();
                }
            }
        }
    }
    out
}

/// Torsion `T(X, Y) = ∇_X Y − ∇_Y X − [X, Y]` in connection layout.
pub fn torsion<S: Scalar>(algebra: &LieAlgebra<S>, gamma: &DenseTensor<S>) -> DenseTensor<S> {
    let c = algebra.structure_constants();
    DenseTensor::from_fn(gamma.dim(), &CONNECTION_SLOTS, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        gamma.get(&[i, j, k]).clone() - gamma.get(&[j, i, k]).clone() - c.get(&[i, j, k]).clone()
    })
}

/// Curvature of a left-invariant connection,
/// `R(X, Y)Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_{[X,Y]} Z`, in the layout
/// `R[i, j, k, l]` = component `l` of `R(b_i, b_j) b_k`.
pub fn curvature<S: Scalar>(algebra: &LieAlgebra<S>, gamma: &DenseTensor<S>) -> DenseTensor<S> {
    let n = gamma.dim();
    let c = algebra.structure_constants();
    DenseTensor::from_fn(n, &CURVATURE_SLOTS, |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        let mut acc = S::zero();
        for m in 0..n {
            let gjk = gamma.get(&[j, k, m]);
            if !gjk.is_zero() {
                acc = acc + gjk.clone() * gamma.get(&[i, m, l]).clone();
            }
            let gik = gamma.get(&[i, k, m]);
            if !gik.is_zero() {
                acc = acc - gik.clone() * gamma.get(&[j, m, l]).clone();
            }
            let cij = c.get(&[i, j, m]);
            if !cij.is_zero() {
                acc = acc - cij.clone() * gamma.get(&[m, k, l]).clone();
            }
        }
        acc
    })
}

/// Applies `R(x, y)` to `z`.
pub fn curvature_apply<S: Scalar>(r: &DenseTensor<S>, x: &[S], y: &[S], z: &[S]) -> Vector<S> {
    let n = r.dim();
    let mut out = vec![S::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            for k in 0..n {
                if z[k].is_zero() {
                    continue;
                }
                let w = x[i].clone() * y[j].clone() * z[k].clone();
                for (l, o) in out.iter_mut().enumerate() {
                    let v = r.get(&[i, j, k, l]);
                    if !v.is_zero() {
                        *o = o.clone() + w.clone() * v.clone();
                    }
                }
            }
        }
    }
    out
}

/// Covariant derivative of a left-invariant tensor field. The result has a
/// new covariant slot in front: `(∇T)[i, ..] = (∇_{b_i} T)[..]`.
///
/// Covariant slots pick up `−Σ_m Γ[i, a, m] T[.. m ..]` and contravariant
/// slots `+Σ_m Γ[i, m, a] T[.. m ..]`.
pub fn covariant_derivative<S: Scalar>(
    gamma: &DenseTensor<S>,
    t: &DenseTensor<S>,
) -> DenseTensor<S> {
    let n = t.dim();
    let order = t.order();
    let mut var = vec![Covariant];
    var.extend_from_slice(t.variance());
    let tv = t.variance().to_vec();
    let mut src = vec![0usize; order];
    DenseTensor::from_fn(n, &var, |ix| {
        let i = ix[0];
        let idx = &ix[1..];
        let mut acc = S::zero();
        for (s, v) in tv.iter().enumerate() {
            src.copy_from_slice(idx);
            let a = idx[s];
            for m in 0..n {
                let coeff = match v {
                    Covariant => gamma.get(&[i, a, m]),
                    Contravariant => gamma.get(&[i, m, a]),
                };
                if coeff.is_zero() {
                    continue;
                }
                src[s] = m;
                let term = coeff.clone() * t.get(&src).clone();
                acc = match v {
                    Covariant => acc - term,
                    Contravariant => acc + term,
                };
            }
        }
        acc
    })
}

/// Dense covariant tensor of a form, `F[i_1, …, i_k] = α(b_{i_1}, …, b_{i_k})`.
pub fn form_to_tensor<S: Scalar>(alpha: &ExteriorForm<S>) -> DenseTensor<S> {
    let k = alpha.degree();
    let mut t = DenseTensor::zeros(alpha.dim(), &vec![Covariant; k]);
    for (idx, c) in alpha.terms() {
        permutations_with_sign(idx, &mut |perm, odd| {
            t.set(perm, if odd { -c.clone() } else { c.clone() });
        });
    }
    t
}

/// Reads an antisymmetric covariant tensor back as a form.
pub fn tensor_to_form<S: Scalar>(t: &DenseTensor<S>) -> ExteriorForm<S> {
    let k = t.order();
    ExteriorForm::from_basis_values(t.dim(), k, |idx| t.get(idx).clone())
}

fn permutations_with_sign(idx: &[usize], f: &mut impl FnMut(&[usize], bool)) {
    fn rec(cur: &mut Vec<usize>, k: usize, odd: bool, f: &mut impl FnMut(&[usize], bool)) {
        if k == cur.len() {
            f(cur, odd);
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(cur, k + 1, if i != k { !odd } else { odd }, f);
            cur.swap(k, i);
        }
    }
    let mut cur = idx.to_vec();
    rec(&mut cur, 0, false, f);
}
