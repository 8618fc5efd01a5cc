//! The Hermitian structure `(J_{a,b}, g_{a,b})` on a product of two Sasakian
//! Lie algebras, its Levi-Civita geometry and the harmonicity of `J`.
//!
//! The basis of the product is the basis of `S₁` followed by the basis of
//! `S₂`. Objects of a factor (`ξ_i`, `η_i`, `φ_i`, `Φ_i`, `g_i`, `∇^i`, …)
//! are extended by zero to the whole product.

use std::sync::OnceLock;

use crate::error::{GeometryError, Result};
use crate::forms::ExteriorForm;
use crate::lie::{
    connection_apply, covariant_derivative, curvature, torsion, MetricLieAlgebra,
    CONNECTION_SLOTS,
};
use crate::sasaki::SasakiStructure;
use crate::scalar::Scalar;
use crate::tensor::{
    basis_vector, bilinear, commutator, endomorphism, identity, mat_mul, mat_vec, pair,
    DenseTensor, Variance, Vector,
};

/// Largest product dimension accepted by [`ProductHermitian::new`].
pub const MAX_PRODUCT_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianParams<S> {
    a: S,
    b: S,
    lambda: S,
}

impl<S: Scalar> HermitianParams<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        if b.is_negligible(a.magnitude()) {
            return Err(GeometryError::InvalidParameter("b must be nonzero".into()));
        }
        let lambda = a.square() + b.square() - S::one();
        Ok(Self { a, b, lambda })
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    /// `λ_{a,b} = a² + b² − 1`.
    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    /// `a² + b²`.
    pub fn norm2(&self) -> S {
        self.lambda.clone() + S::one()
    }
}

/// Data of one Sasakian factor, extended by zero to the product.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedFactor<S> {
    pub offset: usize,
    pub dim: usize,
    pub n: usize,
    pub xi: Vector<S>,
    pub eta: Vector<S>,
    pub phi: DenseTensor<S>,
    pub g: DenseTensor<S>,
    /// `Φ_i` as an antisymmetric matrix.
    pub fundamental: DenseTensor<S>,
    pub fundamental_form: ExteriorForm<S>,
    /// Levi-Civita connection of the factor.
    pub levi_civita: DenseTensor<S>,
    /// Characteristic connection of the factor.
    pub characteristic: DenseTensor<S>,
    /// Ricci tensor of the factor.
    pub ricci: DenseTensor<S>,
}

impl<S: Scalar> EmbeddedFactor<S> {
    fn new(s: &SasakiStructure<S>, offset: usize, total: usize) -> Result<Self> {
        let d = s.dim();
        let inside = |i: usize| i >= offset && i < offset + d;
        let vec = |v: &[S]| -> Vector<S> {
            (0..total)
                .map(|i| if inside(i) { v[i - offset].clone() } else { S::zero() })
                .collect()
        };
        let mat = |m: &DenseTensor<S>| -> DenseTensor<S> {
            DenseTensor::from_fn(total, m.variance(), |ix| {
                if ix.iter().all(|&i| inside(i)) {
                    let local: Vec<usize> = ix.iter().map(|&i| i - offset).collect();
                    m.get(&local).clone()
                } else {
                    S::zero()
                }
            })
        };
        let phi_m = s.fundamental_form().to_matrix();
        Ok(Self {
            offset,
            dim: d,
            n: s.n(),
            xi: vec(s.xi()),
            eta: vec(s.eta()),
            phi: mat(s.phi()),
            g: mat(s.metric()),
            fundamental: mat(&phi_m),
            fundamental_form: ExteriorForm::from_antisymmetric(&mat(&phi_m)),
            levi_civita: mat(&s.levi_civita()),
            characteristic: mat(&s.characteristic_connection()?),
            ricci: mat(&s.ricci()),
        })
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= self.offset && i < self.offset + self.dim
    }

    pub fn eta_of(&self, x: &[S]) -> S {
        crate::tensor::dot(&self.eta, x)
    }

    pub fn phi_of(&self, x: &[S]) -> Vector<S> {
        mat_vec(&self.phi, x)
    }

    /// Basis vectors of the factor projected onto its contact distribution.
    pub fn distribution_basis(&self) -> Vec<Vector<S>> {
        let total = self.xi.len();
        (self.offset..self.offset + self.dim)
            .map(|k| {
                let e = basis_vector::<S>(total, k);
                let h = self.eta_of(&e);
                crate::tensor::axpy(&-h, &self.xi, &e)
            })
            .filter(|u| !crate::tensor::vec_is_zero(u, 0.0))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ProductHermitian<S> {
    s1: SasakiStructure<S>,
    s2: SasakiStructure<S>,
    params: HermitianParams<S>,
    metric: MetricLieAlgebra<S>,
    j: DenseTensor<S>,
    omega: ExteriorForm<S>,
    f1: EmbeddedFactor<S>,
    f2: EmbeddedFactor<S>,
    levi_civita: DenseTensor<S>,
    curvature: OnceLock<DenseTensor<S>>,
    nabla_j: OnceLock<DenseTensor<S>>,
}

/// `[J, ∇*∇J]` together with its vanishing verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicityDefect<S> {
    pub defect: DenseTensor<S>,
    pub harmonic: bool,
}

impl<S: Scalar> ProductHermitian<S> {
    /// Builds `(J_{a,b}, g_{a,b})` on `S₁ × S₂` and validates the Hermitian
    /// invariants.
    pub fn new(s1: SasakiStructure<S>, s2: SasakiStructure<S>, params: HermitianParams<S>) -> Result<Self> {
        s1.require_sasakian()?;
        s2.require_sasakian()?;
        let d1 = s1.dim();
        let n = d1 + s2.dim();
        if n > MAX_PRODUCT_DIM {
            return Err(GeometryError::TooLarge {
                dim: n,
                max: MAX_PRODUCT_DIM,
            });
        }
        let f1 = EmbeddedFactor::new(&s1, 0, n)?;
        let f2 = EmbeddedFactor::new(&s2, d1, n)?;
        let (a, b) = (params.a.clone(), params.b.clone());
        let norm2 = params.norm2();

        let g = bilinear(n, |i, j| {
            f1.g.get(&[i, j]).clone()
                + f2.g.get(&[i, j]).clone()
                + a.clone()
                    * (f1.eta[i].clone() * f2.eta[j].clone()
                        + f1.eta[j].clone() * f2.eta[i].clone())
                + params.lambda.clone() * f2.eta[i].clone() * f2.eta[j].clone()
        });
        let algebra = s1.algebra().direct_sum(s2.algebra());
        let metric = MetricLieAlgebra::new(algebra, g)?;

        // J(X₁ + X₂) = φ₁X₁ + φ₂X₂ − ((a/b)η₁ + ((a²+b²)/b)η₂)ξ₁ + ((1/b)η₁ + (a/b)η₂)ξ₂
        let c1 = |j: usize| {
            -(a.clone() / b.clone() * f1.eta[j].clone() + norm2.clone() / b.clone() * f2.eta[j].clone())
        };
        let c2 = |j: usize| {
            S::one() / b.clone() * f1.eta[j].clone() + a.clone() / b.clone() * f2.eta[j].clone()
        };
        let j = endomorphism(n, |i, j| {
            f1.phi.get(&[i, j]).clone()
                + f2.phi.get(&[i, j]).clone()
                + c1(j) * f1.xi[i].clone()
                + c2(j) * f2.xi[i].clone()
        });

        let omega_matrix = bilinear(n, |x, y| {
            pair(metric.metric(), &basis_vector(n, x), &mat_vec(&j, &basis_vector(n, y)))
        });
        let omega = ExteriorForm::from_antisymmetric(&omega_matrix);

        let levi_civita = metric.koszul_connection();
        let p = Self {
            s1,
            s2,
            params,
            metric,
            j,
            omega,
            f1,
            f2,
            levi_civita,
            curvature: OnceLock::new(),
            nabla_j: OnceLock::new(),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let fail = |axiom: &'static str, detail: &str| {
            Err(GeometryError::Axiom {
                axiom,
                detail: detail.to_string(),
            })
        };
        let j2 = mat_mul(&self.j, &self.j);
        if !j2.approx_eq(&identity::<S>(n).scale(&-S::one())) {
            return fail("J^2 = -Id", "J does not square to -Id");
        }
        let g = self.g();
        let gj = bilinear(n, |x, y| {
            pair(g, &mat_vec(&self.j, &basis_vector(n, x)), &mat_vec(&self.j, &basis_vector(n, y)))
        });
        if !gj.approx_eq(g) {
            return fail("compatibility", "g(JX, JY) != g(X, Y)");
        }
        if !self.nijenhuis_j().is_zero_within(self.j.max_abs().powi(2)) {
            return fail("integrability", "the Nijenhuis tensor of J is nonzero");
        }
        let restricted = bilinear(n, |x, y| {
            if self.f1.contains(x) && self.f1.contains(y) {
                g.get(&[x, y]).clone()
            } else {
                S::zero()
            }
        });
        if !restricted.approx_eq(&self.f1.g) {
            return fail("restriction", "g does not restrict to g1 on the first factor");
        }
        let expected = self
            .f1
            .fundamental_form
            .add(&self.f2.fundamental_form)
            .sub(&self.eta1_form().wedge(&self.eta2_form())?.scale(&self.params.b));
        if !self.omega.approx_eq(&expected) {
            return fail("fundamental form", "omega != Phi1 + Phi2 - b eta1^eta2");
        }
        Ok(())
    }

    pub fn first(&self) -> &SasakiStructure<S> {
        &self.s1
    }

    pub fn second(&self) -> &SasakiStructure<S> {
        &self.s2
    }

    pub fn factor1(&self) -> &EmbeddedFactor<S> {
        &self.f1
    }

    pub fn factor2(&self) -> &EmbeddedFactor<S> {
        &self.f2
    }

    pub fn params(&self) -> &HermitianParams<S> {
        &self.params
    }

    pub fn a(&self) -> &S {
        &self.params.a
    }

    pub fn b(&self) -> &S {
        &self.params.b
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn n1(&self) -> usize {
        self.f1.n
    }

    pub fn n2(&self) -> usize {
        self.f2.n
    }

    /// Complex dimension `n = n₁ + n₂ + 1`.
    pub fn complex_dim(&self) -> usize {
        self.n1() + self.n2() + 1
    }

    pub fn metric_algebra(&self) -> &MetricLieAlgebra<S> {
        &self.metric
    }

    pub fn g(&self) -> &DenseTensor<S> {
        self.metric.metric()
    }

    pub fn g_inv(&self) -> &DenseTensor<S> {
        self.metric.inverse_metric()
    }

    pub fn j(&self) -> &DenseTensor<S> {
        &self.j
    }

    pub fn j_of(&self, x: &[S]) -> Vector<S> {
        mat_vec(&self.j, x)
    }

    /// `ω(X, Y) = g(X, JY)`.
    pub fn omega(&self) -> &ExteriorForm<S> {
        &self.omega
    }

    pub fn xi1(&self) -> &Vector<S> {
        &self.f1.xi
    }

    pub fn xi2(&self) -> &Vector<S> {
        &self.f2.xi
    }

    pub fn eta1_form(&self) -> ExteriorForm<S> {
        ExteriorForm::from_covector(&self.f1.eta)
    }

    pub fn eta2_form(&self) -> ExteriorForm<S> {
        ExteriorForm::from_covector(&self.f2.eta)
    }

    /// Exterior derivative on the product algebra.
    pub fn d(&self, alpha: &ExteriorForm<S>) -> Result<ExteriorForm<S>> {
        self.metric.algebra().ce_differential(alpha)
    }

    /// Nijenhuis tensor `N_J(X, Y) = [JX, JY] − J[JX, Y] − J[X, JY] − [X, Y]`.
    pub fn nijenhuis_j(&self) -> DenseTensor<S> {
        let n = self.dim();
        let l = self.metric.algebra();
        let mut cols = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let bx = basis_vector::<S>(n, x);
                let by = basis_vector::<S>(n, y);
                let jx = self.j_of(&bx);
                let jy = self.j_of(&by);
                let mut v = l.bracket(&jx, &jy);
                v = crate::tensor::sub_vec(&v, &self.j_of(&l.bracket(&jx, &by)));
                v = crate::tensor::sub_vec(&v, &self.j_of(&l.bracket(&bx, &jy)));
                v = crate::tensor::sub_vec(&v, &l.bracket(&bx, &by));
                cols.push(v);
            }
        }
        DenseTensor::from_fn(n, &CONNECTION_SLOTS, |ix| cols[ix[0] * n + ix[1]][ix[2]].clone())
    }

    /// Levi-Civita connection of `g_{a,b}` from the Koszul formula.
    pub fn levi_civita(&self) -> &DenseTensor<S> {
        &self.levi_civita
    }

    /// Levi-Civita connection assembled from the factor connections:
    /// `∇_X Y = ∇¹_{X₁}Y₁ + ∇²_{X₂}Y₂ − λ_{a,b}[η₂(X)φ₂Y + η₂(Y)φ₂X]
    ///        − a[η₂(Y)φ₁X + η₁(X)φ₂Y + η₂(X)φ₁Y + η₁(Y)φ₂X]`.
    pub fn levi_civita_closed_form(&self) -> DenseTensor<S> {
        let n = self.dim();
        let (f1, f2) = (&self.f1, &self.f2);
        let a = self.a();
        let lam = self.params.lambda();
        DenseTensor::from_fn(n, &CONNECTION_SLOTS, |ix| {
            let (x, y, k) = (ix[0], ix[1], ix[2]);
            let mut v = f1.levi_civita.get(&[x, y, k]).clone() + f2.levi_civita.get(&[x, y, k]).clone();
            v = v - lam.clone()
                * (f2.eta[x].clone() * f2.phi.get(&[k, y]).clone()
                    + f2.eta[y].clone() * f2.phi.get(&[k, x]).clone());
            v - a.clone()
                * (f2.eta[y].clone() * f1.phi.get(&[k, x]).clone()
                    + f1.eta[x].clone() * f2.phi.get(&[k, y]).clone()
                    + f2.eta[x].clone() * f1.phi.get(&[k, y]).clone()
                    + f1.eta[y].clone() * f2.phi.get(&[k, x]).clone())
        })
    }

    pub fn levi_civita_torsion(&self) -> DenseTensor<S> {
        torsion(self.metric.algebra(), &self.levi_civita)
    }

    pub fn curvature(&self) -> &DenseTensor<S> {
        self.curvature
            .get_or_init(|| curvature(self.metric.algebra(), &self.levi_civita))
    }

    pub fn ricci(&self) -> DenseTensor<S> {
        self.metric.ricci_of(self.curvature())
    }

    /// Ricci tensor of `g_{a,b}` in terms of the factor Ricci tensors.
    pub fn ricci_closed_form(&self) -> DenseTensor<S> {
        let (f1, f2) = (&self.f1, &self.f2);
        let a = self.a().clone();
        let norm2 = self.params.norm2();
        let lam = self.params.lambda().clone();
        let (n1, n2) = (S::from_i64(self.n1() as i64), S::from_i64(self.n2() as i64));
        let c11 = S::from_i64(2) * a.square() * n2.clone();
        let c12 = S::from_i64(2) * a.clone() * (n1.clone() + n2.clone() * norm2.clone());
        let c22 = S::from_i64(2)
            * (n1 * a.square() + lam.clone() + n2.clone() * norm2.square() - n2);
        bilinear(self.dim(), |x, y| {
            f1.ricci.get(&[x, y]).clone()
                + c11.clone() * f1.eta[x].clone() * f1.eta[y].clone()
                + c12.clone()
                    * (f1.eta[x].clone() * f2.eta[y].clone() + f2.eta[x].clone() * f1.eta[y].clone())
                + f2.ricci.get(&[x, y]).clone()
                - S::from_i64(2) * lam.clone() * f2.g.get(&[x, y]).clone()
                + c22.clone() * f2.eta[x].clone() * f2.eta[y].clone()
        })
    }

    /// `∇J` with `N[i, j, k]` = component `k` of `(∇_{b_i} J) b_j`, computed
    /// as `∇_X(JY) − J∇_X Y`.
    pub fn nabla_j(&self) -> &DenseTensor<S> {
        self.nabla_j.get_or_init(|| nabla_endomorphism(&self.levi_civita, &self.j))
    }

    /// `∇J` from the factor data alone.
    pub fn nabla_j_closed_form(&self) -> DenseTensor<S> {
        let n = self.dim();
        let (f1, f2) = (&self.f1, &self.f2);
        let (a, b) = (self.a().clone(), self.b().clone());
        let norm2 = self.params.norm2();
        let lam = self.params.lambda().clone();
        let mut cols = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let bx = basis_vector::<S>(n, x);
                let mut v = vec![S::zero(); n];
                let mut add = |c: S, w: &[S]| {
                    if !c.is_zero() {
                        v = crate::tensor::axpy(&c, w, &v);
                    }
                };
                match (f1.contains(x), f1.contains(y)) {
                    (true, true) => {
                        let phi = f1.fundamental.get(&[x, y]).clone();
                        add(f1.g.get(&[x, y]).clone(), &f1.xi);
                        add(-f1.eta[y].clone(), &bx);
                        add(-a.clone() / b.clone() * phi.clone(), &f1.xi);
                        add(phi / b.clone(), &f2.xi);
                    }
                    (false, false) => {
                        let phi = f2.fundamental.get(&[x, y]).clone();
                        add(
                            f2.g.get(&[x, y]).clone() + lam.clone() * f2.eta[x].clone() * f2.eta[y].clone(),
                            &f2.xi,
                        );
                        add(-norm2.clone() * f2.eta[y].clone(), &bx);
                        add(-norm2.clone() / b.clone() * phi.clone(), &f1.xi);
                        add(a.clone() / b.clone() * phi, &f2.xi);
                    }
                    (true, false) => {
                        let e2 = f2.eta[y].clone();
                        add(a.clone() * e2.clone() * f1.eta[x].clone(), &f1.xi);
                        add(-a.clone() * e2.clone(), &bx);
                        add(b.clone() * e2, &f1.phi_of(&bx));
                    }
                    (false, true) => {
                        let e1 = f1.eta[y].clone();
                        add(a.clone() * e1.clone() * f2.eta[x].clone(), &f2.xi);
                        add(-a.clone() * e1.clone(), &bx);
                        add(-b.clone() * e1, &f2.phi_of(&bx));
                    }
                }
                cols.push(v);
            }
        }
        DenseTensor::from_fn(n, &CONNECTION_SLOTS, |ix| cols[ix[0] * n + ix[1]][ix[2]].clone())
    }

    /// `∇_v J` as an endomorphism.
    pub fn nabla_j_along(&self, v: &[S]) -> DenseTensor<S> {
        let nj = self.nabla_j();
        let n = self.dim();
        endomorphism(n, |k, y| {
            (0..n).fold(S::zero(), |acc, x| {
                if v[x].is_zero() {
                    acc
                } else {
                    acc + v[x].clone() * nj.get(&[x, y, k]).clone()
                }
            })
        })
    }

    /// `δJ = Σ g^{ij} (∇_{b_i} J) b_j`.
    pub fn codifferential_j(&self) -> Vector<S> {
        self.nabla_j()
            .contract_pair(self.g_inv(), (0, 1))
            .expect("two covariant slots")
            .data()
            .to_vec()
    }

    /// Rough Laplacian `∇*∇J = Σ g^{ij} ∇²_{b_i, b_j} J` with
    /// `∇²_{U,V} J = ∇_U(∇_V J) − ∇_{∇_U V} J`.
    pub fn rough_laplacian_j(&self) -> DenseTensor<S> {
        // slots of ∇J in tensor order: [X, component, Y]
        let dj = covariant_derivative(&self.levi_civita, &self.j);
        let d2j = covariant_derivative(&self.levi_civita, &dj);
        let lap = d2j.contract_pair(self.g_inv(), (0, 1)).expect("two covariant slots");
        endomorphism(self.dim(), |k, y| lap.get(&[k, y]).clone())
    }

    /// `P = ½ Σ g^{ij} R(b_i, J b_j)`, an endomorphism.
    pub fn p_tensor(&self) -> DenseTensor<S> {
        let n = self.dim();
        let r = self.curvature();
        let q = DenseTensor::from_fn(
            n,
            &[Variance::Covariant, Variance::Covariant, Variance::Covariant, Variance::Contravariant],
            |ix| {
                let (i, jj, k, l) = (ix[0], ix[1], ix[2], ix[3]);
                (0..n).fold(S::zero(), |acc, m| {
                    let w = self.j.get(&[m, jj]);
                    if w.is_zero() {
                        acc
                    } else {
                        acc + w.clone() * r.get(&[i, m, k, l]).clone()
                    }
                })
            },
        );
        let c = q.contract_pair(self.g_inv(), (0, 1)).expect("two covariant slots");
        let half = S::ratio(1, 2);
        endomorphism(n, |l, k| half.clone() * c.get(&[k, l]).clone())
    }

    pub fn harmonicity_defect(&self) -> HarmonicityDefect<S> {
        let lap = self.rough_laplacian_j();
        let defect = commutator(&self.j, &lap);
        let harmonic = defect.is_zero_within(self.j.max_abs() * lap.max_abs());
        HarmonicityDefect { defect, harmonic }
    }

    /// `[J, ∇*∇J] − 2(∇_{δJ}J − [J, P])`, which vanishes for every
    /// integrable Hermitian structure.
    pub fn wood_residual(&self) -> DenseTensor<S> {
        let lhs = commutator(&self.j, &self.rough_laplacian_j());
        let delta = self.codifferential_j();
        let rhs = self
            .nabla_j_along(&delta)
            .sub(&commutator(&self.j, &self.p_tensor()))
            .scale(&S::from_i64(2));
        lhs.sub(&rhs)
    }

    /// `∇_X Y` for the Levi-Civita connection.
    pub fn nabla(&self, x: &[S], y: &[S]) -> Vector<S> {
        connection_apply(&self.levi_civita, x, y)
    }
}

/// `(∇_{b_i} A) b_j` in connection layout for an endomorphism `A`.
pub fn nabla_endomorphism<S: Scalar>(gamma: &DenseTensor<S>, a: &DenseTensor<S>) -> DenseTensor<S> {
    let d = covariant_derivative(gamma, a);
    // d[i, k, j] = component k of (∇_i A) b_j
    let n = a.dim();
    DenseTensor::from_fn(n, &CONNECTION_SLOTS, |ix| d.get(&[ix[0], ix[2], ix[1]]).clone())
}
