//! Almost contact metric structures `(φ, ξ, η, g)` on metric Lie algebras.

use std::fmt;

use crate::error::{GeometryError, Result};
use crate::forms::ExteriorForm;
use crate::lie::{connection_apply, LieAlgebra, MetricLieAlgebra, CONNECTION_SLOTS};
use crate::scalar::{max_magnitude, Scalar};
use crate::tensor::{
    basis_vector, bilinear, identity, mat_mul, mat_vec, pair, scale_vec, sub_vec, vec_is_zero,
    DenseTensor, Vector,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SasakiStructure<S> {
    metric: MetricLieAlgebra<S>,
    phi: DenseTensor<S>,
    xi: Vector<S>,
    eta: Vector<S>,
    fundamental: ExteriorForm<S>,
    n: usize,
    name: String,
}

/// Per-axiom verdict of [`SasakiStructure::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SasakiVerdict {
    /// `φ² = −Id + η⊗ξ`, `η(ξ) = 1`, `φξ = 0`, `η∘φ = 0`.
    pub almost_contact: bool,
    /// `g(φX, φY) = g(X, Y) − η(X)η(Y)` and `η = g(ξ, ·)`.
    pub metric_compatible: bool,
    /// `N_φ = [φ, φ] + dη ⊗ ξ` vanishes.
    pub normal: bool,
    /// `dη = 2Φ`.
    pub contact_condition: bool,
    /// Human-readable reasons for every failed axiom.
    pub failures: Vec<String>,
}

impl SasakiVerdict {
    pub fn is_sasakian(&self) -> bool {
        self.almost_contact && self.metric_compatible && self.normal && self.contact_condition
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaClass {
    Positive,
    Null,
    Negative,
}

impl fmt::Display for EtaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EtaClass::Positive => "positive",
            EtaClass::Null => "null",
            EtaClass::Negative => "negative",
        })
    }
}

/// Constants of `Ric = λ g + ν η⊗η`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaEinsteinConstants<S> {
    pub lambda: S,
    pub nu: S,
    pub class: EtaClass,
}

impl<S: Scalar> EtaEinsteinConstants<S> {
    pub fn classify(lambda: &S) -> EtaClass {
        let shifted = lambda.clone() + S::from_i64(2);
        if shifted.is_negligible(lambda.magnitude()) {
            EtaClass::Null
        } else if shifted > S::zero() {
            EtaClass::Positive
        } else {
            EtaClass::Negative
        }
    }
}

impl<S: Scalar> SasakiStructure<S> {
    /// Assembles a structure. Only shapes are checked here; the axioms are
    /// checked by [`verify`](Self::verify).
    pub fn new(
        metric: MetricLieAlgebra<S>,
        phi: DenseTensor<S>,
        xi: Vector<S>,
        eta: Vector<S>,
    ) -> Result<Self> {
        let dim = metric.dim();
        if dim % 2 == 0 {
            return Err(GeometryError::InvalidParameter(format!(
                "an almost contact structure needs odd dimension, got {dim}"
            )));
        }
        for (what, len) in [("xi", xi.len()), ("eta", eta.len()), ("phi", phi.dim())] {
            if len != dim {
                return Err(GeometryError::InvalidParameter(format!(
                    "{what} has dimension {len}, expected {dim}"
                )));
            }
        }
        if phi.order() != 2 {
            return Err(GeometryError::Arity {
                expected: 2,
                found: phi.order(),
            });
        }
        let phi = crate::tensor::endomorphism(dim, |i, j| phi.get(&[i, j]).clone());
        let g = metric.metric();
        let phi_form = bilinear(dim, |i, j| {
            (0..dim).fold(S::zero(), |acc, k| {
                acc + g.get(&[i, k]).clone() * phi.get(&[k, j]).clone()
            })
        });
        let fundamental = ExteriorForm::from_antisymmetric(&phi_form);
        Ok(Self {
            metric,
            phi,
            xi,
            eta,
            fundamental,
            n: (dim - 1) / 2,
            name: String::from("custom"),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn metric_algebra(&self) -> &MetricLieAlgebra<S> {
        &self.metric
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        self.metric.algebra()
    }

    pub fn metric(&self) -> &DenseTensor<S> {
        self.metric.metric()
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// Half-rank of the contact distribution.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> &DenseTensor<S> {
        &self.phi
    }

    pub fn xi(&self) -> &Vector<S> {
        &self.xi
    }

    pub fn eta(&self) -> &Vector<S> {
        &self.eta
    }

    /// `Φ(X, Y) = g(X, φY)`.
    pub fn fundamental_form(&self) -> &ExteriorForm<S> {
        &self.fundamental
    }

    pub fn eta_of(&self, x: &[S]) -> S {
        crate::tensor::dot(&self.eta, x)
    }

    pub fn phi_of(&self, x: &[S]) -> Vector<S> {
        mat_vec(&self.phi, x)
    }

    /// Projection onto 𝒟, `X ↦ X − η(X)ξ`.
    pub fn project(&self, x: &[S]) -> Vector<S> {
        sub_vec(x, &scale_vec(&self.eta_of(x), &self.xi))
    }

    /// Basis vectors projected onto 𝒟, skipping those that project to zero.
    pub fn distribution_basis(&self) -> Vec<Vector<S>> {
        (0..self.dim())
            .map(|k| self.project(&basis_vector(self.dim(), k)))
            .filter(|u| !vec_is_zero(u, 0.0))
            .collect()
    }

    /// Nijenhuis-type tensor `N_φ(X, Y) = [φ,φ](X, Y) + dη(X, Y) ξ` on basis
    /// pairs, in connection layout.
    pub fn normality_tensor(&self) -> DenseTensor<S> {
        let n = self.dim();
        let l = self.algebra();
        let phi2 = mat_mul(&self.phi, &self.phi);
        let d_eta = l
            .ce_differential(&ExteriorForm::from_covector(&self.eta))
            .expect("dimensions agree");
        let mut cols: Vec<Vector<S>> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = basis_vector::<S>(n, i);
                let y = basis_vector::<S>(n, j);
                let px = self.phi_of(&x);
                let py = self.phi_of(&y);
                let mut v = l.bracket(&px, &py);
                let xy = l.bracket(&x, &y);
                v = crate::tensor::add_vec(&v, &mat_vec(&phi2, &xy));
                v = sub_vec(&v, &self.phi_of(&l.bracket(&px, &y)));
                v = sub_vec(&v, &self.phi_of(&l.bracket(&x, &py)));
                let de = d_eta.eval_basis(&[i, j]);
                v = crate::tensor::axpy(&de, &self.xi, &v);
                cols.push(v);
            }
        }
        DenseTensor::from_fn(n, &CONNECTION_SLOTS, |ix| cols[ix[0] * n + ix[1]][ix[2]].clone())
    }

    pub fn verify(&self) -> SasakiVerdict {
        let n = self.dim();
        let mut failures = Vec::new();
        let g = self.metric();

        let id = identity::<S>(n);
        let eta_xi = crate::tensor::endomorphism(n, |i, j| self.xi[i].clone() * self.eta[j].clone());
        let phi2 = mat_mul(&self.phi, &self.phi);
        let mut almost_contact = true;
        if !phi2.approx_eq(&eta_xi.sub(&id)) {
            almost_contact = false;
            failures.push("phi^2 != -Id + eta (x) xi".to_string());
        }
        let ex = self.eta_of(&self.xi);
        if !(ex.clone() - S::one()).is_negligible(ex.magnitude()) {
            almost_contact = false;
            failures.push(format!("eta(xi) = {ex}, expected 1"));
        }
        let scale = self.phi.max_abs().max(max_magnitude(&self.xi));
        if !vec_is_zero(&self.phi_of(&self.xi), scale) {
            almost_contact = false;
            failures.push("phi(xi) != 0".to_string());
        }
        let eta_phi: Vector<S> = (0..n)
            .map(|j| (0..n).fold(S::zero(), |acc, k| acc + self.eta[k].clone() * self.phi.get(&[k, j]).clone()))
            .collect();
        if !vec_is_zero(&eta_phi, scale.max(max_magnitude(&self.eta))) {
            almost_contact = false;
            failures.push("eta o phi != 0".to_string());
        }

        let mut metric_compatible = true;
        let gphi = bilinear(n, |i, j| {
            pair(g, &self.phi_of(&basis_vector(n, i)), &self.phi_of(&basis_vector(n, j)))
        });
        let rhs = bilinear(n, |i, j| {
            g.get(&[i, j]).clone() - self.eta[i].clone() * self.eta[j].clone()
        });
        if !gphi.approx_eq(&rhs) {
            metric_compatible = false;
            failures.push("g(phi X, phi Y) != g(X, Y) - eta(X) eta(Y)".to_string());
        }
        let dual = self.metric.lower(&self.xi);
        let sc = max_magnitude(&dual).max(max_magnitude(&self.eta));
        if !vec_is_zero(&sub_vec(&dual, &self.eta), sc) {
            metric_compatible = false;
            failures.push("eta is not the metric dual of xi".to_string());
        }

        let normal = self.normality_tensor().is_zero_within(scale.powi(2));
        if !normal {
            failures.push("N_phi != 0".to_string());
        }

        let d_eta = self
            .algebra()
            .ce_differential(&ExteriorForm::from_covector(&self.eta))
            .expect("dimensions agree");
        let contact_condition = d_eta.approx_eq(&self.fundamental.scale(&S::from_i64(2)));
        if !contact_condition {
            failures.push("d eta != 2 Phi".to_string());
        }

        SasakiVerdict {
            almost_contact,
            metric_compatible,
            normal,
            contact_condition,
            failures,
        }
    }

    /// Errors with the first failed axiom unless the structure is Sasakian.
    pub fn require_sasakian(&self) -> Result<()> {
        let v = self.verify();
        let checks: [(&'static str, bool); 4] = [
            ("the almost contact axioms", v.almost_contact),
            ("metric compatibility", v.metric_compatible),
            ("normality", v.normal),
            ("the contact condition", v.contact_condition),
        ];
        for (axiom, ok) in checks {
            if !ok {
                return Err(GeometryError::Axiom {
                    axiom,
                    detail: v.failures.join("; "),
                });
            }
        }
        Ok(())
    }

    pub fn levi_civita(&self) -> DenseTensor<S> {
        self.metric.koszul_connection()
    }

    pub fn ricci(&self) -> DenseTensor<S> {
        self.metric.ricci_tensor()
    }

    /// Transverse Levi-Civita connection `∇^T_X U` for `U ∈ 𝒟`:
    /// `∇^T_ξ U = [ξ, U]` and `∇^T_X U = (∇_X U)^𝒟` for `X ∈ 𝒟`.
    pub fn transverse_connection(&self, x: &[S], u: &[S]) -> Result<Vector<S>> {
        let eu = self.eta_of(u);
        if !eu.is_negligible(max_magnitude(u)) {
            return Err(GeometryError::NotInDistribution(eu.to_string()));
        }
        let gamma = self.levi_civita();
        Ok(self.transverse_with(&gamma, x, u))
    }

    pub(crate) fn transverse_with(&self, gamma: &DenseTensor<S>, x: &[S], u: &[S]) -> Vector<S> {
        let ex = self.eta_of(x);
        let xd = self.project(x);
        let along = scale_vec(&ex, &self.algebra().bracket(&self.xi, u));
        let across = self.project(&connection_apply(gamma, &xd, u));
        crate::tensor::add_vec(&along, &across)
    }

    /// Characteristic connection `Γ^C = Γ + ½ T^C` with
    /// `T^C(X, Y) = 2(−η(X)φY + η(Y)φX + Φ(X, Y)ξ)`.
    pub fn characteristic_connection(&self) -> Result<DenseTensor<S>> {
        self.require_sasakian()?;
        let gamma = self.levi_civita();
        let t = self.characteristic_torsion();
        let half = S::ratio(1, 2);
        Ok(gamma.add(&t.scale(&half)))
    }

    /// `T^C` in connection layout.
    pub fn characteristic_torsion(&self) -> DenseTensor<S> {
        let n = self.dim();
        let two = S::from_i64(2);
        DenseTensor::from_fn(n, &CONNECTION_SLOTS, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            let v = -self.eta[i].clone() * self.phi.get(&[k, j]).clone()
                + self.eta[j].clone() * self.phi.get(&[k, i]).clone()
                + self.fundamental.eval_basis(&[i, j]) * self.xi[k].clone();
            two.clone() * v
        })
    }

    /// `(λ, ν)` when `Ric = λg + νη⊗η` holds on all basis pairs. `λ` is read
    /// off a 𝒟-direction; structures without a contact distribution give
    /// `None`.
    pub fn eta_einstein_constants(&self) -> Option<EtaEinsteinConstants<S>> {
        if self.n == 0 {
            return None;
        }
        let ric = self.ricci();
        let u = self.distribution_basis().into_iter().next()?;
        let lambda = pair(&ric, &u, &u) / self.metric.inner(&u, &u);
        let nu = S::from_i64(2 * self.n as i64) - lambda.clone();
        let n = self.dim();
        let model = bilinear(n, |i, j| {
            lambda.clone() * self.metric().get(&[i, j]).clone()
                + nu.clone() * self.eta[i].clone() * self.eta[j].clone()
        });
        if !ric.approx_eq(&model) {
            return None;
        }
        let class = EtaEinsteinConstants::classify(&lambda);
        Some(EtaEinsteinConstants { lambda, nu, class })
    }

    /// D-homothetic deformation `(φ, ξ/s, sη, sg + s(s−1)η⊗η)`.
    pub fn d_homothety(&self, s: &S) -> Result<Self> {
        if !s.is_positive() {
            return Err(GeometryError::InvalidParameter(format!(
                "D-homothety factor must be positive, got {s}"
            )));
        }
        let n = self.dim();
        let g = self.metric();
        let extra = s.clone() * (s.clone() - S::one());
        let g2 = bilinear(n, |i, j| {
            s.clone() * g.get(&[i, j]).clone()
                + extra.clone() * self.eta[i].clone() * self.eta[j].clone()
        });
        let metric = MetricLieAlgebra::new(self.algebra().clone(), g2)?;
        let inv = S::one() / s.clone();
        let out = Self::new(
            metric,
            self.phi.clone(),
            scale_vec(&inv, &self.xi),
            scale_vec(s, &self.eta),
        )?
        .with_name(format!("{}(s={s})", self.name));
        out.require_sasakian()?;
        Ok(out)
    }
}
