//! The Bismut connection of `(J_{a,b}, g_{a,b})`: torsion, curvature,
//! Bismut-Ricci tensor and form, and the Kähler-like and static tests.
//!
//! Quantities with a known expression in terms of the factor data come in
//! two versions: one computed from the definition and a `*_closed_form`
//! built from the factors.

use crate::classes::{bracket_scale, codifferential, d_c};
use crate::error::{GeometryError, Result};
use crate::forms::ExteriorForm;
use crate::lie::{
    connection_apply, covariant_derivative, curvature, form_to_tensor, lower_last, raise_last,
    CONNECTION_SLOTS,
};
use crate::product::ProductHermitian;
use crate::scalar::Scalar;
use crate::tensor::{bilinear, DenseTensor, Variance, Vector};

const COV4: [Variance; 4] = [Variance::Covariant; 4];

/// `T^B = d^c ω`.
pub fn torsion_form<S: Scalar>(p: &ProductHermitian<S>) -> Result<ExteriorForm<S>> {
    d_c(p, p.omega())
}

/// `T^B` as a vector-valued 2-form, `T[i, j, k]` = component `k` of
/// `T^B(b_i, b_j)`.
pub fn torsion_tensor<S: Scalar>(p: &ProductHermitian<S>) -> Result<DenseTensor<S>> {
    let low = form_to_tensor(&torsion_form(p)?);
    let t = raise_last(&low, p.g_inv());
    DenseTensor::from_data(p.dim(), &CONNECTION_SLOTS, t.data().to_vec())
}

/// `Γ^B = Γ + ½ T^B`.
pub fn bismut_connection<S: Scalar>(p: &ProductHermitian<S>) -> Result<DenseTensor<S>> {
    let t = torsion_tensor(p)?;
    Ok(p.levi_civita().add(&t.scale(&S::ratio(1, 2))))
}

/// `Γ^B` from the characteristic connections of the factors:
/// `∇^B_X Y = ∇^{1,C}_{X₁}Y₁ + ∇^{2,C}_{X₂}Y₂ − 2λ_{a,b} η₂(X)φ₂Y
///           − 2a η₁(X)φ₂Y − 2a η₂(X)φ₁Y`.
pub fn bismut_connection_closed_form<S: Scalar>(p: &ProductHermitian<S>) -> DenseTensor<S> {
    let (f1, f2) = (p.factor1(), p.factor2());
    let two = S::from_i64(2);
    let lam = two.clone() * p.params().lambda().clone();
    let a2 = two * p.a().clone();
    DenseTensor::from_fn(p.dim(), &CONNECTION_SLOTS, |ix| {
        let (x, y, k) = (ix[0], ix[1], ix[2]);
        f1.characteristic.get(ix).clone() + f2.characteristic.get(ix).clone()
            - lam.clone() * f2.eta[x].clone() * f2.phi.get(&[k, y]).clone()
            - a2.clone() * f1.eta[x].clone() * f2.phi.get(&[k, y]).clone()
            - a2.clone() * f2.eta[x].clone() * f1.phi.get(&[k, y]).clone()
    })
}

/// `Ric^B(X, Y) = Σ g^{ij} g(R^B(b_i, X) Y, b_j)`.
pub fn ricci_bismut<S: Scalar>(p: &ProductHermitian<S>, r: &DenseTensor<S>) -> DenseTensor<S> {
    p.metric_algebra().ricci_of(r)
}

/// `Ric^B` from the factor Ricci tensors.
pub fn ricci_bismut_closed_form<S: Scalar>(p: &ProductHermitian<S>) -> DenseTensor<S> {
    let (f1, f2) = (p.factor1(), p.factor2());
    let two = S::from_i64(2);
    let m = two.clone() * p.params().norm2() - S::one();
    let c1 = S::from_i64(2 * p.n1() as i64 - 2);
    let c2 = two.clone() * m.clone() - S::from_i64(2 * p.n2() as i64);
    bilinear(p.dim(), |x, y| {
        f1.ricci.get(&[x, y]).clone()
            - two.clone() * f1.g.get(&[x, y]).clone()
            - c1.clone() * f1.eta[x].clone() * f1.eta[y].clone()
            + f2.ricci.get(&[x, y]).clone()
            - two.clone() * m.clone() * f2.g.get(&[x, y]).clone()
            + c2.clone() * f2.eta[x].clone() * f2.eta[y].clone()
    })
}

/// Contracts the last two slots of a 4-tensor against `(b_i, J b_j)`:
/// `out(X, Y) = Σ g^{ij} F(X, Y, b_i, J b_j)`.
fn trace_against_j<S: Scalar>(p: &ProductHermitian<S>, f: &DenseTensor<S>) -> DenseTensor<S> {
    let n = p.dim();
    let j = p.j();
    let fj = DenseTensor::from_fn(n, &COV4, |ix| {
        (0..n).fold(S::zero(), |acc, m| {
            let w = j.get(&[m, ix[3]]);
            if w.is_zero() {
                acc
            } else {
                acc + f.get(&[ix[0], ix[1], ix[2], m]).clone() * w.clone()
            }
        })
    });
    fj.contract_pair(p.g_inv(), (2, 3)).expect("covariant slots")
}

/// `ρ^B(X, Y) = ½ Σ g^{ij} g(R^B(X, Y) b_i, J b_j)`.
pub fn rho_bismut<S: Scalar>(p: &ProductHermitian<S>, r: &DenseTensor<S>) -> ExteriorForm<S> {
    let low = lower_last(r, p.g());
    let t = trace_against_j(p, &low);
    let half = S::ratio(1, 2);
    ExteriorForm::from_basis_values(p.dim(), 2, |ix| half.clone() * t.get(ix).clone())
}

/// `ρ^B` from the factor data:
/// `Ric¹(X, φ₁Y) − 2(2n₁ + 2an₂ − 1)Φ₁ + Ric²(X, φ₂Y) − 2(2an₁ + 2(a²+b²)n₂ − 1)Φ₂`.
pub fn rho_bismut_closed_form<S: Scalar>(p: &ProductHermitian<S>) -> ExteriorForm<S> {
    let (f1, f2) = (p.factor1(), p.factor2());
    let n = p.dim();
    let (n1, n2) = (S::from_i64(p.n1() as i64), S::from_i64(p.n2() as i64));
    let two = S::from_i64(2);
    let a = p.a().clone();
    let k1 = two.clone() * (two.clone() * n1.clone() + two.clone() * a.clone() * n2.clone() - S::one());
    let k2 = two.clone()
        * (two.clone() * a * n1 + two * p.params().norm2() * n2 - S::one());
    let ric_phi = |f: &crate::product::EmbeddedFactor<S>, x: usize, y: usize| {
        (0..n).fold(S::zero(), |acc, k| {
            acc + f.ricci.get(&[x, k]).clone() * f.phi.get(&[k, y]).clone()
        })
    };
    ExteriorForm::from_basis_values(n, 2, |ix| {
        let (x, y) = (ix[0], ix[1]);
        ric_phi(f1, x, y) - k1.clone() * f1.fundamental.get(&[x, y]).clone() + ric_phi(f2, x, y)
            - k2.clone() * f2.fundamental.get(&[x, y]).clone()
    })
}

fn require_both_factors<S: Scalar>(p: &ProductHermitian<S>) -> Result<()> {
    if p.n1() == 0 || p.n2() == 0 {
        return Err(GeometryError::NotApplicable(
            "lambda^omega needs both factors of dimension at least 3".into(),
        ));
    }
    Ok(())
}

/// `λ^ω(X, Y) = Σ g^{ij} dT^B(X, Y, b_i, J b_j)`.
pub fn lambda_omega<S: Scalar>(p: &ProductHermitian<S>) -> Result<ExteriorForm<S>> {
    require_both_factors(p)?;
    let dt = p.d(&torsion_form(p)?)?;
    let t = trace_against_j(p, &form_to_tensor(&dt));
    Ok(ExteriorForm::from_basis_values(p.dim(), 2, |ix| t.get(ix).clone()))
}

/// `ρ^B(X, Y) − Ric^B(X, JY) − ¼ λ^ω(X, Y)`.
pub fn ip_residual<S: Scalar>(p: &ProductHermitian<S>) -> Result<ExteriorForm<S>> {
    let lam = lambda_omega(p)?;
    let gamma = bismut_connection(p)?;
    let r = curvature(p.metric_algebra().algebra(), &gamma);
    let rho = rho_bismut(p, &r);
    let ric = ricci_bismut(p, &r);
    let n = p.dim();
    let j = p.j();
    let quarter = S::ratio(1, 4);
    Ok(ExteriorForm::from_basis_values(n, 2, |ix| {
        let (x, y) = (ix[0], ix[1]);
        let ric_j = (0..n).fold(S::zero(), |acc, k| {
            acc + ric.get(&[x, k]).clone() * j.get(&[k, y]).clone()
        });
        rho.coefficient(ix) - ric_j - quarter.clone() * lam.coefficient(ix)
    }))
}

/// Verdict of the static test for SKT structures.
#[derive(Clone, Debug, PartialEq)]
pub struct StaticVerdict<S> {
    pub is_static: bool,
    /// `ρ^B(ξ₁, ξ₂) / ω(ξ₁, ξ₂)`.
    pub alpha: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BismutFlags {
    pub ric_b_zero: bool,
    pub cyt: bool,
    pub parallel_torsion: bool,
    pub delta_torsion_zero: bool,
    pub kahler_like: bool,
    pub skt: bool,
    /// `None` when the structure is not SKT.
    pub is_static: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BismutAnalysis<S> {
    pub connection: DenseTensor<S>,
    pub torsion_form: ExteriorForm<S>,
    pub torsion: DenseTensor<S>,
    pub curvature: DenseTensor<S>,
    pub ricci: DenseTensor<S>,
    pub rho: ExteriorForm<S>,
    pub static_verdict: Option<StaticVerdict<S>>,
    pub flags: BismutFlags,
}

impl<S: Scalar> BismutAnalysis<S> {
    pub fn new(p: &ProductHermitian<S>) -> Result<Self> {
        let torsion_form = torsion_form(p)?;
        let torsion = torsion_tensor(p)?;
        let connection = p.levi_civita().add(&torsion.scale(&S::ratio(1, 2)));
        let curvature = curvature(p.metric_algebra().algebra(), &connection);
        let ricci = ricci_bismut(p, &curvature);
        let rho = rho_bismut(p, &curvature);

        let c = bracket_scale(p);
        let (g, g_inv, j) = (p.g().max_abs(), p.g_inv().max_abs(), p.j().max_abs());
        let gamma = connection.max_abs();
        let t = torsion_form.max_abs();
        let r = curvature.max_abs();
        let ric_b_zero = ricci.is_zero_within(r * g * g_inv);
        let cyt = rho.is_zero_within(r * g * g_inv * j);
        let skt = p.d(&torsion_form)?.is_zero_within(t * c);
        let nabla_t = covariant_derivative(&connection, &form_to_tensor(&torsion_form));
        let parallel_torsion = nabla_t.is_zero_within(t * gamma);
        let delta_torsion_zero = codifferential(p, &torsion_form)?
            .is_zero_within(t * p.levi_civita().max_abs() * g_inv);
        let kahler_like = kahler_like_from(p, &curvature);
        let static_verdict = skt.then(|| static_from(p, &rho));
        let flags = BismutFlags {
            ric_b_zero,
            cyt,
            parallel_torsion,
            delta_torsion_zero,
            kahler_like,
            skt,
            is_static: static_verdict.as_ref().map(|v| v.is_static),
        };
        Ok(Self {
            connection,
            torsion_form,
            torsion,
            curvature,
            ricci,
            rho,
            static_verdict,
            flags,
        })
    }

    /// `T^B(x, y)`.
    pub fn torsion_of(&self, x: &[S], y: &[S]) -> Vector<S> {
        connection_apply(&self.torsion, x, y)
    }

    /// `∇^B_x y`.
    pub fn nabla(&self, x: &[S], y: &[S]) -> Vector<S> {
        connection_apply(&self.connection, x, y)
    }
}

/// Bismut curvature of `p`.
pub fn bismut_curvature<S: Scalar>(p: &ProductHermitian<S>) -> Result<DenseTensor<S>> {
    Ok(curvature(p.metric_algebra().algebra(), &bismut_connection(p)?))
}

/// `∇^B T^B = 0`.
pub fn parallel_torsion_check<S: Scalar>(p: &ProductHermitian<S>) -> Result<bool> {
    let gamma = bismut_connection(p)?;
    let t = form_to_tensor(&torsion_form(p)?);
    Ok(covariant_derivative(&gamma, &t).is_zero_within(t.max_abs() * gamma.max_abs()))
}

/// First Bianchi identity for `R^B` together with
/// `R^B(JX, JY, Z, W) = R^B(X, Y, Z, W)`.
pub fn kahler_like_check<S: Scalar>(p: &ProductHermitian<S>) -> Result<bool> {
    Ok(kahler_like_from(p, &bismut_curvature(p)?))
}

fn kahler_like_from<S: Scalar>(p: &ProductHermitian<S>, r: &DenseTensor<S>) -> bool {
    let n = p.dim();
    let low = lower_last(r, p.g());
    let scale = low.max_abs();
    let bianchi = DenseTensor::from_fn(n, &COV4, |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        low.get(&[i, j, k, l]).clone() + low.get(&[j, k, i, l]).clone() + low.get(&[k, i, j, l]).clone()
    });
    if !bianchi.is_zero_within(scale) {
        return false;
    }
    let jm = p.j();
    let rotated = DenseTensor::from_fn(n, &COV4, |ix| {
        let mut acc = S::zero();
        for m in 0..n {
            let a = jm.get(&[m, ix[0]]);
            if a.is_zero() {
                continue;
            }
            for q in 0..n {
                let b = jm.get(&[q, ix[1]]);
                if !b.is_zero() {
                    acc = acc + a.clone() * b.clone() * low.get(&[m, q, ix[2], ix[3]]).clone();
                }
            }
        }
        acc
    });
    rotated.sub(&low).is_zero_within(scale * jm.max_abs().powi(2))
}

/// `ρ^B = αω` with `α = ρ^B(ξ₁, ξ₂)/ω(ξ₁, ξ₂)`; defined for SKT structures.
pub fn static_check<S: Scalar>(p: &ProductHermitian<S>) -> Result<StaticVerdict<S>> {
    let gamma = bismut_connection(p)?;
    let torsion = torsion_form(p)?;
    if !p.d(&torsion)?.is_zero_within(torsion.max_abs() * bracket_scale(p)) {
        return Err(GeometryError::NotApplicable(
            "static is defined for SKT structures only".into(),
        ));
    }
    let r = curvature(p.metric_algebra().algebra(), &gamma);
    Ok(static_from(p, &rho_bismut(p, &r)))
}

fn static_from<S: Scalar>(p: &ProductHermitian<S>, rho: &ExteriorForm<S>) -> StaticVerdict<S> {
    let pair = vec![p.xi1().clone(), p.xi2().clone()];
    let num = rho.eval(&pair).expect("two vectors");
    let den = p.omega().eval(&pair).expect("two vectors");
    let alpha = num / den;
    let diff = rho.sub(&p.omega().scale(&alpha));
    StaticVerdict {
        is_static: diff.is_zero_within(rho.max_abs().max(alpha.magnitude() * p.omega().max_abs())),
        alpha,
    }
}
