//! `J` acting on forms, `d^c`, the Lee form, and the Hermitian-type
//! classifier. Every flag is decided from its defining form identity.

use crate::error::{GeometryError, Result};
use crate::forms::ExteriorForm;
use crate::lie::{covariant_derivative, form_to_tensor};
use crate::product::ProductHermitian;
use crate::scalar::{binomial, Scalar};
use crate::tensor::{DenseTensor, Variance, Vector};

/// `(Jα)(X_1, …, X_p) = α(J⁻¹X_1, …, J⁻¹X_p)`, so that
/// `Jη₁ = (a/b)η₁ + ((a²+b²)/b)η₂`.
pub fn j_on_forms<S: Scalar>(p: &ProductHermitian<S>, alpha: &ExteriorForm<S>) -> ExteriorForm<S> {
    alpha.pullback(&p.j().scale(&-S::one()))
}

/// `d^c α = −J⁻¹ d J α = (−1)^p J d J α` for a `p`-form `α`.
pub fn d_c<S: Scalar>(p: &ProductHermitian<S>, alpha: &ExteriorForm<S>) -> Result<ExteriorForm<S>> {
    let d = p.d(&j_on_forms(p, alpha))?;
    let out = j_on_forms(p, &d);
    Ok(if alpha.degree() % 2 == 1 {
        out.scale(&-S::one())
    } else {
        out
    })
}

pub fn dd_c<S: Scalar>(p: &ProductHermitian<S>, alpha: &ExteriorForm<S>) -> Result<ExteriorForm<S>> {
    p.d(&d_c(p, alpha)?)
}

/// Codifferential of a form, `δα(X_2, …) = −Σ g^{ij} (∇_{b_i} α)(b_j, X_2, …)`,
/// with the Levi-Civita connection.
pub fn codifferential<S: Scalar>(p: &ProductHermitian<S>, alpha: &ExteriorForm<S>) -> Result<ExteriorForm<S>> {
    let k = alpha.degree();
    if k == 0 {
        return Ok(ExteriorForm::zero(p.dim(), 0));
    }
    let t = form_to_tensor(alpha);
    let dt = covariant_derivative(p.levi_civita(), &t);
    let c = dt.contract_pair(p.g_inv(), (0, 1))?;
    Ok(ExteriorForm::from_basis_values(p.dim(), k - 1, |idx| {
        -c.get(idx).clone()
    }))
}

/// Lee form `θ = (δω ∘ J)/(n − 1)` with its Levi-Civita and Bismut
/// covariant derivatives (`[i, j]` = `(∇_{b_i} θ)(b_j)`).
#[derive(Clone, Debug, PartialEq)]
pub struct LeeForm<S> {
    pub theta: ExteriorForm<S>,
    pub nabla_theta: DenseTensor<S>,
    pub nabla_bismut_theta: DenseTensor<S>,
}

pub fn lee_form<S: Scalar>(p: &ProductHermitian<S>) -> Result<LeeForm<S>> {
    if p.n1() + p.n2() == 0 {
        return Err(GeometryError::NotApplicable(
            "the Lee form needs complex dimension at least 2".into(),
        ));
    }
    let n = p.dim();
    let delta = codifferential(p, p.omega())?;
    let inv = S::one() / S::from_i64((p.complex_dim() - 1) as i64);
    let coeffs: Vector<S> = (0..n)
        .map(|x| {
            let jx = p.j_of(&crate::tensor::basis_vector(n, x));
            let v = (0..n).fold(S::zero(), |acc, k| acc + delta.coefficient(&[k]) * jx[k].clone());
            v * inv.clone()
        })
        .collect();
    let theta = ExteriorForm::from_covector(&coeffs);
    let t = DenseTensor::from_data(n, &[Variance::Covariant], coeffs)?;
    let nabla_theta = covariant_derivative(p.levi_civita(), &t);
    let gamma_b = crate::bismut::bismut_connection(p)?;
    let nabla_bismut_theta = covariant_derivative(&gamma_b, &t);
    Ok(LeeForm {
        theta,
        nabla_theta,
        nabla_bismut_theta,
    })
}

/// `Φ₁^{n₁} ∧ Φ₂^{n₂} ∧ η₁ ∧ η₂`, a volume form of the product.
pub fn volume_form<S: Scalar>(p: &ProductHermitian<S>) -> ExteriorForm<S> {
    let f1 = p.factor1().fundamental_form.power(p.n1());
    let f2 = p.factor2().fundamental_form.power(p.n2());
    f1.wedge(&f2)
        .and_then(|f| f.wedge(&p.eta1_form()))
        .and_then(|f| f.wedge(&p.eta2_form()))
        .expect("all forms live on the product")
}

/// `C = binom(n−3, n₁−2) + 2a·binom(n−3, n₁−1) + (a²+b²)·binom(n−3, n₁)`.
pub fn certificate_c<S: Scalar>(p: &ProductHermitian<S>) -> S {
    let n = p.complex_dim() as i64;
    let n1 = p.n1() as i64;
    let bin = |k: i64| S::from_i64(binomial(n - 3, k));
    bin(n1 - 2) + S::from_i64(2) * p.a().clone() * bin(n1 - 1) + p.params().norm2() * bin(n1)
}

/// `n₁(n₁−1) + 2a n₁n₂ + n₂(n₂−1)(a²+b²)`.
pub fn matsuo_number<S: Scalar>(p: &ProductHermitian<S>) -> S {
    let n1 = p.n1() as i64;
    let n2 = p.n2() as i64;
    S::from_i64(n1 * (n1 - 1))
        + S::from_i64(2 * n1 * n2) * p.a().clone()
        + S::from_i64(n2 * (n2 - 1)) * p.params().norm2()
}

/// `dd^c ω^k ∧ ω^{n−k−1}`.
pub fn k_gauduchon_form<S: Scalar>(p: &ProductHermitian<S>, k: usize) -> Result<ExteriorForm<S>> {
    let n = p.complex_dim();
    if k == 0 || k >= n {
        return Err(GeometryError::NotApplicable(format!(
            "k-Gauduchon needs 1 <= k <= n-1 = {}",
            n - 1
        )));
    }
    let powers = p.omega().powers(n - 1);
    dd_c(p, &powers[k])?.wedge(&powers[n - k - 1])
}

#[derive(Clone, Debug, PartialEq)]
pub struct KGauduchon {
    pub k: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianClassReport<S> {
    pub kahler: bool,
    pub balanced: bool,
    /// `None` when the Lee form is undefined (complex dimension 1).
    pub lck: Option<bool>,
    pub vaisman: Option<bool>,
    pub skt: bool,
    /// `None` below complex dimension 3.
    pub astheno_kahler: Option<bool>,
    /// `k = n − 1` entry of `k_gauduchon`; `None` in complex dimension 1.
    pub gauduchon: Option<bool>,
    pub k_gauduchon: Vec<KGauduchon>,
    pub lee_form: Option<ExteriorForm<S>>,
    pub certificate_c: S,
    pub matsuo: S,
}

impl<S: Scalar> HermitianClassReport<S> {
    pub fn k_gauduchon(&self, k: usize) -> Option<bool> {
        self.k_gauduchon.iter().find(|e| e.k == k).map(|e| e.holds)
    }
}

/// Largest structure constant of the product algebra, at least 1. Float zero
/// tests are scaled by the size of the operands of the last operation; this
/// is the factor contributed by `d`.
pub(crate) fn bracket_scale<S: Scalar>(p: &ProductHermitian<S>) -> f64 {
    p.metric_algebra().algebra().structure_constants().max_abs().max(1.0)
}

pub fn classify<S: Scalar>(p: &ProductHermitian<S>) -> Result<HermitianClassReport<S>> {
    let n = p.complex_dim();
    let c = bracket_scale(p);
    let omega = p.omega();
    let om = omega.max_abs();
    let d_omega = p.d(omega)?;
    let kahler = d_omega.is_zero_within(om * c);
    let gamma = p.levi_civita().max_abs();
    let balanced = codifferential(p, omega)?.is_zero_within(om * gamma * p.g_inv().max_abs());

    let (lck, vaisman, lee) = if p.n1() + p.n2() == 0 {
        (None, None, None)
    } else {
        let lee = lee_form(p)?;
        let th = lee.theta.max_abs();
        let conformal = d_omega.sub(&lee.theta.wedge(omega)?);
        let closed = p.d(&lee.theta)?.is_zero_within(th * c);
        let lck = conformal.is_zero_within(d_omega.max_abs().max(th * om)) && closed;
        let parallel = lee.nabla_theta.is_zero_within(th * gamma);
        (Some(lck), Some(lck && parallel), Some(lee.theta))
    };

    let powers = omega.powers(n - 1);
    let mut ddc = Vec::with_capacity(n);
    ddc.push((ExteriorForm::zero(p.dim(), 3), 0.0));
    for k in 1..n {
        let dc = d_c(p, &powers[k])?;
        let scale = dc.max_abs() * c;
        ddc.push((p.d(&dc)?, scale));
    }
    let skt = match ddc.get(1) {
        Some((f, scale)) => f.is_zero_within(*scale),
        // complex dimension 1: dd^c ω is a 3-form on a 2-dimensional algebra
        None => true,
    };
    let astheno_kahler = (n >= 3).then(|| ddc[n - 2].0.is_zero_within(ddc[n - 2].1));
    let mut k_gauduchon = Vec::new();
    for k in 1..n {
        let rest = &powers[n - k - 1];
        let f = ddc[k].0.wedge(rest)?;
        k_gauduchon.push(KGauduchon {
            k,
            holds: f.is_zero_within(ddc[k].0.max_abs() * rest.max_abs()),
        });
    }
    let gauduchon = k_gauduchon.last().map(|e| e.holds);
    Ok(HermitianClassReport {
        kahler,
        balanced,
        lck,
        vaisman,
        skt,
        astheno_kahler,
        gauduchon,
        k_gauduchon,
        lee_form: lee,
        certificate_c: certificate_c(p),
        matsuo: matsuo_number(p),
    })
}
