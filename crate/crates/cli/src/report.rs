//! Machine-readable analysis reports. Field order is the serialization order.

use sasakian_products::bismut::lambda_omega;
use sasakian_products::classes::classify;
use sasakian_products::scalar::max_magnitude;
use sasakian_products::tensor::{commutator, DenseTensor};
use sasakian_products::{
    BismutAnalysis, ExteriorForm, ProductHermitian, SasakiStructure, Scalar,
};
use serde::Serialize;
use serde_json::Value;

use crate::document::AlgebraDocument;
use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub backend: &'static str,
    /// Relative zero-test tolerance; 0 on exact backends.
    pub tolerance: f64,
    pub factors: Vec<FactorReport>,
    pub hermitian: ClassSummary,
    pub harmonicity: HarmonicitySummary,
    pub bismut: BismutSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensors: Option<TensorDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub factor1: FactorEcho,
    pub factor2: FactorEcho,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorEcho {
    pub name: String,
    pub source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<AlgebraDocument>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub name: String,
    pub dim: usize,
    pub n: usize,
    pub sasakian: bool,
    pub almost_contact: bool,
    pub metric_compatible: bool,
    pub normal: bool,
    pub contact_condition: bool,
    pub failures: Vec<String>,
    pub eta_einstein: Option<EtaEinstein>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaEinstein {
    pub lambda: String,
    pub nu: String,
    pub class: String,
}

impl FactorReport {
    pub fn new<S: Scalar>(s: &SasakiStructure<S>) -> Self {
        let v = s.verify();
        let sasakian = v.is_sasakian();
        let eta_einstein = if sasakian {
            s.eta_einstein_constants().map(|c| EtaEinstein {
                lambda: c.lambda.to_string(),
                nu: c.nu.to_string(),
                class: c.class.to_string(),
            })
        } else {
            None
        };
        Self {
            name: s.name().to_string(),
            dim: s.dim(),
            n: s.n(),
            sasakian,
            almost_contact: v.almost_contact,
            metric_compatible: v.metric_compatible,
            normal: v.normal,
            contact_condition: v.contact_condition,
            failures: v.failures,
            eta_einstein,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KGauduchonEntry {
    pub k: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub kahler: bool,
    pub balanced: bool,
    pub lck: Option<bool>,
    pub vaisman: Option<bool>,
    pub skt: bool,
    pub astheno_kahler: Option<bool>,
    pub gauduchon: Option<bool>,
    pub k_gauduchon: Vec<KGauduchonEntry>,
    pub matsuo: String,
    pub certificate_c: String,
    pub lee_form: Option<FormJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicitySummary {
    pub harmonic: bool,
    pub codifferential_j: Vec<String>,
    pub nabla_delta_j_zero: bool,
    pub wood_residual_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BismutSummary {
    pub ric_b_zero: bool,
    pub cyt: bool,
    pub parallel_torsion: bool,
    pub delta_torsion_zero: bool,
    pub kahler_like: bool,
    pub skt: bool,
    pub is_static: Option<bool>,
    pub static_alpha: Option<String>,
}

/// Every boolean verdict of an analysis, flattened. Sweep predicates refer
/// to these names.
#[derive(Clone, Debug, Serialize)]
pub struct Flags {
    pub kahler: bool,
    pub balanced: bool,
    pub lck: Option<bool>,
    pub vaisman: Option<bool>,
    pub skt: bool,
    pub astheno_kahler: Option<bool>,
    pub gauduchon: Option<bool>,
    pub k_gauduchon: Vec<KGauduchonEntry>,
    pub harmonic: bool,
    pub ric_b_zero: bool,
    pub cyt: bool,
    pub parallel_torsion: bool,
    pub delta_torsion_zero: bool,
    pub kahler_like: bool,
    pub is_static: Option<bool>,
}

/// Names accepted by [`Flags::get`]; `k_gauduchon:<k>` is accepted as well.
pub const FLAG_NAMES: &[&str] = &[
    "kahler",
    "balanced",
    "lck",
    "vaisman",
    "skt",
    "astheno_kahler",
    "gauduchon",
    "harmonic",
    "ric_b_zero",
    "cyt",
    "parallel_torsion",
    "delta_torsion_zero",
    "kahler_like",
    "is_static",
];

impl Flags {
    /// Value of a named flag; `None` inside means not applicable. Unknown
    /// names give `Err`.
    pub fn get(&self, name: &str) -> Result<Option<bool>, String> {
        let v = match name {
            "kahler" => Some(self.kahler),
            "balanced" => Some(self.balanced),
            "lck" => self.lck,
            "vaisman" => self.vaisman,
            "skt" => Some(self.skt),
            "astheno_kahler" | "astheno" => self.astheno_kahler,
            "gauduchon" => self.gauduchon,
            "harmonic" => Some(self.harmonic),
            "ric_b_zero" => Some(self.ric_b_zero),
            "cyt" => Some(self.cyt),
            "parallel_torsion" => Some(self.parallel_torsion),
            "delta_torsion_zero" => Some(self.delta_torsion_zero),
            "kahler_like" => Some(self.kahler_like),
            "is_static" | "static" => self.is_static,
            other => {
                let k = other
                    .strip_prefix("k_gauduchon:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| format!("unknown flag {other:?}"))?;
                self.k_gauduchon.iter().find(|e| e.k == k).map(|e| e.holds)
            }
        };
        Ok(v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorJson {
    pub dim: usize,
    pub order: usize,
    /// Row-major, first index slowest.
    pub data: Vec<String>,
}

impl TensorJson {
    pub fn new<S: Scalar>(t: &DenseTensor<S>) -> Self {
        Self {
            dim: t.dim(),
            order: t.order(),
            data: t.data().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormTerm {
    /// 1-based, increasing.
    pub indices: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormJson {
    pub degree: usize,
    pub terms: Vec<FormTerm>,
}

impl FormJson {
    pub fn new<S: Scalar>(f: &ExteriorForm<S>) -> Self {
        let scale = f.max_abs();
        Self {
            degree: f.degree(),
            terms: f
                .terms()
                .filter(|(_, c)| !c.is_negligible(scale))
                .map(|(idx, c)| FormTerm {
                    indices: idx.iter().map(|i| i + 1).collect(),
                    value: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorDump {
    pub j: TensorJson,
    pub g: TensorJson,
    pub omega: FormJson,
    pub levi_civita: TensorJson,
    pub nabla_j: TensorJson,
    pub torsion_form: FormJson,
    pub bismut_connection: TensorJson,
    pub bismut_curvature: TensorJson,
    pub bismut_ricci: TensorJson,
    pub rho_bismut: FormJson,
    /// Absent when a factor is one-dimensional.
    pub lambda_omega: Option<FormJson>,
}

/// Everything computed on one product.
pub struct Analysis {
    pub hermitian: ClassSummary,
    pub harmonicity: HarmonicitySummary,
    pub bismut: BismutSummary,
    pub tensors: Option<TensorDump>,
}

impl Analysis {
    pub fn run<S: Scalar>(p: &ProductHermitian<S>, include_tensors: bool) -> Result<Self, CliError> {
        let c = classify(p)?;
        let hermitian = ClassSummary {
            kahler: c.kahler,
            balanced: c.balanced,
            lck: c.lck,
            vaisman: c.vaisman,
            skt: c.skt,
            astheno_kahler: c.astheno_kahler,
            gauduchon: c.gauduchon,
            k_gauduchon: c
                .k_gauduchon
                .iter()
                .map(|e| KGauduchonEntry { k: e.k, holds: e.holds })
                .collect(),
            matsuo: c.matsuo.to_string(),
            certificate_c: c.certificate_c.to_string(),
            lee_form: c.lee_form.as_ref().map(FormJson::new),
        };

        let h = p.harmonicity_defect();
        let delta = p.codifferential_j();
        let (j, nj) = (p.j().max_abs(), p.nabla_j().max_abs());
        let nabla_delta_j_zero = p.nabla_j_along(&delta).is_zero_within(max_magnitude(&delta) * nj);
        let lap = p.rough_laplacian_j().max_abs();
        let pt = commutator(p.j(), &p.p_tensor()).max_abs();
        let wood_scale = j * lap + pt + nj * nj * p.g_inv().max_abs();
        let harmonicity = HarmonicitySummary {
            harmonic: h.harmonic,
            codifferential_j: delta.iter().map(ToString::to_string).collect(),
            nabla_delta_j_zero,
            wood_residual_zero: p.wood_residual().is_zero_within(wood_scale),
        };

        let ba = BismutAnalysis::new(p)?;
        let f = &ba.flags;
        let bismut = BismutSummary {
            ric_b_zero: f.ric_b_zero,
            cyt: f.cyt,
            parallel_torsion: f.parallel_torsion,
            delta_torsion_zero: f.delta_torsion_zero,
            kahler_like: f.kahler_like,
            skt: f.skt,
            is_static: f.is_static,
            static_alpha: ba.static_verdict.as_ref().map(|v| v.alpha.to_string()),
        };

        let tensors = include_tensors.then(|| TensorDump {
            j: TensorJson::new(p.j()),
            g: TensorJson::new(p.g()),
            omega: FormJson::new(p.omega()),
            levi_civita: TensorJson::new(p.levi_civita()),
            nabla_j: TensorJson::new(p.nabla_j()),
            torsion_form: FormJson::new(&ba.torsion_form),
            bismut_connection: TensorJson::new(&ba.connection),
            bismut_curvature: TensorJson::new(&ba.curvature),
            bismut_ricci: TensorJson::new(&ba.ricci),
            rho_bismut: FormJson::new(&ba.rho),
            lambda_omega: lambda_omega(p).ok().as_ref().map(FormJson::new),
        });

        Ok(Self {
            hermitian,
            harmonicity,
            bismut,
            tensors,
        })
    }

    pub fn flags(&self) -> Flags {
        let (c, h, b) = (&self.hermitian, &self.harmonicity, &self.bismut);
        Flags {
            kahler: c.kahler,
            balanced: c.balanced,
            lck: c.lck,
            vaisman: c.vaisman,
            skt: c.skt,
            astheno_kahler: c.astheno_kahler,
            gauduchon: c.gauduchon,
            k_gauduchon: c.k_gauduchon.clone(),
            harmonic: h.harmonic,
            ric_b_zero: b.ric_b_zero,
            cyt: b.cyt,
            parallel_torsion: b.parallel_torsion,
            delta_torsion_zero: b.delta_torsion_zero,
            kahler_like: b.kahler_like,
            is_static: b.is_static,
        }
    }
}

/// `path: value` lines for any serializable value; the text output format.
pub fn to_text(value: &impl Serialize) -> String {
    let mut out = String::new();
    flatten(&serde_json::to_value(value).expect("reports serialize"), "", &mut out);
    out
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(x, &join(k), out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(x, &join(&(i + 1).to_string()), out);
            }
        }
        other => out.push_str(&format!("{path}: {}\n", scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "n/a".to_string(),
        other => other.to_string(),
    }
}
