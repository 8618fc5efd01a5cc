//! JSON description of a Sasakian Lie algebra.
//!
//! Indices are 1-based and rationals are strings (`"p/q"`, `"p"` or a finite
//! decimal) so that no value passes through floating point.
//!
//! ```json
//! {
//!   "name": "h3",
//!   "dim": 3,
//!   "brackets": [{ "i": 1, "j": 2, "coefficients": { "3": "2" } }],
//!   "structure": {
//!     "xi": ["0", "0", "1"],
//!     "eta": ["0", "0", "1"],
//!     "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]
//!   }
//! }
//! ```
//!
//! `phi` is a matrix in the usual sense: column `j` holds the components of
//! `phi(e_j)`. `metric` may be omitted, in which case the basis is orthonormal.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use sasakian_products::lie::{LieAlgebra, MetricLieAlgebra};
use sasakian_products::scalar::format_rational;
use sasakian_products::tensor::{endomorphism, DenseTensor, Variance};
use sasakian_products::{parse_rational, ExactSasaki, Rational, SasakiStructure, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Largest dimension accepted from a document.
pub const MAX_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    pub structure: StructureEntry,
}

/// `[e_i, e_j] = sum_k coefficients[k] e_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coefficients: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub xi: Vec<String>,
    pub eta: Vec<String>,
    pub phi: Vec<Vec<String>>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn parse(what: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| invalid(format!("{what}: {e}")))
}

fn vector(what: &str, dim: usize, entries: &[String]) -> Result<Vec<Rational>, CliError> {
    if entries.len() != dim {
        return Err(invalid(format!("{what} has {} entries, expected {dim}", entries.len())));
    }
    entries
        .iter()
        .enumerate()
        .map(|(k, t)| parse(&format!("{what}[{}]", k + 1), t))
        .collect()
}

fn matrix(what: &str, dim: usize, rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, CliError> {
    if rows.len() != dim {
        return Err(invalid(format!("{what} has {} rows, expected {dim}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| vector(&format!("{what} row {}", i + 1), dim, row))
        .collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed algebra document: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Builds the structure over an arbitrary backend. Shapes, indices,
    /// antisymmetry, the Jacobi identity and the metric are checked here;
    /// the Sasakian axioms are left to [`SasakiStructure::verify`].
    pub fn to_structure<S: Scalar>(&self) -> Result<SasakiStructure<S>, CliError> {
        let dim = self.dim;
        if dim == 0 || dim % 2 == 0 {
            return Err(invalid(format!("dim must be odd and positive, got {dim}")));
        }
        if dim > MAX_DIM {
            return Err(invalid(format!("dim {dim} exceeds the supported maximum {MAX_DIM}")));
        }
        let conv = |v: &[Rational]| -> Vec<S> { v.iter().map(S::from_rational).collect() };

        let mut seen = BTreeMap::new();
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (n, entry) in self.brackets.iter().enumerate() {
            let (i, j) = (entry.i, entry.j);
            if i == 0 || j > dim || i >= j {
                return Err(invalid(format!(
                    "bracket {}: need 1 <= i < j <= {dim}, got i = {i}, j = {j}",
                    n + 1
                )));
            }
            if seen.insert((i, j), ()).is_some() {
                return Err(invalid(format!("bracket [e{i}, e{j}] is listed twice")));
            }
            let mut v = vec![Rational::zero(); dim];
            for (k, text) in &entry.coefficients {
                if *k == 0 || *k > dim {
                    return Err(invalid(format!("bracket [e{i}, e{j}]: basis index {k} out of range")));
                }
                v[k - 1] = parse(&format!("bracket [e{i}, e{j}] coefficient {k}"), text)?;
            }
            brackets.push((i - 1, j - 1, conv(&v)));
        }
        let algebra = LieAlgebra::from_brackets(dim, &brackets)?;
        let jacobi = algebra.check_jacobi();
        if let Some((i, j, k)) = jacobi.violation {
            return Err(invalid(format!(
                "Jacobi identity fails at (e{}, e{}, e{})",
                i + 1,
                j + 1,
                k + 1
            )));
        }

        let metric = match &self.metric {
            None => MetricLieAlgebra::orthonormal(algebra),
            Some(rows) => {
                let g = matrix("metric", dim, rows)?;
                let g = DenseTensor::from_fn(dim, &[Variance::Covariant, Variance::Covariant], |ix| {
                    S::from_rational(&g[ix[0]][ix[1]])
                });
                MetricLieAlgebra::new(algebra, g)?
            }
        };
        let xi = conv(&vector("xi", dim, &self.structure.xi)?);
        let eta = conv(&vector("eta", dim, &self.structure.eta)?);
        let phi = matrix("phi", dim, &self.structure.phi)?;
        let phi = endomorphism(dim, |i, j| S::from_rational(&phi[i][j]));
        Ok(SasakiStructure::new(metric, phi, xi, eta)?.with_name(self.name.clone()))
    }

    /// The document describing an exact structure, with canonical rational
    /// strings and only nonzero bracket coefficients.
    pub fn from_structure(s: &ExactSasaki) -> Self {
        let dim = s.dim();
        let algebra = s.algebra();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let coefficients: BTreeMap<usize, String> = algebra
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, format_rational(c)))
                    .collect();
                if !coefficients.is_empty() {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        coefficients,
                    });
                }
            }
        }
        let g = s.metric();
        let identity = (0..dim).all(|i| {
            (0..dim).all(|j| {
                let v = g.get(&[i, j]);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        });
        let rows = |t: &DenseTensor<Rational>| -> Vec<Vec<String>> {
            (0..dim)
                .map(|i| (0..dim).map(|j| format_rational(t.get(&[i, j]))).collect())
                .collect()
        };
        Self {
            name: s.name().to_string(),
            dim,
            brackets,
            metric: (!identity).then(|| rows(g)),
            structure: StructureEntry {
                xi: strings(s.xi()),
                eta: strings(s.eta()),
                phi: rows(s.phi()),
            },
        }
    }
}
