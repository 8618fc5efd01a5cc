//! Built-in Sasakian Lie algebras.
//!
//! Every entry uses an orthonormal basis with the Reeb vector last, `η` its
//! dual, and `φ` rotating consecutive pairs: `φ e_{2i−1} = e_{2i}`,
//! `φ e_{2i} = −e_{2i−1}`.

use crate::error::{GeometryError, Result};
use crate::lie::{LieAlgebra, MetricLieAlgebra};
use crate::sasaki::SasakiStructure;
use crate::scalar::Scalar;
use crate::tensor::{basis_vector, endomorphism, Vector};

/// Names accepted by [`by_name`], with a one-line description each.
pub const ENTRIES: &[(&str, &str)] = &[
    ("su2", "su(2): [e1,e2]=2e3, [e2,e3]=2e1, [e3,e1]=2e2 (lambda = 2)"),
    ("h3", "Heisenberg h3: [e1,e2]=2e3 (lambda = -2)"),
    ("sl2r", "sl(2,R): [e1,e2]=2e3, [e2,e3]=-e1, [e3,e1]=-e2 (lambda = -4)"),
    ("heisenberg(n)", "h_{2n+1}: [X_{2i-1},X_{2i}]=2 xi (lambda = -2); also h5, h7, ..."),
    ("abelian1", "one-dimensional algebra spanned by xi, phi = 0"),
];

fn rotation<S: Scalar>(dim: usize) -> crate::tensor::DenseTensor<S> {
    let pairs = (dim - 1) / 2;
    endomorphism(dim, |i, j| {
        if j < 2 * pairs && j % 2 == 0 && i == j + 1 {
            S::one()
        } else if j < 2 * pairs && j % 2 == 1 && i + 1 == j {
            -S::one()
        } else {
            S::zero()
        }
    })
}

fn assemble<S: Scalar>(name: &str, algebra: LieAlgebra<S>) -> SasakiStructure<S> {
    let dim = algebra.dim();
    let labels = (1..dim)
        .map(|i| format!("e{i}"))
        .chain(std::iter::once("xi".to_string()))
        .collect();
    let metric = MetricLieAlgebra::orthonormal(algebra.with_labels(labels));
    let xi: Vector<S> = basis_vector(dim, dim - 1);
    SasakiStructure::new(metric, rotation(dim), xi.clone(), xi)
        .expect("catalog shapes are consistent")
        .with_name(name)
}

fn three<S: Scalar>(name: &str, c12: i64, c23: i64, c31: i64) -> SasakiStructure<S> {
    let e = |k: usize, c: i64| -> Vector<S> {
        let mut v = vec![S::zero(); 3];
        v[k] = S::from_i64(c);
        v
    };
    let mut brackets = vec![(0, 1, e(2, c12))];
    if c23 != 0 {
        brackets.push((1, 2, e(0, c23)));
    }
    if c31 != 0 {
        // [e3, e1] = c e2 is stored as [e1, e3] = −c e2
        brackets.push((0, 2, e(1, -c31)));
    }
    let algebra = LieAlgebra::from_brackets(3, &brackets).expect("valid brackets");
    assemble(name, algebra)
}

pub fn su2<S: Scalar>() -> SasakiStructure<S> {
    three("su2", 2, 2, 2)
}

pub fn h3<S: Scalar>() -> SasakiStructure<S> {
    three("h3", 2, 0, 0)
}

pub fn sl2r<S: Scalar>() -> SasakiStructure<S> {
    three("sl2r", 2, -1, -1)
}

/// `h_{2n+1}` with `[X_{2i−1}, X_{2i}] = 2ξ`.
pub fn heisenberg<S: Scalar>(n: usize) -> Result<SasakiStructure<S>> {
    if n == 0 {
        return Err(GeometryError::InvalidParameter(
            "heisenberg(n) needs n >= 1".into(),
        ));
    }
    let dim = 2 * n + 1;
    let brackets: Vec<(usize, usize, Vector<S>)> = (0..n)
        .map(|i| {
            let mut v = vec![S::zero(); dim];
            v[dim - 1] = S::from_i64(2);
            (2 * i, 2 * i + 1, v)
        })
        .collect();
    let algebra = LieAlgebra::from_brackets(dim, &brackets)?;
    Ok(assemble(&format!("h{dim}"), algebra))
}

pub fn abelian1<S: Scalar>() -> SasakiStructure<S> {
    assemble("abelian1", LieAlgebra::abelian(1))
}

/// Resolves `su2`, `h3`, `sl2r`, `abelian1`, `heisenberg(n)` and the
/// shorthands `h5`, `h7`, … (case-insensitive).
pub fn by_name<S: Scalar>(name: &str) -> Result<SasakiStructure<S>> {
    let key: String = name
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    match key.as_str() {
        "su2" | "su(2)" => return Ok(su2()),
        "h3" => return Ok(h3()),
        "sl2r" | "sl(2,r)" => return Ok(sl2r()),
        "abelian1" => return Ok(abelian1()),
        _ => {}
    }
    let unknown = || GeometryError::UnknownCatalog(name.to_string());
    if let Some(inner) = key
        .strip_prefix("heisenberg(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let n: usize = inner.parse().map_err(|_| unknown())?;
        return heisenberg(n);
    }
    if let Some(rest) = key.strip_prefix('h') {
        if let Ok(d) = rest.parse::<usize>() {
            if d >= 3 && d % 2 == 1 {
                return heisenberg((d - 1) / 2);
            }
        }
    }
    Err(unknown())
}

/// True when `name` resolves in the catalog.
pub fn contains(name: &str) -> bool {
    by_name::<f64>(name).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn names_resolve() {
        assert_eq!(by_name::<BigRational>("h5").unwrap().dim(), 5);
        assert_eq!(by_name::<BigRational>("heisenberg(3)").unwrap().dim(), 7);
        assert_eq!(by_name::<BigRational>("SU2").unwrap().name(), "su2");
        assert!(matches!(
            by_name::<BigRational>("so3"),
            Err(GeometryError::UnknownCatalog(_))
        ));
        assert!(by_name::<BigRational>("h4").is_err());
        assert!(heisenberg::<BigRational>(0).is_err());
    }
}
