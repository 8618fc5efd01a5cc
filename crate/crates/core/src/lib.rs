//! Hermitian geometry of products of Sasakian Lie algebras.
//!
//! Two Sasakian structures `S₁`, `S₂` and real parameters `a`, `b ≠ 0`
//! determine an integrable Hermitian structure `(J_{a,b}, g_{a,b})` on
//! `S₁ × S₂`. This crate computes its Levi-Civita and Bismut connections,
//! curvatures and torsion, decides its Hermitian type, checks harmonicity of
//! `J`, and solves for the parameters giving Bismut-Ricci-flat and
//! Calabi-Yau-with-torsion structures.
//!
//! Everything is generic over [`Scalar`]; the aliases below pick a backend.

pub mod bismut;
pub mod catalog;
pub mod classes;
pub mod error;
pub mod forms;
pub mod lie;
pub mod product;
pub mod quadratic;
pub mod sasaki;
pub mod scalar;
pub mod solve;
pub mod tensor;

pub use error::{GeometryError, Result};
pub use bismut::{BismutAnalysis, BismutFlags, StaticVerdict};
pub use classes::{HermitianClassReport, LeeForm};
pub use forms::ExteriorForm;
pub use lie::{JacobiCheck, LieAlgebra, MetricLieAlgebra};
pub use product::{HermitianParams, ProductHermitian};
pub use quadratic::QuadSurd;
pub use sasaki::{EtaClass, EtaEinsteinConstants, SasakiStructure, SasakiVerdict};
pub use scalar::{parse_rational, Scalar};
pub use solve::{CytCase, CytSolution, SolveError};
pub use tensor::{DenseTensor, Variance};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type ExactSasaki = SasakiStructure<Rational>;
pub type FloatSasaki = SasakiStructure<f64>;
pub type QuadSasaki = SasakiStructure<QuadSurd>;

pub type ExactProduct = ProductHermitian<Rational>;
pub type FloatProduct = ProductHermitian<f64>;
pub type QuadProduct = ProductHermitian<QuadSurd>;

pub type ExactParams = HermitianParams<Rational>;
pub type FloatParams = HermitianParams<f64>;
