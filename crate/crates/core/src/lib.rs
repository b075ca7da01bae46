//! Exact computations with Hom-Lie triple systems, their actions and
//! weighted O-operators: axiom checkers with witnesses, derived
//! constructions, the cochain complex of an operator and its deformation
//! and obstruction theory, post-Lie triple structures, and the bridge from
//! Hom-Lie algebras.

pub mod bridge;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod lts;
pub mod matrix;
pub mod oop;
pub mod poly;
pub mod post_lts;
pub mod rep;
pub mod report;
pub mod samples;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::TruncPoly;
pub use report::{Violation, ViolationReport};
pub use scalar::{format_rational, parse_rational, q, qf, Scalar, Q};
pub use tensor::{DenseTensor, SparseTensor};

/// Rational matrices, the storage type of every linear map.
pub type QMatrix = Matrix<Q>;
/// Series `K[t]/(t^{m+1})` with rational coefficients.
pub type QSeries = TruncPoly<Q>;
