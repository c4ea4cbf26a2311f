//! Numerical radius of operators on finite-dimensional normed spaces, and
//! decision procedures for norm parallelism, Birkhoff orthogonality and
//! their numerical-radius analogues.
//!
//! All computations are generic over the scalar field (see [`Scalar`]); the
//! aliases below fix the common choices.

pub mod error;
pub mod operators;
pub mod radius;
pub mod relations;
pub mod scalar;
pub mod search;
pub mod spaces;
pub mod theorems;
pub mod tol;

pub use error::{Error, Result};
pub use operators::{operator_norm, rank_one, Operator};
pub use radius::{numerical_radius, radius_of_combination, sphere_argmax, EngineConfig, RadiusResult, RadiusWitness};
pub use scalar::{Real, Scalar};
pub use spaces::{DualitySet, Field, Functional, NormKind, NormedSpace, Vector};

pub use num_complex::{Complex32, Complex64};

pub type RealSpace = NormedSpace<f64>;
pub type ComplexSpace = NormedSpace<Complex64>;
pub type RealOperator = Operator<f64>;
pub type ComplexOperator = Operator<Complex64>;
pub type RealVector = Vector<f64>;
pub type ComplexVector = Vector<Complex64>;
