//! Exact arithmetic, basis changes and classification for second-class
//! complex filiform Leibniz algebras.

pub mod algebra;
pub mod classify;
pub mod criterion;
pub mod errata;
pub mod error;
pub mod matrix;
pub mod sampling;
pub mod scalar;
pub mod transform;

pub use algebra::{build_table, AlgebraFile, AlgebraTable, ParamVector};
pub use error::{Error, Result};
pub use scalar::GaussianRational;
pub use transform::{transform_params, AdaptedTriple, BasisChange};
