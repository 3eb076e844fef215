//! Dense exact linear algebra: matrices, polynomials, characteristic and
//! minimal polynomials.

mod charpoly;
mod krylov;
mod matrix;
mod poly;

pub use charpoly::{characteristic_polynomial, hessenberg};
pub use krylov::{local_minimal_polynomial, minimal_polynomial_seeded};
pub use matrix::DenseMatrix;
pub use poly::Polynomial;
