//! Cycle shuffles on the symmetric group.
//!
//! Exact arithmetic in the group algebra `k[S_n]`, the one-sided cycle
//! shuffles `t_ℓ` and their weighted sums, lacunar sets and the filtration
//! they index, the descent-destroying basis in which right multiplication by
//! the shuffles is triangular, eigenvalues with multiplicities, algebraic
//! identities among the `t_ℓ`, and Monte Carlo simulation of the bookmark
//! strong stationary time.
//!
//! The algebra and linear algebra are generic over [`Scalar`]; the aliases
//! below fix the scalar to exact rationals, which is what the higher level
//! functions use.

pub mod algebra;
pub mod basis;
pub mod error;
pub mod identities;
pub mod lacunar;
pub mod linalg;
pub mod markov;
pub mod perm;
pub mod scalar;
pub mod shuffles;
pub mod spectrum;
pub mod subset;
pub mod verify;

pub use algebra::AlgebraElement;
pub use basis::{BasisFamily, BasisKind, BasisOrder, DualBasis};
pub use error::{Error, Result};
pub use lacunar::LacunarCatalog;
pub use linalg::{DenseMatrix, Polynomial};
pub use perm::Permutation;
pub use scalar::{Limits, Rational, Scalar};
pub use shuffles::{PositionDistribution, TransitionMatrix, WeightVector};
pub use subset::IndexSubset;

/// Element of `ℚ[S_n]`.
pub type QAlgebraElement = AlgebraElement<Rational>;
/// Dense matrix over ℚ.
pub type QMatrix = DenseMatrix<Rational>;
/// Polynomial over ℚ.
pub type QPolynomial = Polynomial<Rational>;
/// Weight vector over ℚ.
pub type QWeights = WeightVector<Rational>;
/// Descent-destroying basis over ℚ.
pub type QBasisFamily = BasisFamily<Rational>;
