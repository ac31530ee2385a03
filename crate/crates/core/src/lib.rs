//! Exact construction of the generators of the q-Onsager algebra in terms of
//! the two fundamental generators `A` and `A*`, together with the tooling to
//! verify them: evaluation in finite-dimensional representations, relation
//! suites, the commuting hierarchy and Askey-Wilson specializations.

pub mod askey;
pub mod error;
pub mod generators;
pub mod hierarchy;
pub mod linalg;
pub mod ncpoly;
pub mod reps;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
pub use ncpoly::{Alphabet, Letter, NCPolynomial, Word};
pub use scalars::{parse_scalar, MultiPoly, ScalarFraction};
