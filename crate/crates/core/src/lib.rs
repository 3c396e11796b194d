//! Gröbner bases of bilinear and bihomogeneous systems over prime fields.
//!
//! The crate implements Matrix F5 with the classical and the minors-based
//! bilinear criterion, a bidegree-block variant of the same algorithm,
//! Hilbert bi-series of bilinear ideals and the affine structure checks that
//! go with them. [`f5::buchberger`] serves as an independent oracle.

pub mod affine;
pub mod combinatorics;
pub mod error;
pub mod f5;
pub mod field;
pub mod hilbert;
pub mod linalg;
pub mod minors;
pub mod monomial;
pub mod polynomial;
pub mod system;

pub use error::{AlgebraError, Result};
pub use field::{Field, FieldScalar, DEFAULT_PRIME};
pub use monomial::{Block, Monomial, VariableLayout};
pub use polynomial::Polynomial;
pub use system::{Flavor, PolySystem};
