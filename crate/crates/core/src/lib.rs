//! Exact computations with Lie–Rinehart algebras that are free of finite rank
//! over a polynomial ring `A = Q[x1, ..., xm]`.
//!
//! The crate covers the Gerstenhaber bracket on `Lambda_A L`, its generators
//! and their right connections, connections on `L` and on the top exterior
//! power, the covariant derivative on top-power valued forms, and the
//! homology of `(Lambda L, D)` over the ground field. Identities that hold for
//! all inputs are checked on seeded random polynomial data, see [`random`].
//!
//! ```
//! use rinehart::{LieRinehartAlgebra, LElement};
//!
//! // The two-dimensional non-abelian Lie algebra, [e1, e2] = e1.
//! let alg = LieRinehartAlgebra::abelian(0, 2)?
//!     .with_bracket(0, 1, LElement::basis(0, 2, 0))?;
//! assert!(alg.verify_axioms().is_empty());
//! # Ok::<(), rinehart::Error>(())
//! ```

pub mod cli;
pub mod connections;
pub mod correspondences;
pub mod error;
pub mod exterior;
pub mod gerstenhaber;
pub mod homology;
pub mod lie_rinehart;
pub mod random;
pub mod ring;

pub use connections::{Endomorphism, LeftConnection, TopConnection};
pub use error::{Error, Result};
pub use exterior::{AltForm, Blade, Multivector, TopElement};
pub use gerstenhaber::{gerstenhaber_bracket, Generator, MultivectorOperator, RightConnection};
pub use homology::{homology_dims, rinehart_complex, ChainComplex};
pub use lie_rinehart::{LElement, LieRinehartAlgebra};
pub use random::CheckConfig;
pub use ring::{parse_poly, Derivation, Poly, Rational};
