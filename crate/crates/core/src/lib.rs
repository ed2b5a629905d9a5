//! Exact computations with preprojective algebras of type A over prime
//! fields: indecomposable modules, `Ext¹` at cocycle level, maximal rigid
//! modules and their mutation graph, endomorphism algebras `End(T)` and their
//! tilting graphs, and executable property suites.
//!
//! Everything is generic over the scalar [`Field`]; [`Fp`] is the prime field
//! `F_p` with `p` fixed at compile time. [`with_prime_field!`] dispatches a
//! runtime characteristic to one of the [`field::SUPPORTED_PRIMES`].

pub mod atlas;
pub mod config;
pub mod error;
pub mod ext;
pub mod field;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod rigid;
pub mod suites;
pub mod tilt;

pub use error::{Error, Result};
pub use field::{Field, Fp};

/// The default field.
pub type Fp32003 = Fp<32003>;
/// The cross-check field.
pub type Fp101 = Fp<101>;
