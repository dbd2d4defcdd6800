//! Exact decision procedures and certificates for conjugate reality in
//! `GL_n(F)` over fields with involution.
//!
//! An invertible `T` is *c-real* when it is conjugate to `(T^c)^{-1}`, where
//! `c` acts entrywise. The crate decides c-reality, pairs elementary divisors
//! with their duals, builds an explicit conjugator `S` with
//! `S T S^{-1} = (T^c)^{-1}`, and builds a `T`-invariant non-degenerate
//! c-hermitian form `H` with `conj(T)^t H T = H`. Brute-force oracles in
//! [`oracles`] cross-check everything over small finite fields.

#![allow(clippy::type_complexity, clippy::wrong_self_convention)]

pub mod canonical;
pub mod certificate;
pub mod error;
pub mod field;
pub mod matrix;
pub mod oracles;
pub mod poly;
pub mod reality;
pub mod search;

pub use canonical::{EDivisor, PrimaryDecomp};
pub use error::{Error, Result};
pub use field::{Field, FieldCtx, FieldKind, FiniteField, GaussRat, GaussianRationals, Rationals};
pub use matrix::Mat;
pub use poly::{Factorization, Poly, SelfDuality};
pub use search::SearchConfig;
