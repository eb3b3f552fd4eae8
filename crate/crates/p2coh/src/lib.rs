//! Exact computation of the generic cohomology of tensor products of
//! semistable sheaves on the projective plane.
//!
//! Everything is done at the level of K-theory classes with
//! arbitrary-precision rational (and real quadratic) arithmetic: exceptional
//! slopes and the stability curve, Beilinson-type resolutions of a general
//! sheaf, Kronecker quiver hom/ext counts, region classification of a pair
//! of characters and the resulting generic `(h0, h1, h2)`, plus
//! global-generation and cohomological-orthogonality criteria.

pub mod chern;
pub mod cohomology;
pub mod error;
pub mod correspondence;
pub mod exceptional;
pub mod kronecker;
pub mod oracle;
pub mod quadratic;

pub use chern::{chi_tensor, hilbert_p, ChernCharacter, Class, SlopeDiscPoint};
pub use error::{Error, Result};
pub use exceptional::{
    decompose, delta, dot, epsilon, DyadicIndex, ExceptionalSlope, LocateResult, StabilityClass,
};
pub use quadratic::{QuadraticNumber, Rational};
