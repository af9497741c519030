//! Graphs on orientable surfaces and their Tutte-type polynomials.
//!
//! Maps are stored as permutation pairs ([`RibbonGraph`]); possibly
//! non-cellular embeddings as a cellular carrier with marked edges
//! ([`EmbeddedGraph`]). From these the crate computes, in exact integer
//! arithmetic, the Krushkal, Las Vergnas, Bollobás–Riordan and Tutte
//! polynomials, and checks the identities that connect them.
//!
//! Polynomial arithmetic is generic over the coefficient ring; [`Poly`] is
//! the arbitrary-precision instance every invariant returns.

pub mod catalog;
pub mod embed;
pub mod enumerate;
mod expand;
pub mod io;
pub mod laurent;
pub mod matroid;
pub mod polys;
pub mod rgraph;

pub use embed::EmbeddedGraph;
pub use laurent::{Coeff, LaurentPoly, PolyError, VarSet};
pub use matroid::{Perspective, RankOracle};
pub use rgraph::{EdgeSubset, RibbonGraph};

/// Laurent polynomial over arbitrary-precision integers.
pub type Poly = LaurentPoly<num_bigint::BigInt>;

/// Laurent polynomial over `i64`; overflow is reported, never wrapped.
pub type Poly64 = LaurentPoly<i64>;

/// Exact rationals, the value type of [`LaurentPoly::evaluate`] for [`Poly`].
pub type Rational = num_rational::BigRational;
