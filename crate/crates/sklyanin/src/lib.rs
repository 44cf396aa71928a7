//! Exact computer algebra for the degenerate three-dimensional Sklyanin
//! algebras `S(a, b, c)` and their twisted coordinate rings.
//!
//! The crate is generic over an exact coefficient field through the
//! [`scalars::Scalar`] trait (built on `num_traits::{Zero, One}`), with three
//! concrete fields provided: the rationals, the cyclotomic field containing a
//! primitive cube root of unity, and prime fields `F_p` with `p = 1 (mod 3)`.
//!
//! Modules:
//! - [`scalars`]: the coefficient fields and specialization to `F_p`;
//! - [`freealg`]: words, noncommutative polynomials, quadratic presentations;
//! - [`rewrite`]: truncated diamond-lemma completion, normal forms, Hilbert
//!   functions;
//! - [`quadops`]: Koszul duals, Zhang twists, Ore presentations, normality
//!   certificates;
//! - [`geometry`]: truncated point schemes, the matrix of the multilinearized
//!   relations, components, and finite-field enumeration;
//! - [`ppring`]: the point parameter ring `B`, its dimensions, generation in
//!   degree one, and the kernel of `S -> B`;
//! - [`linalg`]: the exact linear algebra the rest is built on.

pub mod freealg;
pub mod linalg;
pub mod ppring;
pub mod quadops;
pub mod rewrite;
pub mod scalars;
pub mod geometry;

/// The rationals.
pub type Q = num_rational::BigRational;
/// The cyclotomic field with a primitive cube root of unity.
pub type QZeta = scalars::QZeta3;
/// Prime fields `F_p`, `p = 1 (mod 3)`.
pub type Fp = scalars::Fp;

pub use freealg::{
    in_degenerate_locus, nc_multiply, parse_poly, parse_presentation, print_presentation,
    relation_span_equal, sklyanin_presentation, NcPoly, QuadPresentation, Word,
};
pub use rewrite::{complete_to_degree, MonomialOrder, RewriteSystem};
pub use scalars::{make_field, specialize, Field, FieldSpec, Scalar};
