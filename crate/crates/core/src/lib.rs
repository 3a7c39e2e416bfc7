//! Littelmann path model for Kac-Moody crystals with exact rational
//! arithmetic.
//!
//! A crystal is modelled by piecewise-linear paths in the weight space of a
//! symmetrizable Kac-Moody algebra, acted on by raising and lowering root
//! operators.  Starting from the straight path to a dominant weight, the
//! operators generate the crystal graph of the corresponding highest-weight
//! module; all path geometry is done over the rationals, so every computed
//! object is exact.
//!
//! The crate is organized bottom up:
//!
//! * [`root_data`]: Cartan types (finite and affine, twisted included),
//!   weights, pairings, reflections, Kac labels, and Weyl dimensions.
//! * [`paths`]: piecewise-linear paths up to reparametrization and their
//!   scalar height functions.
//! * [`crystal_ops`]: the raising and lowering root operators and the
//!   statistics derived from them.
//! * [`crystal_graph`]: breadth-first generation of crystal graphs, tensor
//!   products, axiom checking, isomorphism testing, and serialization.
//! * [`folding`]: diagram foldings, the induced virtualization maps, and
//!   verification of the conditions under which virtualization embeds one
//!   crystal in another.
//! * [`level_zero`]: classical projections of level-zero affine crystals and
//!   the checks tying them to finite tensor products via virtualization.

pub mod crystal_graph;
pub mod crystal_ops;
mod error;
pub mod folding;
pub mod level_zero;
pub mod paths;
pub mod report;
pub mod root_data;

/// Exact scalar type used everywhere: arbitrary-precision rationals.
pub type Rational = num::BigRational;

pub use crystal_graph::{is_isomorphic, CrystalGraph, NodeLabel};
pub use crystal_ops::{epsilon, lower, phi, raise};
pub use error::{Error, Result};
pub use folding::Folding;
pub use paths::{Path, ScalarPL};
pub use report::{Report, Verdict};
pub use root_data::{parse_rational, CartanType, RootDatum, Weight};

/// Shorthand for a small integer as a rational.
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
