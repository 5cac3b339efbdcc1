//! Finite enriched category theory over pluggable distributive monoidal
//! bases: categories, functors, cofunctors, natural transformations,
//! lenses, and the double category of cells, with every axiom diagram
//! mechanically verified by composing base morphisms along both paths.
//!
//! The crate is organized around a single [`base::MonoidalBase`] interface
//! with five concrete instantiations: finite sets, vector spaces over an
//! exact scalar field (rationals or a prime field), the thin tropical base
//! `([0,∞], ≥)`, and free coproduct completions of thin monoidal posets
//! (weighted sets in particular). All arithmetic is exact and every
//! comparison is plain data equality on canonical encodings.

pub mod base;
pub mod bases;
pub mod cofun;
pub mod conformance;
pub mod diagram;
pub mod doublecat;
pub mod encat;
pub mod oracle;
pub mod report;

pub use base::{BaseError, Coproduct, Label, MonoidalBase};
pub use diagram::CheckMode;
pub use encat::{ObjName, StructureError};
pub use report::{CheckReport, DiagramVerdict};

/// Finite sets and functions, cartesian monoidal.
pub type FinSet = bases::finset::FinSetBase;
/// Vector spaces over exact rationals.
pub type FinVecQ = bases::finvec::FinVecBase<bases::finvec::Rationals>;
/// Vector spaces over a prime field `GF(p)`.
pub type FinVecGf = bases::finvec::FinVecBase<bases::finvec::PrimeField>;
/// The thin base `([0,∞], ≥, +, 0)`.
pub type Tropical = bases::tropical::TropicalBase;
/// Weighted sets: families over the tropical poset.
pub type WSet = bases::fam::FamBase<bases::tropical::TropicalPoset>;
