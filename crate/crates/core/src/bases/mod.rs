//! The concrete enrichment bases: finite sets, exact vector spaces,
//! extended nonnegative rationals, and free coproduct completions of thin
//! monoidal posets (weighted sets in particular).

pub mod fam;
pub mod finset;
pub mod finvec;
pub mod linearize;
pub mod tropical;

pub use fam::{FamBase, FamMor};
pub use finset::{FinFun, FinSetBase};
pub use finvec::{Field, FinVecBase, Mat, PrimeField, Rationals};
pub use tropical::{ThinMonoidalPoset, TropVal, TropWitness, TropicalBase, TropicalPoset};

use crate::base::BaseError;

/// The category of finite sets with the cartesian product.
pub fn make_finset() -> FinSetBase {
    FinSetBase::new()
}

/// Vector spaces over exact rationals.
pub fn make_finvec_rational() -> FinVecBase<Rationals> {
    FinVecBase::rationals()
}

/// Vector spaces over `GF(p)`; errors when `p` is not prime.
pub fn make_finvec_gf(p: u64) -> Result<FinVecBase<PrimeField>, BaseError> {
    FinVecBase::prime(p)
}

/// The thin base `([0, ∞], ≥, +, 0)`.
pub fn make_tropical() -> TropicalBase {
    TropicalBase::new()
}

/// The free coproduct completion of a thin monoidal poset.
pub fn make_fam<W: tropical::ThinMonoidalPoset>(weights: W) -> FamBase<W> {
    FamBase::new(weights)
}

/// Weighted sets: `Fam` over the tropical poset.
pub fn make_wset() -> FamBase<TropicalPoset> {
    FamBase::new(TropicalPoset)
}
