//! The thin base `([0, ∞], ≥)` with addition as tensor, and the thin
//! monoidal poset interface that `Fam` is built over.
//!
//! Values are exact nonnegative rationals plus `∞`; exactness is what makes
//! morphism equality decidable. A morphism `x → y` exists iff `x ≥ y` and is
//! unique, so a `TropicalBase` morphism value is just the claimed
//! (domain, codomain) pair; `mor_valid` decides existence. Coproducts are
//! minima and the empty coproduct is `∞`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::base::{BaseError, MonoidalBase};

/// An extended nonnegative rational: a point of `[0, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropVal {
    Finite(BigRational),
    Infinity,
}

impl TropVal {
    pub fn zero() -> Self {
        TropVal::Finite(BigRational::zero())
    }

    pub fn infinity() -> Self {
        TropVal::Infinity
    }

    /// A finite value `n/d`; errors on `d = 0` or a negative result.
    pub fn finite(n: i64, d: i64) -> Result<Self, BaseError> {
        if d == 0 {
            return Err(BaseError::InvalidValue("zero denominator".into()));
        }
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        TropVal::from_rational(r)
    }

    pub fn from_rational(r: BigRational) -> Result<Self, BaseError> {
        if r.is_negative() {
            return Err(BaseError::InvalidValue(format!(
                "negative tropical value {r}"
            )));
        }
        Ok(TropVal::Finite(r))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropVal::Infinity)
    }

    /// Tropical tensor: addition, with `∞` absorbing.
    pub fn add(&self, other: &TropVal) -> TropVal {
        match (self, other) {
            (TropVal::Finite(a), TropVal::Finite(b)) => TropVal::Finite(a + b),
            _ => TropVal::Infinity,
        }
    }

    /// `self ≥ other` in the usual order; a morphism `self → other` exists
    /// exactly then.
    pub fn ge(&self, other: &TropVal) -> bool {
        match (self, other) {
            (TropVal::Infinity, _) => true,
            (TropVal::Finite(_), TropVal::Infinity) => false,
            (TropVal::Finite(a), TropVal::Finite(b)) => a >= b,
        }
    }

    /// Minimum of a list; `∞` for the empty list.
    pub fn min_of(values: &[TropVal]) -> TropVal {
        values
            .iter()
            .fold(TropVal::Infinity, |acc, v| if v < &acc { v.clone() } else { acc })
    }

    /// Parses `"inf"`, fraction strings `"p/q"`, integers, and finite
    /// decimal strings like `"1.5"`.
    pub fn parse(s: &str) -> Result<Self, BaseError> {
        let s = s.trim();
        if s == "inf" {
            return Ok(TropVal::Infinity);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(BaseError::InvalidValue(format!("bad decimal {s:?}")));
            }
            let int: BigInt = int_part
                .parse()
                .map_err(|_| BaseError::InvalidValue(format!("bad decimal {s:?}")))?;
            let frac: BigInt = frac_part
                .parse()
                .map_err(|_| BaseError::InvalidValue(format!("bad decimal {s:?}")))?;
            let den = BigInt::from(10u32).pow(frac_part.len() as u32);
            let r = BigRational::new(int * &den + frac, den);
            return TropVal::from_rational(r);
        }
        let r = BigRational::from_str(s)
            .map_err(|_| BaseError::InvalidValue(format!("bad tropical value {s:?}")))?;
        TropVal::from_rational(r)
    }
}

impl fmt::Display for TropVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropVal::Infinity => write!(f, "inf"),
            TropVal::Finite(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// The claimed inequality witness `dom ≥ cod`. Construction is unchecked;
/// `mor_valid` is what decides existence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropWitness {
    dom: TropVal,
    cod: TropVal,
}

impl TropWitness {
    pub fn new(dom: TropVal, cod: TropVal) -> Self {
        TropWitness { dom, cod }
    }

    pub fn holds(&self) -> bool {
        self.dom.ge(&self.cod)
    }
}

/// The thin category `([0, ∞], ≥)` with `+` as tensor and `0` as unit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TropicalBase;

impl TropicalBase {
    pub fn new() -> Self {
        TropicalBase
    }

    /// The unique morphism claim `x → y`.
    pub fn witness(&self, dom: TropVal, cod: TropVal) -> TropWitness {
        TropWitness::new(dom, cod)
    }
}

impl MonoidalBase for TropicalBase {
    type Obj = TropVal;
    type Mor = TropWitness;

    fn describe(&self) -> String {
        "tropical".to_string()
    }

    fn dom(&self, f: &TropWitness) -> TropVal {
        f.dom.clone()
    }

    fn cod(&self, f: &TropWitness) -> TropVal {
        f.cod.clone()
    }

    fn identity(&self, a: &TropVal) -> TropWitness {
        TropWitness::new(a.clone(), a.clone())
    }

    fn compose(&self, f: &TropWitness, g: &TropWitness) -> Result<TropWitness, BaseError> {
        if f.cod != g.dom {
            return Err(BaseError::ComposeMismatch {
                cod: f.cod.to_string(),
                dom: g.dom.to_string(),
            });
        }
        Ok(TropWitness::new(f.dom.clone(), g.cod.clone()))
    }

    fn unit(&self) -> TropVal {
        TropVal::zero()
    }

    fn tensor_obj(&self, a: &TropVal, b: &TropVal) -> TropVal {
        a.add(b)
    }

    fn tensor_mor(&self, f: &TropWitness, g: &TropWitness) -> TropWitness {
        TropWitness::new(f.dom.add(&g.dom), f.cod.add(&g.cod))
    }

    fn sum_obj(&self, summands: &[TropVal]) -> TropVal {
        TropVal::min_of(summands)
    }

    fn injection(&self, summands: &[TropVal], index: usize) -> TropWitness {
        TropWitness::new(summands[index].clone(), TropVal::min_of(summands))
    }

    fn copair(
        &self,
        summands: &[TropVal],
        cod: &TropVal,
        legs: &[TropWitness],
    ) -> Result<TropWitness, BaseError> {
        if legs.len() != summands.len() {
            return Err(BaseError::CopairArity {
                expected: summands.len(),
                got: legs.len(),
            });
        }
        for (i, leg) in legs.iter().enumerate() {
            if leg.dom != summands[i] {
                return Err(BaseError::CopairLegDomain {
                    index: i,
                    got: leg.dom.to_string(),
                    expected: summands[i].to_string(),
                });
            }
            if leg.cod != *cod {
                return Err(BaseError::CopairLegCodomain {
                    index: i,
                    got: leg.cod.to_string(),
                    expected: cod.to_string(),
                });
            }
        }
        Ok(TropWitness::new(TropVal::min_of(summands), cod.clone()))
    }

    fn distribute_right(&self, summands: &[TropVal], b: &TropVal) -> TropWitness {
        let dom = TropVal::min_of(summands).add(b);
        let tensored: Vec<TropVal> = summands.iter().map(|a| a.add(b)).collect();
        TropWitness::new(dom, TropVal::min_of(&tensored))
    }

    fn distribute_left(&self, b: &TropVal, summands: &[TropVal]) -> TropWitness {
        let dom = b.add(&TropVal::min_of(summands));
        let tensored: Vec<TropVal> = summands.iter().map(|a| b.add(a)).collect();
        TropWitness::new(dom, TropVal::min_of(&tensored))
    }

    fn mor_wellformed(&self, _f: &TropWitness) -> bool {
        true
    }

    fn mor_valid(&self, f: &TropWitness) -> bool {
        f.holds()
    }

    fn is_thin(&self) -> bool {
        true
    }

    fn format_obj(&self, a: &TropVal) -> String {
        a.to_string()
    }

    fn format_mor(&self, f: &TropWitness) -> String {
        format!("{}≥{}", f.dom, f.cod)
    }
}

/// A thin monoidal poset `(W, ⊗, I, ≥)`: the enrichment parameter for
/// `Fam(W)`. `ge(a, b)` holds iff a morphism `a → b` exists; the monoid must
/// be monotone in both arguments.
pub trait ThinMonoidalPoset: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + Eq + fmt::Debug;

    fn describe(&self) -> String;
    fn unit(&self) -> Self::Elem;
    fn tensor(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn ge(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, BaseError>;
}

/// `([0, ∞], ≥, +, 0)` as a thin monoidal poset; `Fam` over this poset is
/// the weighted-set base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TropicalPoset;

impl ThinMonoidalPoset for TropicalPoset {
    type Elem = TropVal;

    fn describe(&self) -> String {
        "tropical-poset".to_string()
    }

    fn unit(&self) -> TropVal {
        TropVal::zero()
    }

    fn tensor(&self, a: &TropVal, b: &TropVal) -> TropVal {
        a.add(b)
    }

    fn ge(&self, a: &TropVal, b: &TropVal) -> bool {
        a.ge(b)
    }

    fn format_elem(&self, a: &TropVal) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<TropVal, BaseError> {
        TropVal::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{self, Coproduct, Label};

    fn v(n: i64, d: i64) -> TropVal {
        TropVal::finite(n, d).unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(TropVal::parse("inf").unwrap(), TropVal::Infinity);
        assert_eq!(TropVal::parse("3/2").unwrap(), v(3, 2));
        assert_eq!(TropVal::parse("1.5").unwrap(), v(3, 2));
        assert_eq!(TropVal::parse("2").unwrap(), v(2, 1));
        assert_eq!(v(4, 2).to_string(), "2");
        assert_eq!(v(3, 2).to_string(), "3/2");
        assert!(TropVal::parse("-1").is_err());
        assert!(TropVal::finite(-1, 2).is_err());
    }

    #[test]
    fn tensor_absorbs_infinity() {
        let b = TropicalBase::new();
        assert_eq!(b.tensor_obj(&v(3, 2), &TropVal::Infinity), TropVal::Infinity);
        assert_eq!(b.tensor_obj(&v(1, 2), &v(1, 1)), v(3, 2));
        assert_eq!(b.tensor_obj(&b.unit(), &v(5, 3)), v(5, 3));
    }

    #[test]
    fn coproduct_is_minimum_with_witnesses() {
        let b = TropicalBase::new();
        let entries = vec![
            (Label::name("x"), v(3, 2)),
            (Label::name("y"), v(2, 1)),
            (Label::name("z"), TropVal::Infinity),
        ];
        // oracle: direct fold over the list
        let expected = entries
            .iter()
            .map(|(_, t)| t.clone())
            .fold(TropVal::Infinity, |acc, t| if t < acc { t } else { acc });
        let cop = Coproduct::new(&b, entries).unwrap();
        assert_eq!(*cop.total(), expected);
        assert_eq!(*cop.total(), v(3, 2));
        for inj in cop.injections() {
            assert!(b.mor_valid(inj));
        }
    }

    #[test]
    fn empty_coproduct_is_infinity() {
        let b = TropicalBase::new();
        assert_eq!(b.initial(), TropVal::Infinity);
    }

    #[test]
    fn distributors_are_equalities() {
        let b = TropicalBase::new();
        let cop = Coproduct::new(
            &b,
            vec![(Label::name("x"), v(1, 1)), (Label::name("y"), v(2, 1))],
        )
        .unwrap();
        let d = base::distribute_right(&b, &cop, &v(1, 2));
        assert_eq!(b.dom(&d), b.cod(&d));
        assert!(b.mor_valid(&d));
        let dl = base::distribute_left(&b, &v(1, 2), &cop);
        assert_eq!(b.dom(&dl), b.cod(&dl));
    }

    #[test]
    fn flatten_thin() {
        let b = TropicalBase::new();
        let inner1 = Coproduct::new(
            &b,
            vec![(Label::name("a"), v(2, 1)), (Label::name("c"), v(5, 1))],
        )
        .unwrap();
        let inner2 = Coproduct::new(&b, vec![(Label::name("b"), v(3, 1))]).unwrap();
        let outer = Coproduct::new(
            &b,
            vec![
                (Label::name("p"), inner1.total().clone()),
                (Label::name("q"), inner2.total().clone()),
            ],
        )
        .unwrap();
        let (flat, iso) = base::flatten(&b, &outer, &[inner1, inner2]).unwrap();
        assert_eq!(*flat.total(), v(2, 1));
        assert!(b.mor_valid(&iso));
        assert_eq!(b.dom(&iso), b.cod(&iso));
    }

    #[test]
    fn invalid_witness_detected() {
        let b = TropicalBase::new();
        let w = b.witness(v(1, 2), v(1, 1));
        assert!(!b.mor_valid(&w));
        assert!(b.mor_wellformed(&w));
        let ok = b.witness(TropVal::Infinity, v(1, 1));
        assert!(b.mor_valid(&ok));
    }

    #[test]
    fn singleton_injection_is_identity() {
        let b = TropicalBase::new();
        assert_eq!(b.injection(&[v(3, 2)], 0), b.identity(&v(3, 2)));
    }
}
