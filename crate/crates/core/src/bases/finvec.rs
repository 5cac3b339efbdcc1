//! Finite-dimensional vector spaces over an exact field.
//!
//! Objects are dimensions, morphisms are `dom × cod` matrices acting on row
//! vectors, so diagrammatic composition is plain matrix multiplication and
//! copairing is vertical block stacking. The tensor is the Kronecker
//! product under the same lex pair encoding FinSet uses, which keeps the
//! right distributor an identity matrix.
//!
//! The scalar type is pluggable: exact rationals by default, or a prime
//! field `GF(p)` with a runtime-checked prime.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::base::{BaseError, MonoidalBase};

/// The scalar operations a matrix base needs. Only `+`, `×`, `0`, `1` are
/// required; inverse distributors come from copairing, never from matrix
/// inversion. Elements are expected to stay in normal form (reduced
/// fractions, residues `< p`) under these operations.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + Eq + fmt::Debug;

    fn describe(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_normal(&self, a: &Self::Elem) -> bool;
    fn parse(&self, s: &str) -> Result<Self::Elem, BaseError>;
    fn format(&self, a: &Self::Elem) -> String;
}

/// Arbitrary-precision exact rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn describe(&self) -> String {
        "rational".to_string()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_normal(&self, a: &BigRational) -> bool {
        *a == a.reduced()
    }

    fn parse(&self, s: &str) -> Result<BigRational, BaseError> {
        BigRational::from_str(s.trim())
            .map(|r| r.reduced())
            .map_err(|_| BaseError::InvalidValue(format!("bad rational {s:?}")))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The prime field `GF(p)`; elements are residues `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, BaseError> {
        if !is_prime(p) {
            return Err(BaseError::NonPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn describe(&self) -> String {
        format!("gf({})", self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn is_normal(&self, a: &u64) -> bool {
        *a < self.p
    }

    fn parse(&self, s: &str) -> Result<u64, BaseError> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| BaseError::InvalidValue(format!("bad field element {s:?}")))?;
        Ok(self.elem(v))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// A `dom × cod` matrix over the field, row-major, acting on row vectors:
/// `f ; g` is `f · g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    dom: usize,
    cod: usize,
    entries: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn new(dom: usize, cod: usize, entries: Vec<E>) -> Self {
        Mat { dom, cod, entries }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn at(&self, row: usize, col: usize) -> Option<&E> {
        if row < self.dom && col < self.cod {
            self.entries.get(row * self.cod + col)
        } else {
            None
        }
    }
}

/// Vector spaces over `F` with Kronecker tensor and direct-sum coproducts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinVecBase<F: Field> {
    field: F,
}

impl<F: Field> FinVecBase<F> {
    pub fn new(field: F) -> Self {
        FinVecBase { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Matrix with `one` at `(r, pick(r))` per row, `zero` elsewhere: the
    /// linearization of a function table.
    pub fn table_matrix(&self, dom: usize, cod: usize, pick: impl Fn(usize) -> usize) -> Mat<F::Elem> {
        let mut entries = vec![self.field.zero(); dom * cod];
        for r in 0..dom {
            let c = pick(r);
            if c < cod {
                entries[r * cod + c] = self.field.one();
            }
        }
        Mat::new(dom, cod, entries)
    }
}

impl FinVecBase<Rationals> {
    pub fn rationals() -> Self {
        FinVecBase::new(Rationals)
    }
}

impl FinVecBase<PrimeField> {
    pub fn prime(p: u64) -> Result<Self, BaseError> {
        Ok(FinVecBase::new(PrimeField::new(p)?))
    }
}

impl<F: Field> MonoidalBase for FinVecBase<F> {
    type Obj = usize;
    type Mor = Mat<F::Elem>;

    fn describe(&self) -> String {
        format!("finvec({})", self.field.describe())
    }

    fn dom(&self, f: &Self::Mor) -> usize {
        f.dom
    }

    fn cod(&self, f: &Self::Mor) -> usize {
        f.cod
    }

    fn identity(&self, a: &usize) -> Self::Mor {
        self.table_matrix(*a, *a, |r| r)
    }

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, BaseError> {
        if f.cod != g.dom {
            return Err(BaseError::ComposeMismatch {
                cod: f.cod.to_string(),
                dom: g.dom.to_string(),
            });
        }
        if f.entries.len() != f.dom * f.cod || g.entries.len() != g.dom * g.cod {
            return Err(BaseError::Malformed("matrix entry count".into()));
        }
        let mut entries = Vec::with_capacity(f.dom * g.cod);
        for r in 0..f.dom {
            for c in 0..g.cod {
                let mut acc = self.field.zero();
                for k in 0..f.cod {
                    let prod = self
                        .field
                        .mul(&f.entries[r * f.cod + k], &g.entries[k * g.cod + c]);
                    acc = self.field.add(&acc, &prod);
                }
                entries.push(acc);
            }
        }
        Ok(Mat::new(f.dom, g.cod, entries))
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor_obj(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        let dom = f.dom * g.dom;
        let cod = f.cod * g.cod;
        let mut entries = vec![self.field.zero(); dom * cod];
        for i1 in 0..f.dom {
            for i2 in 0..g.dom {
                for j1 in 0..f.cod {
                    for j2 in 0..g.cod {
                        let row = i1 * g.dom + i2;
                        let col = j1 * g.cod + j2;
                        entries[row * cod + col] = self
                            .field
                            .mul(&f.entries[i1 * f.cod + j1], &g.entries[i2 * g.cod + j2]);
                    }
                }
            }
        }
        Mat::new(dom, cod, entries)
    }

    fn sum_obj(&self, summands: &[usize]) -> usize {
        summands.iter().sum()
    }

    fn injection(&self, summands: &[usize], index: usize) -> Self::Mor {
        let total: usize = summands.iter().sum();
        let offset: usize = summands[..index].iter().sum();
        self.table_matrix(summands[index], total, |r| offset + r)
    }

    fn copair(
        &self,
        summands: &[usize],
        cod: &usize,
        legs: &[Self::Mor],
    ) -> Result<Self::Mor, BaseError> {
        if legs.len() != summands.len() {
            return Err(BaseError::CopairArity {
                expected: summands.len(),
                got: legs.len(),
            });
        }
        let mut entries = Vec::new();
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
            if leg.entries.len() != leg.dom * leg.cod {
                return Err(BaseError::Malformed("matrix entry count".into()));
            }
            entries.extend_from_slice(&leg.entries);
        }
        Ok(Mat::new(summands.iter().sum(), *cod, entries))
    }

    fn distribute_right(&self, summands: &[usize], b: &usize) -> Self::Mor {
        let total: usize = summands.iter().sum();
        self.identity(&(total * b))
    }

    fn distribute_left(&self, b: &usize, summands: &[usize]) -> Self::Mor {
        let total: usize = summands.iter().sum();
        let size = b * total;
        let mut target = vec![0usize; size];
        let mut offset = 0usize;
        let mut out_offset = 0usize;
        for &n in summands {
            for j in 0..*b {
                for x in 0..n {
                    target[j * total + offset + x] = out_offset + j * n + x;
                }
            }
            offset += n;
            out_offset += b * n;
        }
        self.table_matrix(size, size, |r| target[r])
    }

    fn mor_wellformed(&self, f: &Self::Mor) -> bool {
        f.entries.len() == f.dom * f.cod && f.entries.iter().all(|e| self.field.is_normal(e))
    }

    fn mor_valid(&self, f: &Self::Mor) -> bool {
        self.mor_wellformed(f)
    }

    fn is_thin(&self) -> bool {
        false
    }

    fn format_obj(&self, a: &usize) -> String {
        a.to_string()
    }

    fn format_mor(&self, f: &Self::Mor) -> String {
        let mut rows = Vec::with_capacity(f.dom);
        for r in 0..f.dom {
            let row: Vec<String> = (0..f.cod)
                .map(|c| self.field.format(&f.entries[r * f.cod + c]))
                .collect();
            rows.push(format!("[{}]", row.join(",")));
        }
        format!("{}→{} [{}]", f.dom, f.cod, rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{self, Coproduct, Label};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn named(entries: &[usize]) -> Vec<(Label, usize)> {
        entries
            .iter()
            .enumerate()
            .map(|(i, &n)| (Label::name(format!("s{i}")), n))
            .collect()
    }

    #[test]
    fn copair_stacks_blocks() {
        // summands dims [1,2], legs 1×2 and 2×2; copair = 3×2 vertical stack,
        // verified against compose(inj_i, result) by matrix multiplication.
        let b = FinVecBase::rationals();
        let cop = Coproduct::new(&b, named(&[1, 2])).unwrap();
        let m1 = Mat::new(1, 2, vec![q(1, 2), q(3, 1)]);
        let m2 = Mat::new(2, 2, vec![q(0, 1), q(1, 1), q(-2, 1), q(5, 7)]);
        let h = cop.copair(&b, &2, &[m1.clone(), m2.clone()]).unwrap();
        assert_eq!(h.dom(), 3);
        assert_eq!(h.cod(), 2);
        assert_eq!(b.compose(&cop.injections()[0], &h).unwrap(), m1);
        assert_eq!(b.compose(&cop.injections()[1], &h).unwrap(), m2);
        assert_eq!(
            h.entries(),
            &[q(1, 2), q(3, 1), q(0, 1), q(1, 1), q(-2, 1), q(5, 7)]
        );
    }

    #[test]
    fn distribute_left_is_a_permutation_matrix() {
        // dims B=2, summands [1,1] → a 4×4 permutation matrix; the expected
        // permutation comes from the Kronecker-block index calculation:
        // input j·(n1+n2) + (o_i+x) ↦ output 2·o_i + j·n_i + x.
        let b = FinVecBase::rationals();
        let cop = Coproduct::new(&b, named(&[1, 1])).unwrap();
        let d = base::distribute_left(&b, &2, &cop);
        let expected: Vec<(usize, usize)> = vec![(0, 0), (1, 2), (2, 1), (3, 3)];
        for (r, c) in expected {
            assert_eq!(*d.at(r, c).unwrap(), q(1, 1));
        }
        let inv = base::distribute_left_inv(&b, &2, &cop).unwrap();
        assert_eq!(b.compose(&d, &inv).unwrap(), b.identity(&4));
        assert_eq!(b.compose(&inv, &d).unwrap(), b.identity(&4));
    }

    #[test]
    fn kronecker_respects_composition() {
        let b = FinVecBase::rationals();
        let f = Mat::new(2, 2, vec![q(1, 1), q(2, 1), q(0, 1), q(1, 1)]);
        let f2 = Mat::new(2, 1, vec![q(1, 2), q(3, 1)]);
        let g = Mat::new(1, 2, vec![q(2, 1), q(0, 1)]);
        let g2 = Mat::new(2, 2, vec![q(1, 1), q(0, 1), q(1, 1), q(1, 1)]);
        let lhs = b
            .compose(&b.tensor_mor(&f, &g), &b.tensor_mor(&f2, &g2))
            .unwrap();
        let rhs = b.tensor_mor(
            &b.compose(&f, &f2).unwrap(),
            &b.compose(&g, &g2).unwrap(),
        );
        assert_eq!(lhs, rhs);
        let ida = b.identity(&2);
        let idb = b.identity(&3);
        assert_eq!(b.tensor_mor(&ida, &idb), b.identity(&6));
    }

    #[test]
    fn gf2_arithmetic() {
        let b = FinVecBase::prime(2).unwrap();
        let f = Mat::new(2, 2, vec![1, 1, 0, 1]);
        let sq = b.compose(&f, &f).unwrap();
        assert_eq!(sq.entries(), &[1, 0, 0, 1]);
        assert!(FinVecBase::prime(4).is_err());
        assert!(FinVecBase::prime(1).is_err());
        assert_eq!(PrimeField::new(5).unwrap().elem(-3), 2);
    }

    #[test]
    fn rational_entries_stay_reduced() {
        let r = Rationals;
        assert_eq!(r.parse("2/4").unwrap(), q(1, 2));
        assert_eq!(r.format(&q(4, 2)), "2");
        assert_eq!(r.format(&q(-3, 2)), "-3/2");
        let b = FinVecBase::rationals();
        let f = Mat::new(1, 1, vec![q(2, 3)]);
        let g = Mat::new(1, 1, vec![q(3, 2)]);
        let h = b.compose(&f, &g).unwrap();
        assert_eq!(h.entries(), &[q(1, 1)]);
        assert!(b.mor_wellformed(&h));
    }

    #[test]
    fn singleton_injection_is_identity() {
        let b = FinVecBase::rationals();
        assert_eq!(b.injection(&[3], 0), b.identity(&3));
    }
}
