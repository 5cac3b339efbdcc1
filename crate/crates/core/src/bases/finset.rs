//! Finite sets with the cartesian monoidal product.
//!
//! Objects are sizes; a set of size `n` has elements `0..n`. Morphisms are
//! total function tables. The tensor is the cartesian product under the lex
//! pair encoding `(i, j) ↦ i·|B| + j`, the coproduct is the offset disjoint
//! union, so tensoring is strictly associative/unital and the right
//! distributor is literally the identity permutation.

use crate::base::{BaseError, MonoidalBase};

/// A total function between finite sets, as a table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinFun {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl FinFun {
    /// No validation happens here; `mor_wellformed` decides whether the
    /// table really is a function `dom → cod`.
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Self {
        FinFun { dom, cod, table }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.table.get(i).copied()
    }
}

/// The category of finite sets and functions, cartesian monoidal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinSetBase;

impl FinSetBase {
    pub fn new() -> Self {
        FinSetBase
    }
}

impl MonoidalBase for FinSetBase {
    type Obj = usize;
    type Mor = FinFun;

    fn describe(&self) -> String {
        "finset".to_string()
    }

    fn dom(&self, f: &FinFun) -> usize {
        f.dom
    }

    fn cod(&self, f: &FinFun) -> usize {
        f.cod
    }

    fn identity(&self, a: &usize) -> FinFun {
        FinFun::new(*a, *a, (0..*a).collect())
    }

    fn compose(&self, f: &FinFun, g: &FinFun) -> Result<FinFun, BaseError> {
        if f.cod != g.dom {
            return Err(BaseError::ComposeMismatch {
                cod: f.cod.to_string(),
                dom: g.dom.to_string(),
            });
        }
        let table = f
            .table
            .iter()
            .map(|&i| {
                g.table
                    .get(i)
                    .copied()
                    .ok_or_else(|| BaseError::Malformed(format!("entry {i} outside table of size {}", g.table.len())))
            })
            .collect::<Result<_, _>>()?;
        Ok(FinFun::new(f.dom, g.cod, table))
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor_obj(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn tensor_mor(&self, f: &FinFun, g: &FinFun) -> FinFun {
        let mut table = Vec::with_capacity(f.table.len() * g.table.len());
        for &fi in &f.table {
            for &gj in &g.table {
                table.push(fi * g.cod + gj);
            }
        }
        FinFun::new(f.dom * g.dom, f.cod * g.cod, table)
    }

    fn sum_obj(&self, summands: &[usize]) -> usize {
        summands.iter().sum()
    }

    fn injection(&self, summands: &[usize], index: usize) -> FinFun {
        let total: usize = summands.iter().sum();
        let offset: usize = summands[..index].iter().sum();
        FinFun::new(
            summands[index],
            total,
            (offset..offset + summands[index]).collect(),
        )
    }

    fn copair(&self, summands: &[usize], cod: &usize, legs: &[FinFun]) -> Result<FinFun, BaseError> {
        if legs.len() != summands.len() {
            return Err(BaseError::CopairArity {
                expected: summands.len(),
                got: legs.len(),
            });
        }
        let mut table = Vec::new();
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
            table.extend_from_slice(&leg.table);
        }
        Ok(FinFun::new(summands.iter().sum(), *cod, table))
    }

    fn distribute_right(&self, summands: &[usize], b: &usize) -> FinFun {
        // (o_i + x)·|B| + j  ↦  o_i·|B| + x·|B| + j : the identity table.
        let total: usize = summands.iter().sum();
        self.identity(&(total * b))
    }

    fn distribute_left(&self, b: &usize, summands: &[usize]) -> FinFun {
        let total: usize = summands.iter().sum();
        let size = b * total;
        let mut table = vec![0usize; size];
        let mut offset = 0usize;
        let mut out_offset = 0usize;
        for &n in summands {
            for j in 0..*b {
                for x in 0..n {
                    table[j * total + offset + x] = out_offset + j * n + x;
                }
            }
            offset += n;
            out_offset += b * n;
        }
        FinFun::new(size, size, table)
    }

    fn mor_wellformed(&self, f: &FinFun) -> bool {
        f.table.len() == f.dom && f.table.iter().all(|&i| i < f.cod)
    }

    fn mor_valid(&self, f: &FinFun) -> bool {
        self.mor_wellformed(f)
    }

    fn is_thin(&self) -> bool {
        false
    }

    fn format_obj(&self, a: &usize) -> String {
        a.to_string()
    }

    fn format_mor(&self, f: &FinFun) -> String {
        format!("{}→{} {:?}", f.dom, f.cod, f.table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{self, Coproduct, Label};

    fn named(entries: &[usize]) -> Vec<(Label, usize)> {
        entries
            .iter()
            .enumerate()
            .map(|(i, &n)| (Label::name(format!("s{i}")), n))
            .collect()
    }

    #[test]
    fn coproduct_of_sizes_two_three() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, named(&[2, 3])).unwrap();
        assert_eq!(*cop.total(), 5);
        assert_eq!(cop.injections()[0].table(), &[0, 1]);
        assert_eq!(cop.injections()[1].table(), &[2, 3, 4]);
    }

    #[test]
    fn empty_coproduct_is_initial() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, vec![]).unwrap();
        assert_eq!(*cop.total(), 0);
        assert_eq!(b.initial(), 0);
    }

    #[test]
    fn copair_of_element_picks() {
        // summands of size 1 picking elements 0 and 2 of a 3-set
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, named(&[1, 1])).unwrap();
        let legs = vec![FinFun::new(1, 3, vec![0]), FinFun::new(1, 3, vec![2])];
        let h = cop.copair(&b, &3, &legs).unwrap();
        assert_eq!(h.table(), &[0, 2]);
        for (i, leg) in legs.iter().enumerate() {
            assert_eq!(&b.compose(&cop.injections()[i], &h).unwrap(), leg);
        }
    }

    #[test]
    fn unary_copair_is_the_leg() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, named(&[2])).unwrap();
        let leg = FinFun::new(2, 4, vec![3, 1]);
        let h = cop.copair(&b, &4, &[leg.clone()]).unwrap();
        assert_eq!(h, leg);
    }

    #[test]
    fn copair_injections_is_identity() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, named(&[2, 0, 3])).unwrap();
        assert_eq!(cop.copair_injections(&b).unwrap(), b.identity(&5));
    }

    #[test]
    fn distribute_right_is_identity_table() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, named(&[2, 1])).unwrap();
        let d = base::distribute_right(&b, &cop, &3);
        assert_eq!(d, b.identity(&9));
        // injection-compatibility square: (ι_i ⊗ id) ; d = ι'_i
        let tens = base::tensor_cop_right(&b, &cop, &3);
        let id3 = b.identity(&3);
        for i in 0..cop.len() {
            let lhs = b
                .compose(&b.tensor_mor(&cop.injections()[i], &id3), &d)
                .unwrap();
            assert_eq!(lhs, tens.injections()[i]);
        }
    }

    #[test]
    fn distribute_left_permutation() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, named(&[1, 2])).unwrap();
        let d = base::distribute_left(&b, &2, &cop);
        // Elementwise check of the injection squares: (id ⊗ ι_i) ; d = ι'_i.
        let tens = base::tensor_cop_left(&b, &2, &cop);
        let id2 = b.identity(&2);
        for i in 0..cop.len() {
            let lhs = b
                .compose(&b.tensor_mor(&id2, &cop.injections()[i]), &d)
                .unwrap();
            assert_eq!(lhs, tens.injections()[i]);
        }
        // and it is a bijection
        let mut seen = vec![false; 6];
        for &v in d.table() {
            assert!(!seen[v]);
            seen[v] = true;
        }
    }

    #[test]
    fn distributors_invert() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, named(&[2, 1, 3])).unwrap();
        let fwd = base::distribute_left(&b, &2, &cop);
        let inv = base::distribute_left_inv(&b, &2, &cop).unwrap();
        assert_eq!(b.compose(&fwd, &inv).unwrap(), b.identity(&12));
        assert_eq!(b.compose(&inv, &fwd).unwrap(), b.identity(&12));
    }

    #[test]
    fn empty_distributor_into_initial() {
        let b = FinSetBase::new();
        let cop = Coproduct::new(&b, vec![]).unwrap();
        let d = base::distribute_right(&b, &cop, &3);
        assert_eq!(b.dom(&d), 0);
        assert_eq!(b.cod(&d), 0);
        assert!(b.mor_wellformed(&d));
    }

    #[test]
    fn flatten_reorders_by_label() {
        let b = FinSetBase::new();
        // outer over [p, q], inner fibres p ↦ [b], q ↦ [a, c], all size 1
        let inner_p = Coproduct::new(&b, vec![(Label::name("b"), 1)]).unwrap();
        let inner_q =
            Coproduct::new(&b, vec![(Label::name("a"), 1), (Label::name("c"), 1)]).unwrap();
        let outer = Coproduct::new(
            &b,
            vec![
                (Label::name("p"), *inner_p.total()),
                (Label::name("q"), *inner_q.total()),
            ],
        )
        .unwrap();
        let (flat, iso) = base::flatten(&b, &outer, &[inner_p, inner_q]).unwrap();
        let labels: Vec<String> = flat.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, ["a", "b", "c"]);
        assert_eq!(iso.table(), &[1, 0, 2]);
    }

    #[test]
    fn flatten_single_summand_is_identity() {
        let b = FinSetBase::new();
        let inner =
            Coproduct::new(&b, vec![(Label::name("a"), 2), (Label::name("b"), 1)]).unwrap();
        let outer = Coproduct::new(&b, vec![(Label::name("o"), *inner.total())]).unwrap();
        let (flat, iso) = base::flatten(&b, &outer, &[inner.clone()]).unwrap();
        assert_eq!(flat, inner);
        assert_eq!(iso, b.identity(&3));
    }

    #[test]
    fn tensor_strictness() {
        let b = FinSetBase::new();
        for a in 0..4usize {
            for c in 0..4usize {
                for d in 0..4usize {
                    assert_eq!(
                        b.tensor_obj(&b.tensor_obj(&a, &c), &d),
                        b.tensor_obj(&a, &b.tensor_obj(&c, &d))
                    );
                }
                assert_eq!(b.tensor_obj(&b.unit(), &a), a);
                assert_eq!(b.tensor_obj(&a, &b.unit()), a);
            }
        }
        // tensoring with id on the unit is the identity on morphisms
        let f = FinFun::new(2, 3, vec![2, 0]);
        let id1 = b.identity(&1);
        assert_eq!(b.tensor_mor(&f, &id1), f);
        assert_eq!(b.tensor_mor(&id1, &f), f);
    }

    #[test]
    fn singleton_injection_is_identity() {
        let b = FinSetBase::new();
        assert_eq!(b.injection(&[3], 0), b.identity(&3));
    }
}
