//! The free coproduct completion `Fam(W)` of a thin monoidal poset `W`.
//!
//! Objects are finite families of `W`-elements (ordered label lists,
//! duplicates allowed). A morphism is an index function whose witnesses are
//! implied: it exists iff every source label dominates the target label it
//! is sent to. Tensor is the index product with labelwise `⊗`, the
//! coproduct is list concatenation, and distributivity is inherited from
//! the FinSet index calculus.

use crate::base::{BaseError, MonoidalBase};
use crate::bases::tropical::ThinMonoidalPoset;

/// An index map between families; the dom/cod label lists ride along so
/// equality and validity are self-contained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamMor<E> {
    dom: Vec<E>,
    cod: Vec<E>,
    map: Vec<usize>,
}

impl<E: Clone> FamMor<E> {
    pub fn new(dom: Vec<E>, cod: Vec<E>, map: Vec<usize>) -> Self {
        FamMor { dom, cod, map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn dom_labels(&self) -> &[E] {
        &self.dom
    }

    pub fn cod_labels(&self) -> &[E] {
        &self.cod
    }
}

/// `Fam(W)` for a thin monoidal poset `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamBase<W: ThinMonoidalPoset> {
    weights: W,
}

impl<W: ThinMonoidalPoset> FamBase<W> {
    pub fn new(weights: W) -> Self {
        FamBase { weights }
    }

    pub fn poset(&self) -> &W {
        &self.weights
    }

    pub fn mor(&self, dom: Vec<W::Elem>, cod: Vec<W::Elem>, map: Vec<usize>) -> FamMor<W::Elem> {
        FamMor::new(dom, cod, map)
    }
}

impl<W: ThinMonoidalPoset> MonoidalBase for FamBase<W> {
    type Obj = Vec<W::Elem>;
    type Mor = FamMor<W::Elem>;

    fn describe(&self) -> String {
        format!("fam({})", self.weights.describe())
    }

    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        f.dom.clone()
    }

    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        f.cod.clone()
    }

    fn identity(&self, a: &Self::Obj) -> Self::Mor {
        FamMor::new(a.clone(), a.clone(), (0..a.len()).collect())
    }

    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, BaseError> {
        if f.cod != g.dom {
            return Err(BaseError::ComposeMismatch {
                cod: format!("{:?}", f.cod),
                dom: format!("{:?}", g.dom),
            });
        }
        let map = f
            .map
            .iter()
            .map(|&i| {
                g.map
                    .get(i)
                    .copied()
                    .ok_or_else(|| BaseError::Malformed(format!("index {i} out of range")))
            })
            .collect::<Result<_, _>>()?;
        Ok(FamMor::new(f.dom.clone(), g.cod.clone(), map))
    }

    fn unit(&self) -> Self::Obj {
        vec![self.weights.unit()]
    }

    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(self.weights.tensor(x, y));
            }
        }
        out
    }

    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        let dom = self.tensor_obj(&f.dom, &g.dom);
        let cod = self.tensor_obj(&f.cod, &g.cod);
        let gc = g.cod.len();
        let mut map = Vec::with_capacity(f.map.len() * g.map.len());
        for &fi in &f.map {
            for &gj in &g.map {
                map.push(fi * gc + gj);
            }
        }
        FamMor::new(dom, cod, map)
    }

    fn sum_obj(&self, summands: &[Self::Obj]) -> Self::Obj {
        summands.iter().flat_map(|s| s.iter().cloned()).collect()
    }

    fn injection(&self, summands: &[Self::Obj], index: usize) -> Self::Mor {
        let total = self.sum_obj(summands);
        let offset: usize = summands[..index].iter().map(|s| s.len()).sum();
        let map = (offset..offset + summands[index].len()).collect();
        FamMor::new(summands[index].clone(), total, map)
    }

    fn copair(
        &self,
        summands: &[Self::Obj],
        cod: &Self::Obj,
        legs: &[Self::Mor],
    ) -> Result<Self::Mor, BaseError> {
        if legs.len() != summands.len() {
            return Err(BaseError::CopairArity {
                expected: summands.len(),
                got: legs.len(),
            });
        }
        let mut map = Vec::new();
        for (i, leg) in legs.iter().enumerate() {
            if leg.dom != summands[i] {
                return Err(BaseError::CopairLegDomain {
                    index: i,
                    got: format!("{:?}", leg.dom),
                    expected: format!("{:?}", summands[i]),
                });
            }
            if leg.cod != *cod {
                return Err(BaseError::CopairLegCodomain {
                    index: i,
                    got: format!("{:?}", leg.cod),
                    expected: format!("{:?}", cod),
                });
            }
            map.extend_from_slice(&leg.map);
        }
        Ok(FamMor::new(self.sum_obj(summands), cod.clone(), map))
    }

    fn distribute_right(&self, summands: &[Self::Obj], b: &Self::Obj) -> Self::Mor {
        // Identity index map, as in FinSet; the label lists agree pointwise.
        let dom = self.tensor_obj(&self.sum_obj(summands), b);
        let tensored: Vec<Self::Obj> = summands.iter().map(|a| self.tensor_obj(a, b)).collect();
        let cod = self.sum_obj(&tensored);
        let map = (0..dom.len()).collect();
        FamMor::new(dom, cod, map)
    }

    fn distribute_left(&self, b: &Self::Obj, summands: &[Self::Obj]) -> Self::Mor {
        let total: usize = summands.iter().map(|s| s.len()).sum();
        let bl = b.len();
        let dom = self.tensor_obj(b, &self.sum_obj(summands));
        let tensored: Vec<Self::Obj> = summands.iter().map(|a| self.tensor_obj(b, a)).collect();
        let cod = self.sum_obj(&tensored);
        let mut map = vec![0usize; bl * total];
        let mut offset = 0usize;
        let mut out_offset = 0usize;
        for s in summands {
            let n = s.len();
            for j in 0..bl {
                for x in 0..n {
                    map[j * total + offset + x] = out_offset + j * n + x;
                }
            }
            offset += n;
            out_offset += bl * n;
        }
        FamMor::new(dom, cod, map)
    }

    fn mor_wellformed(&self, f: &Self::Mor) -> bool {
        f.map.len() == f.dom.len() && f.map.iter().all(|&i| i < f.cod.len())
    }

    fn mor_valid(&self, f: &Self::Mor) -> bool {
        self.mor_wellformed(f)
            && f.map
                .iter()
                .enumerate()
                .all(|(j, &i)| self.weights.ge(&f.dom[j], &f.cod[i]))
    }

    fn is_thin(&self) -> bool {
        false
    }

    fn format_obj(&self, a: &Self::Obj) -> String {
        let labels: Vec<String> = a.iter().map(|e| self.weights.format_elem(e)).collect();
        format!("[{}]", labels.join(","))
    }

    fn format_mor(&self, f: &Self::Mor) -> String {
        format!(
            "{}→{} {:?}",
            self.format_obj(&f.dom),
            self.format_obj(&f.cod),
            f.map
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{Coproduct, Label};
    use crate::bases::tropical::{TropVal, TropicalPoset};

    type WSet = FamBase<TropicalPoset>;

    fn v(n: i64) -> TropVal {
        TropVal::finite(n, 1).unwrap()
    }

    #[test]
    fn tensor_adds_weights_lexicographically() {
        // [0,1] ⊗ [2] = [2,3] per the index-product-then-⊗ formula
        let b = WSet::new(TropicalPoset);
        let t = b.tensor_obj(&vec![v(0), v(1)], &vec![v(2)]);
        assert_eq!(t, vec![v(2), v(3)]);
    }

    #[test]
    fn coproduct_concatenates() {
        let b = WSet::new(TropicalPoset);
        let cop = Coproduct::new(
            &b,
            vec![
                (Label::name("x"), vec![v(0), v(1)]),
                (Label::name("y"), vec![v(2)]),
            ],
        )
        .unwrap();
        assert_eq!(cop.total(), &vec![v(0), v(1), v(2)]);
        assert_eq!(cop.injections()[1].map(), &[2]);
    }

    #[test]
    fn validity_is_labelwise_order() {
        let b = WSet::new(TropicalPoset);
        let ok = b.mor(vec![v(3)], vec![v(1), v(2)], vec![1]);
        assert!(b.mor_valid(&ok));
        let bad = b.mor(vec![v(1)], vec![v(2)], vec![0]);
        assert!(b.mor_wellformed(&bad));
        assert!(!b.mor_valid(&bad));
        let out_of_range = b.mor(vec![v(1)], vec![v(0)], vec![3]);
        assert!(!b.mor_wellformed(&out_of_range));
    }

    #[test]
    fn unit_family_is_singleton_zero() {
        let b = WSet::new(TropicalPoset);
        assert_eq!(b.unit(), vec![TropVal::zero()]);
        let fam = vec![v(1), v(4)];
        assert_eq!(b.tensor_obj(&fam, &b.unit()), fam);
        assert_eq!(b.tensor_obj(&b.unit(), &fam), fam);
    }

    #[test]
    fn distribute_right_labels_agree() {
        let b = WSet::new(TropicalPoset);
        let d = b.distribute_right(&[vec![v(1)], vec![v(2), v(3)]], &vec![v(10)]);
        assert!(b.mor_valid(&d));
        assert_eq!(b.dom(&d), b.cod(&d));
    }

    #[test]
    fn singleton_injection_is_identity() {
        let b = WSet::new(TropicalPoset);
        let fam = vec![v(1), v(4)];
        assert_eq!(b.injection(&[fam.clone()], 0), b.identity(&fam));
    }
}
