//! Base change along the free functor from finite sets to vector spaces.
//!
//! The free functor is strong monoidal and preserves coproducts, so it
//! transports categories, functors, and cofunctors. Hom-objects become free
//! vector spaces on the hom-sets (dimension = cardinality) and every
//! structure map becomes the 0/1 matrix of its function table. The
//! forgetful direction is not offered: it is lax monoidal but does not
//! preserve coproducts, so it transports categories and functors only, not
//! cofunctors.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base::MonoidalBase;
use crate::bases::finset::{FinFun, FinSetBase};
use crate::bases::finvec::{Field, FinVecBase, Mat};
use crate::cofun::{check_cofunctor, EnrichedCofunctor};
use crate::encat::{check_category, check_functor, EnrichedCategory, EnrichedFunctor, StructureError};

fn mat_of<F: Field>(vec: &FinVecBase<F>, f: &FinFun) -> Mat<F::Elem> {
    vec.table_matrix(f.dom(), f.cod(), |r| f.apply(r).unwrap_or(f.cod()))
}

/// Transport a category along the free functor. The input must pass its
/// Set-level law check; the output passes the corresponding check over the
/// vector-space base.
pub fn linearize_category<F: Field>(
    field: F,
    cat: &EnrichedCategory<FinSetBase>,
) -> Result<EnrichedCategory<FinVecBase<F>>, StructureError> {
    let rep = check_category(cat);
    if !rep.passed() {
        return Err(StructureError::LawFailure {
            subject: "category".into(),
            failure: rep.first_failure().unwrap_or_default(),
        });
    }
    let vec = FinVecBase::new(field);
    let hom: BTreeMap<_, usize> = cat
        .objects()
        .iter()
        .flat_map(|x| cat.objects().iter().map(move |y| (x.clone(), y.clone())))
        .map(|(x, y)| {
            let size = *cat.hom(&x, &y).unwrap();
            ((x, y), size)
        })
        .collect();
    let identities = cat
        .objects()
        .iter()
        .map(|x| (x.clone(), mat_of(&vec, cat.identity_elem(x).unwrap())))
        .collect();
    let mut compositions = BTreeMap::new();
    for x in cat.objects() {
        for y in cat.objects() {
            for z in cat.objects() {
                compositions.insert(
                    (x.clone(), y.clone(), z.clone()),
                    mat_of(&vec, cat.composition_map(x, y, z).unwrap()),
                );
            }
        }
    }
    EnrichedCategory::new(vec, cat.objects().to_vec(), hom, identities, compositions)
}

/// Transport a functor along the free functor, linearizing its boundary
/// categories as well.
pub fn linearize_functor<F: Field>(
    field: F,
    f: &EnrichedFunctor<FinSetBase>,
) -> Result<EnrichedFunctor<FinVecBase<F>>, StructureError> {
    let rep = check_functor(f);
    if !rep.passed() {
        return Err(StructureError::LawFailure {
            subject: "functor".into(),
            failure: rep.first_failure().unwrap_or_default(),
        });
    }
    let source = Arc::new(linearize_category(field.clone(), f.source())?);
    let target = Arc::new(linearize_category(field, f.target())?);
    let vec = source.base().clone();
    let hom_maps = f
        .hom_maps()
        .iter()
        .map(|(k, m)| (k.clone(), mat_of(&vec, m)))
        .collect();
    EnrichedFunctor::new(source, target, f.object_map().clone(), hom_maps)
}

/// Transport a cofunctor along the free functor. Lifting maps become the
/// matrices of their tables; the canonical fibre coproducts correspond
/// because direct-sum offsets mirror disjoint-union offsets.
pub fn linearize_cofunctor<F: Field>(
    field: F,
    c: &EnrichedCofunctor<FinSetBase>,
) -> Result<EnrichedCofunctor<FinVecBase<F>>, StructureError> {
    let rep = check_cofunctor(c);
    if !rep.passed() {
        return Err(StructureError::LawFailure {
            subject: "cofunctor".into(),
            failure: rep.first_failure().unwrap_or_default(),
        });
    }
    let source = Arc::new(linearize_category(field.clone(), c.source())?);
    let target = Arc::new(linearize_category(field, c.target())?);
    let vec = source.base().clone();
    let lifts = c
        .lift_maps()
        .iter()
        .map(|(k, m)| (k.clone(), mat_of(&vec, m)))
        .collect();
    EnrichedCofunctor::new(source, target, c.object_map().clone(), lifts)
}
