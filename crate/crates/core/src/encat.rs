//! Enriched categories, enriched functors, and natural transformations
//! between functors, with their law checkers and composites.
//!
//! Constructors accept raw data; the law checks are separate operations so
//! a caller can see exactly which diagram fails and with which composed
//! payloads. Downstream operations (composition, whiskering, translation)
//! expect instances whose checks pass.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::base::{BaseError, Coproduct, Label, MonoidalBase};
use crate::diagram::{default_mode, CheckMode, DiagramCtx};
use crate::report::CheckReport;

/// Object names; categories keep them sorted, and every fibre-indexed sum
/// inherits this lexicographic order.
pub type ObjName = String;

/// Structural errors raised when assembling or combining enriched
/// structures (law failures are reported by the checkers instead).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("duplicate object name {0}")]
    DuplicateObject(String),
    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(String, String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("missing {0}")]
    Missing(String),
    #[error("{subject} check failed at {failure}")]
    LawFailure { subject: String, failure: String },
    #[error(transparent)]
    Base(#[from] BaseError),
}

/// A category enriched in the base `B`: a finite sorted object list, a
/// hom-object per ordered pair, an identity element `I → hom(x,x)` per
/// object, and a composition map `hom(x,y) ⊗ hom(y,z) → hom(x,z)` per
/// triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedCategory<B: MonoidalBase> {
    base: B,
    objects: Vec<ObjName>,
    hom: BTreeMap<(ObjName, ObjName), B::Obj>,
    identities: BTreeMap<ObjName, B::Mor>,
    compositions: BTreeMap<(ObjName, ObjName, ObjName), B::Mor>,
}

impl<B: MonoidalBase> EnrichedCategory<B> {
    /// Sorts the object list; rejects duplicate names. Completeness and the
    /// laws are the checker's concern.
    pub fn new(
        base: B,
        mut objects: Vec<ObjName>,
        hom: BTreeMap<(ObjName, ObjName), B::Obj>,
        identities: BTreeMap<ObjName, B::Mor>,
        compositions: BTreeMap<(ObjName, ObjName, ObjName), B::Mor>,
    ) -> Result<Self, StructureError> {
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(StructureError::DuplicateObject(w[0].clone()));
            }
        }
        Ok(EnrichedCategory {
            base,
            objects,
            hom,
            identities,
            compositions,
        })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn objects(&self) -> &[ObjName] {
        &self.objects
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.iter().any(|o| o == name)
    }

    pub fn hom(&self, x: &str, y: &str) -> Option<&B::Obj> {
        self.hom.get(&(x.to_string(), y.to_string()))
    }

    pub fn identity_elem(&self, x: &str) -> Option<&B::Mor> {
        self.identities.get(x)
    }

    pub fn composition_map(&self, x: &str, y: &str, z: &str) -> Option<&B::Mor> {
        self.compositions
            .get(&(x.to_string(), y.to_string(), z.to_string()))
    }

    pub(crate) fn hom_r(&self, x: &str, y: &str) -> Result<&B::Obj, BaseError> {
        self.hom(x, y)
            .ok_or_else(|| BaseError::Malformed(format!("missing hom({x},{y})")))
    }

    pub(crate) fn eta_r(&self, x: &str) -> Result<&B::Mor, BaseError> {
        self.identity_elem(x)
            .ok_or_else(|| BaseError::Malformed(format!("missing identity element at {x}")))
    }

    pub(crate) fn mu_r(&self, x: &str, y: &str, z: &str) -> Result<&B::Mor, BaseError> {
        self.composition_map(x, y, z)
            .ok_or_else(|| BaseError::Malformed(format!("missing composition map ({x},{y},{z})")))
    }
}

fn structural_category<B: MonoidalBase>(cat: &EnrichedCategory<B>, rep: &mut CheckReport) {
    let b = cat.base();
    for (x, y) in cat.hom.keys() {
        if !cat.has_object(x) || !cat.has_object(y) {
            rep.push_structural(format!("hom entry ({x},{y}) names an unknown object"));
        }
    }
    for x in cat.identities.keys() {
        if !cat.has_object(x) {
            rep.push_structural(format!("identity entry {x} names an unknown object"));
        }
    }
    for (x, y, z) in cat.compositions.keys() {
        if !cat.has_object(x) || !cat.has_object(y) || !cat.has_object(z) {
            rep.push_structural(format!("composition entry ({x},{y},{z}) names an unknown object"));
        }
    }
    for x in cat.objects() {
        for y in cat.objects() {
            if cat.hom(x, y).is_none() {
                rep.push_structural(format!("missing hom object at ({x},{y})"));
            }
        }
    }
    if !rep.structural_ok() {
        return;
    }
    for x in cat.objects() {
        match cat.identity_elem(x) {
            None => rep.push_structural(format!("missing identity element at {x}")),
            Some(m) => {
                if !b.mor_wellformed(m) {
                    rep.push_structural(format!("identity element at {x} is malformed"));
                }
                if &b.dom(m) != &b.unit() {
                    rep.push_structural(format!(
                        "identity element at {x} has domain {}, expected the unit",
                        b.format_obj(&b.dom(m))
                    ));
                }
                if Some(&b.cod(m)) != cat.hom(x, x) {
                    rep.push_structural(format!(
                        "identity element at {x} has codomain {}, expected hom({x},{x})",
                        b.format_obj(&b.cod(m))
                    ));
                }
            }
        }
    }
    for x in cat.objects() {
        for y in cat.objects() {
            for z in cat.objects() {
                match cat.composition_map(x, y, z) {
                    None => rep.push_structural(format!("missing composition map ({x},{y},{z})")),
                    Some(m) => {
                        let expected_dom =
                            b.tensor_obj(cat.hom(x, y).unwrap(), cat.hom(y, z).unwrap());
                        if !b.mor_wellformed(m) {
                            rep.push_structural(format!("composition map ({x},{y},{z}) is malformed"));
                        }
                        if b.dom(m) != expected_dom {
                            rep.push_structural(format!(
                                "composition map ({x},{y},{z}) has domain {}, expected {}",
                                b.format_obj(&b.dom(m)),
                                b.format_obj(&expected_dom)
                            ));
                        }
                        if Some(&b.cod(m)) != cat.hom(x, z) {
                            rep.push_structural(format!(
                                "composition map ({x},{y},{z}) has codomain {}, expected hom({x},{z})",
                                b.format_obj(&b.cod(m))
                            ));
                        }
                    }
                }
            }
        }
    }
}

/// Check the unitality and associativity diagrams (and, in thin bases, the
/// existence of the identity and composition structure itself).
pub fn check_category<B: MonoidalBase>(cat: &EnrichedCategory<B>) -> CheckReport {
    check_category_with(cat, default_mode(cat.base()))
}

pub fn check_category_with<B: MonoidalBase>(
    cat: &EnrichedCategory<B>,
    mode: CheckMode,
) -> CheckReport {
    let b = cat.base();
    let mut ctx = DiagramCtx::new(b, mode, "category");
    structural_category(cat, &mut ctx.report);
    if !ctx.report.structural_ok() {
        return ctx.finish();
    }
    for x in cat.objects() {
        ctx.arrow("identity-element", &[x], cat.identity_elem(x).unwrap());
    }
    for x in cat.objects() {
        for y in cat.objects() {
            for z in cat.objects() {
                ctx.arrow(
                    "composition-map",
                    &[x, y, z],
                    cat.composition_map(x, y, z).unwrap(),
                );
            }
        }
    }
    for x in cat.objects() {
        for y in cat.objects() {
            let h = cat.hom(x, y).unwrap();
            let id_h = b.identity(h);
            let lhs = (|| {
                Ok(vec![
                    b.tensor_mor(cat.eta_r(x)?, &id_h),
                    cat.mu_r(x, x, y)?.clone(),
                ])
            })();
            ctx.diagram("unit-left", &[x, y], lhs, Ok(vec![id_h.clone()]));
            let rhs = (|| {
                Ok(vec![
                    b.tensor_mor(&id_h, cat.eta_r(y)?),
                    cat.mu_r(x, y, y)?.clone(),
                ])
            })();
            ctx.diagram("unit-right", &[x, y], rhs, Ok(vec![id_h]));
        }
    }
    for w in cat.objects() {
        for x in cat.objects() {
            for y in cat.objects() {
                for z in cat.objects() {
                    let top = (|| {
                        Ok(vec![
                            b.tensor_mor(cat.mu_r(w, x, y)?, &b.identity(cat.hom_r(y, z)?)),
                            cat.mu_r(w, y, z)?.clone(),
                        ])
                    })();
                    let bottom = (|| {
                        Ok(vec![
                            b.tensor_mor(&b.identity(cat.hom_r(w, x)?), cat.mu_r(x, y, z)?),
                            cat.mu_r(w, x, z)?.clone(),
                        ])
                    })();
                    ctx.diagram("associativity", &[w, x, y, z], top, bottom);
                }
            }
        }
    }
    ctx.finish()
}

/// An enriched functor: object assignment plus a hom-map per ordered pair
/// of source objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedFunctor<B: MonoidalBase> {
    source: Arc<EnrichedCategory<B>>,
    target: Arc<EnrichedCategory<B>>,
    object_map: BTreeMap<ObjName, ObjName>,
    hom_maps: BTreeMap<(ObjName, ObjName), B::Mor>,
}

impl<B: MonoidalBase> EnrichedFunctor<B> {
    pub fn new(
        source: Arc<EnrichedCategory<B>>,
        target: Arc<EnrichedCategory<B>>,
        object_map: BTreeMap<ObjName, ObjName>,
        hom_maps: BTreeMap<(ObjName, ObjName), B::Mor>,
    ) -> Result<Self, StructureError> {
        if source.base() != target.base() {
            return Err(StructureError::BaseMismatch(
                source.base().describe(),
                target.base().describe(),
            ));
        }
        Ok(EnrichedFunctor {
            source,
            target,
            object_map,
            hom_maps,
        })
    }

    pub fn identity(cat: &Arc<EnrichedCategory<B>>) -> Self {
        let object_map = cat
            .objects()
            .iter()
            .map(|o| (o.clone(), o.clone()))
            .collect();
        let b = cat.base();
        let hom_maps = cat
            .objects()
            .iter()
            .flat_map(|x| cat.objects().iter().map(move |y| (x, y)))
            .filter_map(|(x, y)| {
                cat.hom(x, y)
                    .map(|h| (((*x).clone(), (*y).clone()), b.identity(h)))
            })
            .collect();
        EnrichedFunctor {
            source: Arc::clone(cat),
            target: Arc::clone(cat),
            object_map,
            hom_maps,
        }
    }

    pub fn source(&self) -> &Arc<EnrichedCategory<B>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<EnrichedCategory<B>> {
        &self.target
    }

    pub fn object_map(&self) -> &BTreeMap<ObjName, ObjName> {
        &self.object_map
    }

    pub fn hom_maps(&self) -> &BTreeMap<(ObjName, ObjName), B::Mor> {
        &self.hom_maps
    }

    pub fn apply(&self, a: &str) -> Option<&ObjName> {
        self.object_map.get(a)
    }

    pub fn hom_map(&self, a: &str, a2: &str) -> Option<&B::Mor> {
        self.hom_maps.get(&(a.to_string(), a2.to_string()))
    }

    pub(crate) fn apply_r(&self, a: &str) -> Result<&ObjName, BaseError> {
        self.apply(a)
            .ok_or_else(|| BaseError::Malformed(format!("object map undefined at {a}")))
    }

    pub(crate) fn hom_map_r(&self, a: &str, a2: &str) -> Result<&B::Mor, BaseError> {
        self.hom_map(a, a2)
            .ok_or_else(|| BaseError::Malformed(format!("hom map undefined at ({a},{a2})")))
    }

    /// The fibre `F⁻¹{b}` in source object order (lexicographic).
    pub fn fibre(&self, b: &str) -> Vec<ObjName> {
        self.source
            .objects()
            .iter()
            .filter(|x| self.apply(x).map(|v| v.as_str()) == Some(b))
            .cloned()
            .collect()
    }
}

fn structural_functor<B: MonoidalBase>(f: &EnrichedFunctor<B>, rep: &mut CheckReport) {
    let b = f.source.base();
    for (a, fa) in &f.object_map {
        if !f.source.has_object(a) {
            rep.push_structural(format!("object map key {a} is not a source object"));
        }
        if !f.target.has_object(fa) {
            rep.push_structural(format!("object map value {fa} is not a target object"));
        }
    }
    for a in f.source.objects() {
        if f.apply(a).is_none() {
            rep.push_structural(format!("object map undefined at {a}"));
        }
    }
    if !rep.structural_ok() {
        return;
    }
    for a in f.source.objects() {
        for a2 in f.source.objects() {
            match f.hom_map(a, a2) {
                None => rep.push_structural(format!("missing hom map at ({a},{a2})")),
                Some(m) => {
                    let fa = f.apply(a).unwrap();
                    let fa2 = f.apply(a2).unwrap();
                    if !b.mor_wellformed(m) {
                        rep.push_structural(format!("hom map at ({a},{a2}) is malformed"));
                    }
                    if Some(&b.dom(m)) != f.source.hom(a, a2) {
                        rep.push_structural(format!(
                            "hom map at ({a},{a2}) has domain {}, expected hom({a},{a2})",
                            b.format_obj(&b.dom(m))
                        ));
                    }
                    if Some(&b.cod(m)) != f.target.hom(fa, fa2) {
                        rep.push_structural(format!(
                            "hom map at ({a},{a2}) has codomain {}, expected hom({fa},{fa2})",
                            b.format_obj(&b.cod(m))
                        ));
                    }
                }
            }
        }
    }
}

/// Check preservation of identities and composites.
pub fn check_functor<B: MonoidalBase>(f: &EnrichedFunctor<B>) -> CheckReport {
    check_functor_with(f, default_mode(f.source.base()))
}

pub fn check_functor_with<B: MonoidalBase>(f: &EnrichedFunctor<B>, mode: CheckMode) -> CheckReport {
    let b = f.source.base();
    let mut ctx = DiagramCtx::new(b, mode, "functor");
    structural_functor(f, &mut ctx.report);
    if !ctx.report.structural_ok() {
        return ctx.finish();
    }
    for a in f.source.objects() {
        for a2 in f.source.objects() {
            ctx.arrow("hom-map", &[a, a2], f.hom_map(a, a2).unwrap());
        }
    }
    for a in f.source.objects() {
        let lhs = (|| Ok(vec![f.source.eta_r(a)?.clone(), f.hom_map_r(a, a)?.clone()]))();
        let rhs = (|| Ok(vec![f.target.eta_r(f.apply_r(a)?)?.clone()]))();
        ctx.diagram("preserves-identity", &[a], lhs, rhs);
    }
    for a in f.source.objects() {
        for a2 in f.source.objects() {
            for a3 in f.source.objects() {
                let lhs = (|| {
                    Ok(vec![
                        b.tensor_mor(f.hom_map_r(a, a2)?, f.hom_map_r(a2, a3)?),
                        f.target
                            .mu_r(f.apply_r(a)?, f.apply_r(a2)?, f.apply_r(a3)?)?
                            .clone(),
                    ])
                })();
                let rhs = (|| {
                    Ok(vec![
                        f.source.mu_r(a, a2, a3)?.clone(),
                        f.hom_map_r(a, a3)?.clone(),
                    ])
                })();
                ctx.diagram("preserves-composition", &[a, a2, a3], lhs, rhs);
            }
        }
    }
    ctx.finish()
}

/// Compose two functors (diagrammatic order: `f` then `g`); object maps and
/// hom maps compose pointwise.
pub fn compose_functors<B: MonoidalBase>(
    f: &EnrichedFunctor<B>,
    g: &EnrichedFunctor<B>,
) -> Result<EnrichedFunctor<B>, StructureError> {
    if f.target != g.source {
        return Err(StructureError::BoundaryMismatch(
            "functor composition: target of the first is not the source of the second".into(),
        ));
    }
    let b = f.source.base();
    let mut object_map = BTreeMap::new();
    for a in f.source.objects() {
        let fa = f.apply(a).ok_or_else(|| StructureError::Missing(format!("object map at {a}")))?;
        let gfa = g
            .apply(fa)
            .ok_or_else(|| StructureError::Missing(format!("object map at {fa}")))?;
        object_map.insert(a.clone(), gfa.clone());
    }
    let mut hom_maps = BTreeMap::new();
    for a in f.source.objects() {
        for a2 in f.source.objects() {
            let fa = f.apply(a).unwrap();
            let fa2 = f.apply(a2).unwrap();
            let first = f
                .hom_map(a, a2)
                .ok_or_else(|| StructureError::Missing(format!("hom map at ({a},{a2})")))?;
            let second = g
                .hom_map(fa, fa2)
                .ok_or_else(|| StructureError::Missing(format!("hom map at ({fa},{fa2})")))?;
            hom_maps.insert((a.clone(), a2.clone()), b.compose(first, second)?);
        }
    }
    EnrichedFunctor::new(
        Arc::clone(&f.source),
        Arc::clone(&g.target),
        object_map,
        hom_maps,
    )
}

/// The copairing `[F_{a,x}] : Σ_{x ∈ F⁻¹{b}} A(a,x) → B(Fa, b)` over the
/// canonical fibre coproduct, which is returned alongside the map.
pub fn cograph_map<B: MonoidalBase>(
    f: &EnrichedFunctor<B>,
    a: &str,
    b_obj: &str,
) -> Result<(Coproduct<B>, B::Mor), StructureError> {
    if !f.source.has_object(a) {
        return Err(StructureError::UnknownObject(a.to_string()));
    }
    if !f.target.has_object(b_obj) {
        return Err(StructureError::UnknownObject(b_obj.to_string()));
    }
    let b = f.source.base();
    let fibre = f.fibre(b_obj);
    let entries = fibre
        .iter()
        .map(|x| {
            Ok((
                Label::name(x.clone()),
                f.source.hom_r(a, x)?.clone(),
            ))
        })
        .collect::<Result<Vec<_>, BaseError>>()?;
    let cop = Coproduct::new(b, entries)?;
    let fa = f.apply_r(a)?;
    let cod = f.target.hom_r(fa, b_obj)?.clone();
    let legs = fibre
        .iter()
        .map(|x| f.hom_map_r(a, x).cloned())
        .collect::<Result<Vec<_>, BaseError>>()?;
    let map = cop.copair(b, &cod, &legs)?;
    Ok((cop, map))
}

/// A natural transformation `τ : F ⇒ G` between functors with equal
/// boundaries; one component `I → B(Fa, Ga)` per source object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorTransformation<B: MonoidalBase> {
    from: EnrichedFunctor<B>,
    to: EnrichedFunctor<B>,
    components: BTreeMap<ObjName, B::Mor>,
}

impl<B: MonoidalBase> FunctorTransformation<B> {
    pub fn new(
        from: EnrichedFunctor<B>,
        to: EnrichedFunctor<B>,
        components: BTreeMap<ObjName, B::Mor>,
    ) -> Result<Self, StructureError> {
        if from.source != to.source || from.target != to.target {
            return Err(StructureError::BoundaryMismatch(
                "functor transformation endpoints differ".into(),
            ));
        }
        Ok(FunctorTransformation {
            from,
            to,
            components,
        })
    }

    /// The identity transformation on `f`: components `η_{Fa}`.
    pub fn identity(f: &EnrichedFunctor<B>) -> Result<Self, StructureError> {
        let mut components = BTreeMap::new();
        for a in f.source.objects() {
            let fa = f
                .apply(a)
                .ok_or_else(|| StructureError::Missing(format!("object map at {a}")))?;
            let eta = f
                .target
                .identity_elem(fa)
                .ok_or_else(|| StructureError::Missing(format!("identity element at {fa}")))?;
            components.insert(a.clone(), eta.clone());
        }
        Ok(FunctorTransformation {
            from: f.clone(),
            to: f.clone(),
            components,
        })
    }

    pub fn source_functor(&self) -> &EnrichedFunctor<B> {
        &self.from
    }

    pub fn target_functor(&self) -> &EnrichedFunctor<B> {
        &self.to
    }

    pub fn components(&self) -> &BTreeMap<ObjName, B::Mor> {
        &self.components
    }

    pub fn component(&self, a: &str) -> Option<&B::Mor> {
        self.components.get(a)
    }

    pub(crate) fn component_r(&self, a: &str) -> Result<&B::Mor, BaseError> {
        self.component(a)
            .ok_or_else(|| BaseError::Malformed(format!("missing component at {a}")))
    }
}

/// Check naturality of a functor-to-functor transformation.
pub fn check_functor_transformation<B: MonoidalBase>(
    t: &FunctorTransformation<B>,
) -> CheckReport {
    check_functor_transformation_with(t, default_mode(t.from.source.base()))
}

pub fn check_functor_transformation_with<B: MonoidalBase>(
    t: &FunctorTransformation<B>,
    mode: CheckMode,
) -> CheckReport {
    let cat_a = &t.from.source;
    let cat_b = &t.from.target;
    let b = cat_a.base();
    let mut ctx = DiagramCtx::new(b, mode, "functor-transformation");
    for a in cat_a.objects() {
        match t.component(a) {
            None => ctx.report.push_structural(format!("missing component at {a}")),
            Some(m) => {
                if !b.mor_wellformed(m) {
                    ctx.report.push_structural(format!("component at {a} is malformed"));
                    continue;
                }
                if b.dom(m) != b.unit() {
                    ctx.report.push_structural(format!(
                        "component at {a} has domain {}, expected the unit",
                        b.format_obj(&b.dom(m))
                    ));
                }
                match (t.from.apply(a), t.to.apply(a)) {
                    (Some(fa), Some(ga)) => {
                        if Some(&b.cod(m)) != cat_b.hom(fa, ga) {
                            ctx.report.push_structural(format!(
                                "component at {a} has codomain {}, expected hom({fa},{ga})",
                                b.format_obj(&b.cod(m))
                            ));
                        }
                    }
                    _ => ctx
                        .report
                        .push_structural(format!("object maps undefined at {a}")),
                }
            }
        }
    }
    for a in t.components.keys() {
        if !cat_a.has_object(a) {
            ctx.report
                .push_structural(format!("component key {a} is not a source object"));
        }
    }
    if !ctx.report.structural_ok() {
        return ctx.finish();
    }
    for a in cat_a.objects() {
        ctx.arrow("component", &[a], t.component(a).unwrap());
    }
    for a in cat_a.objects() {
        for a2 in cat_a.objects() {
            let lhs = (|| {
                let ga = t.to.apply_r(a)?;
                let ga2 = t.to.apply_r(a2)?;
                let fa = t.from.apply_r(a)?;
                Ok(vec![
                    b.tensor_mor(t.component_r(a)?, t.to.hom_map_r(a, a2)?),
                    cat_b.mu_r(fa, ga, ga2)?.clone(),
                ])
            })();
            let rhs = (|| {
                let fa = t.from.apply_r(a)?;
                let fa2 = t.from.apply_r(a2)?;
                let ga2 = t.to.apply_r(a2)?;
                Ok(vec![
                    b.tensor_mor(t.from.hom_map_r(a, a2)?, t.component_r(a2)?),
                    cat_b.mu_r(fa, fa2, ga2)?.clone(),
                ])
            })();
            ctx.diagram("naturality", &[a, a2], lhs, rhs);
        }
    }
    ctx.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::finset::{FinFun, FinSetBase};

    /// The one-object category with a singleton hom.
    fn terminal() -> EnrichedCategory<FinSetBase> {
        let b = FinSetBase::new();
        let o = "*".to_string();
        EnrichedCategory::new(
            b.clone(),
            vec![o.clone()],
            [((o.clone(), o.clone()), 1usize)].into(),
            [(o.clone(), FinFun::new(1, 1, vec![0]))].into(),
            [((o.clone(), o.clone(), o.clone()), FinFun::new(1, 1, vec![0]))].into(),
        )
        .unwrap()
    }

    #[test]
    fn terminal_category_passes() {
        let rep = check_category(&terminal());
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn identity_functor_passes() {
        let cat = Arc::new(terminal());
        let f = EnrichedFunctor::identity(&cat);
        assert!(check_functor(&f).passed());
        let t = FunctorTransformation::identity(&f).unwrap();
        assert!(check_functor_transformation(&t).passed());
    }

    #[test]
    fn missing_hom_is_structural() {
        let b = FinSetBase::new();
        let cat = EnrichedCategory::new(
            b,
            vec!["x".into(), "y".into()],
            [(("x".into(), "x".into()), 1usize)].into(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let rep = check_category(&cat);
        assert!(!rep.structural_ok());
        assert!(rep.diagrams.is_empty());
    }

    #[test]
    fn two_element_monoids() {
        // all 16 binary tables on {e,a} with e the declared identity:
        // exactly the two monoids (aa=e and aa=a) pass
        let b = FinSetBase::new();
        let o = "m".to_string();
        let mut passing = Vec::new();
        for t in 0..16usize {
            let table: Vec<usize> = (0..4).map(|i| (t >> i) & 1).collect();
            let cat = EnrichedCategory::new(
                b.clone(),
                vec![o.clone()],
                [((o.clone(), o.clone()), 2usize)].into(),
                [(o.clone(), FinFun::new(1, 2, vec![0]))].into(),
                [((o.clone(), o.clone(), o.clone()), FinFun::new(4, 2, table.clone()))].into(),
            )
            .unwrap();
            if check_category(&cat).passed() {
                passing.push(table);
            }
        }
        // lex pair encoding: entries (ee, ea, ae, aa)
        assert_eq!(passing, vec![vec![0, 1, 1, 0], vec![0, 1, 1, 1]]);
    }
}
