//! Enriched cofunctors and natural transformations between them:
//! lifting maps into fibre-indexed coproducts, the identity/composite law
//! checkers, cofunctor composition, whiskering, and vertical composition.
//!
//! Every composite here is evaluated exactly as the defining diagrams
//! display it: apply the lifting maps, distribute, then flatten onto the
//! canonical (label-sorted) fibre coproduct of the composite. Canonical
//! ordering is what makes strict associativity and unitality hold as plain
//! data equality.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base::{
    self, BaseError, Coproduct, Label, MonoidalBase,
};
use crate::diagram::{default_mode, CheckMode, DiagramCtx};
use crate::encat::{EnrichedCategory, ObjName, StructureError};
use crate::report::CheckReport;

/// The canonical fibre coproduct `Σ_{x ∈ map⁻¹{b}} src(a, x)`; labels are
/// the fibre objects in the source's (sorted) object order.
pub fn fibre_coproduct<B: MonoidalBase>(
    src: &EnrichedCategory<B>,
    object_map: &BTreeMap<ObjName, ObjName>,
    a: &str,
    b_obj: &str,
) -> Result<Coproduct<B>, BaseError> {
    let entries = src
        .objects()
        .iter()
        .filter(|x| object_map.get(*x).map(String::as_str) == Some(b_obj))
        .map(|x| Ok((Label::name(x.clone()), src.hom_r(a, x)?.clone())))
        .collect::<Result<Vec<_>, BaseError>>()?;
    Coproduct::new(src.base(), entries)
}

/// A lifting map together with the canonical fibre coproduct it lands in;
/// the coproduct is kept so injections are recoverable without
/// recomputation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftEntry<B: MonoidalBase> {
    fibre: Coproduct<B>,
    map: B::Mor,
}

impl<B: MonoidalBase> LiftEntry<B> {
    pub fn fibre(&self) -> &Coproduct<B> {
        &self.fibre
    }

    pub fn map(&self) -> &B::Mor {
        &self.map
    }
}

/// An enriched cofunctor `Φ : A ⇸ B`: a forward object map and, per
/// `(a, b)`, a lifting map `B(Φa, b) → Σ_{x ∈ Φ⁻¹{b}} A(a, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedCofunctor<B: MonoidalBase> {
    source: Arc<EnrichedCategory<B>>,
    target: Arc<EnrichedCategory<B>>,
    object_map: BTreeMap<ObjName, ObjName>,
    lifts: BTreeMap<(ObjName, ObjName), LiftEntry<B>>,
}

impl<B: MonoidalBase> EnrichedCofunctor<B> {
    /// Assembles a cofunctor from raw lifting maps. The object map must be
    /// total (fibres are needed to build the canonical codomain
    /// coproducts); law checking is separate.
    pub fn new(
        source: Arc<EnrichedCategory<B>>,
        target: Arc<EnrichedCategory<B>>,
        object_map: BTreeMap<ObjName, ObjName>,
        lift_maps: BTreeMap<(ObjName, ObjName), B::Mor>,
    ) -> Result<Self, StructureError> {
        if source.base() != target.base() {
            return Err(StructureError::BaseMismatch(
                source.base().describe(),
                target.base().describe(),
            ));
        }
        for a in source.objects() {
            match object_map.get(a) {
                None => return Err(StructureError::Missing(format!("object map at {a}"))),
                Some(v) if !target.has_object(v) => {
                    return Err(StructureError::UnknownObject(v.clone()))
                }
                _ => {}
            }
        }
        for a in object_map.keys() {
            if !source.has_object(a) {
                return Err(StructureError::UnknownObject(a.clone()));
            }
        }
        let mut lifts = BTreeMap::new();
        for ((a, b_obj), map) in lift_maps {
            if !source.has_object(&a) {
                return Err(StructureError::UnknownObject(a));
            }
            if !target.has_object(&b_obj) {
                return Err(StructureError::UnknownObject(b_obj));
            }
            let fibre = fibre_coproduct(&source, &object_map, &a, &b_obj)?;
            lifts.insert((a, b_obj), LiftEntry { fibre, map });
        }
        Ok(EnrichedCofunctor {
            source,
            target,
            object_map,
            lifts,
        })
    }

    /// The identity cofunctor: singleton fibres, identity lifting maps.
    pub fn identity(cat: &Arc<EnrichedCategory<B>>) -> Result<Self, StructureError> {
        let b = cat.base();
        let object_map: BTreeMap<_, _> = cat
            .objects()
            .iter()
            .map(|o| (o.clone(), o.clone()))
            .collect();
        let mut lift_maps = BTreeMap::new();
        for a in cat.objects() {
            for b_obj in cat.objects() {
                let h = cat
                    .hom(a, b_obj)
                    .ok_or_else(|| StructureError::Missing(format!("hom({a},{b_obj})")))?;
                lift_maps.insert((a.clone(), b_obj.clone()), b.identity(h));
            }
        }
        EnrichedCofunctor::new(Arc::clone(cat), Arc::clone(cat), object_map, lift_maps)
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

    pub fn apply(&self, a: &str) -> Option<&ObjName> {
        self.object_map.get(a)
    }

    pub(crate) fn apply_r(&self, a: &str) -> Result<&ObjName, BaseError> {
        self.apply(a)
            .ok_or_else(|| BaseError::Malformed(format!("object map undefined at {a}")))
    }

    pub fn lift(&self, a: &str, b_obj: &str) -> Option<&LiftEntry<B>> {
        self.lifts.get(&(a.to_string(), b_obj.to_string()))
    }

    pub(crate) fn lift_r(&self, a: &str, b_obj: &str) -> Result<&LiftEntry<B>, BaseError> {
        self.lift(a, b_obj)
            .ok_or_else(|| BaseError::Malformed(format!("missing lifting map at ({a},{b_obj})")))
    }

    /// Just the lifting morphisms, keyed by `(a, b)`.
    pub fn lift_maps(&self) -> BTreeMap<(ObjName, ObjName), B::Mor> {
        self.lifts
            .iter()
            .map(|(k, e)| (k.clone(), e.map.clone()))
            .collect()
    }

    /// The fibre `Φ⁻¹{b}` in source object order.
    pub fn fibre(&self, b_obj: &str) -> Vec<ObjName> {
        self.source
            .objects()
            .iter()
            .filter(|x| self.apply(x).map(String::as_str) == Some(b_obj))
            .cloned()
            .collect()
    }
}

fn structural_cofunctor<B: MonoidalBase>(c: &EnrichedCofunctor<B>, rep: &mut CheckReport) {
    let b = c.source.base();
    for a in c.source.objects() {
        for b_obj in c.target.objects() {
            match c.lift(a, b_obj) {
                None => rep.push_structural(format!("missing lifting map at ({a},{b_obj})")),
                Some(entry) => {
                    let phi_a = c.apply(a).unwrap();
                    if !b.mor_wellformed(&entry.map) {
                        rep.push_structural(format!("lifting map at ({a},{b_obj}) is malformed"));
                    }
                    if Some(&b.dom(&entry.map)) != c.target.hom(phi_a, b_obj) {
                        rep.push_structural(format!(
                            "lifting map at ({a},{b_obj}) has domain {}, expected hom({phi_a},{b_obj})",
                            b.format_obj(&b.dom(&entry.map))
                        ));
                    }
                    if &b.cod(&entry.map) != entry.fibre.total() {
                        rep.push_structural(format!(
                            "lifting map at ({a},{b_obj}) has codomain {}, expected the fibre coproduct total {}",
                            b.format_obj(&b.cod(&entry.map)),
                            b.format_obj(entry.fibre.total())
                        ));
                    }
                }
            }
        }
    }
}

/// The identity-preservation square at `a`: `η_{Φa} ; Φ_{a,Φa}` against
/// `η_a ; ι_a`.
fn cofunctor_identity_paths<B: MonoidalBase>(
    c: &EnrichedCofunctor<B>,
    a: &str,
) -> (
    Result<Vec<B::Mor>, BaseError>,
    Result<Vec<B::Mor>, BaseError>,
) {
    let lhs = (|| {
        let phi_a = c.apply_r(a)?;
        Ok(vec![
            c.target.eta_r(phi_a)?.clone(),
            c.lift_r(a, phi_a)?.map.clone(),
        ])
    })();
    let rhs = (|| {
        let phi_a = c.apply_r(a)?;
        let entry = c.lift_r(a, phi_a)?;
        let inj = entry
            .fibre
            .injection_at(&Label::name(a))
            .ok_or_else(|| BaseError::Malformed(format!("{a} is not in its own fibre")))?;
        Ok(vec![c.source.eta_r(a)?.clone(), inj.clone()])
    })();
    (lhs, rhs)
}

/// The composite-preservation pentagon at `(a, b, b')`, left column,
/// evaluated exactly as displayed: `Φ_{a,b} ⊗ id`, distribute right,
/// `Σ (id ⊗ Φ_{x,b'})`, distribute left + flatten, `Σ [μ]`.
fn cofunctor_pentagon_path<B: MonoidalBase>(
    c: &EnrichedCofunctor<B>,
    a: &str,
    b_obj: &str,
    b2_obj: &str,
) -> Result<Vec<B::Mor>, BaseError> {
    let bb = c.source.base();
    let entry_b = c.lift_r(a, b_obj)?;
    let x_cop = &entry_b.fibre;
    let hom_bb2 = c.target.hom_r(b_obj, b2_obj)?;
    let t1 = bb.tensor_mor(&entry_b.map, &bb.identity(hom_bb2));
    let dist = base::distribute_right(bb, x_cop, hom_bb2);
    let x_tens = base::tensor_cop_right(bb, x_cop, hom_bb2);
    let mut firsts = Vec::with_capacity(x_cop.len());
    let mut inners = Vec::with_capacity(x_cop.len());
    let mut legs = Vec::with_capacity(x_cop.len());
    let mut mid_entries = Vec::with_capacity(x_cop.len());
    for label in x_cop.labels() {
        let x = label
            .as_name()
            .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
        let inner = c.lift_r(x, b2_obj)?;
        let hom_ax = c.source.hom_r(a, x)?;
        legs.push(bb.tensor_mor(&bb.identity(hom_ax), &inner.map));
        firsts.push(hom_ax.clone());
        inners.push(inner.fibre.clone());
        mid_entries.push((
            label.clone(),
            bb.tensor_obj(hom_ax, inner.fibre.total()),
        ));
    }
    let mid = Coproduct::new(bb, mid_entries)?;
    let s = base::sum_mor(bb, &x_tens, &mid, &legs)?;
    let (flat, rg) = base::regroup(bb, &mid, &firsts, &inners)?;
    let y_cop = &c.lift_r(a, b2_obj)?.fibre;
    let final_legs = flat
        .labels()
        .iter()
        .map(|lab| {
            let (y_l, x_l) = lab
                .as_pair()
                .ok_or_else(|| BaseError::Malformed("regrouped label is not a pair".into()))?;
            let y = y_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("inner label is not a name".into()))?;
            let x = x_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("outer label is not a name".into()))?;
            let mu = c.source.mu_r(a, x, y)?;
            let inj = y_cop
                .injection_at(y_l)
                .ok_or_else(|| BaseError::Malformed(format!("{y} missing from target fibre")))?;
            bb.compose(mu, inj)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fin = flat.copair(bb, y_cop.total(), &final_legs)?;
    Ok(vec![t1, dist, s, rg, fin])
}

/// Check preservation of identities and composites (and, in thin bases,
/// existence of each lifting map — for the tropical base this is exactly
/// `d(Φa, b) ≥ min_{x ∈ Φ⁻¹{b}} d(a, x)` per pair).
pub fn check_cofunctor<B: MonoidalBase>(c: &EnrichedCofunctor<B>) -> CheckReport {
    check_cofunctor_with(c, default_mode(c.source.base()))
}

pub fn check_cofunctor_with<B: MonoidalBase>(
    c: &EnrichedCofunctor<B>,
    mode: CheckMode,
) -> CheckReport {
    let b = c.source.base();
    let mut ctx = DiagramCtx::new(b, mode, "cofunctor");
    structural_cofunctor(c, &mut ctx.report);
    if !ctx.report.structural_ok() {
        return ctx.finish();
    }
    for a in c.source.objects() {
        for b_obj in c.target.objects() {
            ctx.arrow("lift-map", &[a, b_obj], &c.lift(a, b_obj).unwrap().map);
        }
    }
    for a in c.source.objects() {
        let (lhs, rhs) = cofunctor_identity_paths(c, a);
        ctx.diagram("preserves-identity", &[a], lhs, rhs);
    }
    for a in c.source.objects() {
        for b_obj in c.target.objects() {
            for b2_obj in c.target.objects() {
                let top = (|| {
                    let phi_a = c.apply_r(a)?;
                    Ok(vec![
                        c.target.mu_r(phi_a, b_obj, b2_obj)?.clone(),
                        c.lift_r(a, b2_obj)?.map.clone(),
                    ])
                })();
                let pentagon = cofunctor_pentagon_path(c, a, b_obj, b2_obj);
                ctx.diagram("preserves-composition", &[a, b_obj, b2_obj], top, pentagon);
            }
        }
    }
    ctx.finish()
}

/// Compose cofunctors diagrammatically: `Ψ_{Φa,c}`, then the sum of
/// `Φ_{a,x}`, then the flatten iso onto the canonical composite fibre.
pub fn compose_cofunctors<B: MonoidalBase>(
    p: &EnrichedCofunctor<B>,
    q: &EnrichedCofunctor<B>,
) -> Result<EnrichedCofunctor<B>, StructureError> {
    if p.target != q.source {
        return Err(StructureError::BoundaryMismatch(
            "cofunctor composition: target of the first is not the source of the second".into(),
        ));
    }
    let b = p.source.base();
    let mut object_map = BTreeMap::new();
    for a in p.source.objects() {
        let pa = p.apply_r(a)?;
        object_map.insert(a.clone(), q.apply_r(pa)?.clone());
    }
    let mut lift_maps = BTreeMap::new();
    for a in p.source.objects() {
        let pa = p.apply_r(a)?.clone();
        for c_obj in q.target.objects() {
            let outer = q.lift_r(&pa, c_obj)?;
            let x_cop = &outer.fibre;
            let mut legs = Vec::with_capacity(x_cop.len());
            let mut inners = Vec::with_capacity(x_cop.len());
            let mut mid_entries = Vec::with_capacity(x_cop.len());
            for label in x_cop.labels() {
                let x = label
                    .as_name()
                    .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
                let inner = p.lift_r(a, x)?;
                legs.push(inner.map.clone());
                mid_entries.push((label.clone(), inner.fibre.total().clone()));
                inners.push(inner.fibre.clone());
            }
            let mid = Coproduct::new(b, mid_entries)?;
            let s = base::sum_mor(b, x_cop, &mid, &legs)?;
            let (_, iso) = base::flatten(b, &mid, &inners)?;
            let total = b.compose(&b.compose(&outer.map, &s)?, &iso)?;
            lift_maps.insert((a.clone(), c_obj.clone()), total);
        }
    }
    EnrichedCofunctor::new(
        Arc::clone(&p.source),
        Arc::clone(&q.target),
        object_map,
        lift_maps,
    )
}

/// A natural transformation `τ : Φ ⇒ Ψ` between cofunctors with equal
/// boundaries; components `τ_a : I → Σ_{x ∈ Ψ⁻¹{Φa}} A(a, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofunctorTransformation<B: MonoidalBase> {
    from: EnrichedCofunctor<B>,
    to: EnrichedCofunctor<B>,
    components: BTreeMap<ObjName, B::Mor>,
}

impl<B: MonoidalBase> CofunctorTransformation<B> {
    pub fn new(
        from: EnrichedCofunctor<B>,
        to: EnrichedCofunctor<B>,
        components: BTreeMap<ObjName, B::Mor>,
    ) -> Result<Self, StructureError> {
        if from.source != to.source || from.target != to.target {
            return Err(StructureError::BoundaryMismatch(
                "cofunctor transformation endpoints differ".into(),
            ));
        }
        Ok(CofunctorTransformation {
            from,
            to,
            components,
        })
    }

    /// The identity transformation on `Φ`: components `η_a ; ι_a`.
    pub fn identity(phi: &EnrichedCofunctor<B>) -> Result<Self, StructureError> {
        let b = phi.source.base();
        let mut components = BTreeMap::new();
        for a in phi.source.objects() {
            let cop = CofunctorTransformation::component_cop_of(phi, phi, a)?;
            let inj = cop
                .injection_at(&Label::name(a))
                .ok_or_else(|| StructureError::Missing(format!("{a} in its own fibre")))?;
            let eta = phi
                .source
                .identity_elem(a)
                .ok_or_else(|| StructureError::Missing(format!("identity element at {a}")))?;
            components.insert(a.clone(), b.compose(eta, inj)?);
        }
        Ok(CofunctorTransformation {
            from: phi.clone(),
            to: phi.clone(),
            components,
        })
    }

    pub fn source_cofunctor(&self) -> &EnrichedCofunctor<B> {
        &self.from
    }

    pub fn target_cofunctor(&self) -> &EnrichedCofunctor<B> {
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

    fn component_cop_of(
        from: &EnrichedCofunctor<B>,
        to: &EnrichedCofunctor<B>,
        a: &str,
    ) -> Result<Coproduct<B>, BaseError> {
        let phi_a = from.apply_r(a)?;
        fibre_coproduct(&from.source, &to.object_map, a, phi_a)
    }

    /// The coproduct `Σ_{x ∈ Ψ⁻¹{Φa}} A(a, x)` the component at `a` lands
    /// in.
    pub fn component_cop(&self, a: &str) -> Result<Coproduct<B>, BaseError> {
        CofunctorTransformation::component_cop_of(&self.from, &self.to, a)
    }
}

fn structural_cofunctor_transformation<B: MonoidalBase>(
    t: &CofunctorTransformation<B>,
    rep: &mut CheckReport,
) {
    let b = t.from.source.base();
    for a in t.components.keys() {
        if !t.from.source.has_object(a) {
            rep.push_structural(format!("component key {a} is not a source object"));
        }
    }
    for a in t.from.source.objects() {
        match t.component(a) {
            None => rep.push_structural(format!("missing component at {a}")),
            Some(m) => {
                if !b.mor_wellformed(m) {
                    rep.push_structural(format!("component at {a} is malformed"));
                    continue;
                }
                if b.dom(m) != b.unit() {
                    rep.push_structural(format!(
                        "component at {a} has domain {}, expected the unit",
                        b.format_obj(&b.dom(m))
                    ));
                }
                match t.component_cop(a) {
                    Ok(cop) => {
                        if &b.cod(m) != cop.total() {
                            rep.push_structural(format!(
                                "component at {a} has codomain {}, expected the fibre coproduct total {}",
                                b.format_obj(&b.cod(m)),
                                b.format_obj(cop.total())
                            ));
                        }
                    }
                    Err(e) => rep.push_structural(format!("component coproduct at {a}: {e}")),
                }
            }
        }
    }
}

/// Naturality at `(a, b)`, left column: `τ_a ⊗ id`, distribute,
/// `Σ (id ⊗ Ψ_{x,b})`, regroup, `Σ [μ]`.
fn cotransformation_left_path<B: MonoidalBase>(
    t: &CofunctorTransformation<B>,
    a: &str,
    b_obj: &str,
) -> Result<Vec<B::Mor>, BaseError> {
    let bb = t.from.source.base();
    let phi_a = t.from.apply_r(a)?.clone();
    let x_cop = t.component_cop(a)?;
    let hom = t.from.target.hom_r(&phi_a, b_obj)?;
    let l1 = bb.tensor_mor(t.component_r(a)?, &bb.identity(hom));
    let dist = base::distribute_right(bb, &x_cop, hom);
    let x_tens = base::tensor_cop_right(bb, &x_cop, hom);
    let mut firsts = Vec::with_capacity(x_cop.len());
    let mut inners = Vec::with_capacity(x_cop.len());
    let mut legs = Vec::with_capacity(x_cop.len());
    let mut mid_entries = Vec::with_capacity(x_cop.len());
    for label in x_cop.labels() {
        let x = label
            .as_name()
            .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
        let inner = t.to.lift_r(x, b_obj)?;
        let hom_ax = t.from.source.hom_r(a, x)?;
        legs.push(bb.tensor_mor(&bb.identity(hom_ax), &inner.map));
        firsts.push(hom_ax.clone());
        inners.push(inner.fibre.clone());
        mid_entries.push((label.clone(), bb.tensor_obj(hom_ax, inner.fibre.total())));
    }
    let mid = Coproduct::new(bb, mid_entries)?;
    let s = base::sum_mor(bb, &x_tens, &mid, &legs)?;
    let (flat, rg) = base::regroup(bb, &mid, &firsts, &inners)?;
    let z_cop = fibre_coproduct(&t.from.source, &t.to.object_map, a, b_obj)?;
    let fin = mu_copair(bb, &t.from.source, a, &flat, &z_cop)?;
    Ok(vec![l1, dist, s, rg, fin])
}

/// Naturality at `(a, b)`, right column: `Φ_{a,b}`, `Σ (id ⊗ τ_y)`,
/// regroup, `Σ [μ]`.
fn cotransformation_right_path<B: MonoidalBase>(
    t: &CofunctorTransformation<B>,
    a: &str,
    b_obj: &str,
) -> Result<Vec<B::Mor>, BaseError> {
    let bb = t.from.source.base();
    let entry = t.from.lift_r(a, b_obj)?;
    let y_cop = &entry.fibre;
    let mut firsts = Vec::with_capacity(y_cop.len());
    let mut inners = Vec::with_capacity(y_cop.len());
    let mut legs = Vec::with_capacity(y_cop.len());
    let mut mid_entries = Vec::with_capacity(y_cop.len());
    for label in y_cop.labels() {
        let y = label
            .as_name()
            .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
        let tau_y = t.component_r(y)?;
        let inner = t.component_cop(y)?;
        let hom_ay = t.from.source.hom_r(a, y)?;
        legs.push(bb.tensor_mor(&bb.identity(hom_ay), tau_y));
        firsts.push(hom_ay.clone());
        mid_entries.push((label.clone(), bb.tensor_obj(hom_ay, inner.total())));
        inners.push(inner);
    }
    let mid = Coproduct::new(bb, mid_entries)?;
    let s = base::sum_mor(bb, y_cop, &mid, &legs)?;
    let (flat, rg) = base::regroup(bb, &mid, &firsts, &inners)?;
    let z_cop = fibre_coproduct(&t.from.source, &t.to.object_map, a, b_obj)?;
    let fin = mu_copair(bb, &t.from.source, a, &flat, &z_cop)?;
    Ok(vec![entry.map.clone(), s, rg, fin])
}

/// `Σ [μ_{a,x,z}]` out of a regrouped coproduct with pair labels `(z, x)`:
/// the copairing of `μ(a, x, z) ; ι_z`.
pub(crate) fn mu_copair<B: MonoidalBase>(
    bb: &B,
    cat: &EnrichedCategory<B>,
    a: &str,
    flat: &Coproduct<B>,
    target: &Coproduct<B>,
) -> Result<B::Mor, BaseError> {
    let legs = flat
        .labels()
        .iter()
        .map(|lab| {
            let (z_l, x_l) = lab
                .as_pair()
                .ok_or_else(|| BaseError::Malformed("regrouped label is not a pair".into()))?;
            let z = z_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("inner label is not a name".into()))?;
            let x = x_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("outer label is not a name".into()))?;
            let mu = cat.mu_r(a, x, z)?;
            let inj = target
                .injection_at(z_l)
                .ok_or_else(|| BaseError::Malformed(format!("{z} missing from target fibre")))?;
            bb.compose(mu, inj)
        })
        .collect::<Result<Vec<_>, _>>()?;
    flat.copair(bb, target.total(), &legs)
}

/// Check naturality of a cofunctor-to-cofunctor transformation.
pub fn check_cofunctor_transformation<B: MonoidalBase>(
    t: &CofunctorTransformation<B>,
) -> CheckReport {
    check_cofunctor_transformation_with(t, default_mode(t.from.source.base()))
}

pub fn check_cofunctor_transformation_with<B: MonoidalBase>(
    t: &CofunctorTransformation<B>,
    mode: CheckMode,
) -> CheckReport {
    let b = t.from.source.base();
    let mut ctx = DiagramCtx::new(b, mode, "cofunctor-transformation");
    structural_cofunctor_transformation(t, &mut ctx.report);
    if !ctx.report.structural_ok() {
        return ctx.finish();
    }
    for a in t.from.source.objects() {
        ctx.arrow("component", &[a], t.component(a).unwrap());
    }
    for a in t.from.source.objects() {
        for b_obj in t.from.target.objects() {
            let lhs = cotransformation_left_path(t, a, b_obj);
            let rhs = cotransformation_right_path(t, a, b_obj);
            ctx.diagram("naturality", &[a, b_obj], lhs, rhs);
        }
    }
    ctx.finish()
}

/// Left whiskering `τΥ` of `τ : Φ ⇒ Ψ : A ⇸ B` with `Υ : D ⇸ A`:
/// component at `d` is `τ_{Υd} ; Σ Υ_{d,x} ; flatten`.
pub fn whisker_left<B: MonoidalBase>(
    u: &EnrichedCofunctor<B>,
    t: &CofunctorTransformation<B>,
) -> Result<CofunctorTransformation<B>, StructureError> {
    if u.target != t.from.source {
        return Err(StructureError::BoundaryMismatch(
            "left whiskering: cofunctor target is not the transformation's source category".into(),
        ));
    }
    let b = u.source.base();
    let from = compose_cofunctors(u, &t.from)?;
    let to = compose_cofunctors(u, &t.to)?;
    let mut components = BTreeMap::new();
    for d in u.source.objects() {
        let ud = u.apply_r(d)?;
        let tau = t.component_r(ud)?;
        let x_cop = t.component_cop(ud)?;
        let mut legs = Vec::with_capacity(x_cop.len());
        let mut inners = Vec::with_capacity(x_cop.len());
        let mut mid_entries = Vec::with_capacity(x_cop.len());
        for label in x_cop.labels() {
            let x = label
                .as_name()
                .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
            let inner = u.lift_r(d, x)?;
            legs.push(inner.map.clone());
            mid_entries.push((label.clone(), inner.fibre.total().clone()));
            inners.push(inner.fibre.clone());
        }
        let mid = Coproduct::new(b, mid_entries)?;
        let s = base::sum_mor(b, &x_cop, &mid, &legs)?;
        let (_, iso) = base::flatten(b, &mid, &inners)?;
        components.insert(d.clone(), b.compose(&b.compose(tau, &s)?, &iso)?);
    }
    CofunctorTransformation::new(from, to, components)
}

/// Right whiskering `Ωτ` of `τ : Φ ⇒ Ψ : A ⇸ B` with `Ω : B ⇸ C`:
/// component at `a` is `τ_a ; [ι_x]`, reindexing into the coarser fibre.
pub fn whisker_right<B: MonoidalBase>(
    t: &CofunctorTransformation<B>,
    o: &EnrichedCofunctor<B>,
) -> Result<CofunctorTransformation<B>, StructureError> {
    if t.from.target != o.source {
        return Err(StructureError::BoundaryMismatch(
            "right whiskering: transformation target category is not the cofunctor source".into(),
        ));
    }
    let b = t.from.source.base();
    let from = compose_cofunctors(&t.from, o)?;
    let to = compose_cofunctors(&t.to, o)?;
    let mut components = BTreeMap::new();
    for a in t.from.source.objects() {
        let x_cop = t.component_cop(a)?;
        let y_cop = CofunctorTransformation::component_cop_of(&from, &to, a)?;
        let legs = x_cop
            .labels()
            .iter()
            .map(|l| {
                y_cop
                    .injection_at(l)
                    .cloned()
                    .ok_or_else(|| BaseError::Malformed(format!("{l} missing from coarser fibre")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let reindex = x_cop.copair(b, y_cop.total(), &legs)?;
        components.insert(a.clone(), b.compose(t.component_r(a)?, &reindex)?);
    }
    CofunctorTransformation::new(from, to, components)
}

/// Vertical composite of `τ : Φ ⇒ Ψ` and `σ : Ψ ⇒ Υ`: component at `a` is
/// `τ_a ; Σ (id ⊗ σ_x) ; regroup ; Σ [μ]`.
pub fn vcompose_transformations<B: MonoidalBase>(
    t: &CofunctorTransformation<B>,
    s: &CofunctorTransformation<B>,
) -> Result<CofunctorTransformation<B>, StructureError> {
    if t.to != s.from {
        return Err(StructureError::BoundaryMismatch(
            "vertical composition: middle cofunctors differ".into(),
        ));
    }
    let b = t.from.source.base();
    let mut components = BTreeMap::new();
    for a in t.from.source.objects() {
        let x_cop = t.component_cop(a)?;
        let mut firsts = Vec::with_capacity(x_cop.len());
        let mut inners = Vec::with_capacity(x_cop.len());
        let mut legs = Vec::with_capacity(x_cop.len());
        let mut mid_entries = Vec::with_capacity(x_cop.len());
        for label in x_cop.labels() {
            let x = label
                .as_name()
                .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
            let sigma_x = s.component_r(x)?;
            let inner = s.component_cop(x)?;
            let hom_ax = t.from.source.hom_r(a, x)?;
            legs.push(b.tensor_mor(&b.identity(hom_ax), sigma_x));
            firsts.push(hom_ax.clone());
            mid_entries.push((label.clone(), b.tensor_obj(hom_ax, inner.total())));
            inners.push(inner);
        }
        let mid = Coproduct::new(b, mid_entries)?;
        let sm = base::sum_mor(b, &x_cop, &mid, &legs)?;
        let (flat, rg) = base::regroup(b, &mid, &firsts, &inners)?;
        let target_cop = CofunctorTransformation::component_cop_of(&t.from, &s.to, a)?;
        let fin = mu_copair(b, &t.from.source, a, &flat, &target_cop)?;
        let chain = b.compose(&b.compose(&b.compose(t.component_r(a)?, &sm)?, &rg)?, &fin)?;
        components.insert(a.clone(), chain);
    }
    CofunctorTransformation::new(t.from.clone(), s.to.clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encat::check_category;
    use crate::oracle;

    fn arrow_cat() -> Arc<EnrichedCategory<crate::bases::finset::FinSetBase>> {
        Arc::new(oracle::to_enriched_category(
            &oracle::OrdinaryCategory::walking_arrow(),
        ))
    }

    #[test]
    fn identity_cofunctor_passes() {
        let cat = arrow_cat();
        assert!(check_category(&cat).passed());
        let c = EnrichedCofunctor::identity(&cat).unwrap();
        let rep = check_cofunctor(&c);
        assert!(rep.passed(), "{:?}", rep.first_failure());
    }

    #[test]
    fn identity_composition_is_strict_as_data() {
        let cat = arrow_cat();
        let id = EnrichedCofunctor::identity(&cat).unwrap();
        let left = compose_cofunctors(&id, &id).unwrap();
        assert_eq!(left, id);
    }

    #[test]
    fn identity_transformation_passes() {
        let cat = arrow_cat();
        let c = EnrichedCofunctor::identity(&cat).unwrap();
        let t = CofunctorTransformation::identity(&c).unwrap();
        let rep = check_cofunctor_transformation(&t);
        assert!(rep.passed(), "{:?}", rep.first_failure());
    }
}
