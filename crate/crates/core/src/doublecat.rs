//! The double category of enriched categories, functors, and cofunctors:
//! mixed square transformations (cells) with horizontal and vertical
//! composition, its flat double subcategory of compatible squares, and
//! enriched lenses as compatible squares of a special shape.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::base::{self, BaseError, Coproduct, Label, MonoidalBase};
use crate::bases::fam::FamBase;
use crate::bases::tropical::{ThinMonoidalPoset, TropVal, TropicalBase};
use crate::cofun::{
    compose_cofunctors, fibre_coproduct, EnrichedCofunctor,
};
use crate::diagram::{default_mode, CheckMode, DiagramCtx};
use crate::encat::{
    cograph_map, compose_functors, EnrichedCategory, EnrichedFunctor, ObjName, StructureError,
};
use crate::report::CheckReport;

/// A transformation filling a functor/cofunctor square
///
/// ```text
///        top
///    A -------> C
///  left ⇸     ⇸ right
///    B -------> D
///       bottom
/// ```
///
/// with components `τ_a : I → Σ_{x ∈ right⁻¹{bottom(left(a))}} C(top(a), x)`.
/// The corners need not agree on objects; only the fibres over
/// `bottom(left(a))` are ever used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell<B: MonoidalBase> {
    top: EnrichedFunctor<B>,
    bottom: EnrichedFunctor<B>,
    left: EnrichedCofunctor<B>,
    right: EnrichedCofunctor<B>,
    components: BTreeMap<ObjName, B::Mor>,
}

fn check_square_boundaries<B: MonoidalBase>(
    top: &EnrichedFunctor<B>,
    bottom: &EnrichedFunctor<B>,
    left: &EnrichedCofunctor<B>,
    right: &EnrichedCofunctor<B>,
) -> Result<(), StructureError> {
    if top.source() != left.source() {
        return Err(StructureError::BoundaryMismatch(
            "top functor source differs from left cofunctor source".into(),
        ));
    }
    if top.target() != right.source() {
        return Err(StructureError::BoundaryMismatch(
            "top functor target differs from right cofunctor source".into(),
        ));
    }
    if bottom.source() != left.target() {
        return Err(StructureError::BoundaryMismatch(
            "bottom functor source differs from left cofunctor target".into(),
        ));
    }
    if bottom.target() != right.target() {
        return Err(StructureError::BoundaryMismatch(
            "bottom functor target differs from right cofunctor target".into(),
        ));
    }
    Ok(())
}

impl<B: MonoidalBase> Cell<B> {
    pub fn new(
        top: EnrichedFunctor<B>,
        bottom: EnrichedFunctor<B>,
        left: EnrichedCofunctor<B>,
        right: EnrichedCofunctor<B>,
        components: BTreeMap<ObjName, B::Mor>,
    ) -> Result<Self, StructureError> {
        check_square_boundaries(&top, &bottom, &left, &right)?;
        Ok(Cell {
            top,
            bottom,
            left,
            right,
            components,
        })
    }

    pub fn top(&self) -> &EnrichedFunctor<B> {
        &self.top
    }

    pub fn bottom(&self) -> &EnrichedFunctor<B> {
        &self.bottom
    }

    pub fn left(&self) -> &EnrichedCofunctor<B> {
        &self.left
    }

    pub fn right(&self) -> &EnrichedCofunctor<B> {
        &self.right
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

    /// `Σ_{x ∈ Ψ⁻¹{GΦa}} C(Fa, x)`, the codomain of the component at `a`.
    pub fn component_cop(&self, a: &str) -> Result<Coproduct<B>, BaseError> {
        let fa = self.top.apply_r(a)?;
        let phi_a = self.left.apply_r(a)?;
        let g_phi_a = self.bottom.apply_r(phi_a)?;
        fibre_coproduct(self.top.target(), self.right.object_map(), fa, g_phi_a)
    }

    /// The horizontal identity cell on a cofunctor: identity functors top
    /// and bottom, components `η_a ; ι_a`.
    pub fn identity_on_cofunctor(phi: &EnrichedCofunctor<B>) -> Result<Self, StructureError> {
        let top = EnrichedFunctor::identity(phi.source());
        let bottom = EnrichedFunctor::identity(phi.target());
        let cell = Cell {
            top,
            bottom,
            left: phi.clone(),
            right: phi.clone(),
            components: BTreeMap::new(),
        };
        cell.with_unit_components()
    }

    /// The vertical identity cell on a functor: identity cofunctors left
    /// and right, components `η_{Fa} ; ι_{Fa}`.
    pub fn identity_on_functor(f: &EnrichedFunctor<B>) -> Result<Self, StructureError> {
        let left = EnrichedCofunctor::identity(f.source())?;
        let right = EnrichedCofunctor::identity(f.target())?;
        let cell = Cell {
            top: f.clone(),
            bottom: f.clone(),
            left,
            right,
            components: BTreeMap::new(),
        };
        cell.with_unit_components()
    }

    /// Fill in components `η_{Fa} ; ι_{Fa}`; requires `Fa` to lie in the
    /// component fibre, which holds whenever the square corners commute.
    fn with_unit_components(mut self) -> Result<Self, StructureError> {
        let b = self.top.source().base().clone();
        let mut components = BTreeMap::new();
        for a in self.top.source().objects() {
            let fa = self
                .top
                .apply(a)
                .ok_or_else(|| StructureError::Missing(format!("object map at {a}")))?
                .clone();
            let cop = self.component_cop(a).map_err(StructureError::Base)?;
            let inj = cop
                .injection_at(&Label::name(fa.clone()))
                .ok_or_else(|| {
                    StructureError::BoundaryMismatch(format!(
                        "{fa} is not in the component fibre at {a}"
                    ))
                })?;
            let eta = self
                .top
                .target()
                .identity_elem(&fa)
                .ok_or_else(|| StructureError::Missing(format!("identity element at {fa}")))?;
            components.insert(a.clone(), b.compose(eta, inj)?);
        }
        self.components = components;
        Ok(self)
    }

    /// A functor transformation `τ : F ⇒ G` as a cell with identity
    /// cofunctors on the sides; the component payloads carry over
    /// unchanged because singleton fibre coproducts are strict.
    pub fn from_functor_transformation(
        t: &crate::encat::FunctorTransformation<B>,
    ) -> Result<Self, StructureError> {
        let f = t.source_functor();
        let left = EnrichedCofunctor::identity(f.source())?;
        let right = EnrichedCofunctor::identity(f.target())?;
        Cell::new(
            f.clone(),
            t.target_functor().clone(),
            left,
            right,
            t.components().clone(),
        )
    }

    /// A cofunctor transformation `τ : Φ ⇒ Ψ` as a cell with identity
    /// functors top and bottom.
    pub fn from_cofunctor_transformation(
        t: &crate::cofun::CofunctorTransformation<B>,
    ) -> Result<Self, StructureError> {
        let phi = t.source_cofunctor();
        Cell::new(
            EnrichedFunctor::identity(phi.source()),
            EnrichedFunctor::identity(phi.target()),
            phi.clone(),
            t.target_cofunctor().clone(),
            t.components().clone(),
        )
    }
}

fn structural_cell<B: MonoidalBase>(c: &Cell<B>, rep: &mut CheckReport) {
    let b = c.top.source().base();
    for a in c.components.keys() {
        if !c.top.source().has_object(a) {
            rep.push_structural(format!("component key {a} is not a source object"));
        }
    }
    for a in c.top.source().objects() {
        match c.component(a) {
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
                match c.component_cop(a) {
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

/// Naturality at `(a, b)`, left column: `τ_a ⊗ G_{Φa,b}`, distribute,
/// `Σ (id ⊗ Ψ_{x,Gb})`, regroup, `Σ [μ]`.
fn cell_left_path<B: MonoidalBase>(
    c: &Cell<B>,
    a: &str,
    b_obj: &str,
) -> Result<Vec<B::Mor>, BaseError> {
    let bb = c.top.source().base();
    let cat_c = c.top.target();
    let phi_a = c.left.apply_r(a)?.clone();
    let gb = c.bottom.apply_r(b_obj)?.clone();
    let x_cop = c.component_cop(a)?;
    let l1 = bb.tensor_mor(c.component_r(a)?, c.bottom.hom_map_r(&phi_a, b_obj)?);
    let hom_gb = c.bottom.target().hom_r(c.bottom.apply_r(&phi_a)?, &gb)?;
    let dist = base::distribute_right(bb, &x_cop, hom_gb);
    let x_tens = base::tensor_cop_right(bb, &x_cop, hom_gb);
    let fa = c.top.apply_r(a)?.clone();
    let mut firsts = Vec::with_capacity(x_cop.len());
    let mut inners = Vec::with_capacity(x_cop.len());
    let mut legs = Vec::with_capacity(x_cop.len());
    let mut mid_entries = Vec::with_capacity(x_cop.len());
    for label in x_cop.labels() {
        let x = label
            .as_name()
            .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
        let inner = c.right.lift_r(x, &gb)?;
        let hom_fax = cat_c.hom_r(&fa, x)?;
        legs.push(bb.tensor_mor(&bb.identity(hom_fax), &inner.map().clone()));
        firsts.push(hom_fax.clone());
        inners.push(inner.fibre().clone());
        mid_entries.push((label.clone(), bb.tensor_obj(hom_fax, inner.fibre().total())));
    }
    let mid = Coproduct::new(bb, mid_entries)?;
    let s = base::sum_mor(bb, &x_tens, &mid, &legs)?;
    let (flat, rg) = base::regroup(bb, &mid, &firsts, &inners)?;
    let z_cop = fibre_coproduct(cat_c, c.right.object_map(), &fa, &gb)?;
    let fin = crate::cofun::mu_copair(bb, cat_c, &fa, &flat, &z_cop)?;
    Ok(vec![l1, dist, s, rg, fin])
}

/// Naturality at `(a, b)`, right column: `Φ_{a,b}`, `Σ (F_{a,y} ⊗ τ_y)`,
/// regroup, `Σ [μ]`.
fn cell_right_path<B: MonoidalBase>(
    c: &Cell<B>,
    a: &str,
    b_obj: &str,
) -> Result<Vec<B::Mor>, BaseError> {
    let bb = c.top.source().base();
    let cat_c = c.top.target();
    let entry = c.left.lift_r(a, b_obj)?;
    let y_cop = entry.fibre();
    let fa = c.top.apply_r(a)?.clone();
    let gb = c.bottom.apply_r(b_obj)?.clone();
    let mut firsts = Vec::with_capacity(y_cop.len());
    let mut inners = Vec::with_capacity(y_cop.len());
    let mut legs = Vec::with_capacity(y_cop.len());
    let mut mid_entries = Vec::with_capacity(y_cop.len());
    for label in y_cop.labels() {
        let y = label
            .as_name()
            .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
        let fy = c.top.apply_r(y)?;
        let tau_y = c.component_r(y)?;
        let inner = c.component_cop(y)?;
        let hom_fafy = cat_c.hom_r(&fa, fy)?;
        legs.push(bb.tensor_mor(c.top.hom_map_r(a, y)?, tau_y));
        firsts.push(hom_fafy.clone());
        mid_entries.push((label.clone(), bb.tensor_obj(hom_fafy, inner.total())));
        inners.push(inner);
    }
    let mid = Coproduct::new(bb, mid_entries)?;
    let s = base::sum_mor(bb, y_cop, &mid, &legs)?;
    let (flat, rg) = base::regroup(bb, &mid, &firsts, &inners)?;
    let z_cop = fibre_coproduct(cat_c, c.right.object_map(), &fa, &gb)?;
    // Σ[μ_{Fa,Fy,z}] with legs indexed by pair labels (z, y)
    let final_legs = flat
        .labels()
        .iter()
        .map(|lab| {
            let (z_l, y_l) = lab
                .as_pair()
                .ok_or_else(|| BaseError::Malformed("regrouped label is not a pair".into()))?;
            let z = z_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("inner label is not a name".into()))?;
            let y = y_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("outer label is not a name".into()))?;
            let fy = c.top.apply_r(y)?;
            let mu = cat_c.mu_r(&fa, fy, z)?;
            let inj = z_cop
                .injection_at(z_l)
                .ok_or_else(|| BaseError::Malformed(format!("{z} missing from target fibre")))?;
            bb.compose(mu, inj)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fin = flat.copair(bb, z_cop.total(), &final_legs)?;
    Ok(vec![entry.map().clone(), s, rg, fin])
}

/// Check the naturality diagram of a cell at every `(a, b)`.
pub fn check_cell<B: MonoidalBase>(c: &Cell<B>) -> CheckReport {
    check_cell_with(c, default_mode(c.top.source().base()))
}

pub fn check_cell_with<B: MonoidalBase>(c: &Cell<B>, mode: CheckMode) -> CheckReport {
    let b = c.top.source().base();
    let mut ctx = DiagramCtx::new(b, mode, "cell");
    structural_cell(c, &mut ctx.report);
    if !ctx.report.structural_ok() {
        return ctx.finish();
    }
    for a in c.top.source().objects() {
        ctx.arrow("component", &[a], c.component(a).unwrap());
    }
    for a in c.top.source().objects() {
        for b_obj in c.left.target().objects() {
            let lhs = cell_left_path(c, a, b_obj);
            let rhs = cell_right_path(c, a, b_obj);
            ctx.diagram("naturality", &[a, b_obj], lhs, rhs);
        }
    }
    ctx.finish()
}

/// Horizontal composite of cells sharing the middle vertical boundary:
/// component `τ_a ; Σ H ; Σ (id ⊗ σ_x) ; regroup ; Σ [μ]`.
pub fn hcompose_cells<B: MonoidalBase>(t: &Cell<B>, s: &Cell<B>) -> Result<Cell<B>, StructureError> {
    if t.right != s.left {
        return Err(StructureError::BoundaryMismatch(
            "horizontal composition: shared vertical boundary differs".into(),
        ));
    }
    let bb = t.top.source().base();
    let cat_e = s.top.target();
    let top = compose_functors(&t.top, &s.top)?;
    let bottom = compose_functors(&t.bottom, &s.bottom)?;
    let mut components = BTreeMap::new();
    for a in t.top.source().objects() {
        let x_cop = t.component_cop(a)?;
        let fa = t.top.apply_r(a)?;
        let hfa = s.top.apply_r(fa)?.clone();
        // Σ H_{Fa,x}
        let mut h_legs = Vec::with_capacity(x_cop.len());
        let mut mid1_entries = Vec::with_capacity(x_cop.len());
        for label in x_cop.labels() {
            let x = label
                .as_name()
                .ok_or_else(|| BaseError::Malformed("fibre label is not a name".into()))?;
            let hx = s.top.apply_r(x)?;
            h_legs.push(s.top.hom_map_r(fa, x)?.clone());
            mid1_entries.push((label.clone(), cat_e.hom_r(&hfa, hx)?.clone()));
        }
        let mid1 = Coproduct::new(bb, mid1_entries.clone())?;
        let sum_h = base::sum_mor(bb, &x_cop, &mid1, &h_legs)?;
        // Σ (id ⊗ σ_x)
        let mut firsts = Vec::with_capacity(mid1.len());
        let mut inners = Vec::with_capacity(mid1.len());
        let mut legs = Vec::with_capacity(mid1.len());
        let mut mid2_entries = Vec::with_capacity(mid1.len());
        for (label, hom) in mid1.entries() {
            let x = label.as_name().unwrap();
            let sigma_x = s.component_r(x)?;
            let inner = s.component_cop(x)?;
            legs.push(bb.tensor_mor(&bb.identity(hom), sigma_x));
            firsts.push(hom.clone());
            mid2_entries.push((label.clone(), bb.tensor_obj(hom, inner.total())));
            inners.push(inner);
        }
        let mid2 = Coproduct::new(bb, mid2_entries)?;
        let sum_sigma = base::sum_mor(bb, &mid1, &mid2, &legs)?;
        let (flat, rg) = base::regroup(bb, &mid2, &firsts, &inners)?;
        // Σ[μ_{HFa,Hx,y}] into the composite component fibre
        let target_cop = {
            let phi_a = t.left.apply_r(a)?;
            let g_phi_a = t.bottom.apply_r(phi_a)?;
            let kg_phi_a = s.bottom.apply_r(g_phi_a)?;
            fibre_coproduct(cat_e, s.right.object_map(), &hfa, kg_phi_a)?
        };
        let final_legs = flat
            .labels()
            .iter()
            .map(|lab| {
                let (y_l, x_l) = lab
                    .as_pair()
                    .ok_or_else(|| BaseError::Malformed("regrouped label is not a pair".into()))?;
                let x = x_l
                    .as_name()
                    .ok_or_else(|| BaseError::Malformed("outer label is not a name".into()))?;
                let hx = s.top.apply_r(x)?;
                let mu = cat_e.mu_r(&hfa, hx, y_l.as_name().unwrap())?;
                let inj = target_cop
                    .injection_at(y_l)
                    .ok_or_else(|| BaseError::Malformed(format!("{y_l} missing from fibre")))?;
                bb.compose(mu, inj)
            })
            .collect::<Result<Vec<_>, BaseError>>()?;
        let fin = flat.copair(bb, target_cop.total(), &final_legs)?;
        let chain = bb.compose(
            &bb.compose(&bb.compose(&bb.compose(t.component_r(a)?, &sum_h)?, &sum_sigma)?, &rg)?,
            &fin,
        )?;
        components.insert(a.clone(), chain);
    }
    Cell::new(top, bottom, t.left.clone(), s.right.clone(), components)
}

/// Vertical composite of cells sharing the middle horizontal boundary:
/// component `τ_a ; Σ (id ⊗ σ_{Φa}) ; regroup ; ΣΣ (id ⊗ Ψ_{x,y}) ;
/// regroup ; Σ [μ]`.
pub fn vcompose_cells<B: MonoidalBase>(t: &Cell<B>, s: &Cell<B>) -> Result<Cell<B>, StructureError> {
    if t.bottom != s.top {
        return Err(StructureError::BoundaryMismatch(
            "vertical composition: shared horizontal boundary differs".into(),
        ));
    }
    let bb = t.top.source().base();
    let cat_c = t.top.target();
    let left = compose_cofunctors(&t.left, &s.left)?;
    let right = compose_cofunctors(&t.right, &s.right)?;
    let mut components = BTreeMap::new();
    for a in t.top.source().objects() {
        let x_cop = t.component_cop(a)?;
        let fa = t.top.apply_r(a)?.clone();
        let phi_a = t.left.apply_r(a)?.clone();
        let sigma = s.component_r(&phi_a)?;
        let y_cop = s.component_cop(&phi_a)?;
        // Σ_x (id ⊗ σ_{Φa})
        let mut firsts = Vec::with_capacity(x_cop.len());
        let mut inners = Vec::with_capacity(x_cop.len());
        let mut legs = Vec::with_capacity(x_cop.len());
        let mut mid_entries = Vec::with_capacity(x_cop.len());
        for (label, hom) in x_cop.entries() {
            legs.push(bb.tensor_mor(&bb.identity(hom), sigma));
            firsts.push(hom.clone());
            mid_entries.push((label.clone(), bb.tensor_obj(hom, y_cop.total())));
            inners.push(y_cop.clone());
        }
        let mid = Coproduct::new(bb, mid_entries)?;
        let s1 = base::sum_mor(bb, &x_cop, &mid, &legs)?;
        let (flat1, rg1) = base::regroup(bb, &mid, &firsts, &inners)?;
        // flat1 has pair labels (y, x) and summands C(Fa,x) ⊗ D(GΦa, y);
        // apply Ψ's lift at (x, y) on the second factor
        let mut firsts2 = Vec::with_capacity(flat1.len());
        let mut inners2 = Vec::with_capacity(flat1.len());
        let mut legs2 = Vec::with_capacity(flat1.len());
        let mut mid2_entries = Vec::with_capacity(flat1.len());
        for label in flat1.labels() {
            let (y_l, x_l) = label
                .as_pair()
                .ok_or_else(|| BaseError::Malformed("regrouped label is not a pair".into()))?;
            let y = y_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("inner label is not a name".into()))?;
            let x = x_l
                .as_name()
                .ok_or_else(|| BaseError::Malformed("outer label is not a name".into()))?;
            let lift = t.right.lift_r(x, y)?;
            let hom_fax = cat_c.hom_r(&fa, x)?;
            legs2.push(bb.tensor_mor(&bb.identity(hom_fax), lift.map()));
            firsts2.push(hom_fax.clone());
            mid2_entries.push((label.clone(), bb.tensor_obj(hom_fax, lift.fibre().total())));
            inners2.push(lift.fibre().clone());
        }
        let mid2 = Coproduct::new(bb, mid2_entries)?;
        let s2 = base::sum_mor(bb, &flat1, &mid2, &legs2)?;
        let (flat2, rg2) = base::regroup(bb, &mid2, &firsts2, &inners2)?;
        // flat2 labels: (z, (y, x)) sorted z-major; Σ[μ_{Fa,x,z}] into the
        // composite fibre over w = z
        let target_cop = {
            let h_ups_phi_a = s.bottom.apply_r(s.left.apply_r(&phi_a)?)?;
            fibre_coproduct(cat_c, right.object_map(), &fa, h_ups_phi_a)?
        };
        let final_legs = flat2
            .labels()
            .iter()
            .map(|lab| {
                let (z_l, yx_l) = lab
                    .as_pair()
                    .ok_or_else(|| BaseError::Malformed("regrouped label is not a pair".into()))?;
                let (_, x_l) = yx_l
                    .as_pair()
                    .ok_or_else(|| BaseError::Malformed("outer label is not a pair".into()))?;
                let z = z_l
                    .as_name()
                    .ok_or_else(|| BaseError::Malformed("inner label is not a name".into()))?;
                let x = x_l
                    .as_name()
                    .ok_or_else(|| BaseError::Malformed("outer label is not a name".into()))?;
                let mu = cat_c.mu_r(&fa, x, z)?;
                let inj = target_cop
                    .injection_at(z_l)
                    .ok_or_else(|| BaseError::Malformed(format!("{z} missing from fibre")))?;
                bb.compose(mu, inj)
            })
            .collect::<Result<Vec<_>, BaseError>>()?;
        let fin = flat2.copair(bb, target_cop.total(), &final_legs)?;
        let chain = bb.compose(
            &bb.compose(
                &bb.compose(&bb.compose(&bb.compose(t.component_r(a)?, &s1)?, &rg1)?, &s2)?,
                &rg2,
            )?,
            &fin,
        )?;
        components.insert(a.clone(), chain);
    }
    Cell::new(t.top.clone(), s.bottom.clone(), left, right, components)
}

/// A functor/cofunctor square with no filling transformation; a cell of the
/// flat double subcategory when the compatibility diagram commutes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleSquare<B: MonoidalBase> {
    top: EnrichedFunctor<B>,
    bottom: EnrichedFunctor<B>,
    left: EnrichedCofunctor<B>,
    right: EnrichedCofunctor<B>,
}

impl<B: MonoidalBase> CompatibleSquare<B> {
    pub fn new(
        top: EnrichedFunctor<B>,
        bottom: EnrichedFunctor<B>,
        left: EnrichedCofunctor<B>,
        right: EnrichedCofunctor<B>,
    ) -> Result<Self, StructureError> {
        check_square_boundaries(&top, &bottom, &left, &right)?;
        Ok(CompatibleSquare {
            top,
            bottom,
            left,
            right,
        })
    }

    pub fn top(&self) -> &EnrichedFunctor<B> {
        &self.top
    }

    pub fn bottom(&self) -> &EnrichedFunctor<B> {
        &self.bottom
    }

    pub fn left(&self) -> &EnrichedCofunctor<B> {
        &self.left
    }

    pub fn right(&self) -> &EnrichedCofunctor<B> {
        &self.right
    }

    /// Horizontal pasting in the flat double category.
    pub fn hpaste(&self, other: &CompatibleSquare<B>) -> Result<CompatibleSquare<B>, StructureError> {
        if self.right != other.left {
            return Err(StructureError::BoundaryMismatch(
                "horizontal pasting: shared vertical boundary differs".into(),
            ));
        }
        CompatibleSquare::new(
            compose_functors(&self.top, &other.top)?,
            compose_functors(&self.bottom, &other.bottom)?,
            self.left.clone(),
            other.right.clone(),
        )
    }

    /// Vertical pasting in the flat double category.
    pub fn vpaste(&self, other: &CompatibleSquare<B>) -> Result<CompatibleSquare<B>, StructureError> {
        if self.bottom != other.top {
            return Err(StructureError::BoundaryMismatch(
                "vertical pasting: shared horizontal boundary differs".into(),
            ));
        }
        CompatibleSquare::new(
            self.top.clone(),
            other.bottom.clone(),
            compose_cofunctors(&self.left, &other.left)?,
            compose_cofunctors(&self.right, &other.right)?,
        )
    }
}

/// Check the compatible-square conditions: `GΦa = ΨFa` on objects and the
/// lifting/hom square `Φ_{a,b} ; Σ F_{a,x} = G_{Φa,b} ; Ψ_{Fa,Gb}` per
/// `(a, b)`.
pub fn check_compatible_square<B: MonoidalBase>(s: &CompatibleSquare<B>) -> CheckReport {
    check_compatible_square_with(s, default_mode(s.top.source().base()))
}

pub fn check_compatible_square_with<B: MonoidalBase>(
    s: &CompatibleSquare<B>,
    mode: CheckMode,
) -> CheckReport {
    let b = s.top.source().base();
    let mut ctx = DiagramCtx::new(b, mode, "compatible-square");
    // object-level equation
    let mut objects_ok = BTreeMap::new();
    for a in s.top.source().objects() {
        let lhs = s.left.apply(a).and_then(|p| s.bottom.apply(p));
        let rhs = s.top.apply(a).and_then(|f| s.right.apply(f));
        let ok = lhs.is_some() && lhs == rhs;
        objects_ok.insert(a.clone(), ok);
        ctx.fact(
            "objects-commute",
            &[a],
            ok,
            (!ok).then(|| {
                format!(
                    "bottom∘left sends {a} to {:?}, right∘top to {:?}",
                    lhs, rhs
                )
            }),
        );
    }
    for a in s.top.source().objects() {
        for b_obj in s.left.target().objects() {
            if !objects_ok.values().all(|&ok| ok) {
                // the ΣF leg needs every fibre corner to commute
                if !objects_ok[a] {
                    ctx.fact(
                        "square",
                        &[a, b_obj],
                        false,
                        Some("object-level equation fails at the source object".into()),
                    );
                    continue;
                }
            }
            let lhs = (|| {
                let phi_a = s.left.apply_r(a)?;
                let fa = s.top.apply_r(a)?;
                let gb = s.bottom.apply_r(b_obj)?;
                Ok(vec![
                    s.bottom.hom_map_r(phi_a, b_obj)?.clone(),
                    s.right.lift_r(fa, gb)?.map().clone(),
                ])
            })();
            let rhs = (|| {
                let fa = s.top.apply_r(a)?;
                let gb = s.bottom.apply_r(b_obj)?;
                let entry = s.left.lift_r(a, b_obj)?;
                let y_cop = s.right.lift_r(fa, gb)?.fibre();
                let legs = entry
                    .fibre()
                    .labels()
                    .iter()
                    .map(|x_l| {
                        let x = x_l
                            .as_name()
                            .ok_or_else(|| BaseError::Malformed("fibre label".into()))?;
                        let fx = s.top.apply_r(x)?;
                        let inj = y_cop.injection_at(&Label::name(fx.clone())).ok_or_else(|| {
                            BaseError::Malformed(format!(
                                "{fx} is not in the right-hand fibre (corners disagree)"
                            ))
                        })?;
                        b.compose(s.top.hom_map_r(a, x)?, inj)
                    })
                    .collect::<Result<Vec<_>, BaseError>>()?;
                let sum_f = entry.fibre().copair(b, y_cop.total(), &legs)?;
                Ok(vec![entry.map().clone(), sum_f])
            })();
            ctx.diagram("square", &[a, b_obj], lhs, rhs);
        }
    }
    ctx.finish()
}

/// Embed a compatible square as a cell of the ambient double category, with
/// components `η_{Fa} ; ι_{Fa}`. Errors if the square is invalid.
pub fn embed_square<B: MonoidalBase>(s: &CompatibleSquare<B>) -> Result<Cell<B>, StructureError> {
    let rep = check_compatible_square(s);
    if !rep.passed() {
        return Err(StructureError::LawFailure {
            subject: "compatible-square".into(),
            failure: rep.first_failure().unwrap_or_default(),
        });
    }
    let cell = Cell {
        top: s.top.clone(),
        bottom: s.bottom.clone(),
        left: s.left.clone(),
        right: s.right.clone(),
        components: BTreeMap::new(),
    };
    cell.with_unit_components()
}

/// An enriched lens: a functor and a cofunctor with the same object map
/// whose cograph map retracts the lifting map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedLens<B: MonoidalBase> {
    functor: EnrichedFunctor<B>,
    cofunctor: EnrichedCofunctor<B>,
}

impl<B: MonoidalBase> EnrichedLens<B> {
    pub fn new(
        functor: EnrichedFunctor<B>,
        cofunctor: EnrichedCofunctor<B>,
    ) -> Result<Self, StructureError> {
        if functor.source() != cofunctor.source() || functor.target() != cofunctor.target() {
            return Err(StructureError::BoundaryMismatch(
                "lens parts have different boundary categories".into(),
            ));
        }
        Ok(EnrichedLens { functor, cofunctor })
    }

    /// The identity lens on a category.
    pub fn identity(cat: &Arc<EnrichedCategory<B>>) -> Result<Self, StructureError> {
        EnrichedLens::new(
            EnrichedFunctor::identity(cat),
            EnrichedCofunctor::identity(cat)?,
        )
    }

    pub fn functor(&self) -> &EnrichedFunctor<B> {
        &self.functor
    }

    pub fn cofunctor(&self) -> &EnrichedCofunctor<B> {
        &self.cofunctor
    }
}

/// Check the retraction triangle `Φ_{a,b} ; [F_{a,x}] = id` per `(a, b)`;
/// object-map disagreement is a structural error.
pub fn check_lens<B: MonoidalBase>(l: &EnrichedLens<B>) -> CheckReport {
    check_lens_with(l, default_mode(l.functor.source().base()))
}

pub fn check_lens_with<B: MonoidalBase>(l: &EnrichedLens<B>, mode: CheckMode) -> CheckReport {
    let b = l.functor.source().base();
    let mut ctx = DiagramCtx::new(b, mode, "lens");
    for a in l.functor.source().objects() {
        match (l.functor.apply(a), l.cofunctor.apply(a)) {
            (Some(fa), Some(pa)) if fa == pa => {}
            (fa, pa) => ctx.report.push_structural(format!(
                "object maps disagree at {a}: functor {fa:?}, cofunctor {pa:?}"
            )),
        }
    }
    if !ctx.report.structural_ok() {
        return ctx.finish();
    }
    for a in l.functor.source().objects() {
        for b_obj in l.functor.target().objects() {
            let lhs = (|| {
                let (_, cograph) = cograph_map(&l.functor, a, b_obj)
                    .map_err(|e| BaseError::Malformed(e.to_string()))?;
                Ok(vec![l.cofunctor.lift_r(a, b_obj)?.map().clone(), cograph])
            })();
            let rhs = (|| {
                let fa = l.functor.apply_r(a)?;
                Ok(vec![b.identity(l.functor.target().hom_r(fa, b_obj)?)])
            })();
            ctx.diagram("retraction", &[a, b_obj], lhs, rhs);
        }
    }
    ctx.finish()
}

/// The Prop-5.4 square of a lens: identity functors on the bottom, identity
/// cofunctor on the right.
pub fn lens_to_square<B: MonoidalBase>(
    l: &EnrichedLens<B>,
) -> Result<CompatibleSquare<B>, StructureError> {
    let target = l.functor.target();
    CompatibleSquare::new(
        l.functor.clone(),
        EnrichedFunctor::identity(target),
        l.cofunctor.clone(),
        EnrichedCofunctor::identity(target)?,
    )
}

/// Compose lenses by composing the parts; validity of the composite is
/// asserted, not assumed.
pub fn compose_lenses<B: MonoidalBase>(
    l1: &EnrichedLens<B>,
    l2: &EnrichedLens<B>,
) -> Result<EnrichedLens<B>, StructureError> {
    let functor = compose_functors(&l1.functor, &l2.functor)?;
    let cofunctor = compose_cofunctors(&l1.cofunctor, &l2.cofunctor)?;
    let lens = EnrichedLens::new(functor, cofunctor)?;
    let rep = check_lens(&lens);
    if !rep.passed() {
        return Err(StructureError::LawFailure {
            subject: "lens".into(),
            failure: rep.first_failure().unwrap_or_default(),
        });
    }
    Ok(lens)
}

/// Submetry check for a tropical cofunctor: at each `(a, b)` the fibre
/// bound `d(Φa, b)` must be attained by some fibre point. An empty fibre
/// attains the bound only when `d(Φa, b) = ∞`.
pub fn check_submetry(phi: &EnrichedCofunctor<TropicalBase>) -> CheckReport {
    let mut rep = CheckReport::new("submetry");
    for a in phi.source().objects() {
        let phi_a = match phi.apply(a) {
            Some(p) => p.clone(),
            None => {
                rep.push_structural(format!("object map undefined at {a}"));
                continue;
            }
        };
        for b_obj in phi.target().objects() {
            let bound = match phi.target().hom(&phi_a, b_obj) {
                Some(d) => d.clone(),
                None => {
                    rep.push_structural(format!("missing hom({phi_a},{b_obj})"));
                    continue;
                }
            };
            let fibre = phi.fibre(b_obj);
            let attained = if fibre.is_empty() {
                bound.is_infinite()
            } else {
                fibre.iter().any(|x| {
                    phi.source()
                        .hom(a, x)
                        .map(|d| bound.ge(d))
                        .unwrap_or(false)
                })
            };
            rep.diagrams.push(crate::report::DiagramVerdict {
                law: "attained".into(),
                at: vec![a.clone(), b_obj.clone()],
                ok: attained,
                left: None,
                right: None,
                note: (!attained).then(|| {
                    format!("no fibre point within {} of {phi_a}", TropicalBase.format_obj(&bound))
                }),
            });
        }
    }
    rep
}

/// Weight-preservation self-test for a lens over a family base: every lift
/// must carry exactly the weight of the morphism it lifts. Holds
/// automatically for valid lenses, so a failure flags an implementation
/// bug rather than bad input.
pub fn check_wset_strengthening<W: ThinMonoidalPoset>(
    l: &EnrichedLens<FamBase<W>>,
) -> CheckReport {
    let mut rep = CheckReport::new("weight-strengthening");
    let w = l.functor.source().base().poset().clone();
    for a in l.functor.source().objects() {
        let fa = match l.functor.apply(a) {
            Some(f) => f.clone(),
            None => {
                rep.push_structural(format!("object map undefined at {a}"));
                continue;
            }
        };
        for b_obj in l.functor.target().objects() {
            let entry = match l.cofunctor.lift(a, b_obj) {
                Some(e) => e,
                None => {
                    rep.push_structural(format!("missing lifting map at ({a},{b_obj})"));
                    continue;
                }
            };
            let dom_weights = match l.functor.target().hom(&fa, b_obj) {
                Some(h) => h.clone(),
                None => {
                    rep.push_structural(format!("missing hom({fa},{b_obj})"));
                    continue;
                }
            };
            for (u_idx, &enc) in entry.map().map().iter().enumerate() {
                // decode the flat index against the fibre blocks
                let mut rem = enc;
                let mut lifted = None;
                for (lab, fam) in entry.fibre().entries() {
                    if rem < fam.len() {
                        lifted = Some((lab.clone(), fam[rem].clone()));
                        break;
                    }
                    rem -= fam.len();
                }
                let ok = match (&lifted, dom_weights.get(u_idx)) {
                    (Some((_, lw)), Some(uw)) => lw == uw,
                    _ => false,
                };
                rep.diagrams.push(crate::report::DiagramVerdict {
                    law: "weight-preserved".into(),
                    at: vec![a.clone(), b_obj.clone(), u_idx.to_string()],
                    ok,
                    left: lifted.as_ref().map(|(_, lw)| w.format_elem(lw)),
                    right: dom_weights.get(u_idx).map(|uw| w.format_elem(uw)),
                    note: None,
                });
            }
        }
    }
    rep
}

/// Convenience: build a tropical lens/cofunctor check input from distances.
pub fn tropical_distance(v: &TropVal) -> String {
    TropicalBase.format_obj(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn identity_lens_passes_and_matches_its_square() {
        let cat = Arc::new(oracle::to_enriched_category(
            &oracle::OrdinaryCategory::walking_arrow(),
        ));
        let lens = EnrichedLens::identity(&cat).unwrap();
        let rep = check_lens(&lens);
        assert!(rep.passed(), "{:?}", rep.first_failure());
        let sq = lens_to_square(&lens).unwrap();
        assert!(check_compatible_square(&sq).passed());
        let cell = embed_square(&sq).unwrap();
        assert!(check_cell(&cell).passed());
    }

    #[test]
    fn identity_cells_pass() {
        let cat = Arc::new(oracle::to_enriched_category(
            &oracle::OrdinaryCategory::commutative_square(),
        ));
        let f = EnrichedFunctor::identity(&cat);
        let cell = Cell::identity_on_functor(&f).unwrap();
        assert!(check_cell(&cell).passed());
        let phi = EnrichedCofunctor::identity(&cat).unwrap();
        let cell2 = Cell::identity_on_cofunctor(&phi).unwrap();
        assert!(check_cell(&cell2).passed());
    }
}
