//! Independent, direct implementations of ordinary categories, cofunctors,
//! and delta lenses, plus exhaustive enumerators over small instances.
//!
//! Everything here works by table lookups on an index-based presentation
//! (hom-set sizes, identity indices, composition tables) and never touches
//! the enriched machinery, so it can serve as ground truth for the generic
//! checkers over the finite-set base. Translations in both directions are
//! exact inverses.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::bases::fam::FamBase;
use crate::bases::finset::{FinFun, FinSetBase};
use crate::bases::tropical::ThinMonoidalPoset;
use crate::cofun::EnrichedCofunctor;
use crate::doublecat::EnrichedLens;
use crate::encat::{EnrichedCategory, EnrichedFunctor, ObjName, StructureError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("incomplete table: {0}")]
    Incomplete(String),
    #[error("enumeration bound exceeded: {needed} candidates, bound {bound}")]
    BoundExceeded { needed: u128, bound: u128 },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A morphism of an [`OrdinaryCategory`]: position `idx` in the hom-set
/// `dom → cod` (hom-sets are plain index ranges).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorKey {
    pub dom: ObjName,
    pub cod: ObjName,
    pub idx: usize,
}

impl MorKey {
    pub fn new(dom: impl Into<ObjName>, cod: impl Into<ObjName>, idx: usize) -> Self {
        MorKey {
            dom: dom.into(),
            cod: cod.into(),
            idx,
        }
    }
}

/// A finite category given by hom-set sizes, an identity index per object,
/// and a composition table; the axioms are validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryCategory {
    objects: Vec<ObjName>,
    hom_sizes: BTreeMap<(ObjName, ObjName), usize>,
    identities: BTreeMap<ObjName, usize>,
    // (a, b, c, i, j) ↦ index of the composite of hom(a,b)[i] then hom(b,c)[j]
    composition: BTreeMap<(ObjName, ObjName, ObjName, usize, usize), usize>,
}

impl OrdinaryCategory {
    pub fn new(
        mut objects: Vec<ObjName>,
        hom_sizes: BTreeMap<(ObjName, ObjName), usize>,
        identities: BTreeMap<ObjName, usize>,
        composition: BTreeMap<(ObjName, ObjName, ObjName, usize, usize), usize>,
    ) -> Result<Self, OracleError> {
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(OracleError::InvalidCategory(format!(
                    "duplicate object {}",
                    w[0]
                )));
            }
        }
        let cat = OrdinaryCategory {
            objects,
            hom_sizes,
            identities,
            composition,
        };
        cat.validate()?;
        Ok(cat)
    }

    /// Direct table-lookup validation of the category axioms.
    fn validate(&self) -> Result<(), OracleError> {
        for x in &self.objects {
            for y in &self.objects {
                if self.hom_sizes.get(&(x.clone(), y.clone())).is_none() {
                    return Err(OracleError::Incomplete(format!("hom size ({x},{y})")));
                }
            }
        }
        for x in &self.objects {
            let id = *self
                .identities
                .get(x)
                .ok_or_else(|| OracleError::Incomplete(format!("identity at {x}")))?;
            if id >= self.hom_size(x, x) {
                return Err(OracleError::InvalidCategory(format!(
                    "identity index {id} out of range at {x}"
                )));
            }
        }
        for a in &self.objects {
            for b in &self.objects {
                for c in &self.objects {
                    for i in 0..self.hom_size(a, b) {
                        for j in 0..self.hom_size(b, c) {
                            match self.compose_idx(a, b, c, i, j) {
                                None => {
                                    return Err(OracleError::Incomplete(format!(
                                        "composition ({a},{b},{c})[{i},{j}]"
                                    )))
                                }
                                Some(k) if k >= self.hom_size(a, c) => {
                                    return Err(OracleError::InvalidCategory(format!(
                                        "composite index {k} out of range at ({a},{c})"
                                    )))
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        // unit laws
        for a in &self.objects {
            for b in &self.objects {
                for i in 0..self.hom_size(a, b) {
                    let ida = self.identities[a];
                    let idb = self.identities[b];
                    if self.compose_idx(a, a, b, ida, i) != Some(i) {
                        return Err(OracleError::InvalidCategory(format!(
                            "left unit fails at ({a},{b})[{i}]"
                        )));
                    }
                    if self.compose_idx(a, b, b, i, idb) != Some(i) {
                        return Err(OracleError::InvalidCategory(format!(
                            "right unit fails at ({a},{b})[{i}]"
                        )));
                    }
                }
            }
        }
        // associativity
        for a in &self.objects {
            for b in &self.objects {
                for c in &self.objects {
                    for d in &self.objects {
                        for i in 0..self.hom_size(a, b) {
                            for j in 0..self.hom_size(b, c) {
                                for k in 0..self.hom_size(c, d) {
                                    let ij = self.compose_idx(a, b, c, i, j).unwrap();
                                    let jk = self.compose_idx(b, c, d, j, k).unwrap();
                                    if self.compose_idx(a, c, d, ij, k)
                                        != self.compose_idx(a, b, d, i, jk)
                                    {
                                        return Err(OracleError::InvalidCategory(format!(
                                            "associativity fails at ({a},{b},{c},{d})[{i},{j},{k}]"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A thin category from a reflexive transitive relation.
    pub fn from_poset(objects: &[&str], le: impl Fn(&str, &str) -> bool) -> Result<Self, OracleError> {
        let objs: Vec<ObjName> = objects.iter().map(|s| s.to_string()).collect();
        let mut hom_sizes = BTreeMap::new();
        let mut identities = BTreeMap::new();
        let mut composition = BTreeMap::new();
        for a in &objs {
            identities.insert(a.clone(), 0usize);
            for b in &objs {
                hom_sizes.insert((a.clone(), b.clone()), usize::from(le(a, b)));
            }
        }
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    if le(a, b) && le(b, c) {
                        composition.insert((a.clone(), b.clone(), c.clone(), 0, 0), 0);
                    }
                }
            }
        }
        OrdinaryCategory::new(objs, hom_sizes, identities, composition)
    }

    /// The one-object, one-morphism category.
    pub fn terminal() -> Self {
        OrdinaryCategory::from_poset(&["*"], |_, _| true).unwrap()
    }

    /// The walking arrow: objects `0 → 1`.
    pub fn walking_arrow() -> Self {
        OrdinaryCategory::from_poset(&["0", "1"], |a, b| a <= b).unwrap()
    }

    /// The commutative square poset: `a → b → d`, `a → c → d`, and the
    /// diagonal `a → d`.
    pub fn commutative_square() -> Self {
        let le = |x: &str, y: &str| match (x, y) {
            _ if x == y => true,
            ("a", _) => true,
            (_, "d") => true,
            _ => false,
        };
        OrdinaryCategory::from_poset(&["a", "b", "c", "d"], le).unwrap()
    }

    pub fn objects(&self) -> &[ObjName] {
        &self.objects
    }

    pub fn hom_size(&self, a: &str, b: &str) -> usize {
        self.hom_sizes
            .get(&(a.to_string(), b.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn identity_idx(&self, a: &str) -> usize {
        self.identities[a]
    }

    pub fn identity_mor(&self, a: &str) -> MorKey {
        MorKey::new(a, a, self.identity_idx(a))
    }

    pub fn compose_idx(&self, a: &str, b: &str, c: &str, i: usize, j: usize) -> Option<usize> {
        self.composition
            .get(&(a.to_string(), b.to_string(), c.to_string(), i, j))
            .copied()
    }

    /// Diagrammatic composite `f ; g`.
    pub fn compose_mor(&self, f: &MorKey, g: &MorKey) -> Option<MorKey> {
        if f.cod != g.dom {
            return None;
        }
        self.compose_idx(&f.dom, &f.cod, &g.cod, f.idx, g.idx)
            .map(|k| MorKey::new(f.dom.clone(), g.cod.clone(), k))
    }

    /// Every morphism, in canonical order.
    pub fn morphisms(&self) -> Vec<MorKey> {
        let mut out = Vec::new();
        for a in &self.objects {
            for b in &self.objects {
                for i in 0..self.hom_size(a, b) {
                    out.push(MorKey::new(a.clone(), b.clone(), i));
                }
            }
        }
        out
    }

    /// Morphisms out of `a`, in canonical order.
    pub fn morphisms_from(&self, a: &str) -> Vec<MorKey> {
        let mut out = Vec::new();
        for b in &self.objects {
            for i in 0..self.hom_size(a, b) {
                out.push(MorKey::new(a.to_string(), b.clone(), i));
            }
        }
        out
    }
}

/// Cofunctor tables: object map plus, per `(a, u : Φa → b)`, the chosen
/// lift `a → x` with `Φx = b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrdinaryCofunctor {
    pub object_map: BTreeMap<ObjName, ObjName>,
    pub lifts: BTreeMap<(ObjName, MorKey), MorKey>,
}

/// Functor tables: object map plus per-morphism images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrdinaryFunctor {
    pub object_map: BTreeMap<ObjName, ObjName>,
    pub mor_map: BTreeMap<MorKey, MorKey>,
}

/// A delta lens: a functor and a cofunctor with the same object map,
/// subject to the retraction equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrdinaryLens {
    pub functor: OrdinaryFunctor,
    pub cofunctor: OrdinaryCofunctor,
}

fn lift_of<'l>(
    c: &'l OrdinaryCofunctor,
    a: &str,
    u: &MorKey,
) -> Result<&'l MorKey, OracleError> {
    c.lifts
        .get(&(a.to_string(), u.clone()))
        .ok_or_else(|| OracleError::Incomplete(format!("lift at ({a}, {u:?})")))
}

/// Literal evaluation of the identity and composition equations for a
/// cofunctor presented as tables.
pub fn direct_check_cofunctor(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    c: &OrdinaryCofunctor,
) -> Result<bool, OracleError> {
    for a_obj in a.objects() {
        let phi_a = c
            .object_map
            .get(a_obj)
            .ok_or_else(|| OracleError::Incomplete(format!("object map at {a_obj}")))?;
        // typing and totality of the lift table
        for u in b.morphisms_from(phi_a) {
            let v = lift_of(c, a_obj, &u)?;
            if v.dom != *a_obj
                || c.object_map.get(&v.cod).map(String::as_str) != Some(u.cod.as_str())
                || v.idx >= a.hom_size(&v.dom, &v.cod)
            {
                return Err(OracleError::Incomplete(format!(
                    "lift at ({a_obj}, {u:?}) is ill-typed"
                )));
            }
        }
        // Φ_{a,Φa}(1_{Φa}) = 1_a
        let lifted_id = lift_of(c, a_obj, &b.identity_mor(phi_a))?;
        if *lifted_id != a.identity_mor(a_obj) {
            return Ok(false);
        }
        // Φ_{a,b'}(v ∘ u) = Φ_{a',b'}(v) ∘ Φ_{a,b}(u)
        for u in b.morphisms_from(phi_a) {
            let lift_u = lift_of(c, a_obj, &u)?.clone();
            for v in b.morphisms_from(&u.cod) {
                let uv = b
                    .compose_mor(&u, &v)
                    .ok_or_else(|| OracleError::Incomplete("composition table".into()))?;
                let lhs = lift_of(c, a_obj, &uv)?.clone();
                let lift_v = lift_of(c, &lift_u.cod, &v)?.clone();
                match a.compose_mor(&lift_u, &lift_v) {
                    Some(rhs) if rhs == lhs => {}
                    _ => return Ok(false),
                }
            }
        }
    }
    Ok(true)
}

/// Literal evaluation of functoriality for tables.
pub fn direct_check_functor(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    f: &OrdinaryFunctor,
) -> Result<bool, OracleError> {
    for a_obj in a.objects() {
        let fa = f
            .object_map
            .get(a_obj)
            .ok_or_else(|| OracleError::Incomplete(format!("object map at {a_obj}")))?;
        if !b.objects().contains(fa) {
            return Err(OracleError::Incomplete(format!("unknown object {fa}")));
        }
    }
    for u in a.morphisms() {
        let fu = f
            .mor_map
            .get(&u)
            .ok_or_else(|| OracleError::Incomplete(format!("morphism map at {u:?}")))?;
        let fa = &f.object_map[&u.dom];
        let fb = &f.object_map[&u.cod];
        if fu.dom != *fa || fu.cod != *fb || fu.idx >= b.hom_size(fa, fb) {
            return Err(OracleError::Incomplete(format!("image of {u:?} is ill-typed")));
        }
    }
    for a_obj in a.objects() {
        if f.mor_map[&a.identity_mor(a_obj)] != b.identity_mor(&f.object_map[a_obj]) {
            return Ok(false);
        }
    }
    for u in a.morphisms() {
        for v in a.morphisms_from(&u.cod) {
            let uv = a.compose_mor(&u, &v).unwrap();
            let lhs = &f.mor_map[&uv];
            match b.compose_mor(&f.mor_map[&u], &f.mor_map[&v]) {
                Some(rhs) if rhs == *lhs => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Literal evaluation of the delta-lens equations: shared object map,
/// functor and cofunctor laws, and `F_{a,a'} Φ_{a,b}(u) = u`.
pub fn direct_check_lens(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    l: &OrdinaryLens,
) -> Result<bool, OracleError> {
    if l.functor.object_map != l.cofunctor.object_map {
        return Ok(false);
    }
    if !direct_check_functor(a, b, &l.functor)? {
        return Ok(false);
    }
    if !direct_check_cofunctor(a, b, &l.cofunctor)? {
        return Ok(false);
    }
    for a_obj in a.objects() {
        let fa = &l.functor.object_map[a_obj];
        for u in b.morphisms_from(fa) {
            let v = lift_of(&l.cofunctor, a_obj, &u)?;
            if l.functor.mor_map[v] != u {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bound on exhaustive searches; exceeding it is a clean error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimit {
    pub max_candidates: u128,
}

impl Default for EnumLimit {
    fn default() -> Self {
        EnumLimit {
            max_candidates: 10_000_000,
        }
    }
}

impl EnumLimit {
    pub fn new(max_candidates: u128) -> Self {
        EnumLimit { max_candidates }
    }
}

fn object_maps(a: &OrdinaryCategory, b: &OrdinaryCategory) -> Vec<BTreeMap<ObjName, ObjName>> {
    let n = a.objects().len();
    let m = b.objects().len();
    if n == 0 {
        return vec![BTreeMap::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        out.push(
            a.objects()
                .iter()
                .zip(&digits)
                .map(|(o, &d)| (o.clone(), b.objects()[d].clone()))
                .collect(),
        );
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// One exhaustive-search slot: a key plus the candidate values for it.
struct Slot<K, V> {
    key: K,
    options: Vec<V>,
}

fn product_size<K, V>(slots: &[Slot<K, V>]) -> u128 {
    slots
        .iter()
        .fold(1u128, |acc, s| acc.saturating_mul(s.options.len() as u128))
}

fn for_each_choice<K: Clone, V: Clone>(slots: &[Slot<K, V>], mut f: impl FnMut(&[(K, V)])) {
    if slots.iter().any(|s| s.options.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; slots.len()];
    let mut current: Vec<(K, V)> = slots
        .iter()
        .map(|s| (s.key.clone(), s.options[0].clone()))
        .collect();
    loop {
        f(&current);
        let mut i = 0;
        loop {
            if i == slots.len() {
                return;
            }
            pick[i] += 1;
            if pick[i] < slots[i].options.len() {
                current[i].1 = slots[i].options[pick[i]].clone();
                break;
            }
            pick[i] = 0;
            current[i].1 = slots[i].options[0].clone();
            i += 1;
        }
    }
}

fn cofunctor_slots(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    object_map: &BTreeMap<ObjName, ObjName>,
) -> Vec<Slot<(ObjName, MorKey), MorKey>> {
    let mut slots = Vec::new();
    for a_obj in a.objects() {
        let phi_a = &object_map[a_obj];
        for u in b.morphisms_from(phi_a) {
            let options: Vec<MorKey> = a
                .morphisms_from(a_obj)
                .into_iter()
                .filter(|v| object_map.get(&v.cod) == Some(&u.cod))
                .collect();
            slots.push(Slot {
                key: (a_obj.clone(), u),
                options,
            });
        }
    }
    slots
}

fn functor_slots(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    object_map: &BTreeMap<ObjName, ObjName>,
) -> Vec<Slot<MorKey, MorKey>> {
    let mut slots = Vec::new();
    for u in a.morphisms() {
        let fa = &object_map[&u.dom];
        let fb = &object_map[&u.cod];
        let options: Vec<MorKey> = (0..b.hom_size(fa, fb))
            .map(|i| MorKey::new(fa.clone(), fb.clone(), i))
            .collect();
        slots.push(Slot { key: u, options });
    }
    slots
}

/// Visit every structurally complete cofunctor candidate (law-unchecked),
/// in canonical order. Returns the number visited.
pub fn visit_cofunctor_candidates(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    limit: EnumLimit,
    mut visit: impl FnMut(&OrdinaryCofunctor),
) -> Result<u128, OracleError> {
    let maps = object_maps(a, b);
    let mut needed = 0u128;
    for object_map in &maps {
        let slots = cofunctor_slots(a, b, object_map);
        if slots.iter().all(|s| !s.options.is_empty()) {
            needed = needed.saturating_add(product_size(&slots));
        }
    }
    if needed > limit.max_candidates {
        return Err(OracleError::BoundExceeded {
            needed,
            bound: limit.max_candidates,
        });
    }
    let mut count = 0u128;
    for object_map in maps {
        let slots = cofunctor_slots(a, b, &object_map);
        if slots.iter().any(|s| s.options.is_empty()) {
            continue;
        }
        for_each_choice(&slots, |choice| {
            let c = OrdinaryCofunctor {
                object_map: object_map.clone(),
                lifts: choice.iter().cloned().collect(),
            };
            count += 1;
            visit(&c);
        });
    }
    Ok(count)
}

/// Visit every structurally complete functor candidate, in canonical order.
pub fn visit_functor_candidates(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    limit: EnumLimit,
    mut visit: impl FnMut(&OrdinaryFunctor),
) -> Result<u128, OracleError> {
    let maps = object_maps(a, b);
    let mut needed = 0u128;
    for object_map in &maps {
        let slots = functor_slots(a, b, object_map);
        if slots.iter().all(|s| !s.options.is_empty()) {
            needed = needed.saturating_add(product_size(&slots));
        }
    }
    if needed > limit.max_candidates {
        return Err(OracleError::BoundExceeded {
            needed,
            bound: limit.max_candidates,
        });
    }
    let mut count = 0u128;
    for object_map in maps {
        let slots = functor_slots(a, b, &object_map);
        if slots.iter().any(|s| s.options.is_empty()) {
            continue;
        }
        for_each_choice(&slots, |choice| {
            let f = OrdinaryFunctor {
                object_map: object_map.clone(),
                mor_map: choice.iter().cloned().collect(),
            };
            count += 1;
            visit(&f);
        });
    }
    Ok(count)
}

/// Visit every structurally complete lens candidate (functor table ×
/// cofunctor table over a shared object map), in canonical order.
pub fn visit_lens_candidates(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    limit: EnumLimit,
    mut visit: impl FnMut(&OrdinaryLens),
) -> Result<u128, OracleError> {
    let maps = object_maps(a, b);
    let mut needed = 0u128;
    for object_map in &maps {
        let fs = functor_slots(a, b, object_map);
        let cs = cofunctor_slots(a, b, object_map);
        if fs.iter().all(|s| !s.options.is_empty()) && cs.iter().all(|s| !s.options.is_empty()) {
            needed = needed.saturating_add(product_size(&fs).saturating_mul(product_size(&cs)));
        }
    }
    if needed > limit.max_candidates {
        return Err(OracleError::BoundExceeded {
            needed,
            bound: limit.max_candidates,
        });
    }
    let mut count = 0u128;
    for object_map in maps {
        let fs = functor_slots(a, b, &object_map);
        let cs = cofunctor_slots(a, b, &object_map);
        if fs.iter().any(|s| s.options.is_empty()) || cs.iter().any(|s| s.options.is_empty()) {
            continue;
        }
        for_each_choice(&fs, |fchoice| {
            let functor = OrdinaryFunctor {
                object_map: object_map.clone(),
                mor_map: fchoice.iter().cloned().collect(),
            };
            for_each_choice(&cs, |cchoice| {
                let lens = OrdinaryLens {
                    functor: functor.clone(),
                    cofunctor: OrdinaryCofunctor {
                        object_map: object_map.clone(),
                        lifts: cchoice.iter().cloned().collect(),
                    },
                };
                count += 1;
                visit(&lens);
            });
        });
    }
    Ok(count)
}

/// All valid cofunctors `A ⇸ B`, by exhaustive search filtered through the
/// direct equations.
pub fn enumerate_cofunctors(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    limit: EnumLimit,
) -> Result<Vec<OrdinaryCofunctor>, OracleError> {
    let mut out = Vec::new();
    visit_cofunctor_candidates(a, b, limit, |c| {
        if direct_check_cofunctor(a, b, c).unwrap_or(false) {
            out.push(c.clone());
        }
    })?;
    Ok(out)
}

/// All valid functors `A → B`.
pub fn enumerate_functors(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    limit: EnumLimit,
) -> Result<Vec<OrdinaryFunctor>, OracleError> {
    let mut out = Vec::new();
    visit_functor_candidates(a, b, limit, |f| {
        if direct_check_functor(a, b, f).unwrap_or(false) {
            out.push(f.clone());
        }
    })?;
    Ok(out)
}

/// All valid delta lenses `A ⇄ B`.
pub fn enumerate_lenses(
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    limit: EnumLimit,
) -> Result<Vec<OrdinaryLens>, OracleError> {
    let mut out = Vec::new();
    visit_lens_candidates(a, b, limit, |l| {
        if direct_check_lens(a, b, l).unwrap_or(false) {
            out.push(l.clone());
        }
    })?;
    Ok(out)
}

/// Compose cofunctor tables directly (diagrammatic order).
pub fn compose_ordinary_cofunctors(
    a: &OrdinaryCategory,
    c: &OrdinaryCategory,
    p: &OrdinaryCofunctor,
    q: &OrdinaryCofunctor,
) -> Result<OrdinaryCofunctor, OracleError> {
    let mut object_map = BTreeMap::new();
    for a_obj in a.objects() {
        let pa = &p.object_map[a_obj];
        object_map.insert(a_obj.clone(), q.object_map[pa].clone());
    }
    let mut lifts = BTreeMap::new();
    for a_obj in a.objects() {
        let pa = p.object_map[a_obj].clone();
        for u in c.morphisms_from(&object_map[a_obj]) {
            let mid = lift_of(q, &pa, &u)?.clone();
            let v = lift_of(p, a_obj, &mid)?.clone();
            lifts.insert((a_obj.clone(), u), v);
        }
    }
    Ok(OrdinaryCofunctor { object_map, lifts })
}

// ---------------------------------------------------------------------------
// Translations to and from the finite-set enrichment
// ---------------------------------------------------------------------------

/// The finite-set enrichment of an ordinary category: hom-objects are the
/// hom-set sizes, structure maps are the index tables.
pub fn to_enriched_category(c: &OrdinaryCategory) -> EnrichedCategory<FinSetBase> {
    let base = FinSetBase::new();
    let mut hom = BTreeMap::new();
    let mut identities = BTreeMap::new();
    let mut compositions = BTreeMap::new();
    for x in c.objects() {
        for y in c.objects() {
            hom.insert((x.clone(), y.clone()), c.hom_size(x, y));
        }
    }
    for x in c.objects() {
        identities.insert(x.clone(), FinFun::new(1, c.hom_size(x, x), vec![c.identity_idx(x)]));
    }
    for x in c.objects() {
        for y in c.objects() {
            for z in c.objects() {
                let sxy = c.hom_size(x, y);
                let syz = c.hom_size(y, z);
                let mut table = Vec::with_capacity(sxy * syz);
                for i in 0..sxy {
                    for j in 0..syz {
                        table.push(c.compose_idx(x, y, z, i, j).expect("validated category"));
                    }
                }
                compositions.insert(
                    (x.clone(), y.clone(), z.clone()),
                    FinFun::new(sxy * syz, c.hom_size(x, z), table),
                );
            }
        }
    }
    EnrichedCategory::new(base, c.objects().to_vec(), hom, identities, compositions)
        .expect("sorted unique objects")
}

/// Inverse of [`to_enriched_category`]; fails if the enriched data does not
/// present a valid ordinary category.
pub fn from_enriched_category(
    e: &EnrichedCategory<FinSetBase>,
) -> Result<OrdinaryCategory, OracleError> {
    let mut hom_sizes = BTreeMap::new();
    let mut identities = BTreeMap::new();
    let mut composition = BTreeMap::new();
    for x in e.objects() {
        for y in e.objects() {
            let size = *e
                .hom(x, y)
                .ok_or_else(|| OracleError::Incomplete(format!("hom({x},{y})")))?;
            hom_sizes.insert((x.clone(), y.clone()), size);
        }
    }
    for x in e.objects() {
        let eta = e
            .identity_elem(x)
            .ok_or_else(|| OracleError::Incomplete(format!("identity at {x}")))?;
        let idx = eta
            .apply(0)
            .ok_or_else(|| OracleError::Incomplete(format!("identity table at {x}")))?;
        identities.insert(x.clone(), idx);
    }
    for x in e.objects() {
        for y in e.objects() {
            for z in e.objects() {
                let mu = e
                    .composition_map(x, y, z)
                    .ok_or_else(|| OracleError::Incomplete(format!("composition ({x},{y},{z})")))?;
                let syz = hom_sizes[&(y.clone(), z.clone())];
                for i in 0..hom_sizes[&(x.clone(), y.clone())] {
                    for j in 0..syz {
                        let k = mu.apply(i * syz + j).ok_or_else(|| {
                            OracleError::Incomplete(format!("composition table ({x},{y},{z})"))
                        })?;
                        composition.insert((x.clone(), y.clone(), z.clone(), i, j), k);
                    }
                }
            }
        }
    }
    OrdinaryCategory::new(e.objects().to_vec(), hom_sizes, identities, composition)
}

/// Offset of morphism `x[k]` inside the canonical fibre coproduct of
/// `map⁻¹{b}` at `a`.
fn fibre_offset(
    a_cat: &OrdinaryCategory,
    object_map: &BTreeMap<ObjName, ObjName>,
    a: &str,
    b: &str,
    x: &str,
) -> Option<usize> {
    let mut offset = 0usize;
    for cand in a_cat.objects() {
        if object_map.get(cand).map(String::as_str) != Some(b) {
            continue;
        }
        if cand == x {
            return Some(offset);
        }
        offset += a_cat.hom_size(a, cand);
    }
    None
}

/// The finite-set enrichment of a cofunctor: lifting maps become tables
/// into the offset-encoded fibre coproducts. `src`/`tgt` must be the
/// enrichments of `a`/`b`.
pub fn to_enriched_cofunctor(
    src: &Arc<EnrichedCategory<FinSetBase>>,
    tgt: &Arc<EnrichedCategory<FinSetBase>>,
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    c: &OrdinaryCofunctor,
) -> Result<EnrichedCofunctor<FinSetBase>, OracleError> {
    let mut lift_maps = BTreeMap::new();
    for a_obj in a.objects() {
        let phi_a = &c.object_map[a_obj];
        for b_obj in b.objects() {
            let dom = b.hom_size(phi_a, b_obj);
            let fibre_total: usize = a
                .objects()
                .iter()
                .filter(|x| c.object_map.get(*x) == Some(b_obj))
                .map(|x| a.hom_size(a_obj, x))
                .sum();
            let mut table = Vec::with_capacity(dom);
            for i in 0..dom {
                let u = MorKey::new(phi_a.clone(), b_obj.clone(), i);
                let v = lift_of(c, a_obj, &u)?;
                let off = fibre_offset(a, &c.object_map, a_obj, b_obj, &v.cod)
                    .ok_or_else(|| OracleError::Incomplete(format!("fibre of {b_obj}")))?;
                table.push(off + v.idx);
            }
            lift_maps.insert(
                (a_obj.clone(), b_obj.clone()),
                FinFun::new(dom, fibre_total, table),
            );
        }
    }
    Ok(EnrichedCofunctor::new(
        Arc::clone(src),
        Arc::clone(tgt),
        c.object_map.clone(),
        lift_maps,
    )?)
}

/// Inverse of [`to_enriched_cofunctor`].
pub fn from_enriched_cofunctor(
    e: &EnrichedCofunctor<FinSetBase>,
) -> Result<OrdinaryCofunctor, OracleError> {
    let a = from_enriched_category(e.source())?;
    let object_map: BTreeMap<ObjName, ObjName> = e.object_map().clone();
    let mut lifts = BTreeMap::new();
    for a_obj in a.objects() {
        let phi_a = &object_map[a_obj];
        for b_obj in e.target().objects() {
            let entry = e
                .lift(a_obj, b_obj)
                .ok_or_else(|| OracleError::Incomplete(format!("lift at ({a_obj},{b_obj})")))?;
            for (i, &enc) in entry.map().table().iter().enumerate() {
                // decode offset + index against the fibre blocks
                let mut rem = enc;
                let mut found = None;
                for lab in entry.fibre().labels() {
                    let x = lab.as_name().unwrap().to_string();
                    let size = a.hom_size(a_obj, &x);
                    if rem < size {
                        found = Some(MorKey::new(a_obj.clone(), x, rem));
                        break;
                    }
                    rem -= size;
                }
                let v = found
                    .ok_or_else(|| OracleError::Incomplete(format!("lift code {enc} decodes")))?;
                lifts.insert(
                    (a_obj.clone(), MorKey::new(phi_a.clone(), b_obj.clone(), i)),
                    v,
                );
            }
        }
    }
    Ok(OrdinaryCofunctor { object_map, lifts })
}

/// The finite-set enrichment of a functor.
pub fn to_enriched_functor(
    src: &Arc<EnrichedCategory<FinSetBase>>,
    tgt: &Arc<EnrichedCategory<FinSetBase>>,
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    f: &OrdinaryFunctor,
) -> Result<EnrichedFunctor<FinSetBase>, OracleError> {
    let mut hom_maps = BTreeMap::new();
    for x in a.objects() {
        for y in a.objects() {
            let fx = &f.object_map[x];
            let fy = &f.object_map[y];
            let dom = a.hom_size(x, y);
            let cod = b.hom_size(fx, fy);
            let mut table = Vec::with_capacity(dom);
            for i in 0..dom {
                let u = MorKey::new(x.clone(), y.clone(), i);
                let fu = f
                    .mor_map
                    .get(&u)
                    .ok_or_else(|| OracleError::Incomplete(format!("morphism map at {u:?}")))?;
                table.push(fu.idx);
            }
            hom_maps.insert((x.clone(), y.clone()), FinFun::new(dom, cod, table));
        }
    }
    Ok(EnrichedFunctor::new(
        Arc::clone(src),
        Arc::clone(tgt),
        f.object_map.clone(),
        hom_maps,
    )?)
}

/// Inverse of [`to_enriched_functor`].
pub fn from_enriched_functor(
    e: &EnrichedFunctor<FinSetBase>,
) -> Result<OrdinaryFunctor, OracleError> {
    let a = from_enriched_category(e.source())?;
    let object_map = e.object_map().clone();
    let mut mor_map = BTreeMap::new();
    for x in a.objects() {
        for y in a.objects() {
            let m = e
                .hom_map(x, y)
                .ok_or_else(|| OracleError::Incomplete(format!("hom map at ({x},{y})")))?;
            for i in 0..a.hom_size(x, y) {
                let j = m
                    .apply(i)
                    .ok_or_else(|| OracleError::Incomplete(format!("hom table at ({x},{y})")))?;
                mor_map.insert(
                    MorKey::new(x.clone(), y.clone(), i),
                    MorKey::new(object_map[x].clone(), object_map[y].clone(), j),
                );
            }
        }
    }
    Ok(OrdinaryFunctor {
        object_map,
        mor_map,
    })
}

/// The finite-set enrichment of a delta lens.
pub fn to_enriched_lens(
    src: &Arc<EnrichedCategory<FinSetBase>>,
    tgt: &Arc<EnrichedCategory<FinSetBase>>,
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    l: &OrdinaryLens,
) -> Result<EnrichedLens<FinSetBase>, OracleError> {
    let functor = to_enriched_functor(src, tgt, a, b, &l.functor)?;
    let cofunctor = to_enriched_cofunctor(src, tgt, a, b, &l.cofunctor)?;
    Ok(EnrichedLens::new(functor, cofunctor)?)
}

/// Inverse of [`to_enriched_lens`].
pub fn from_enriched_lens(e: &EnrichedLens<FinSetBase>) -> Result<OrdinaryLens, OracleError> {
    Ok(OrdinaryLens {
        functor: from_enriched_functor(e.functor())?,
        cofunctor: from_enriched_cofunctor(e.cofunctor())?,
    })
}

// ---------------------------------------------------------------------------
// Weighted translations: ordinary structures plus per-morphism weights
// ---------------------------------------------------------------------------

/// A category enriched in `Fam(W)`: hom-objects are weight families indexed
/// by the hom-sets, structure maps are the same index tables with the
/// witnesses implied by the order check.
pub fn weighted_category<W: ThinMonoidalPoset>(
    base: FamBase<W>,
    c: &OrdinaryCategory,
    weights: &BTreeMap<MorKey, W::Elem>,
) -> Result<EnrichedCategory<FamBase<W>>, OracleError> {
    let weight_of = |m: &MorKey| -> Result<W::Elem, OracleError> {
        weights
            .get(m)
            .cloned()
            .ok_or_else(|| OracleError::Incomplete(format!("weight of {m:?}")))
    };
    let family = |x: &str, y: &str| -> Result<Vec<W::Elem>, OracleError> {
        (0..c.hom_size(x, y))
            .map(|i| weight_of(&MorKey::new(x, y, i)))
            .collect()
    };
    let mut hom = BTreeMap::new();
    let mut identities = BTreeMap::new();
    let mut compositions = BTreeMap::new();
    for x in c.objects() {
        for y in c.objects() {
            hom.insert((x.clone(), y.clone()), family(x, y)?);
        }
    }
    for x in c.objects() {
        identities.insert(
            x.clone(),
            base.mor(base.unit(), family(x, x)?, vec![c.identity_idx(x)]),
        );
    }
    for x in c.objects() {
        for y in c.objects() {
            for z in c.objects() {
                let syz = c.hom_size(y, z);
                let mut map = Vec::with_capacity(c.hom_size(x, y) * syz);
                for i in 0..c.hom_size(x, y) {
                    for j in 0..syz {
                        map.push(c.compose_idx(x, y, z, i, j).expect("validated category"));
                    }
                }
                let dom = base.tensor_obj(&family(x, y)?, &family(y, z)?);
                compositions.insert(
                    (x.clone(), y.clone(), z.clone()),
                    base.mor(dom, family(x, z)?, map),
                );
            }
        }
    }
    Ok(EnrichedCategory::new(
        base,
        c.objects().to_vec(),
        hom,
        identities,
        compositions,
    )?)
}

/// A functor between weighted categories: same index tables, witnesses
/// implied.
pub fn weighted_functor<W: ThinMonoidalPoset>(
    src: &Arc<EnrichedCategory<FamBase<W>>>,
    tgt: &Arc<EnrichedCategory<FamBase<W>>>,
    a: &OrdinaryCategory,
    f: &OrdinaryFunctor,
) -> Result<EnrichedFunctor<FamBase<W>>, OracleError> {
    let base = src.base().clone();
    let mut hom_maps = BTreeMap::new();
    for x in a.objects() {
        for y in a.objects() {
            let fx = &f.object_map[x];
            let fy = &f.object_map[y];
            let dom = src
                .hom(x, y)
                .ok_or_else(|| OracleError::Incomplete(format!("hom({x},{y})")))?
                .clone();
            let cod = tgt
                .hom(fx, fy)
                .ok_or_else(|| OracleError::Incomplete(format!("hom({fx},{fy})")))?
                .clone();
            let mut map = Vec::with_capacity(dom.len());
            for i in 0..dom.len() {
                let u = MorKey::new(x.clone(), y.clone(), i);
                let fu = f
                    .mor_map
                    .get(&u)
                    .ok_or_else(|| OracleError::Incomplete(format!("morphism map at {u:?}")))?;
                map.push(fu.idx);
            }
            hom_maps.insert((x.clone(), y.clone()), base.mor(dom, cod, map));
        }
    }
    Ok(EnrichedFunctor::new(
        Arc::clone(src),
        Arc::clone(tgt),
        f.object_map.clone(),
        hom_maps,
    )?)
}

/// A cofunctor between weighted categories.
pub fn weighted_cofunctor<W: ThinMonoidalPoset>(
    src: &Arc<EnrichedCategory<FamBase<W>>>,
    tgt: &Arc<EnrichedCategory<FamBase<W>>>,
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    c: &OrdinaryCofunctor,
) -> Result<EnrichedCofunctor<FamBase<W>>, OracleError> {
    let base = src.base().clone();
    let mut lift_maps = BTreeMap::new();
    for a_obj in a.objects() {
        let phi_a = &c.object_map[a_obj];
        for b_obj in b.objects() {
            let dom = tgt
                .hom(phi_a, b_obj)
                .ok_or_else(|| OracleError::Incomplete(format!("hom({phi_a},{b_obj})")))?
                .clone();
            let mut cod: Vec<W::Elem> = Vec::new();
            for x in a.objects() {
                if c.object_map.get(x) == Some(b_obj) {
                    cod.extend(
                        src.hom(a_obj, x)
                            .ok_or_else(|| OracleError::Incomplete(format!("hom({a_obj},{x})")))?
                            .iter()
                            .cloned(),
                    );
                }
            }
            let mut map = Vec::with_capacity(dom.len());
            for i in 0..dom.len() {
                let u = MorKey::new(phi_a.clone(), b_obj.clone(), i);
                let v = lift_of(c, a_obj, &u)?;
                let off = fibre_offset(a, &c.object_map, a_obj, b_obj, &v.cod)
                    .ok_or_else(|| OracleError::Incomplete(format!("fibre of {b_obj}")))?;
                map.push(off + v.idx);
            }
            lift_maps.insert((a_obj.clone(), b_obj.clone()), base.mor(dom, cod, map));
        }
    }
    Ok(EnrichedCofunctor::new(
        Arc::clone(src),
        Arc::clone(tgt),
        c.object_map.clone(),
        lift_maps,
    )?)
}

/// A lens between weighted categories.
pub fn weighted_lens<W: ThinMonoidalPoset>(
    src: &Arc<EnrichedCategory<FamBase<W>>>,
    tgt: &Arc<EnrichedCategory<FamBase<W>>>,
    a: &OrdinaryCategory,
    b: &OrdinaryCategory,
    l: &OrdinaryLens,
) -> Result<EnrichedLens<FamBase<W>>, OracleError> {
    let functor = weighted_functor(src, tgt, a, &l.functor)?;
    let cofunctor = weighted_cofunctor(src, tgt, a, b, &l.cofunctor)?;
    Ok(EnrichedLens::new(functor, cofunctor)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_categories_validate() {
        OrdinaryCategory::terminal();
        OrdinaryCategory::walking_arrow();
        OrdinaryCategory::commutative_square();
    }

    #[test]
    fn commutative_square_shape() {
        let sq = OrdinaryCategory::commutative_square();
        assert_eq!(sq.objects().len(), 4);
        assert_eq!(sq.morphisms().len(), 9);
    }

    #[test]
    fn terminal_cofunctors_and_lenses() {
        let one = OrdinaryCategory::terminal();
        let lim = EnumLimit::default();
        assert_eq!(enumerate_cofunctors(&one, &one, lim).unwrap().len(), 1);
        let two = OrdinaryCategory::walking_arrow();
        assert_eq!(enumerate_lenses(&two, &one, lim).unwrap().len(), 1);
        assert_eq!(enumerate_cofunctors(&two, &one, lim).unwrap().len(), 1);
    }

    #[test]
    fn bound_exceeded_is_clean() {
        let sq = OrdinaryCategory::commutative_square();
        let err = enumerate_cofunctors(&sq, &sq, EnumLimit::new(1)).unwrap_err();
        assert!(matches!(err, OracleError::BoundExceeded { .. }));
    }

    #[test]
    fn category_round_trip() {
        for cat in [
            OrdinaryCategory::terminal(),
            OrdinaryCategory::walking_arrow(),
            OrdinaryCategory::commutative_square(),
        ] {
            let e = to_enriched_category(&cat);
            assert_eq!(from_enriched_category(&e).unwrap(), cat);
        }
    }

    #[test]
    fn bijective_on_objects_functor_read_backwards() {
        // a bijective-on-objects functor B → A, read backwards, is a valid
        // cofunctor A ⇸ B; take the identity on the walking arrow
        let two = OrdinaryCategory::walking_arrow();
        let object_map: BTreeMap<_, _> = two
            .objects()
            .iter()
            .map(|o| (o.clone(), o.clone()))
            .collect();
        let mut lifts = BTreeMap::new();
        for a_obj in two.objects() {
            for u in two.morphisms_from(a_obj) {
                lifts.insert((a_obj.clone(), u.clone()), u);
            }
        }
        let c = OrdinaryCofunctor { object_map, lifts };
        assert!(direct_check_cofunctor(&two, &two, &c).unwrap());
    }

    /// The group Z/2 as a one-object category: morphisms `{e, a}`, `aa = e`.
    fn z2_category() -> OrdinaryCategory {
        let m = "m".to_string();
        let composition = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
            .into_iter()
            .map(|(i, j, k)| ((m.clone(), m.clone(), m.clone(), i, j), k))
            .collect();
        OrdinaryCategory::new(
            vec![m.clone()],
            [((m.clone(), m.clone()), 2usize)].into(),
            [(m.clone(), 0usize)].into(),
            composition,
        )
        .unwrap()
    }

    #[test]
    fn mutated_lift_verdicts_match_membership() {
        // on Z/2 there are exactly two valid cofunctor tables (the monoid
        // endomorphisms read backwards); a single well-typed mutation either
        // lands on the other valid table or breaks an equation
        let z2 = z2_category();
        let valid = enumerate_cofunctors(&z2, &z2, EnumLimit::default()).unwrap();
        assert_eq!(valid.len(), 2);
        for c in &valid {
            assert!(direct_check_cofunctor(&z2, &z2, c).unwrap());
            for ((a_obj, u), v) in &c.lifts {
                for alt_idx in 0..2 {
                    if alt_idx == v.idx {
                        continue;
                    }
                    let mut mutant = c.clone();
                    mutant.lifts.insert(
                        (a_obj.clone(), u.clone()),
                        MorKey::new(v.dom.clone(), v.cod.clone(), alt_idx),
                    );
                    assert_eq!(
                        direct_check_cofunctor(&z2, &z2, &mutant).unwrap(),
                        valid.contains(&mutant)
                    );
                }
            }
        }
    }
}
