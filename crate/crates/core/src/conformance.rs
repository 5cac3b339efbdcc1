//! The base-interface invariant suite: every concrete base must satisfy
//! the coproduct calculus laws on the object samples it is exercised with.
//! Used by each base's own tests and by the acceptance suite.

use crate::base::{
    self, BaseError, Coproduct, Label, MonoidalBase,
};

/// First invariant violation found, with enough context to locate it.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("base conformance failure ({law}): {detail}")]
pub struct ConformanceFailure {
    pub law: String,
    pub detail: String,
}

impl ConformanceFailure {
    fn new(law: &str, detail: impl Into<String>) -> Self {
        ConformanceFailure {
            law: law.to_string(),
            detail: detail.into(),
        }
    }
}

fn base_err(law: &str) -> impl Fn(BaseError) -> ConformanceFailure + '_ {
    move |e| ConformanceFailure::new(law, e.to_string())
}

fn labelled<B: MonoidalBase>(objs: &[B::Obj]) -> Vec<(Label, B::Obj)> {
    objs.iter()
        .enumerate()
        .map(|(i, o)| (Label::name(format!("s{i:02}")), o.clone()))
        .collect()
}

/// Tensor strictness: associativity and unitality as object equalities,
/// and functoriality identities on morphisms.
pub fn tensor_strictness<B: MonoidalBase>(
    base: &B,
    objects: &[B::Obj],
) -> Result<(), ConformanceFailure> {
    let unit = base.unit();
    for a in objects {
        if base.tensor_obj(&unit, a) != *a || base.tensor_obj(a, &unit) != *a {
            return Err(ConformanceFailure::new(
                "tensor-unitality",
                format!("unit tensor differs at {}", base.format_obj(a)),
            ));
        }
        let id_a = base.identity(a);
        let id_unit = base.identity(&unit);
        if base.tensor_mor(&id_a, &id_unit) != id_a || base.tensor_mor(&id_unit, &id_a) != id_a {
            return Err(ConformanceFailure::new(
                "tensor-unitality",
                format!("unit tensor on identities differs at {}", base.format_obj(a)),
            ));
        }
        for b in objects {
            if base.tensor_mor(&base.identity(a), &base.identity(b))
                != base.identity(&base.tensor_obj(a, b))
            {
                return Err(ConformanceFailure::new(
                    "tensor-functoriality",
                    "tensor of identities is not the identity of the tensor".to_string(),
                ));
            }
            for c in objects {
                let lhs = base.tensor_obj(&base.tensor_obj(a, b), c);
                let rhs = base.tensor_obj(a, &base.tensor_obj(b, c));
                if lhs != rhs {
                    return Err(ConformanceFailure::new(
                        "tensor-associativity",
                        format!(
                            "({}⊗{})⊗{} differs from the right-nested tensor",
                            base.format_obj(a),
                            base.format_obj(b),
                            base.format_obj(c)
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Copair/injection universal property over the supplied legs, plus
/// `copair(injections) = id`.
pub fn copair_laws<B: MonoidalBase>(
    base: &B,
    summands: &[B::Obj],
    cod: &B::Obj,
    leg_choices: &dyn Fn(&B::Obj, &B::Obj) -> Vec<B::Mor>,
) -> Result<(), ConformanceFailure> {
    let cop = Coproduct::new(base, labelled::<B>(summands)).map_err(base_err("copair"))?;
    let ident = cop
        .copair_injections(base)
        .map_err(base_err("copair-injections"))?;
    if ident != base.identity(cop.total()) {
        return Err(ConformanceFailure::new(
            "copair-injections",
            "copairing the injections is not the identity",
        ));
    }
    // exhaust the cartesian product of per-summand leg choices
    let menus: Vec<Vec<B::Mor>> = summands.iter().map(|s| leg_choices(s, cod)).collect();
    if menus.iter().any(|m| m.is_empty()) && !summands.is_empty() {
        return Ok(());
    }
    let mut picks = vec![0usize; menus.len()];
    loop {
        let legs: Vec<B::Mor> = menus
            .iter()
            .zip(&picks)
            .map(|(m, &i)| m[i].clone())
            .collect();
        let h = cop.copair(base, cod, &legs).map_err(base_err("copair"))?;
        for (i, leg) in legs.iter().enumerate() {
            let via = base
                .compose(&cop.injections()[i], &h)
                .map_err(base_err("copair"))?;
            if via != *leg {
                return Err(ConformanceFailure::new(
                    "copair-universal",
                    format!("injection {i} composed with the copairing is not leg {i}"),
                ));
            }
        }
        let mut i = 0;
        loop {
            if i == picks.len() {
                return Ok(());
            }
            picks[i] += 1;
            if picks[i] < menus[i].len() {
                break;
            }
            picks[i] = 0;
            i += 1;
        }
    }
}

/// Both distributors compose with their copair-built inverses to the
/// identity, in both orders, and satisfy the injection-compatibility
/// squares.
pub fn distributor_laws<B: MonoidalBase>(
    base: &B,
    summands: &[B::Obj],
    b: &B::Obj,
) -> Result<(), ConformanceFailure> {
    let cop = Coproduct::new(base, labelled::<B>(summands)).map_err(base_err("distributor"))?;
    let e = base_err("distributor");

    let fwd = base::distribute_right(base, &cop, b);
    let inv = base::distribute_right_inv(base, &cop, b).map_err(e)?;
    let there = base.compose(&fwd, &inv).map_err(e)?;
    let back = base.compose(&inv, &fwd).map_err(e)?;
    if there != base.identity(&base.tensor_obj(cop.total(), b)) {
        return Err(ConformanceFailure::new(
            "distribute-right",
            "forward then inverse is not the identity",
        ));
    }
    let tens_r = base::tensor_cop_right(base, &cop, b);
    if back != base.identity(tens_r.total()) {
        return Err(ConformanceFailure::new(
            "distribute-right",
            "inverse then forward is not the identity",
        ));
    }
    let id_b = base.identity(b);
    for i in 0..cop.len() {
        let lhs = base
            .compose(&base.tensor_mor(&cop.injections()[i], &id_b), &fwd)
            .map_err(e)?;
        if lhs != tens_r.injections()[i] {
            return Err(ConformanceFailure::new(
                "distribute-right",
                format!("injection square fails at summand {i}"),
            ));
        }
    }

    let fwd_l = base::distribute_left(base, b, &cop);
    let inv_l = base::distribute_left_inv(base, b, &cop).map_err(e)?;
    let there_l = base.compose(&fwd_l, &inv_l).map_err(e)?;
    let back_l = base.compose(&inv_l, &fwd_l).map_err(e)?;
    if there_l != base.identity(&base.tensor_obj(b, cop.total())) {
        return Err(ConformanceFailure::new(
            "distribute-left",
            "forward then inverse is not the identity",
        ));
    }
    let tens_l = base::tensor_cop_left(base, b, &cop);
    if back_l != base.identity(tens_l.total()) {
        return Err(ConformanceFailure::new(
            "distribute-left",
            "inverse then forward is not the identity",
        ));
    }
    for i in 0..cop.len() {
        let lhs = base
            .compose(&base.tensor_mor(&id_b, &cop.injections()[i]), &fwd_l)
            .map_err(e)?;
        if lhs != tens_l.injections()[i] {
            return Err(ConformanceFailure::new(
                "distribute-left",
                format!("injection square fails at summand {i}"),
            ));
        }
    }
    Ok(())
}

/// Flatten canonicality: the flat coproduct is independent of the nesting,
/// and the iso routes composite injections onto flat injections.
pub fn flatten_laws<B: MonoidalBase>(
    base: &B,
    groups: &[Vec<(Label, B::Obj)>],
) -> Result<(), ConformanceFailure> {
    let e = base_err("flatten");
    let inners: Vec<Coproduct<B>> = groups
        .iter()
        .map(|g| Coproduct::new(base, g.clone()))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    let outer = Coproduct::new(
        base,
        inners
            .iter()
            .enumerate()
            .map(|(i, c)| (Label::name(format!("g{i:02}")), c.total().clone()))
            .collect(),
    )
    .map_err(e)?;
    let (flat, iso) = base::flatten(base, &outer, &inners).map_err(e)?;
    // composite injections commute with the iso
    for (i, inner) in inners.iter().enumerate() {
        for (j, lab) in inner.labels().iter().enumerate() {
            let composite = base
                .compose(&inner.injections()[j], &outer.injections()[i])
                .map_err(e)?;
            let routed = base.compose(&composite, &iso).map_err(e)?;
            let direct = flat
                .injection_at(lab)
                .ok_or_else(|| ConformanceFailure::new("flatten", "missing flat label"))?;
            if routed != *direct {
                return Err(ConformanceFailure::new(
                    "flatten",
                    format!("composite injection at {lab} does not route onto the flat injection"),
                ));
            }
        }
    }
    // nesting-independence: any regrouping of the same labelled summands
    // yields the same flat coproduct (re-nest as one big group and compare)
    let all: Vec<(Label, B::Obj)> = groups.iter().flatten().cloned().collect();
    let single_inner = Coproduct::new(base, all).map_err(e)?;
    let single_outer = Coproduct::new(
        base,
        vec![(Label::name("only"), single_inner.total().clone())],
    )
    .map_err(e)?;
    let (flat2, _) = base::flatten(base, &single_outer, &[single_inner]).map_err(e)?;
    if flat != flat2 {
        return Err(ConformanceFailure::new(
            "flatten",
            "flat coproduct depends on the nesting",
        ));
    }
    Ok(())
}

/// The full calculus suite over a set of sample objects: strictness,
/// copairing, distributors, and flatten coherence for all summand tuples of
/// length ≤ `max_summands` drawn from `objects`.
pub fn calculus_suite<B: MonoidalBase>(
    base: &B,
    objects: &[B::Obj],
    max_summands: usize,
    leg_choices: &dyn Fn(&B::Obj, &B::Obj) -> Vec<B::Mor>,
) -> Result<(), ConformanceFailure> {
    tensor_strictness(base, objects)?;
    let mut tuples: Vec<Vec<B::Obj>> = vec![Vec::new()];
    for len in 1..=max_summands {
        let mut index = vec![0usize; len];
        if objects.is_empty() {
            break;
        }
        loop {
            tuples.push(index.iter().map(|&i| objects[i].clone()).collect());
            let mut i = 0;
            loop {
                if i == len {
                    break;
                }
                index[i] += 1;
                if index[i] < objects.len() {
                    break;
                }
                index[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
        }
    }
    for tuple in &tuples {
        for cod in objects {
            copair_laws(base, tuple, cod, leg_choices)?;
        }
        for b in objects {
            distributor_laws(base, tuple, b)?;
        }
    }
    // flatten over two- and three-group nestings of small tuples
    for first in &tuples {
        for second in &tuples {
            let g1: Vec<(Label, B::Obj)> = first
                .iter()
                .enumerate()
                .map(|(i, o)| (Label::name(format!("a{i:02}")), o.clone()))
                .collect();
            let g2: Vec<(Label, B::Obj)> = second
                .iter()
                .enumerate()
                .map(|(i, o)| (Label::name(format!("b{i:02}")), o.clone()))
                .collect();
            flatten_laws(base, &[g1, g2])?;
        }
    }
    Ok(())
}
