//! The enrichment-base interface and the indexed-coproduct calculus.
//!
//! A [`MonoidalBase`] is a distributive monoidal category with decidable
//! morphism equality and canonical finite coproducts. Everything downstream
//! (enriched categories, cofunctors, lenses, the double category of cells)
//! is compiled down to morphisms of some base and compared with exact
//! payload equality; there is no up-to-isomorphism comparison anywhere.
//!
//! Canonical encodings are strict: tensoring is strictly associative and
//! strictly unital on the encodings each base chooses, so associators and
//! unitors never appear in composed paths. Coproducts are ordered by their
//! index labels; every fibre-indexed sum downstream is built over the
//! lexicographic order of object names, which is what makes composite
//! equality a plain data comparison.

use std::fmt;

use thiserror::Error;

/// Index label for coproduct summands.
///
/// Plain names cover fibre coproducts (labels are object names). Pair labels
/// appear when a nested double sum is flattened: the inner and outer index
/// are kept as a structured pair so labels stay globally unique and sort
/// inner-major, which is the grouping the composite diagrams need.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Name(String),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn name(s: impl Into<String>) -> Self {
        Label::Name(s.into())
    }

    pub fn pair(first: Label, second: Label) -> Self {
        Label::Pair(Box::new(first), Box::new(second))
    }

    /// The plain name, if this is a `Name` label.
    pub fn as_name(&self) -> Option<&str> {
        match self {
            Label::Name(s) => Some(s),
            Label::Pair(..) => None,
        }
    }

    /// The two halves, if this is a `Pair` label.
    pub fn as_pair(&self) -> Option<(&Label, &Label)> {
        match self {
            Label::Name(_) => None,
            Label::Pair(a, b) => Some((a, b)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Name(s) => write!(f, "{s}"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Errors raised by base-level operations and the coproduct calculus.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("cannot compose: first codomain {cod} does not match second domain {dom}")]
    ComposeMismatch { cod: String, dom: String },
    #[error("malformed morphism: {0}")]
    Malformed(String),
    #[error("copair expects {expected} legs, got {got}")]
    CopairArity { expected: usize, got: usize },
    #[error("copair leg {index} has domain {got}, expected summand {expected}")]
    CopairLegDomain {
        index: usize,
        got: String,
        expected: String,
    },
    #[error("copair leg {index} has codomain {got}, expected {expected}")]
    CopairLegCodomain {
        index: usize,
        got: String,
        expected: String,
    },
    #[error("labels and summands differ in length ({labels} labels, {summands} summands)")]
    LabelArity { labels: usize, summands: usize },
    #[error("duplicate coproduct label {0}")]
    DuplicateLabel(String),
    #[error("flatten: outer summand {index} is not the total of the supplied inner coproduct")]
    FlattenSummandMismatch { index: usize },
    #[error("flatten: expected {expected} inner coproducts, got {got}")]
    FlattenArity { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("invalid value: {0}")]
    InvalidValue(String),
}

/// A distributive monoidal category with canonical finite coproducts.
///
/// `compose(f, g)` is diagrammatic: `f` first, then `g`; it is defined iff
/// `cod(f) = dom(g)`. Tensor must be strictly associative and strictly
/// unital on the canonical encodings, and `tensor_mor` must be functorial.
///
/// Morphism values are plain data and may encode claims that do not denote
/// an actual morphism of the base (a tropical witness `x → y` with `x < y`,
/// a weight-increasing family map). `mor_wellformed` is the structural
/// shape check; `mor_valid` additionally decides whether the claimed
/// morphism exists. Base operations never panic on ill-formed payloads;
/// they either return an error or propagate data the validity checks will
/// reject.
pub trait MonoidalBase: Clone + PartialEq + fmt::Debug {
    type Obj: Clone + Eq + fmt::Debug;
    type Mor: Clone + Eq + fmt::Debug;

    /// Human-readable base identifier (`finset`, `finvec(gf(2))`, ...).
    fn describe(&self) -> String;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, BaseError>;

    /// Monoidal unit object.
    fn unit(&self) -> Self::Obj;
    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    /// Total of the canonical coproduct of `summands`, in the given order.
    fn sum_obj(&self, summands: &[Self::Obj]) -> Self::Obj;

    /// The initial object; the empty coproduct.
    fn initial(&self) -> Self::Obj {
        self.sum_obj(&[])
    }

    /// Injection of `summands[index]` into the canonical coproduct total.
    fn injection(&self, summands: &[Self::Obj], index: usize) -> Self::Mor;

    /// Universal map out of the canonical coproduct: one leg per summand,
    /// all legs sharing the codomain `cod`. `cod` is explicit so the empty
    /// coproduct has a unique map to every object.
    fn copair(
        &self,
        summands: &[Self::Obj],
        cod: &Self::Obj,
        legs: &[Self::Mor],
    ) -> Result<Self::Mor, BaseError>;

    /// Canonical iso `(Σᵢ Aᵢ) ⊗ B → Σᵢ (Aᵢ ⊗ B)`.
    fn distribute_right(&self, summands: &[Self::Obj], b: &Self::Obj) -> Self::Mor;

    /// Canonical iso `B ⊗ (Σᵢ Aᵢ) → Σᵢ (B ⊗ Aᵢ)`.
    fn distribute_left(&self, b: &Self::Obj, summands: &[Self::Obj]) -> Self::Mor;

    /// Structural shape check: payload consistent with its stated
    /// domain/codomain (table length and range, matrix dimensions, index
    /// maps in range).
    fn mor_wellformed(&self, f: &Self::Mor) -> bool;

    /// Does the claimed morphism exist? Equals `mor_wellformed` for bases
    /// where every well-shaped payload denotes a morphism; adds the order
    /// condition for thin-flavoured bases (tropical witnesses, family maps).
    fn mor_valid(&self, f: &Self::Mor) -> bool;

    /// Thin bases have at most one morphism per ordered pair of objects, so
    /// diagram commutativity reduces to existence of both paths.
    fn is_thin(&self) -> bool;

    fn format_obj(&self, a: &Self::Obj) -> String;
    fn format_mor(&self, f: &Self::Mor) -> String;
}

/// A base object presented as a canonical finite coproduct: ordered index
/// labels, summands, the total, and one injection per summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct<B: MonoidalBase> {
    labels: Vec<Label>,
    summands: Vec<B::Obj>,
    total: B::Obj,
    injections: Vec<B::Mor>,
}

impl<B: MonoidalBase> Coproduct<B> {
    /// Canonical coproduct over `entries` in the given order. Labels must be
    /// distinct. Deterministic: equal inputs give equal totals and
    /// injections.
    pub fn new(base: &B, entries: Vec<(Label, B::Obj)>) -> Result<Self, BaseError> {
        let (labels, summands): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(BaseError::DuplicateLabel(l.to_string()));
            }
        }
        let total = base.sum_obj(&summands);
        let injections = (0..summands.len())
            .map(|i| base.injection(&summands, i))
            .collect();
        Ok(Coproduct {
            labels,
            summands,
            total,
            injections,
        })
    }

    /// Like [`Coproduct::new`] but sorts the entries by label first; this is
    /// the canonical order every fibre-indexed sum uses.
    pub fn sorted(base: &B, mut entries: Vec<(Label, B::Obj)>) -> Result<Self, BaseError> {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Coproduct::new(base, entries)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn summands(&self) -> &[B::Obj] {
        &self.summands
    }

    pub fn total(&self) -> &B::Obj {
        &self.total
    }

    pub fn injections(&self) -> &[B::Mor] {
        &self.injections
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn injection_at(&self, label: &Label) -> Option<&B::Mor> {
        self.position(label).map(|i| &self.injections[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Label, &B::Obj)> {
        self.labels.iter().zip(self.summands.iter())
    }

    /// Universal map out of this coproduct determined by `legs`.
    pub fn copair(&self, base: &B, cod: &B::Obj, legs: &[B::Mor]) -> Result<B::Mor, BaseError> {
        base.copair(&self.summands, cod, legs)
    }

    /// Copairing of the injections themselves; equals the identity on the
    /// total.
    pub fn copair_injections(&self, base: &B) -> Result<B::Mor, BaseError> {
        base.copair(&self.summands, &self.total, &self.injections)
    }

    /// Same summands under new labels (order preserved).
    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Result<Self, BaseError> {
        let labels: Vec<Label> = self.labels.iter().map(|l| f(l)).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(BaseError::DuplicateLabel(l.to_string()));
            }
        }
        Ok(Coproduct {
            labels,
            summands: self.summands.clone(),
            total: self.total.clone(),
            injections: self.injections.clone(),
        })
    }
}

/// The canonical coproduct over labelled summands (order preserved).
pub fn coproduct<B: MonoidalBase>(
    base: &B,
    entries: Vec<(Label, B::Obj)>,
) -> Result<Coproduct<B>, BaseError> {
    Coproduct::new(base, entries)
}

/// The coproduct `Σᵢ (Aᵢ ⊗ b)` over the same labels as `cop`.
pub fn tensor_cop_right<B: MonoidalBase>(
    base: &B,
    cop: &Coproduct<B>,
    b: &B::Obj,
) -> Coproduct<B> {
    let entries = cop
        .entries()
        .map(|(l, a)| (l.clone(), base.tensor_obj(a, b)))
        .collect();
    Coproduct::new(base, entries).expect("labels already distinct")
}

/// The coproduct `Σᵢ (b ⊗ Aᵢ)` over the same labels as `cop`.
pub fn tensor_cop_left<B: MonoidalBase>(base: &B, b: &B::Obj, cop: &Coproduct<B>) -> Coproduct<B> {
    let entries = cop
        .entries()
        .map(|(l, a)| (l.clone(), base.tensor_obj(b, a)))
        .collect();
    Coproduct::new(base, entries).expect("labels already distinct")
}

/// Forward distributor `(Σᵢ Aᵢ) ⊗ b → Σᵢ (Aᵢ ⊗ b)`.
pub fn distribute_right<B: MonoidalBase>(base: &B, cop: &Coproduct<B>, b: &B::Obj) -> B::Mor {
    base.distribute_right(cop.summands(), b)
}

/// Inverse distributor, built out of the universal property: the copairing
/// of `ιᵢ ⊗ id_b`.
pub fn distribute_right_inv<B: MonoidalBase>(
    base: &B,
    cop: &Coproduct<B>,
    b: &B::Obj,
) -> Result<B::Mor, BaseError> {
    let tens = tensor_cop_right(base, cop, b);
    let id_b = base.identity(b);
    let cod = base.tensor_obj(cop.total(), b);
    let legs: Vec<B::Mor> = cop
        .injections()
        .iter()
        .map(|inj| base.tensor_mor(inj, &id_b))
        .collect();
    tens.copair(base, &cod, &legs)
}

/// Forward distributor `b ⊗ (Σᵢ Aᵢ) → Σᵢ (b ⊗ Aᵢ)`.
pub fn distribute_left<B: MonoidalBase>(base: &B, b: &B::Obj, cop: &Coproduct<B>) -> B::Mor {
    base.distribute_left(b, cop.summands())
}

/// Inverse of the left distributor: the copairing of `id_b ⊗ ιᵢ`.
pub fn distribute_left_inv<B: MonoidalBase>(
    base: &B,
    b: &B::Obj,
    cop: &Coproduct<B>,
) -> Result<B::Mor, BaseError> {
    let tens = tensor_cop_left(base, b, cop);
    let id_b = base.identity(b);
    let cod = base.tensor_obj(b, cop.total());
    let legs: Vec<B::Mor> = cop
        .injections()
        .iter()
        .map(|inj| base.tensor_mor(&id_b, inj))
        .collect();
    tens.copair(base, &cod, &legs)
}

/// The sum `Σᵢ fᵢ : Σᵢ Dᵢ → Σᵢ Eᵢ` of a family of morphisms between two
/// coproducts with the same index order: the copairing of `fᵢ ; ιᵢ`.
pub fn sum_mor<B: MonoidalBase>(
    base: &B,
    dom: &Coproduct<B>,
    cod: &Coproduct<B>,
    legs: &[B::Mor],
) -> Result<B::Mor, BaseError> {
    if legs.len() != dom.len() || cod.len() != dom.len() {
        return Err(BaseError::CopairArity {
            expected: dom.len(),
            got: legs.len(),
        });
    }
    let routed: Vec<B::Mor> = legs
        .iter()
        .zip(cod.injections())
        .map(|(leg, inj)| base.compose(leg, inj))
        .collect::<Result<_, _>>()?;
    dom.copair(base, cod.total(), &routed)
}

/// Flatten a coproduct of coproducts onto the canonical flat coproduct over
/// the union of the inner labels, sorted. `outer.summands[i]` must equal
/// `inners[i].total`, and inner labels must be globally distinct.
///
/// Returns the flat coproduct and the reindexing iso from the nested total
/// to the flat total; the iso routes each composite injection
/// `ι_inner ; ι_outer` onto the flat injection at the same label.
pub fn flatten<B: MonoidalBase>(
    base: &B,
    outer: &Coproduct<B>,
    inners: &[Coproduct<B>],
) -> Result<(Coproduct<B>, B::Mor), BaseError> {
    if inners.len() != outer.len() {
        return Err(BaseError::FlattenArity {
            expected: outer.len(),
            got: inners.len(),
        });
    }
    for (i, inner) in inners.iter().enumerate() {
        if inner.total() != &outer.summands()[i] {
            return Err(BaseError::FlattenSummandMismatch { index: i });
        }
    }
    let mut entries: Vec<(Label, B::Obj)> = Vec::new();
    for inner in inners {
        for (l, s) in inner.entries() {
            entries.push((l.clone(), s.clone()));
        }
    }
    let flat = Coproduct::sorted(base, entries)?;
    let legs: Vec<B::Mor> = inners
        .iter()
        .map(|inner| {
            let inner_legs: Vec<B::Mor> = inner
                .labels()
                .iter()
                .map(|l| {
                    flat.injection_at(l)
                        .cloned()
                        .ok_or_else(|| BaseError::DuplicateLabel(l.to_string()))
                })
                .collect::<Result<_, _>>()?;
            inner.copair(base, flat.total(), &inner_legs)
        })
        .collect::<Result<_, _>>()?;
    let iso = outer.copair(base, flat.total(), &legs)?;
    Ok((flat, iso))
}

/// The regrouping stage shared by the composite diagrams: given
/// `Σᵢ Pᵢ ⊗ (Σⱼ Q_{i,j})` (presented as `outer` over labels `i` with
/// summands `Pᵢ ⊗ inners[i].total`), distribute each summand on the left and
/// flatten onto pair labels `(j, i)`, sorted inner-major.
///
/// Returns the flat coproduct (summands `Pᵢ ⊗ Q_{i,j}`) and the composite
/// morphism `outer.total → flat.total`.
pub fn regroup<B: MonoidalBase>(
    base: &B,
    outer: &Coproduct<B>,
    firsts: &[B::Obj],
    inners: &[Coproduct<B>],
) -> Result<(Coproduct<B>, B::Mor), BaseError> {
    if firsts.len() != outer.len() || inners.len() != outer.len() {
        return Err(BaseError::FlattenArity {
            expected: outer.len(),
            got: inners.len(),
        });
    }
    let mut mid_entries = Vec::with_capacity(outer.len());
    let mut mid_inners = Vec::with_capacity(outer.len());
    let mut legs = Vec::with_capacity(outer.len());
    for ((outer_label, _), (p, inner)) in outer.entries().zip(firsts.iter().zip(inners)) {
        let distributed = tensor_cop_left(base, p, inner)
            .relabel(|l| Label::pair(l.clone(), outer_label.clone()))?;
        legs.push(base.distribute_left(p, inner.summands()));
        mid_entries.push((outer_label.clone(), distributed.total().clone()));
        mid_inners.push(distributed);
    }
    let mid = Coproduct::new(base, mid_entries)?;
    let step = sum_mor(base, outer, &mid, &legs)?;
    let (flat, iso) = flatten(base, &mid, &mid_inners)?;
    let mor = base.compose(&step, &iso)?;
    Ok((flat, mor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_order_is_inner_major_on_pairs() {
        let a = Label::pair(Label::name("y"), Label::name("b"));
        let b = Label::pair(Label::name("y"), Label::name("c"));
        let c = Label::pair(Label::name("z"), Label::name("a"));
        assert!(a < b);
        assert!(b < c);
        assert_eq!(a.to_string(), "(y,b)");
    }
}
