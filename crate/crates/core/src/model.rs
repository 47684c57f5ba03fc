//! Premodel and model structures on finite lattices.
//!
//! On a chain `[n]` a model structure is the same thing as an interval
//! partition together with a transfer system on every block (its acyclic
//! fibrations). [`from_selection`] builds the structure from that data and
//! [`verify_model`] checks the axioms directly, independently of how the
//! classes were produced.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::arrows::ArrowSet;
use crate::error::ModelError;
use crate::lattice::{Arrow, FiniteLattice};
use crate::transfer::{left_class, satisfies_two_of_three, TransferSystem, Wfs};

/// A partition of `[n]` into consecutive blocks `[0, a_1], [a_1 + 1, a_2], ..., [a_k + 1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalPartition {
    n: usize,
    cuts: Vec<usize>,
}

impl IntervalPartition {
    /// `cuts` are the right endpoints of every block but the last.
    pub fn new(n: usize, cuts: Vec<usize>) -> Result<Self, ModelError> {
        if cuts.windows(2).any(|w| w[0] >= w[1]) || cuts.last().is_some_and(|&c| c >= n) {
            return Err(ModelError::Selection(format!(
                "cuts {cuts:?} are not strictly increasing below {n}"
            )));
        }
        Ok(Self { n, cuts })
    }

    /// Every element in its own block.
    pub fn discrete(n: usize) -> Self {
        Self {
            n,
            cuts: (0..n).collect(),
        }
    }

    /// A single block.
    pub fn whole(n: usize) -> Self {
        Self { n, cuts: Vec::new() }
    }

    /// From block sizes (a composition of `n + 1`).
    pub fn from_block_sizes(sizes: &[usize]) -> Result<Self, ModelError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(ModelError::Selection(format!("bad block sizes {sizes:?}")));
        }
        let total: usize = sizes.iter().sum();
        let mut cuts = Vec::new();
        let mut end = 0;
        for &s in &sizes[..sizes.len() - 1] {
            end += s;
            cuts.push(end - 1);
        }
        Self::new(total - 1, cuts)
    }

    /// All `2^n` interval partitions of `[n]`, in lexicographic order of cuts.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (0..1u64 << n)
            .map(|mask| Self {
                n,
                cuts: (0..n).filter(|&i| mask >> i & 1 == 1).collect(),
            })
            .collect();
        out.sort();
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    /// Blocks as inclusive `(lo, hi)` pairs, ascending.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.cuts.len() + 1);
        let mut lo = 0;
        for &c in &self.cuts {
            out.push((lo, c));
            lo = c + 1;
        }
        out.push((lo, self.n));
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks().iter().map(|(lo, hi)| hi - lo + 1).collect()
    }
}

impl fmt::Display for IntervalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (lo, hi)) in self.blocks().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "[{lo},{hi}]")?;
        }
        Ok(())
    }
}

/// An interval partition of `[n]` plus one transfer system per block, each
/// carried by the chain `[hi - lo]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractibleSelection {
    partition: IntervalPartition,
    block_systems: Vec<TransferSystem>,
}

impl ContractibleSelection {
    pub fn new(
        partition: IntervalPartition,
        block_systems: Vec<TransferSystem>,
    ) -> Result<Self, ModelError> {
        let blocks = partition.blocks();
        if blocks.len() != block_systems.len() {
            return Err(ModelError::Selection(format!(
                "{} blocks but {} transfer systems",
                blocks.len(),
                block_systems.len()
            )));
        }
        for ((lo, hi), r) in blocks.iter().zip(&block_systems) {
            if r.carrier().as_chain() != Some(hi - lo) {
                return Err(ModelError::Selection(format!(
                    "block [{lo}, {hi}] needs a system on [{}], got {}",
                    hi - lo,
                    r.carrier().label()
                )));
            }
        }
        Ok(Self {
            partition,
            block_systems,
        })
    }

    pub fn partition(&self) -> &IntervalPartition {
        &self.partition
    }

    pub fn block_systems(&self) -> &[TransferSystem] {
        &self.block_systems
    }
}

/// The class a violation was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Weq,
    Cof,
    Fib,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Weq => "weak equivalences",
            Class::Cof => "cofibrations",
            Class::Fib => "fibrations",
        })
    }
}

/// The first failed axiom, with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    MissingIdentity { class: Class, object: usize },
    NotClosedUnderComposition { class: Class, first: Arrow, second: Arrow },
    /// Two of `x -> y`, `y -> z`, `x -> z` are weak equivalences, the third is not.
    TwoOutOfThree { x: usize, y: usize, z: usize },
    /// `composite` is a weak equivalence but a factor through `via` is not.
    NotDecomposable { composite: Arrow, via: usize },
    /// `arrow` has no factorization as a cofibration then an acyclic fibration.
    FactorizationCof(Arrow),
    /// `arrow` has no factorization as an acyclic cofibration then a fibration.
    FactorizationFib(Arrow),
    /// A cofibration that does not lift against an acyclic fibration.
    LiftingCof { left: Arrow, right: Arrow },
    /// An acyclic cofibration that does not lift against a fibration.
    LiftingFib { left: Arrow, right: Arrow },
}

impl ModelViolation {
    /// Short name of the axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            Self::MissingIdentity { .. } | Self::NotClosedUnderComposition { .. } => "composition",
            Self::TwoOutOfThree { .. } => "2-out-of-3",
            Self::NotDecomposable { .. } => "decomposability",
            Self::FactorizationCof(_) | Self::FactorizationFib(_) => "MC5",
            Self::LiftingCof { .. } | Self::LiftingFib { .. } => "MC4",
        }
    }

    /// Arrows involved in the witness.
    pub fn witness_arrows(&self) -> Vec<Arrow> {
        match *self {
            Self::MissingIdentity { object, .. } => vec![Arrow::new(object, object)],
            Self::NotClosedUnderComposition { first, second, .. } => vec![first, second],
            Self::TwoOutOfThree { x, y, z } => {
                vec![Arrow::new(x, y), Arrow::new(y, z), Arrow::new(x, z)]
            }
            Self::NotDecomposable { composite, via } => vec![
                composite,
                Arrow::new(composite.src, via),
                Arrow::new(via, composite.dst),
            ],
            Self::FactorizationCof(a) | Self::FactorizationFib(a) => vec![a],
            Self::LiftingCof { left, right } | Self::LiftingFib { left, right } => {
                vec![left, right]
            }
        }
    }
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingIdentity { class, object } => {
                write!(f, "composition: identity at {object} missing from {class}")
            }
            Self::NotClosedUnderComposition {
                class,
                first,
                second,
            } => write!(f, "composition: {class} contain {first} and {second} but not their composite"),
            Self::TwoOutOfThree { x, y, z } => write!(
                f,
                "2-out-of-3: exactly two of {x}->{y}, {y}->{z}, {x}->{z} are weak equivalences"
            ),
            Self::NotDecomposable { composite, via } => write!(
                f,
                "decomposability: {composite} is a weak equivalence but its factorization through {via} is not"
            ),
            Self::FactorizationCof(a) => {
                write!(f, "MC5: {a} does not factor as a cofibration then an acyclic fibration")
            }
            Self::FactorizationFib(a) => {
                write!(f, "MC5: {a} does not factor as an acyclic cofibration then a fibration")
            }
            Self::LiftingCof { left, right } => {
                write!(f, "MC4: cofibration {left} does not lift against acyclic fibration {right}")
            }
            Self::LiftingFib { left, right } => {
                write!(f, "MC4: acyclic cofibration {left} does not lift against fibration {right}")
            }
        }
    }
}

fn check_category(l: &FiniteLattice, s: &ArrowSet, class: Class) -> Result<(), ModelViolation> {
    for x in 0..l.size() {
        if !s.contains(l.idx(x, x)) {
            return Err(ModelViolation::MissingIdentity { class, object: x });
        }
    }
    for a in l.members(s).filter(|a| !a.is_identity()) {
        for b in l.members(s).filter(|b| b.src == a.dst && !b.is_identity()) {
            if !s.contains(l.idx(a.src, b.dst)) {
                return Err(ModelViolation::NotClosedUnderComposition {
                    class,
                    first: a,
                    second: b,
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn first_indecomposable(l: &FiniteLattice, w: &ArrowSet) -> Option<(Arrow, usize)> {
    for a in l.members(w) {
        for m in 0..l.size() {
            if l.leq(a.src, m)
                && l.leq(m, a.dst)
                && !(w.contains(l.idx(a.src, m)) && w.contains(l.idx(m, a.dst)))
            {
                return Some((a, m));
            }
        }
    }
    None
}

fn check_lifting(l: &FiniteLattice, left: &ArrowSet, right: &ArrowSet) -> Option<(Arrow, Arrow)> {
    let obs = l.obstructions();
    right.iter().find_map(|g| {
        obs[g]
            .intersection(left)
            .iter()
            .next()
            .map(|f| (l.arrow(f), l.arrow(g)))
    })
}

/// Checks the model category axioms for `(w, c, f)` on `l`.
///
/// Axioms are tested in a fixed order: identities and composition for each
/// class, 2-out-of-3, decomposability, both factorizations, both lifting
/// conditions. Retract closure holds vacuously in a poset, and limits and
/// colimits exist because `l` is a lattice.
pub fn verify_model(
    l: &FiniteLattice,
    w: &ArrowSet,
    c: &ArrowSet,
    f: &ArrowSet,
) -> Result<(), ModelViolation> {
    check_category(l, w, Class::Weq)?;
    check_category(l, c, Class::Cof)?;
    check_category(l, f, Class::Fib)?;
    if let Some((x, y, z)) = satisfies_two_of_three(l, w) {
        return Err(ModelViolation::TwoOutOfThree { x, y, z });
    }
    if let Some((composite, via)) = first_indecomposable(l, w) {
        return Err(ModelViolation::NotDecomposable { composite, via });
    }
    let ac = w.intersection(c);
    let af = w.intersection(f);
    for &a in l.arrows() {
        if l.factor(a, c, &af).is_none() {
            return Err(ModelViolation::FactorizationCof(a));
        }
    }
    for &a in l.arrows() {
        if l.factor(a, &ac, f).is_none() {
            return Err(ModelViolation::FactorizationFib(a));
        }
    }
    if let Some((left, right)) = check_lifting(l, c, &af) {
        return Err(ModelViolation::LiftingCof { left, right });
    }
    if let Some((left, right)) = check_lifting(l, &ac, f) {
        return Err(ModelViolation::LiftingFib { left, right });
    }
    Ok(())
}

/// A model structure, stored as weak equivalences, cofibrations and fibrations.
#[derive(Clone)]
pub struct ModelStructure {
    carrier: Arc<FiniteLattice>,
    w: ArrowSet,
    c: ArrowSet,
    f: ArrowSet,
}

impl PartialEq for ModelStructure {
    fn eq(&self, other: &Self) -> bool {
        self.w == other.w && self.c == other.c && self.f == other.f
    }
}

impl Eq for ModelStructure {}

impl Hash for ModelStructure {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.w.hash(state);
        self.c.hash(state);
        self.f.hash(state);
    }
}

impl fmt::Debug for ModelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.carrier;
        let list = |s: &ArrowSet| -> Vec<Arrow> { l.members(s).filter(|a| !a.is_identity()).collect() };
        f.debug_struct("ModelStructure")
            .field("carrier", &l.label())
            .field("w", &list(&self.w))
            .field("c", &list(&self.c))
            .field("f", &list(&self.f))
            .finish()
    }
}

impl ModelStructure {
    /// Validates the classes with [`verify_model`].
    pub fn new(
        carrier: Arc<FiniteLattice>,
        w: ArrowSet,
        c: ArrowSet,
        f: ArrowSet,
    ) -> Result<Self, ModelError> {
        verify_model(&carrier, &w, &c, &f).map_err(ModelError::Invalid)?;
        Ok(Self { carrier, w, c, f })
    }

    pub(crate) fn new_unchecked(
        carrier: Arc<FiniteLattice>,
        w: ArrowSet,
        c: ArrowSet,
        f: ArrowSet,
    ) -> Self {
        Self { carrier, w, c, f }
    }

    /// Only isomorphisms are weak equivalences; everything is a (co)fibration.
    pub fn trivial(carrier: Arc<FiniteLattice>) -> Self {
        let w = carrier.identities();
        let all = carrier.all_arrows();
        Self {
            c: all.clone(),
            f: all,
            w,
            carrier,
        }
    }

    pub fn carrier(&self) -> &Arc<FiniteLattice> {
        &self.carrier
    }

    pub fn w(&self) -> &ArrowSet {
        &self.w
    }

    pub fn c(&self) -> &ArrowSet {
        &self.c
    }

    pub fn f(&self) -> &ArrowSet {
        &self.f
    }

    pub fn ac(&self) -> ArrowSet {
        self.w.intersection(&self.c)
    }

    pub fn af(&self) -> ArrowSet {
        self.w.intersection(&self.f)
    }

    pub fn is_weq(&self, x: usize, y: usize) -> bool {
        self.carrier.contains(&self.w, x, y)
    }

    pub fn is_trivial(&self) -> bool {
        self.w == self.carrier.identities()
    }

    pub fn is_contractible(&self) -> bool {
        self.w == self.carrier.all_arrows()
    }

    pub fn is_cofibrant(&self, x: usize) -> bool {
        self.c.contains(self.carrier.idx(self.carrier.bottom(), x))
    }

    pub fn is_fibrant(&self, x: usize) -> bool {
        self.f.contains(self.carrier.idx(x, self.carrier.top()))
    }

    pub fn verify(&self) -> Result<(), ModelViolation> {
        verify_model(&self.carrier, &self.w, &self.c, &self.f)
    }

    fn chain_len(&self) -> Result<usize, ModelError> {
        self.carrier
            .as_chain()
            .ok_or_else(|| ModelError::NotAChain(self.carrier.label().to_owned()))
    }
}

/// The model structure determined by a choice of contractible submodels on `[n]`.
pub fn from_selection(sel: &ContractibleSelection) -> ModelStructure {
    let carrier = FiniteLattice::chain(sel.partition.n()).into_shared();
    from_selection_on(&carrier, sel)
}

/// [`from_selection`] on an existing `[n]`, so enumeration can share one carrier.
pub fn from_selection_on(carrier: &Arc<FiniteLattice>, sel: &ContractibleSelection) -> ModelStructure {
    let l = carrier.as_ref();
    assert_eq!(l.as_chain(), Some(sel.partition.n()), "carrier must be [n]");
    let mut w = l.empty_set();
    let mut af = l.empty_set();
    let mut ac = l.empty_set();
    for ((lo, hi), r) in sel.partition.blocks().into_iter().zip(&sel.block_systems) {
        for x in lo..=hi {
            for y in x..=hi {
                w.insert(l.idx(x, y));
            }
        }
        af.union_with(&r.shifted_into(l, lo));
        let left = left_class(r.carrier(), r).expect("transfer system left class");
        for a in r.carrier().members(&left) {
            ac.insert(l.idx(a.src + lo, a.dst + lo));
        }
    }
    let c = l.left_lifting(&af);
    let f = l.right_lifting(&ac);
    ModelStructure::new_unchecked(Arc::clone(carrier), w, c, f)
}

/// The weak equivalence classes of a model structure on a chain.
pub fn interval_partition_of(m: &ModelStructure) -> Result<IntervalPartition, ModelError> {
    let n = m.chain_len()?;
    let cuts = (0..n).filter(|&i| !m.is_weq(i, i + 1)).collect();
    IntervalPartition::new(n, cuts)
}

/// Largest `y` with `x -> y` an acyclic cofibration.
pub fn r_max(m: &ModelStructure, x: usize) -> Result<usize, ModelError> {
    let n = m.chain_len()?;
    let ac = m.ac();
    Ok((x..=n)
        .rev()
        .find(|&y| ac.contains(m.carrier.idx(x, y)))
        .unwrap_or(x))
}

/// Smallest `y` with `y -> x` an acyclic fibration.
pub fn q_min(m: &ModelStructure, x: usize) -> Result<usize, ModelError> {
    m.chain_len()?;
    let af = m.af();
    Ok((0..=x).find(|&y| af.contains(m.carrier.idx(y, x))).unwrap_or(x))
}

pub fn bifibrant_replacement(m: &ModelStructure, x: usize) -> Result<usize, ModelError> {
    r_max(m, q_min(m, x)?)
}

/// Objects that are both cofibrant and fibrant, ascending.
pub fn bifibrant_objects(m: &ModelStructure) -> Vec<usize> {
    (0..m.carrier.size())
        .filter(|&x| m.is_cofibrant(x) && m.is_fibrant(x))
        .collect()
}

/// `Ho(M) ≅ [k]`, with its objects realised as the bifibrant objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyCategory {
    pub k: usize,
    pub objects: Vec<usize>,
}

pub fn homotopy_category(m: &ModelStructure) -> Result<HomotopyCategory, ModelError> {
    let blocks = interval_partition_of(m)?.blocks();
    let bif = bifibrant_objects(m);
    let objects: Vec<usize> = blocks
        .iter()
        .map(|&(lo, hi)| {
            let inside: Vec<usize> = bif.iter().copied().filter(|&x| lo <= x && x <= hi).collect();
            assert_eq!(inside.len(), 1, "class [{lo}, {hi}] has bifibrant objects {inside:?}");
            inside[0]
        })
        .collect();
    Ok(HomotopyCategory {
        k: blocks.len() - 1,
        objects,
    })
}

/// The acyclic fibrations inside a weak equivalence class, as a transfer
/// system on `[hi - lo]`.
pub fn block_system(m: &ModelStructure, lo: usize, hi: usize) -> Result<TransferSystem, ModelError> {
    let p = interval_partition_of(m)?;
    if !p.blocks().contains(&(lo, hi)) {
        return Err(ModelError::NotAClass { lo, hi });
    }
    let whole = TransferSystem::new_unchecked(Arc::clone(&m.carrier), m.af());
    Ok(whole.restrict_interval(lo, hi)?)
}

/// The contractible model structure induced on a weak equivalence class.
pub fn restrict_to_block(m: &ModelStructure, lo: usize, hi: usize) -> Result<ModelStructure, ModelError> {
    let r = block_system(m, lo, hi)?;
    let sel = ContractibleSelection::new(IntervalPartition::whole(hi - lo), vec![r])?;
    Ok(from_selection(&sel))
}

/// The choice of contractible submodels a chain model structure restricts to.
pub fn selection_of(m: &ModelStructure) -> Result<ContractibleSelection, ModelError> {
    let p = interval_partition_of(m)?;
    let whole = TransferSystem::new_unchecked(Arc::clone(&m.carrier), m.af());
    let systems = p
        .blocks()
        .into_iter()
        .map(|(lo, hi)| whole.restrict_interval(lo, hi))
        .collect::<Result<Vec<_>, _>>()?;
    ContractibleSelection::new(p, systems)
}

/// Four classes forming two nested weak factorization systems
/// `(C, AF)` and `(AC, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremodelStructure {
    carrier: Arc<FiniteLattice>,
    pub c: ArrowSet,
    pub ac: ArrowSet,
    pub f: ArrowSet,
    pub af: ArrowSet,
}

impl PremodelStructure {
    pub fn carrier(&self) -> &Arc<FiniteLattice> {
        &self.carrier
    }

    /// `W = AF ∘ AC`.
    pub fn weak_equivalences(&self) -> ArrowSet {
        let l = &self.carrier;
        let mut w = l.empty_set();
        for a in l.members(&self.ac) {
            for b in l.members(&self.af).filter(|b| b.src == a.dst) {
                w.insert(l.idx(a.src, b.dst));
            }
        }
        w
    }

    /// The model structure with these classes, when `W` satisfies 2-out-of-3.
    pub fn to_model(&self) -> Option<ModelStructure> {
        satisfies_2of3(self).then(|| {
            ModelStructure::new_unchecked(
                Arc::clone(&self.carrier),
                self.weak_equivalences(),
                self.c.clone(),
                self.f.clone(),
            )
        })
    }
}

/// `(C, AF) = w1` and `(AC, F) = w2`; requires `right(w1) ⊆ right(w2)`.
pub fn premodel_from_wfs_pair(
    carrier: &Arc<FiniteLattice>,
    w1: &Wfs,
    w2: &Wfs,
) -> Result<PremodelStructure, ModelError> {
    if let Some(i) = w1.right.difference(&w2.right).iter().next() {
        return Err(ModelError::NotNested(carrier.arrow(i)));
    }
    Ok(PremodelStructure {
        carrier: Arc::clone(carrier),
        c: w1.left.clone(),
        af: w1.right.clone(),
        ac: w2.left.clone(),
        f: w2.right.clone(),
    })
}

pub fn satisfies_2of3(p: &PremodelStructure) -> bool {
    satisfies_two_of_three(&p.carrier, &p.weak_equivalences()).is_none()
}

/// Weak equivalences are stable under pushout (join) and pullback (meet)
/// along arbitrary arrows.
pub fn check_properness(m: &ModelStructure) -> bool {
    let l = m.carrier.as_ref();
    l.members(&m.w).all(|a| {
        (0..l.size()).all(|z| {
            let push = !l.leq(a.src, z) || m.w.contains(l.idx(z, l.join(a.dst, z)));
            let pull = !l.leq(z, a.dst) || m.w.contains(l.idx(l.meet(a.src, z), z));
            push && pull
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monoidal {
    /// `x ⊗ y = x ∧ y`, unit the top.
    Cartesian,
    /// `x ⊗ y = x ∨ y`, unit the bottom.
    Cocartesian,
}

/// Pushout-product and unit axioms for the given monoidal structure.
pub fn check_monoidal(m: &ModelStructure, flavor: Monoidal) -> bool {
    let l = m.carrier.as_ref();
    let tensor = |a: usize, b: usize| match flavor {
        Monoidal::Cartesian => l.meet(a, b),
        Monoidal::Cocartesian => l.join(a, b),
    };
    let unit = match flavor {
        Monoidal::Cartesian => l.top(),
        Monoidal::Cocartesian => l.bottom(),
    };
    let ac = m.ac();
    let cofs: Vec<Arrow> = l.members(&m.c).collect();
    for &f in &cofs {
        for &g in &cofs {
            let src = l.join(tensor(f.src, g.dst), tensor(f.dst, g.src));
            let dst = tensor(f.dst, g.dst);
            let Some(i) = l.index_of(src, dst) else {
                return false;
            };
            if !m.c.contains(i) {
                return false;
            }
            let acyclic = ac.contains(l.idx(f.src, f.dst)) || ac.contains(l.idx(g.src, g.dst));
            if acyclic && !ac.contains(i) {
                return false;
            }
        }
    }
    let af = m.af();
    for q in (0..l.size()).filter(|&q| l.leq(q, unit) && m.is_cofibrant(q) && af.contains(l.idx(q, unit))) {
        for x in (0..l.size()).filter(|&x| m.is_cofibrant(x)) {
            if !m.w.contains(l.idx(tensor(q, x), tensor(unit, x))) {
                return false;
            }
        }
    }
    true
}

/// Tries to extend a weak equivalence class structure plus per-class transfer
/// systems to a model structure on an arbitrary lattice.
///
/// `class_systems` are arrow sets over `l`, each holding the acyclic
/// fibrations chosen inside one weak equivalence class. On failure the
/// returned error carries the axiom violation that blocks the extension.
pub fn extend_selection_general(
    l: &Arc<FiniteLattice>,
    w: &ArrowSet,
    class_systems: &[ArrowSet],
) -> Result<ModelStructure, ModelError> {
    if let Some(x) = (0..l.size()).find(|&x| !w.contains(l.idx(x, x))) {
        return Err(ModelError::Selection(format!("identity at {x} is not a weak equivalence")));
    }
    if let Err(v) = check_category(l, w, Class::Weq) {
        return Err(ModelError::Selection(v.to_string()));
    }
    if let Some((a, m)) = first_indecomposable(l, w) {
        return Err(ModelError::Selection(format!("{a} is not decomposable through {m}")));
    }
    let class = weq_classes(l, w);
    let mut af = l.identities();
    for s in class_systems {
        if !s.is_subset(w) {
            return Err(ModelError::Selection(
                "class system contains a non-weak-equivalence".into(),
            ));
        }
        af.union_with(s);
    }
    let mut ac = l.empty_set();
    for i in w.iter() {
        let f = l.arrow(i);
        let lifts = l
            .members(&af)
            .filter(|g| class[g.src] == class[f.src])
            .all(|g| l.lifts(f, g));
        if lifts {
            ac.insert(i);
        }
    }
    let c = l.left_lifting(&af);
    let f = l.right_lifting(&ac);
    verify_model(l, w, &c, &f).map_err(ModelError::Invalid)?;
    Ok(ModelStructure::new_unchecked(Arc::clone(l), w.clone(), c, f))
}

/// Connected-component label of every element under `w`.
fn weq_classes(l: &FiniteLattice, w: &ArrowSet) -> Vec<usize> {
    let mut label: Vec<usize> = (0..l.size()).collect();
    loop {
        let mut changed = false;
        for a in l.members(w) {
            let m = label[a.src].min(label[a.dst]);
            if label[a.src] != m || label[a.dst] != m {
                label[a.src] = m;
                label[a.dst] = m;
                changed = true;
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Convenience: the contractible model structure on `[n]` with acyclic
/// fibrations `r`.
pub fn contractible(r: &TransferSystem) -> Result<ModelStructure, ModelError> {
    let n = r
        .carrier()
        .as_chain()
        .ok_or_else(|| ModelError::NotAChain(r.carrier().label().to_owned()))?;
    let sel = ContractibleSelection::new(IntervalPartition::whole(n), vec![r.clone()])?;
    Ok(from_selection_on(r.carrier(), &sel))
}
