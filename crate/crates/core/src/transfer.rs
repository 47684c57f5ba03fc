//! Transfer systems and the weak factorization systems they determine.
//!
//! On a finite lattice a weak factorization system is determined by its
//! right class, and the right classes are exactly the transfer systems:
//! reflexive, transitive refinements of `<=` closed under restriction
//! `(x, y) ∈ R, z <= y  =>  (x ∧ z, z) ∈ R`.

use std::fmt;
use std::sync::Arc;

use crate::arrows::ArrowSet;
use crate::error::TransferError;
use crate::lattice::{Arrow, FiniteLattice};
use crate::paths;
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransferViolation {
    NotReflexive(usize),
    /// `(x, y)` and `(y, z)` are present but `(x, z)` is not.
    NotTransitive(usize, usize, usize),
    /// Restricting `arrow` along `z <= arrow.dst` requires `missing`.
    NotRestrictionClosed {
        arrow: Arrow,
        z: usize,
        missing: Arrow,
    },
}

impl fmt::Display for TransferViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotReflexive(x) => write!(f, "identity at {x} missing"),
            Self::NotTransitive(x, y, z) => {
                write!(f, "{x}->{y} and {y}->{z} present but {x}->{z} missing")
            }
            Self::NotRestrictionClosed { arrow, z, missing } => {
                write!(f, "restriction of {arrow} to {z} requires {missing}")
            }
        }
    }
}

/// Checks the transfer system axioms, returning the first violation in the
/// order reflexivity, transitivity, restriction.
pub fn is_transfer_system(l: &FiniteLattice, r: &ArrowSet) -> Result<(), TransferError> {
    if r.carrier() != l.id() || r.universe() != l.arrow_count() {
        return Err(TransferError::CarrierMismatch);
    }
    first_violation(l, r).map_or(Ok(()), |v| Err(TransferError::Violation(v)))
}

fn first_violation(l: &FiniteLattice, r: &ArrowSet) -> Option<TransferViolation> {
    for x in 0..l.size() {
        if !r.contains(l.idx(x, x)) {
            return Some(TransferViolation::NotReflexive(x));
        }
    }
    for a in l.members(r) {
        if a.is_identity() {
            continue;
        }
        for b in l.members(r).filter(|b| b.src == a.dst && !b.is_identity()) {
            if !r.contains(l.idx(a.src, b.dst)) {
                return Some(TransferViolation::NotTransitive(a.src, a.dst, b.dst));
            }
        }
    }
    for a in l.members(r) {
        for z in 0..l.size() {
            if l.leq(z, a.dst) {
                let m = l.meet(a.src, z);
                if !r.contains(l.idx(m, z)) {
                    return Some(TransferViolation::NotRestrictionClosed {
                        arrow: a,
                        z,
                        missing: Arrow::new(m, z),
                    });
                }
            }
        }
    }
    None
}

/// A transfer system on a finite lattice, stored as its full reflexive relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransferSystem {
    carrier: Arc<FiniteLattice>,
    rel: ArrowSet,
}

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransferSystem")
            .field("carrier", &self.carrier.label())
            .field("arrows", &self.non_identity())
            .finish()
    }
}

impl PartialOrd for TransferSystem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TransferSystem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rel.cmp(&other.rel)
    }
}

impl TransferSystem {
    pub fn new(carrier: Arc<FiniteLattice>, rel: ArrowSet) -> Result<Self, TransferError> {
        is_transfer_system(&carrier, &rel)?;
        Ok(Self { carrier, rel })
    }

    pub(crate) fn new_unchecked(carrier: Arc<FiniteLattice>, rel: ArrowSet) -> Self {
        debug_assert!(first_violation(&carrier, &rel).is_none());
        Self { carrier, rel }
    }

    /// Builds from non-identity arrows; identities are implied.
    pub fn from_arrows<I, A>(carrier: Arc<FiniteLattice>, arrows: I) -> Result<Self, crate::Error>
    where
        I: IntoIterator<Item = A>,
        A: Into<Arrow>,
    {
        let rel = carrier.reflexive_set(arrows)?;
        Ok(Self::new(carrier, rel)?)
    }

    /// Only the identities.
    pub fn trivial(carrier: Arc<FiniteLattice>) -> Self {
        let rel = carrier.identities();
        Self { carrier, rel }
    }

    /// Every comparable pair.
    pub fn complete(carrier: Arc<FiniteLattice>) -> Self {
        let rel = carrier.all_arrows();
        Self { carrier, rel }
    }

    pub fn carrier(&self) -> &Arc<FiniteLattice> {
        &self.carrier
    }

    pub fn rel(&self) -> &ArrowSet {
        &self.rel
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.carrier.contains(&self.rel, x, y)
    }

    /// Non-identity arrows in canonical order.
    pub fn non_identity(&self) -> Vec<Arrow> {
        self.carrier
            .members(&self.rel)
            .filter(|a| !a.is_identity())
            .collect()
    }

    pub fn is_subsystem_of(&self, other: &Self) -> bool {
        self.rel.is_subset(&other.rel)
    }

    fn chain_len(&self) -> Result<usize, TransferError> {
        self.carrier
            .as_chain()
            .ok_or_else(|| TransferError::NotAChain(self.carrier.label().to_owned()))
    }

    /// On a chain, the system restricted to `[lo, hi]` and re-indexed onto `[hi - lo]`.
    pub fn restrict_interval(&self, lo: usize, hi: usize) -> Result<Self, TransferError> {
        let n = self.chain_len()?;
        assert!(lo <= hi && hi <= n, "interval [{lo}, {hi}] outside [0, {n}]");
        let target = FiniteLattice::chain(hi - lo).into_shared();
        let mut rel = target.empty_set();
        for a in self.carrier.members(&self.rel) {
            if lo <= a.src && a.dst <= hi {
                rel.insert(target.idx(a.src - lo, a.dst - lo));
            }
        }
        Ok(Self::new_unchecked(target, rel))
    }

    /// The arrows of this chain system shifted up by `offset` inside `target`.
    pub(crate) fn shifted_into(&self, target: &FiniteLattice, offset: usize) -> ArrowSet {
        let mut rel = target.empty_set();
        for a in self.carrier.members(&self.rel) {
            rel.insert(target.idx(a.src + offset, a.dst + offset));
        }
        rel
    }
}

/// The least transfer system containing `seed`.
pub fn transfer_closure(l: &Arc<FiniteLattice>, seed: &ArrowSet) -> TransferSystem {
    let mut rel = seed.union(&l.identities());
    close_in_place(l, &mut rel);
    TransferSystem::new_unchecked(Arc::clone(l), rel)
}

fn close_in_place(l: &FiniteLattice, rel: &mut ArrowSet) {
    loop {
        let mut changed = false;
        let members: Vec<Arrow> = l.members(rel).collect();
        for &a in &members {
            for z in 0..l.size() {
                if l.leq(z, a.dst) {
                    changed |= rel.insert(l.idx(l.meet(a.src, z), z));
                }
            }
            for &b in &members {
                if b.src == a.dst {
                    changed |= rel.insert(l.idx(a.src, b.dst));
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// All transfer systems on `l`, each once, sorted by their canonical bit-vector.
///
/// Chains use the pivot recursion; other lattices enumerate the closed sets
/// of [`transfer_closure`] in lectic order.
pub fn enumerate_transfer_systems(l: &Arc<FiniteLattice>) -> Vec<TransferSystem> {
    let mut out = match l.as_chain() {
        Some(n) => paths::chain_relations(n + 1)
            .iter()
            .map(|arrows| {
                let mut rel = l.identities();
                for &(x, y) in arrows {
                    rel.insert(l.idx(x, y));
                }
                TransferSystem::new_unchecked(Arc::clone(l), rel)
            })
            .collect(),
        None => next_closure_scan(l),
    };
    out.sort();
    out
}

/// Enumerates closed sets by Ganter's next-closure over the non-identity arrows.
fn next_closure_scan(l: &Arc<FiniteLattice>) -> Vec<TransferSystem> {
    let universe: Vec<usize> = (0..l.arrow_count())
        .filter(|&i| !l.arrow(i).is_identity())
        .collect();
    let ids = l.identities();
    let mut current = ids.clone();
    let mut out = vec![TransferSystem::new_unchecked(Arc::clone(l), current.clone())];
    'outer: loop {
        for pos in (0..universe.len()).rev() {
            let i = universe[pos];
            if current.contains(i) {
                current.remove(i);
                continue;
            }
            let mut candidate = current.clone();
            candidate.insert(i);
            close_in_place(l, &mut candidate);
            let fresh = candidate.difference(&current);
            if universe[..pos].iter().all(|&j| !fresh.contains(j)) {
                current = candidate;
                out.push(TransferSystem::new_unchecked(Arc::clone(l), current.clone()));
                continue 'outer;
            }
        }
        break;
    }
    out
}

/// `E(R) = { z -> y : z <= x < y for some (x, y) ∈ R }`.
pub fn downward_extension(l: &FiniteLattice, r: &TransferSystem) -> ArrowSet {
    let mut out = l.empty_set();
    for a in l.members(r.rel()).filter(|a| !a.is_identity()) {
        for z in 0..l.size() {
            if l.leq(z, a.src) {
                out.insert(l.idx(z, a.dst));
            }
        }
    }
    out
}

/// The left class `^⊡R`, computed by lifting and cross-checked against the
/// complement of [`downward_extension`].
pub fn left_class(l: &FiniteLattice, r: &TransferSystem) -> Result<ArrowSet, TransferError> {
    if r.rel().carrier() != l.id() {
        return Err(TransferError::CarrierMismatch);
    }
    let by_lifting = l.left_lifting(r.rel());
    let by_extension = downward_extension(l, r).complement();
    if by_lifting != by_extension {
        let diff = by_lifting.difference(&by_extension).union(&by_extension.difference(&by_lifting));
        let first = diff.iter().next().expect("sets differ");
        return Err(TransferError::Inconsistent(l.arrow(first)));
    }
    Ok(by_lifting)
}

/// A weak factorization system `(left, right)` on a finite lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wfs {
    pub left: ArrowSet,
    pub right: ArrowSet,
}

pub fn wfs_from_transfer(l: &FiniteLattice, r: &TransferSystem) -> Wfs {
    let left = left_class(l, r).expect("lifting and extension descriptions agree");
    Wfs {
        left,
        right: r.rel().clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WfsViolation {
    NoFactorization(Arrow),
    NoLift { left: Arrow, right: Arrow },
}

impl fmt::Display for WfsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoFactorization(a) => write!(f, "{a} does not factor as left then right"),
            Self::NoLift { left, right } => write!(f, "{left} does not lift against {right}"),
        }
    }
}

/// Checks factorization of every arrow, then `left ⊡ right`. Retract closure
/// holds vacuously in a poset.
pub fn verify_wfs(l: &FiniteLattice, w: &Wfs) -> Result<(), WfsViolation> {
    for &a in l.arrows() {
        if l.factor(a, &w.left, &w.right).is_none() {
            return Err(WfsViolation::NoFactorization(a));
        }
    }
    let obs = l.obstructions();
    for g in w.right.iter() {
        if let Some(f) = obs[g].intersection(&w.left).iter().next() {
            return Err(WfsViolation::NoLift {
                left: l.arrow(f),
                right: l.arrow(g),
            });
        }
    }
    Ok(())
}

/// Two-out-of-three for the arrows of `r` (composites and both cancellations).
pub fn is_saturated(l: &FiniteLattice, r: &TransferSystem) -> bool {
    satisfies_two_of_three(l, r.rel()).is_none()
}

/// First triple `x <= y <= z` where exactly two of the three arrows are in `s`.
pub(crate) fn satisfies_two_of_three(l: &FiniteLattice, s: &ArrowSet) -> Option<(usize, usize, usize)> {
    let n = l.size();
    for x in 0..n {
        for y in 0..n {
            if !l.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if !l.leq(y, z) {
                    continue;
                }
                let count = [(x, y), (y, z), (x, z)]
                    .iter()
                    .filter(|&&(a, b)| s.contains(l.idx(a, b)))
                    .count();
                if count == 2 {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// All weak factorization systems on `[n]`, ordered by inclusion of right classes.
#[derive(Debug)]
pub struct WfsPoset {
    pub systems: Vec<TransferSystem>,
    pub order: FinitePoset,
    pub hasse: Vec<(usize, usize)>,
    /// Pairs of systems without a meet or join; empty for a lattice.
    pub lattice_failures: Vec<(usize, usize)>,
}

impl WfsPoset {
    pub fn is_lattice(&self) -> bool {
        self.lattice_failures.is_empty()
    }
}

pub fn wfs_poset(n: usize) -> WfsPoset {
    let l = FiniteLattice::chain(n).into_shared();
    let systems = enumerate_transfer_systems(&l);
    let order = FinitePoset::from_fn(systems.len(), |i, j| {
        systems[i].is_subsystem_of(&systems[j])
    });
    let hasse = order.hasse();
    let lattice_failures = order.lattice_failures();
    WfsPoset {
        systems,
        order,
        hasse,
        lattice_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<FiniteLattice> {
        FiniteLattice::chain(n).into_shared()
    }

    fn ts(l: &Arc<FiniteLattice>, arrows: &[(usize, usize)]) -> TransferSystem {
        TransferSystem::from_arrows(Arc::clone(l), arrows.iter().copied()).unwrap()
    }

    #[test]
    fn axiom_checks_on_chain2() {
        let l = chain(2);
        assert!(is_transfer_system(&l, &l.identities()).is_ok());
        let bad = l.reflexive_set([(0, 2)]).unwrap();
        match is_transfer_system(&l, &bad) {
            Err(TransferError::Violation(TransferViolation::NotRestrictionClosed {
                arrow,
                z,
                missing,
            })) => {
                assert_eq!((arrow, z, missing), (Arrow::new(0, 2), 1, Arrow::new(0, 1)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(is_transfer_system(&l, &l.all_arrows()).is_ok());
        let not_refl = l.arrow_set([(0, 1)]).unwrap();
        assert!(matches!(
            is_transfer_system(&l, &not_refl),
            Err(TransferError::Violation(TransferViolation::NotReflexive(0)))
        ));
        let other = chain(3);
        assert!(matches!(
            is_transfer_system(&l, &other.identities()),
            Err(TransferError::CarrierMismatch)
        ));
    }

    #[test]
    fn non_transitive_relation_is_reported() {
        let l = chain(2);
        let r = l.reflexive_set([(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            is_transfer_system(&l, &r),
            Err(TransferError::Violation(TransferViolation::NotTransitive(0, 1, 2)))
        ));
    }

    #[test]
    fn closure_examples() {
        let l = chain(2);
        let c = transfer_closure(&l, &l.arrow_set([(0, 2)]).unwrap());
        assert_eq!(c.non_identity(), vec![Arrow::new(0, 1), Arrow::new(0, 2)]);
        let l3 = chain(3);
        assert_eq!(transfer_closure(&l3, &l3.empty_set()), TransferSystem::trivial(l3.clone()));

        let sq = FiniteLattice::grid(1, 1).into_shared();
        let c = transfer_closure(&sq, &sq.arrow_set([(0, 3)]).unwrap());
        assert!(c.contains(0, 1) && c.contains(0, 2) && c.contains(0, 3));
        assert!(!c.contains(1, 3) && !c.contains(2, 3));
    }

    #[test]
    fn closure_operator_laws_on_small_chains() {
        for n in 0..=4 {
            let l = chain(n);
            let k = l.arrow_count();
            // seeds: every subset for small n, a stride through them for n = 4
            let step = if k > 12 { 97 } else { 1 };
            let mut mask = 0u64;
            while mask < 1 << k {
                let seed = crate::arrows::ArrowSet::from_mask(l.id(), k, mask);
                let c = transfer_closure(&l, &seed);
                assert!(seed.is_subset(c.rel()));
                assert_eq!(&transfer_closure(&l, c.rel()), &c);
                assert!(is_transfer_system(&l, c.rel()).is_ok());
                // monotone: adding the first non-member keeps the closure above c
                if let Some(extra) = (0..k).find(|&i| !seed.contains(i)) {
                    let mut bigger = seed.clone();
                    bigger.insert(extra);
                    assert!(c.is_subsystem_of(&transfer_closure(&l, &bigger)));
                }
                mask += step;
            }
        }
    }

    #[test]
    fn all_systems_on_two() {
        let l = chain(2);
        let all = enumerate_transfer_systems(&l);
        assert_eq!(all.len(), 5);
        let expected: Vec<Vec<(usize, usize)>> = vec![
            vec![],
            vec![(0, 1)],
            vec![(1, 2)],
            vec![(0, 1), (0, 2)],
            vec![(0, 1), (0, 2), (1, 2)],
        ];
        for e in &expected {
            assert!(all.contains(&ts(&l, e)), "missing {e:?}");
        }
        assert_eq!(enumerate_transfer_systems(&chain(0)).len(), 1);
        assert_eq!(enumerate_transfer_systems(&chain(4)).len(), 42);
    }

    #[test]
    fn chain_recursion_agrees_with_next_closure() {
        for n in 0..=5 {
            let l = chain(n);
            let mut scanned = next_closure_scan(&l);
            scanned.sort();
            assert_eq!(scanned, enumerate_transfer_systems(&l), "n = {n}");
        }
    }

    #[test]
    fn downward_extension_examples() {
        let l = chain(2);
        let e = downward_extension(&l, &ts(&l, &[(1, 2)]));
        assert_eq!(e, l.arrow_set([(1, 2), (0, 2)]).unwrap());
        assert!(downward_extension(&l, &TransferSystem::trivial(l.clone())).is_empty());
        let full = downward_extension(&l, &TransferSystem::complete(l.clone()));
        assert_eq!(full, l.identities().complement());
    }

    #[test]
    fn left_class_examples() {
        let l = chain(2);
        assert_eq!(
            left_class(&l, &TransferSystem::trivial(l.clone())).unwrap(),
            l.all_arrows()
        );
        assert_eq!(
            left_class(&l, &TransferSystem::complete(l.clone())).unwrap(),
            l.identities()
        );
        assert_eq!(
            left_class(&l, &ts(&l, &[(0, 1)])).unwrap(),
            l.reflexive_set([(0, 2), (1, 2)]).unwrap()
        );
    }

    #[test]
    fn left_class_on_grids() {
        for l in [FiniteLattice::grid(1, 1), FiniteLattice::grid(1, 2)] {
            let l = l.into_shared();
            for r in enumerate_transfer_systems(&l) {
                let w = wfs_from_transfer(&l, &r);
                assert_eq!(verify_wfs(&l, &w), Ok(()));
            }
        }
    }

    #[test]
    fn verify_wfs_catches_missing_factorization() {
        let l = chain(1);
        let w = Wfs {
            left: l.identities(),
            right: l.identities(),
        };
        assert_eq!(
            verify_wfs(&l, &w),
            Err(WfsViolation::NoFactorization(Arrow::new(0, 1)))
        );
        let w = Wfs {
            left: l.all_arrows(),
            right: l.all_arrows(),
        };
        assert_eq!(
            verify_wfs(&l, &w),
            Err(WfsViolation::NoLift {
                left: Arrow::new(0, 1),
                right: Arrow::new(0, 1)
            })
        );
    }

    #[test]
    fn every_chain_wfs_verifies() {
        for n in 0..=5 {
            let l = chain(n);
            for r in enumerate_transfer_systems(&l) {
                assert_eq!(verify_wfs(&l, &wfs_from_transfer(&l, &r)), Ok(()));
            }
        }
    }

    #[test]
    fn saturation() {
        let l = chain(2);
        assert!(is_saturated(&l, &TransferSystem::complete(l.clone())));
        assert!(!is_saturated(&l, &ts(&l, &[(0, 1), (0, 2)])));
    }

    #[test]
    fn saturated_systems_are_generated_by_covers() {
        for n in 0..=6 {
            let l = chain(n);
            let mut saturated: Vec<_> = enumerate_transfer_systems(&l)
                .into_iter()
                .filter(|r| is_saturated(&l, r))
                .collect();
            assert_eq!(saturated.len(), 1 << n);
            let mut generated: Vec<_> = (0..1u32 << n)
                .map(|mask| {
                    let covers = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i, i + 1));
                    transfer_closure(&l, &l.arrow_set(covers).unwrap())
                })
                .collect();
            saturated.sort();
            generated.sort();
            assert_eq!(saturated, generated);
        }
    }

    #[test]
    fn tamari_pentagon() {
        let p = wfs_poset(2);
        assert_eq!(p.systems.len(), 5);
        assert_eq!(p.hasse.len(), 5);
        assert!(p.is_lattice());
        let l = chain(2);
        let pos = |e: &[(usize, usize)]| p.systems.iter().position(|s| *s == ts(&l, e)).unwrap();
        let one = pos(&[]);
        let two = pos(&[(0, 1)]);
        let three = pos(&[(1, 2)]);
        let four = pos(&[(0, 1), (0, 2)]);
        let five = pos(&[(0, 1), (0, 2), (1, 2)]);
        let mut expected = vec![(one, two), (two, four), (four, five), (one, three), (three, five)];
        expected.sort();
        let mut got = p.hasse.clone();
        got.sort();
        assert_eq!(got, expected);

        assert_eq!(wfs_poset(0).systems.len(), 1);
        let p3 = wfs_poset(3);
        assert_eq!(p3.systems.len(), 14);
        assert!(p3.is_lattice());
    }
}
