//! Finite lattices viewed as thin categories.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arrows::{ArrowSet, LatticeId};
use crate::error::LatticeError;

/// A morphism `src -> dst` of a thin category; only exists when `src <= dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
}

impl Arrow {
    pub const fn new(src: usize, dst: usize) -> Self {
        Self { src, dst }
    }

    pub fn is_identity(self) -> bool {
        self.src == self.dst
    }
}

impl From<[usize; 2]> for Arrow {
    fn from([src, dst]: [usize; 2]) -> Self {
        Self { src, dst }
    }
}

impl From<Arrow> for [usize; 2] {
    fn from(a: Arrow) -> Self {
        [a.src, a.dst]
    }
}

impl From<(usize, usize)> for Arrow {
    fn from((src, dst): (usize, usize)) -> Self {
        Self { src, dst }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.src, self.dst)
    }
}

/// How a lattice was built; this is also its JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LatticeSpec {
    Chain { n: usize },
    Product { factors: Vec<LatticeSpec> },
    Explicit { size: usize, leq: Vec<[usize; 2]> },
}

impl LatticeSpec {
    pub fn build(&self) -> Result<FiniteLattice, LatticeError> {
        match self {
            LatticeSpec::Chain { n } => Ok(FiniteLattice::chain(*n)),
            LatticeSpec::Product { factors } => {
                let mut iter = factors.iter();
                let first = iter.next().ok_or(LatticeError::EmptyProduct)?.build()?;
                iter.try_fold(first, |acc, f| Ok(FiniteLattice::product(&acc, &f.build()?)))
            }
            LatticeSpec::Explicit { size, leq } => {
                let mut rel = vec![false; size * size];
                for x in 0..*size {
                    rel[x * size + x] = true;
                }
                for &[x, y] in leq {
                    if x >= *size || y >= *size {
                        return Err(LatticeError::ElementOutOfRange {
                            element: x.max(y),
                            size: *size,
                        });
                    }
                    rel[x * size + y] = true;
                }
                FiniteLattice::from_relation(*size, &rel, Some(self.clone()))
            }
        }
    }
}

/// A violated lattice axiom, with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeViolation {
    Empty,
    NotReflexive(usize),
    NotAntisymmetric(usize, usize),
    NotTransitive(usize, usize, usize),
    NoMeet(usize, usize),
    NoJoin(usize, usize),
    WrongMeet { x: usize, y: usize, table: usize },
    WrongJoin { x: usize, y: usize, table: usize },
}

impl fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "no elements"),
            Self::NotReflexive(x) => write!(f, "not reflexive at {x}"),
            Self::NotAntisymmetric(x, y) => write!(f, "{x} <= {y} <= {x} with {x} != {y}"),
            Self::NotTransitive(x, y, z) => write!(f, "{x} <= {y} <= {z} but not {x} <= {z}"),
            Self::NoMeet(x, y) => write!(f, "{x} and {y} have no greatest lower bound"),
            Self::NoJoin(x, y) => write!(f, "{x} and {y} have no least upper bound"),
            Self::WrongMeet { x, y, table } => write!(f, "meet table says {x} ^ {y} = {table}"),
            Self::WrongJoin { x, y, table } => write!(f, "join table says {x} v {y} = {table}"),
        }
    }
}

/// Result of [`verify_lattice`] / [`verify_relation`]: every violated invariant.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeReport {
    pub violations: Vec<LatticeViolation>,
}

impl LatticeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LatticeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks a raw order relation (row-major `size x size`) for the lattice axioms.
pub fn verify_relation(size: usize, leq: &[bool]) -> LatticeReport {
    let mut violations = Vec::new();
    if size == 0 {
        violations.push(LatticeViolation::Empty);
        return LatticeReport { violations };
    }
    let le = |x: usize, y: usize| leq[x * size + y];
    for x in 0..size {
        if !le(x, x) {
            violations.push(LatticeViolation::NotReflexive(x));
        }
    }
    for x in 0..size {
        for y in x + 1..size {
            if le(x, y) && le(y, x) {
                violations.push(LatticeViolation::NotAntisymmetric(x, y));
            }
        }
    }
    for x in 0..size {
        for y in 0..size {
            if x == y || !le(x, y) {
                continue;
            }
            for z in 0..size {
                if z != y && le(y, z) && !le(x, z) {
                    violations.push(LatticeViolation::NotTransitive(x, y, z));
                }
            }
        }
    }
    if !violations.is_empty() {
        return LatticeReport { violations };
    }
    for x in 0..size {
        for y in x..size {
            if greatest_lower_bound(size, leq, x, y).is_none() {
                violations.push(LatticeViolation::NoMeet(x, y));
            }
            if least_upper_bound(size, leq, x, y).is_none() {
                violations.push(LatticeViolation::NoJoin(x, y));
            }
        }
    }
    LatticeReport { violations }
}

fn greatest_lower_bound(size: usize, leq: &[bool], x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..size)
        .filter(|&z| leq[z * size + x] && leq[z * size + y])
        .collect();
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&z| leq[z * size + m]))
}

fn least_upper_bound(size: usize, leq: &[bool], x: usize, y: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..size)
        .filter(|&z| leq[x * size + z] && leq[y * size + z])
        .collect();
    upper
        .iter()
        .copied()
        .find(|&m| upper.iter().all(|&z| leq[m * size + z]))
}

const NOT_COMPARABLE: u32 = u32::MAX;

/// A finite lattice with dense element indices `0..size`.
///
/// Comparable pairs are enumerated once, lexicographically by `(src, dst)`;
/// that enumeration indexes every [`ArrowSet`] over this lattice.
pub struct FiniteLattice {
    id: LatticeId,
    size: usize,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    label: String,
    spec: LatticeSpec,
    chain: Option<usize>,
    arrows: Vec<Arrow>,
    index: Vec<u32>,
    bottom: usize,
    top: usize,
    obstructions: OnceLock<Vec<ArrowSet>>,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("label", &self.label)
            .field("size", &self.size)
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

impl std::hash::Hash for FiniteLattice {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl FiniteLattice {
    /// The chain `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Self {
        let size = n + 1;
        let mut leq = vec![false; size * size];
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                leq[x * size + y] = x <= y;
                meet[x * size + y] = x.min(y) as u32;
                join[x * size + y] = x.max(y) as u32;
            }
        }
        Self::assemble(
            size,
            leq,
            meet,
            join,
            format!("chain[{n}]"),
            LatticeSpec::Chain { n },
        )
    }

    /// Componentwise product; element `(i, j)` has index `i * b.size() + j`.
    pub fn product(a: &FiniteLattice, b: &FiniteLattice) -> Self {
        let (sa, sb) = (a.size, b.size);
        let size = sa * sb;
        let mut leq = vec![false; size * size];
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for x in 0..size {
            let (xa, xb) = (x / sb, x % sb);
            for y in 0..size {
                let (ya, yb) = (y / sb, y % sb);
                let k = x * size + y;
                leq[k] = a.leq(xa, ya) && b.leq(xb, yb);
                meet[k] = (a.meet(xa, ya) * sb + b.meet(xb, yb)) as u32;
                join[k] = (a.join(xa, ya) * sb + b.join(xb, yb)) as u32;
            }
        }
        let mut factors = Vec::new();
        for l in [a, b] {
            match &l.spec {
                LatticeSpec::Product { factors: fs } => factors.extend(fs.iter().cloned()),
                other => factors.push(other.clone()),
            }
        }
        let label = format!("{}x{}", a.short_label(), b.short_label());
        Self::assemble(size, leq, meet, join, label, LatticeSpec::Product { factors })
    }

    /// The grid `[m] x [n]`.
    pub fn grid(m: usize, n: usize) -> Self {
        Self::product(&Self::chain(m), &Self::chain(n))
    }

    /// Builds a lattice from a full order relation, rejecting anything that is
    /// not a lattice.
    pub fn from_relation(
        size: usize,
        leq: &[bool],
        spec: Option<LatticeSpec>,
    ) -> Result<Self, LatticeError> {
        if leq.len() != size * size {
            return Err(LatticeError::RelationShape {
                size,
                len: leq.len(),
            });
        }
        let report = verify_relation(size, leq);
        if !report.is_valid() {
            return Err(LatticeError::NotALattice(report));
        }
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                meet[x * size + y] = greatest_lower_bound(size, leq, x, y).unwrap() as u32;
                join[x * size + y] = least_upper_bound(size, leq, x, y).unwrap() as u32;
            }
        }
        let spec = spec.unwrap_or_else(|| LatticeSpec::Explicit {
            size,
            leq: (0..size)
                .flat_map(|x| (0..size).map(move |y| (x, y)))
                .filter(|&(x, y)| x != y && leq[x * size + y])
                .map(|(x, y)| [x, y])
                .collect(),
        });
        Ok(Self::assemble(
            size,
            leq.to_vec(),
            meet,
            join,
            format!("lattice[{size}]"),
            spec,
        ))
    }

    fn assemble(
        size: usize,
        leq: Vec<bool>,
        meet: Vec<u32>,
        join: Vec<u32>,
        label: String,
        spec: LatticeSpec,
    ) -> Self {
        let mut arrows = Vec::new();
        let mut index = vec![NOT_COMPARABLE; size * size];
        for x in 0..size {
            for y in 0..size {
                if leq[x * size + y] {
                    index[x * size + y] = arrows.len() as u32;
                    arrows.push(Arrow::new(x, y));
                }
            }
        }
        let bottom = (0..size)
            .find(|&b| (0..size).all(|y| leq[b * size + y]))
            .expect("lattice has a bottom");
        let top = (0..size)
            .find(|&t| (0..size).all(|y| leq[y * size + t]))
            .expect("lattice has a top");
        let natural = (0..size).all(|x| (0..size).all(|y| leq[x * size + y] == (x <= y)));
        let mut hasher = DefaultHasher::new();
        size.hash(&mut hasher);
        leq.hash(&mut hasher);
        Self {
            id: LatticeId(hasher.finish()),
            size,
            leq,
            meet,
            join,
            label,
            spec,
            chain: natural.then(|| size - 1),
            arrows,
            index,
            bottom,
            top,
            obstructions: OnceLock::new(),
        }
    }

    fn short_label(&self) -> String {
        match self.spec {
            LatticeSpec::Chain { n } => format!("[{n}]"),
            _ => format!("({})", self.label),
        }
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    /// `Some(n)` when this is the chain `[n]` in its natural indexing.
    pub fn as_chain(&self) -> Option<usize> {
        self.chain
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// The canonical, lexicographically ordered list of comparable pairs.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn non_identity_count(&self) -> usize {
        self.arrows.len() - self.size
    }

    #[inline]
    pub fn arrow(&self, idx: usize) -> Arrow {
        self.arrows[idx]
    }

    #[inline]
    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        if x >= self.size || y >= self.size {
            return None;
        }
        match self.index[x * self.size + y] {
            NOT_COMPARABLE => None,
            i => Some(i as usize),
        }
    }

    /// Index of an arrow known to be comparable.
    #[inline]
    pub(crate) fn idx(&self, x: usize, y: usize) -> usize {
        let i = self.index[x * self.size + y];
        debug_assert_ne!(i, NOT_COMPARABLE, "{x} and {y} are not comparable");
        i as usize
    }

    pub fn empty_set(&self) -> ArrowSet {
        ArrowSet::empty(self.id, self.arrows.len())
    }

    pub fn all_arrows(&self) -> ArrowSet {
        ArrowSet::full(self.id, self.arrows.len())
    }

    pub fn identities(&self) -> ArrowSet {
        let mut s = self.empty_set();
        for x in 0..self.size {
            s.insert(self.idx(x, x));
        }
        s
    }

    /// Collects arrows into a set, rejecting incomparable pairs.
    pub fn arrow_set<I, A>(&self, arrows: I) -> Result<ArrowSet, LatticeError>
    where
        I: IntoIterator<Item = A>,
        A: Into<Arrow>,
    {
        let mut s = self.empty_set();
        for a in arrows {
            let a = a.into();
            let i = self
                .index_of(a.src, a.dst)
                .ok_or(LatticeError::NotComparable(a))?;
            s.insert(i);
        }
        Ok(s)
    }

    /// Like [`arrow_set`](Self::arrow_set) with all identities added.
    pub fn reflexive_set<I, A>(&self, arrows: I) -> Result<ArrowSet, LatticeError>
    where
        I: IntoIterator<Item = A>,
        A: Into<Arrow>,
    {
        let mut s = self.arrow_set(arrows)?;
        s.union_with(&self.identities());
        Ok(s)
    }

    pub fn members<'a>(&'a self, set: &'a ArrowSet) -> impl Iterator<Item = Arrow> + 'a {
        set.iter().map(move |i| self.arrows[i])
    }

    pub fn contains(&self, set: &ArrowSet, x: usize, y: usize) -> bool {
        self.index_of(x, y).is_some_and(|i| set.contains(i))
    }

    /// Whether `f` has the left lifting property against `g`: every square
    /// `f.src <= g.src`, `f.dst <= g.dst` admits the diagonal `f.dst <= g.src`.
    #[inline]
    pub fn lifts(&self, f: Arrow, g: Arrow) -> bool {
        !(self.leq(f.src, g.src) && self.leq(f.dst, g.dst) && !self.leq(f.dst, g.src))
    }

    /// For each arrow `g`, the arrows that fail to lift against `g`.
    pub fn obstructions(&self) -> &[ArrowSet] {
        self.obstructions.get_or_init(|| {
            self.arrows
                .iter()
                .map(|&g| {
                    let mut s = self.empty_set();
                    for (i, &f) in self.arrows.iter().enumerate() {
                        if !self.lifts(f, g) {
                            s.insert(i);
                        }
                    }
                    s
                })
                .collect()
        })
    }

    /// `^⊡R`: arrows with the left lifting property against all of `right`.
    pub fn left_lifting(&self, right: &ArrowSet) -> ArrowSet {
        let obs = self.obstructions();
        let mut bad = self.empty_set();
        for g in right.iter() {
            bad.union_with(&obs[g]);
        }
        bad.complement()
    }

    /// `L^⊡`: arrows with the right lifting property against all of `left`.
    pub fn right_lifting(&self, left: &ArrowSet) -> ArrowSet {
        let obs = self.obstructions();
        let mut out = self.empty_set();
        for (g, o) in obs.iter().enumerate() {
            if o.is_disjoint(left) {
                out.insert(g);
            }
        }
        out
    }

    /// A middle object `m` with `src -> m` in `left` and `m -> dst` in `right`.
    pub fn factor(&self, f: Arrow, left: &ArrowSet, right: &ArrowSet) -> Option<usize> {
        (0..self.size).find(|&m| {
            self.leq(f.src, m)
                && self.leq(m, f.dst)
                && left.contains(self.idx(f.src, m))
                && right.contains(self.idx(m, f.dst))
        })
    }
}

/// Reports every violated invariant of a constructed lattice, including
/// inconsistent meet/join tables.
pub fn verify_lattice(l: &FiniteLattice) -> LatticeReport {
    let mut report = verify_relation(l.size, &l.leq);
    if !report.is_valid() {
        return report;
    }
    for x in 0..l.size {
        for y in 0..l.size {
            let m = l.meet(x, y);
            if Some(m) != greatest_lower_bound(l.size, &l.leq, x, y) {
                report
                    .violations
                    .push(LatticeViolation::WrongMeet { x, y, table: m });
            }
            let j = l.join(x, y);
            if Some(j) != least_upper_bound(l.size, &l.leq, x, y) {
                report
                    .violations
                    .push(LatticeViolation::WrongJoin { x, y, table: j });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_sizes() {
        let c0 = FiniteLattice::chain(0);
        assert_eq!((c0.size(), c0.arrow_count()), (1, 1));
        let c2 = FiniteLattice::chain(2);
        assert_eq!(c2.arrow_count(), 6);
        // (n+1 choose 2) + (n+1) pairs
        assert_eq!(FiniteLattice::chain(4).arrow_count(), 10 + 5);
        assert_eq!(c2.as_chain(), Some(2));
    }

    #[test]
    fn chain_arrow_order() {
        let c1 = FiniteLattice::chain(1);
        assert_eq!(
            c1.arrows(),
            &[Arrow::new(0, 0), Arrow::new(0, 1), Arrow::new(1, 1)]
        );
        let c2 = FiniteLattice::chain(2);
        let got: Vec<_> = c2.arrows().iter().map(|a| (a.src, a.dst)).collect();
        assert_eq!(got, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn products() {
        let p = FiniteLattice::product(&FiniteLattice::chain(0), &FiniteLattice::chain(3));
        assert_eq!(p.as_chain(), Some(3));
        let sq = FiniteLattice::grid(1, 1);
        assert_eq!(sq.size(), 4);
        assert_eq!(sq.arrow_count(), 9);
        assert_eq!((sq.bottom(), sq.top()), (0, 3));
        assert!(!sq.leq(1, 2) && !sq.leq(2, 1));
        assert_eq!(sq.join(1, 2), 3);
        assert_eq!(sq.meet(1, 2), 0);
        assert_eq!(FiniteLattice::grid(1, 2).size(), 6);
        assert!(verify_lattice(&sq).is_valid());
    }

    #[test]
    fn grid_arrow_count_matches_pair_scan() {
        let g = FiniteLattice::grid(2, 2);
        let mut count = 0;
        for x in 0..9 {
            for y in 0..9 {
                let (xa, xb, ya, yb) = (x / 3, x % 3, y / 3, y % 3);
                if xa <= ya && xb <= yb {
                    count += 1;
                }
            }
        }
        assert_eq!(g.arrow_count(), count);
    }

    #[test]
    fn product_commutes_up_to_swap() {
        let a = FiniteLattice::chain(1);
        let b = FiniteLattice::chain(2);
        let ab = FiniteLattice::product(&a, &b);
        let ba = FiniteLattice::product(&b, &a);
        let swap = |x: usize| (x % 3) * 2 + x / 3;
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(ab.leq(x, y), ba.leq(swap(x), swap(y)));
                assert_eq!(swap(ab.meet(x, y)), ba.meet(swap(x), swap(y)));
            }
        }
    }

    #[test]
    fn verify_reports_transitivity_witness() {
        let mut rel = vec![false; 9];
        for x in 0..3 {
            rel[x * 3 + x] = true;
        }
        rel[1] = true; // 0 <= 1
        rel[5] = true; // 1 <= 2
        let report = verify_relation(3, &rel);
        assert_eq!(
            report.violations,
            vec![LatticeViolation::NotTransitive(0, 1, 2)]
        );
        assert!(FiniteLattice::from_relation(3, &rel, None).is_err());
        assert!(verify_lattice(&FiniteLattice::chain(3)).is_valid());
    }

    #[test]
    fn rejects_posets_without_joins() {
        // two incomparable maximal elements above a bottom
        let spec = LatticeSpec::Explicit {
            size: 3,
            leq: vec![[0, 1], [0, 2]],
        };
        match spec.build() {
            Err(LatticeError::NotALattice(r)) => {
                assert!(r.violations.contains(&LatticeViolation::NoJoin(1, 2)))
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn explicit_spec_round_trip() {
        let spec: LatticeSpec =
            serde_json::from_str(r#"{"kind":"explicit","size":4,"leq":[[0,1],[0,2],[1,3],[2,3],[0,3]]}"#)
                .unwrap();
        let l = spec.build().unwrap();
        assert_eq!(l, FiniteLattice::grid(1, 1));
        let json = serde_json::to_string(&LatticeSpec::Product {
            factors: vec![LatticeSpec::Chain { n: 1 }, LatticeSpec::Chain { n: 1 }],
        })
        .unwrap();
        assert_eq!(json, r#"{"kind":"product","factors":[{"kind":"chain","n":1},{"kind":"chain","n":1}]}"#);
    }

    #[test]
    fn meet_join_laws_exhaustive() {
        for l in [FiniteLattice::chain(5), FiniteLattice::grid(2, 3)] {
            let n = l.size();
            for x in 0..n {
                for y in 0..n {
                    let m = l.meet(x, y);
                    let j = l.join(x, y);
                    assert!(l.leq(m, x) && l.leq(m, y) && l.leq(x, j) && l.leq(y, j));
                    for z in 0..n {
                        if l.leq(z, x) && l.leq(z, y) {
                            assert!(l.leq(z, m));
                        }
                        if l.leq(x, z) && l.leq(y, z) {
                            assert!(l.leq(j, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lifting_in_a_chain() {
        let l = FiniteLattice::chain(2);
        // 0->1 against 1->2: the square 0<=1, 1<=2 has lift 1<=1
        assert!(l.lifts(Arrow::new(0, 1), Arrow::new(1, 2)));
        // 0->2 against 0->1: square 0<=0, 2<=... not a square (2 > 1)
        assert!(l.lifts(Arrow::new(0, 2), Arrow::new(0, 1)));
        // 0->1 against 0->2: needs 1 <= 0
        assert!(!l.lifts(Arrow::new(0, 1), Arrow::new(0, 2)));
    }
}
