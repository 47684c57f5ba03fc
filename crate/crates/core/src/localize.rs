//! Mapping spaces, weak equivalence closures and the one-step Bousfield
//! localizations `L_i`, `R_i` on chains.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::arrows::ArrowSet;
use crate::enumerate::enumerate_models;
use crate::error::ModelError;
use crate::lattice::FiniteLattice;
use crate::model::{interval_partition_of, verify_model, ModelStructure};

/// Homotopy type of a mapping space between two objects of a lattice model category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MappingSpace {
    Empty,
    Point,
}

pub fn mapping_space(m: &ModelStructure, x: usize, y: usize) -> MappingSpace {
    if m.carrier().leq(x, y) || same_class(m, x, y) {
        MappingSpace::Point
    } else {
        MappingSpace::Empty
    }
}

fn same_class(m: &ModelStructure, x: usize, y: usize) -> bool {
    let l = m.carrier();
    let (a, b) = (l.meet(x, y), l.join(x, y));
    m.is_weq(a, b)
}

/// Least set containing `w(m) ∪ extra` closed under composition and under
/// decomposition (`a <= c <= b` and `a -> b` in the set put `a -> c` and
/// `c -> b` in it).
pub fn w_closure(m: &ModelStructure, extra: &ArrowSet) -> ArrowSet {
    let l = m.carrier();
    let mut w = m.w().union(extra);
    loop {
        let mut changed = false;
        let members: Vec<_> = l.members(&w).collect();
        for &a in &members {
            for c in 0..l.size() {
                if l.leq(a.src, c) && l.leq(c, a.dst) {
                    changed |= w.insert(l.idx(a.src, c));
                    changed |= w.insert(l.idx(c, a.dst));
                }
            }
            for b in members.iter().filter(|b| b.src == a.dst) {
                changed |= w.insert(l.idx(a.src, b.dst));
            }
        }
        if !changed {
            return w;
        }
    }
}

/// Fibrant `z` such that every `a -> b` in `wset` induces an equivalence
/// `Map(b, z) -> Map(a, z)`.
pub fn w_local_objects(m: &ModelStructure, wset: &ArrowSet) -> Vec<usize> {
    let l = m.carrier();
    (0..l.size())
        .filter(|&z| m.is_fibrant(z))
        .filter(|&z| {
            l.members(wset)
                .all(|f| mapping_space(m, f.dst, z) == mapping_space(m, f.src, z))
        })
        .collect()
}

/// Cofibrant `z` such that every `a -> b` in `wset` induces an equivalence
/// `Map(z, a) -> Map(z, b)`.
pub fn w_colocal_objects(m: &ModelStructure, wset: &ArrowSet) -> Vec<usize> {
    let l = m.carrier();
    (0..l.size())
        .filter(|&z| m.is_cofibrant(z))
        .filter(|&z| {
            l.members(wset)
                .all(|f| mapping_space(m, z, f.src) == mapping_space(m, z, f.dst))
        })
        .collect()
}

/// Arrows `x -> y` sending every local object's mapping spaces to equivalent ones.
pub fn w_equivalences(m: &ModelStructure, wset: &ArrowSet) -> ArrowSet {
    let l = m.carrier();
    let local = w_local_objects(m, wset);
    let mut out = l.empty_set();
    for (i, f) in l.arrows().iter().enumerate() {
        if local
            .iter()
            .all(|&z| mapping_space(m, f.dst, z) == mapping_space(m, f.src, z))
        {
            out.insert(i);
        }
    }
    out
}

fn chain_n(m: &ModelStructure) -> Result<usize, ModelError> {
    m.carrier()
        .as_chain()
        .ok_or_else(|| ModelError::NotAChain(m.carrier().label().to_owned()))
}

/// The weak equivalences after merging the classes of `i` and `i + 1`, plus
/// the merged block `(lo, hi)`.
fn check_index(m: &ModelStructure, i: usize) -> Result<(), ModelError> {
    let n = chain_n(m)?;
    if i >= n {
        return Err(ModelError::IndexOutOfRange { i, n });
    }
    Ok(())
}

fn merged(m: &ModelStructure, i: usize) -> Result<(ArrowSet, usize, usize), ModelError> {
    let blocks = interval_partition_of(m)?.blocks();
    let lo = blocks.iter().find(|b| b.0 <= i && i <= b.1).expect("covers").0;
    let hi = blocks.iter().find(|b| b.0 <= i + 1 && i + 1 <= b.1).expect("covers").1;
    let l = m.carrier();
    let mut w = m.w().clone();
    for x in lo..=hi {
        for y in x..=hi {
            w.insert(l.idx(x, y));
        }
    }
    let step = l.arrow_set([(i, i + 1)])?;
    if w != w_closure(m, &step) {
        return Err(ModelError::Inconsistent(format!(
            "block merge at {i} disagrees with the weak equivalence closure"
        )));
    }
    Ok((w, lo, hi))
}

fn finish(l: &Arc<FiniteLattice>, w: ArrowSet, c: ArrowSet, f: ArrowSet) -> Result<ModelStructure, ModelError> {
    verify_model(l, &w, &c, &f).map_err(ModelError::Invalid)?;
    Ok(ModelStructure::new_unchecked(Arc::clone(l), w, c, f))
}

/// `L_i`: make `i -> i + 1` a weak equivalence, keeping the cofibrations.
pub fn left_localize(m: &ModelStructure, i: usize) -> Result<ModelStructure, ModelError> {
    check_index(m, i)?;
    if m.is_weq(i, i + 1) {
        return Ok(m.clone());
    }
    let (w, _, _) = merged(m, i)?;
    let l = m.carrier();
    let c = m.c().clone();
    let f = l.right_lifting(&w.intersection(&c));
    let out = finish(l, w, c, f)?;
    if out.af() != m.af() {
        return Err(ModelError::Inconsistent(format!("L_{i} changed the acyclic fibrations")));
    }
    Ok(out)
}

/// `R_i`: make `i -> i + 1` a weak equivalence, keeping the fibrations. With
/// old classes `[a, i]` and `[i + 1, b]`, every `x -> i` in AF gains the
/// arrows `x -> y` for `i < y <= b`.
pub fn right_localize(m: &ModelStructure, i: usize) -> Result<ModelStructure, ModelError> {
    check_index(m, i)?;
    if m.is_weq(i, i + 1) {
        return Ok(m.clone());
    }
    let (w, _, hi) = merged(m, i)?;
    let l = m.carrier();
    let old = m.af();
    let mut af = old.clone();
    for a in l.members(&old).filter(|a| a.dst == i) {
        for y in i + 1..=hi {
            af.insert(l.idx(a.src, y));
        }
    }
    let c = l.left_lifting(&af);
    let out = finish(l, w, c, m.f().clone())?;
    if out.af() != af {
        return Err(ModelError::Inconsistent(format!("R_{i} acyclic fibrations mismatch")));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocStep {
    pub dir: Direction,
    pub i: usize,
}

impl LocStep {
    pub fn apply(self, m: &ModelStructure) -> Result<ModelStructure, ModelError> {
        match self.dir {
            Direction::Left => left_localize(m, self.i),
            Direction::Right => right_localize(m, self.i),
        }
    }

    /// `L_0, R_0, L_1, R_1, ...` for `[n]`.
    pub fn all(n: usize) -> Vec<LocStep> {
        (0..n)
            .flat_map(|i| {
                [Direction::Left, Direction::Right]
                    .into_iter()
                    .map(move |dir| LocStep { dir, i })
            })
            .collect()
    }
}

impl fmt::Display for LocStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Direction::Left => 'L',
            Direction::Right => 'R',
        };
        write!(f, "{d}{}", self.i)
    }
}

/// Steps in the order they are applied. Displayed as a composite, so the
/// rightmost operator acts first: applying `L1`, then `R0`, then `L2` prints
/// as `L2R0L1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LocalizationWord {
    pub steps: Vec<LocStep>,
}

impl LocalizationWord {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for LocalizationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("id");
        }
        for s in self.steps.iter().rev() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for LocalizationWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "id" || s.is_empty() {
            return Ok(Self::default());
        }
        let mut steps = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let dir = match c {
                'L' => Direction::Left,
                'R' => Direction::Right,
                other => return Err(format!("expected L or R, found {other:?}")),
            };
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let i = digits.parse().map_err(|_| format!("missing index after {c}"))?;
            steps.push(LocStep { dir, i });
        }
        steps.reverse();
        Ok(Self { steps })
    }
}

/// Applies the steps in order, checking each intermediate structure.
pub fn apply_word(m: &ModelStructure, word: &LocalizationWord) -> Result<ModelStructure, ModelError> {
    word.steps.iter().try_fold(m.clone(), |acc, s| s.apply(&acc))
}

/// All model structures on `[n]` with their one-step localization edges.
#[derive(Debug, Clone)]
pub struct LocalizationGraph {
    pub nodes: Vec<ModelStructure>,
    /// `(from, step, to)`, self-loops included.
    pub edges: Vec<(usize, LocStep, usize)>,
    /// `(from, to)` with `from != to` where the identity is left Quillen
    /// (cofibrations and acyclic cofibrations both grow).
    pub quillen: Vec<(usize, usize)>,
    pub trivial: usize,
    /// Reachable from the trivial structure along localization edges.
    pub reachable: Vec<bool>,
}

impl LocalizationGraph {
    pub fn all_reachable(&self) -> bool {
        self.reachable.iter().all(|&r| r)
    }
}

pub fn localization_graph(n: usize) -> Result<LocalizationGraph, ModelError> {
    let nodes: Vec<ModelStructure> = enumerate_models(n).collect();
    let index: HashMap<&ModelStructure, usize> = nodes.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let steps = LocStep::all(n);
    let per_node: Vec<Vec<(usize, LocStep, usize)>> = nodes
        .par_iter()
        .enumerate()
        .map(|(a, m)| {
            steps
                .iter()
                .map(|&s| {
                    let t = s.apply(m)?;
                    let b = *index.get(&t).ok_or_else(|| {
                        ModelError::Inconsistent(format!("{s} leaves the enumerated structures"))
                    })?;
                    Ok((a, s, b))
                })
                .collect::<Result<Vec<_>, ModelError>>()
        })
        .collect::<Result<_, _>>()?;
    let edges: Vec<_> = per_node.into_iter().flatten().collect();
    let acs: Vec<ArrowSet> = nodes.iter().map(|m| m.ac()).collect();
    let mut quillen = Vec::new();
    for a in 0..nodes.len() {
        for b in 0..nodes.len() {
            if a != b && nodes[a].c().is_subset(nodes[b].c()) && acs[a].is_subset(&acs[b]) {
                quillen.push((a, b));
            }
        }
    }
    let trivial = index[&ModelStructure::trivial(Arc::clone(nodes[0].carrier()))];
    let mut reachable = vec![false; nodes.len()];
    reachable[trivial] = true;
    let mut queue = VecDeque::from([trivial]);
    while let Some(a) = queue.pop_front() {
        for &(_, _, b) in edges.iter().filter(|e| e.0 == a) {
            if !reachable[b] {
                reachable[b] = true;
                queue.push_back(b);
            }
        }
    }
    Ok(LocalizationGraph {
        nodes,
        edges,
        quillen,
        trivial,
        reachable,
    })
}

/// A shortest word taking the trivial structure to `target`, by breadth-first
/// search with neighbours tried in the order `L_0, R_0, L_1, R_1, ...`.
pub fn zigzag_from_trivial(target: &ModelStructure) -> Result<LocalizationWord, ModelError> {
    let n = chain_n(target)?;
    let start = ModelStructure::trivial(Arc::clone(target.carrier()));
    let steps = LocStep::all(n);
    let mut parent: HashMap<ModelStructure, Option<(ModelStructure, LocStep)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        if &m == target {
            let mut word = Vec::new();
            let mut cur = m;
            while let Some((prev, s)) = parent[&cur].clone() {
                word.push(s);
                cur = prev;
            }
            word.reverse();
            return Ok(LocalizationWord { steps: word });
        }
        for &s in &steps {
            let next = s.apply(&m)?;
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((m.clone(), s)));
                queue.push_back(next);
            }
        }
    }
    Err(ModelError::Inconsistent("target not reachable from the trivial structure".into()))
}
