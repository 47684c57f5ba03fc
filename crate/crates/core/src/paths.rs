//! Pivot decomposition of chain transfer systems, Dyck paths, and the
//! bijection between model structures on `[n]` and monotone maps `[n] -> [n]`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{ModelError, PathError, TransferError};
use crate::lattice::FiniteLattice;
use crate::model::{self, ContractibleSelection, IntervalPartition, ModelStructure};
use crate::transfer::TransferSystem;

/// Non-identity arrows of every transfer system on a chain with `size`
/// elements, generated by the pivot recursion. `size = 0` is the empty chain,
/// which carries exactly one (empty) system.
pub fn chain_relations(size: usize) -> Vec<Vec<(usize, usize)>> {
    let mut table: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new()]];
    for s in 1..=size {
        let mut out = Vec::new();
        for p in 0..s {
            let right = s - p - 1;
            for x in &table[p] {
                for y in &table[right] {
                    let mut rel = x.clone();
                    rel.extend((p + 1..s).map(|w| (p, w)));
                    rel.extend(y.iter().map(|&(a, b)| (a + p + 1, b + p + 1)));
                    out.push(rel);
                }
            }
        }
        table.push(out);
    }
    table.swap_remove(size)
}

fn chain_size(r: Option<&TransferSystem>) -> Result<usize, TransferError> {
    match r {
        None => Ok(0),
        Some(r) => r
            .carrier()
            .as_chain()
            .map(|n| n + 1)
            .ok_or_else(|| TransferError::NotAChain(r.carrier().label().to_owned())),
    }
}

/// Glues `x` on `[i]` and `y` on `[j]` into a system on `[i + j + 2]` with
/// pivot `i + 1`, which maps to everything above it. `None` is the empty chain.
pub fn odot(
    x: Option<&TransferSystem>,
    y: Option<&TransferSystem>,
) -> Result<TransferSystem, TransferError> {
    let sx = chain_size(x)?;
    let sy = chain_size(y)?;
    let target = FiniteLattice::chain(sx + sy).into_shared();
    let mut rel = target.identities();
    if let Some(x) = x {
        rel.union_with(&x.shifted_into(&target, 0));
    }
    if let Some(y) = y {
        rel.union_with(&y.shifted_into(&target, sx + 1));
    }
    for w in sx + 1..=sx + sy {
        rel.insert(target.idx(sx, w));
    }
    Ok(TransferSystem::new_unchecked(target, rel))
}

/// The pivot and the two factors of a chain transfer system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pivot {
    pub p: usize,
    pub left: Option<TransferSystem>,
    pub right: Option<TransferSystem>,
}

/// Inverts [`odot`].
pub fn pivot_decompose(z: &TransferSystem) -> Result<Pivot, TransferError> {
    let l = z.carrier();
    let n = l
        .as_chain()
        .ok_or_else(|| TransferError::NotAChain(l.label().to_owned()))?;
    let arrows = z.non_identity();
    let pivots: Vec<usize> = (0..=n)
        .filter(|&p| {
            (p + 1..=n).all(|w| z.contains(p, w))
                && !arrows.iter().any(|a| a.src < p && p <= a.dst)
        })
        .collect();
    if pivots.len() != 1 {
        return Err(TransferError::Pivot(pivots.len()));
    }
    let p = pivots[0];
    let left = (p > 0).then(|| z.restrict_interval(0, p - 1)).transpose()?;
    let right = (p < n).then(|| z.restrict_interval(p + 1, n)).transpose()?;
    Ok(Pivot { p, left, right })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    E,
}

impl Step {
    fn flip(self) -> Self {
        match self {
            Step::N => Step::E,
            Step::E => Step::N,
        }
    }
}

fn parse_steps(s: &str) -> Result<Vec<Step>, PathError> {
    s.trim()
        .chars()
        .map(|c| match c {
            'N' | 'n' => Ok(Step::N),
            'E' | 'e' => Ok(Step::E),
            other => Err(PathError::Malformed(format!("unexpected step {other:?}"))),
        })
        .collect()
}

fn write_steps(steps: &[Step], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for s in steps {
        f.write_str(match s {
            Step::N => "N",
            Step::E => "E",
        })?;
    }
    Ok(())
}

/// A path of N and E steps that never goes below the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        let mut h: i64 = 0;
        for (i, s) in steps.iter().enumerate() {
            h += if *s == Step::N { 1 } else { -1 };
            if h < 0 {
                return Err(PathError::Malformed(format!("dips below the diagonal at step {i}")));
            }
        }
        if h != 0 {
            return Err(PathError::Malformed("does not end on the diagonal".into()));
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Half the length.
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// All Dyck paths of the given semilength, lexicographic with `N < E`.
    pub fn all(semilength: usize) -> Vec<Self> {
        fn go(open: usize, close: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
            if open == 0 && close == 0 {
                out.push(DyckPath { steps: cur.clone() });
                return;
            }
            if open > 0 {
                cur.push(Step::N);
                go(open - 1, close, cur, out);
                cur.pop();
            }
            if close > open {
                cur.push(Step::E);
                go(open, close - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(semilength, semilength, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(&self.steps, f)
    }
}

impl FromStr for DyckPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_steps(s)?)
    }
}

fn dyck_steps(rel: &[(usize, usize)], lo: usize, hi: usize, out: &mut Vec<Step>) {
    if lo == hi {
        return;
    }
    // pivot: the element in [lo, hi) whose arrows reach hi - 1 and that no arrow jumps over
    let p = (lo..hi)
        .find(|&p| {
            (p + 1..hi).all(|w| rel.contains(&(p, w)))
                && !rel.iter().any(|&(a, b)| lo <= a && a < p && p <= b && b < hi)
        })
        .expect("chain transfer system has a pivot");
    out.push(Step::N);
    dyck_steps(rel, p + 1, hi, out);
    out.push(Step::E);
    dyck_steps(rel, lo, p, out);
}

/// `N · dyck(right) · E · dyck(left)`, recursively over the pivot decomposition.
pub fn transfer_to_dyck(z: &TransferSystem) -> Result<DyckPath, TransferError> {
    let n = z
        .carrier()
        .as_chain()
        .ok_or_else(|| TransferError::NotAChain(z.carrier().label().to_owned()))?;
    let rel: Vec<(usize, usize)> = z.non_identity().iter().map(|a| (a.src, a.dst)).collect();
    let mut steps = Vec::with_capacity(2 * (n + 1));
    dyck_steps(&rel, 0, n + 1, &mut steps);
    Ok(DyckPath { steps })
}

fn dyck_relations(steps: &[Step], offset: usize, out: &mut Vec<(usize, usize)>) {
    if steps.is_empty() {
        return;
    }
    let mut h = 0i64;
    let ret = steps
        .iter()
        .position(|s| {
            h += if *s == Step::N { 1 } else { -1 };
            h == 0
        })
        .expect("balanced path returns to the diagonal");
    let inner = &steps[1..ret];
    let rest = &steps[ret + 1..];
    let p = offset + rest.len() / 2;
    let above = inner.len() / 2;
    dyck_relations(rest, offset, out);
    out.extend((p + 1..=p + above).map(|w| (p, w)));
    dyck_relations(inner, p + 1, out);
}

/// Inverse of [`transfer_to_dyck`]; the empty path has no chain and is rejected.
pub fn dyck_to_transfer(d: &DyckPath) -> Result<TransferSystem, PathError> {
    let size = d.semilength();
    if size == 0 {
        return Err(PathError::Malformed("empty path encodes the empty chain".into()));
    }
    let mut rel = Vec::new();
    dyck_relations(&d.steps, 0, &mut rel);
    let l = FiniteLattice::chain(size - 1).into_shared();
    let set = l.reflexive_set(rel).expect("arrows lie in the chain");
    Ok(TransferSystem::new_unchecked(l, set))
}

/// A path from `(0, 0)` to `(n + 1, n + 1)` whose first step is N.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        let north = steps.iter().filter(|s| **s == Step::N).count();
        if steps.is_empty() || 2 * north != steps.len() {
            return Err(PathError::Malformed("path must end on the diagonal".into()));
        }
        if steps[0] != Step::N {
            return Err(PathError::Malformed("first step must be N".into()));
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// The `n` with endpoint `(n + 1, n + 1)`.
    pub fn n(&self) -> usize {
        self.steps.len() / 2 - 1
    }

    /// Maximal pieces between diagonal crossings, each reflected into a Dyck path.
    pub fn blocks(&self) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut h = 0i64;
        for i in 0..self.steps.len() {
            h += if self.steps[i] == Step::N { 1 } else { -1 };
            let end = i + 1 == self.steps.len();
            if h == 0 && (end || self.steps[i + 1] == self.steps[i]) {
                let seg = &self.steps[start..=i];
                let steps = if seg[0] == Step::N {
                    seg.to_vec()
                } else {
                    seg.iter().map(|s| s.flip()).collect()
                };
                out.push(DyckPath { steps });
                start = i + 1;
            }
        }
        out
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(&self.steps, f)
    }
}

impl FromStr for LatticePath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_steps(s)?)
    }
}

/// Number of times the path passes strictly from one side of the diagonal to the other.
pub fn crossings(p: &LatticePath) -> usize {
    p.blocks().len() - 1
}

/// A weakly monotone map `[n] -> [n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endo {
    values: Vec<usize>,
}

impl Endo {
    pub fn new(values: Vec<usize>) -> Result<Self, PathError> {
        if values.is_empty() {
            return Err(PathError::Malformed("no values".into()));
        }
        let max = values.len() - 1;
        for (index, &value) in values.iter().enumerate() {
            if value > max {
                return Err(PathError::OutOfRange { index, value, max });
            }
            if index > 0 && values[index - 1] > value {
                return Err(PathError::NotMonotone(index));
            }
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (0..=n).collect(),
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// All monotone maps `[n] -> [n]`, lexicographic.
    pub fn all(n: usize) -> Vec<Self> {
        fn go(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Endo>) {
            if cur.len() == n + 1 {
                out.push(Endo { values: cur.clone() });
                return;
            }
            for v in min..=n {
                cur.push(v);
                go(n, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, 0, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Endo {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = s
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|e| PathError::Malformed(format!("{v:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

/// Concatenates the block Dyck paths, reflecting every other block starting
/// with the second, so the path crosses the diagonal between blocks.
pub fn model_to_path(m: &ModelStructure) -> Result<LatticePath, ModelError> {
    let sel = model::selection_of(m)?;
    let mut steps = Vec::with_capacity(2 * m.carrier().size());
    for (i, r) in sel.block_systems().iter().enumerate() {
        let d = transfer_to_dyck(r)?;
        if i % 2 == 0 {
            steps.extend_from_slice(d.steps());
        } else {
            steps.extend(d.steps().iter().map(|s| s.flip()));
        }
    }
    Ok(LatticePath { steps })
}

/// Value at `k` is one less than the height of the E step leaving column `k`.
pub fn path_to_endo(p: &LatticePath) -> Endo {
    let mut h = 0;
    let mut values = Vec::with_capacity(p.n() + 1);
    for s in &p.steps {
        match s {
            Step::N => h += 1,
            Step::E => values.push(h - 1),
        }
    }
    Endo { values }
}

pub fn endo_to_path(e: &Endo) -> LatticePath {
    let mut steps = Vec::with_capacity(2 * e.values.len());
    let mut h = 0;
    for &v in &e.values {
        while h < v + 1 {
            steps.push(Step::N);
            h += 1;
        }
        steps.push(Step::E);
    }
    while h < e.values.len() {
        steps.push(Step::N);
        h += 1;
    }
    LatticePath { steps }
}

pub fn phi(m: &ModelStructure) -> Result<Endo, ModelError> {
    Ok(path_to_endo(&model_to_path(m)?))
}

/// The model structure on `[n]` recovered from a path's blocks.
pub fn path_to_model(p: &LatticePath) -> Result<ModelStructure, ModelError> {
    let blocks = p.blocks();
    let sizes: Vec<usize> = blocks.iter().map(|d| d.semilength()).collect();
    let partition = IntervalPartition::from_block_sizes(&sizes)?;
    let systems = blocks
        .iter()
        .map(|d| dyck_to_transfer(d).expect("blocks are nonempty"))
        .collect();
    let sel = ContractibleSelection::new(partition, systems)?;
    let carrier = FiniteLattice::chain(p.n()).into_shared();
    Ok(model::from_selection_on(&carrier, &sel))
}

pub fn phi_inverse(e: &Endo) -> Result<ModelStructure, ModelError> {
    path_to_model(&endo_to_path(e))
}

/// [`phi_inverse`] on a shared carrier.
pub fn phi_inverse_on(carrier: &Arc<FiniteLattice>, e: &Endo) -> Result<ModelStructure, ModelError> {
    let m = phi_inverse(e)?;
    Ok(ModelStructure::new_unchecked(
        Arc::clone(carrier),
        m.w().clone(),
        m.c().clone(),
        m.f().clone(),
    ))
}
