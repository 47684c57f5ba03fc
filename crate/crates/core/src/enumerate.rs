//! Exact counting formulas, lazy enumeration of model structures on chains,
//! and brute-force oracles.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arrows::ArrowSet;
use crate::error::EnumerateError;
use crate::lattice::FiniteLattice;
use crate::model::{
    self, from_selection_on, homotopy_category, verify_model, ContractibleSelection,
    IntervalPartition, ModelStructure, ModelViolation, PremodelStructure,
};
use crate::transfer::{
    enumerate_transfer_systems, is_saturated, is_transfer_system, wfs_from_transfer,
    TransferSystem, Wfs,
};

/// Default bound on non-identity comparable pairs for [`oracle_wfs`].
pub const WFS_ORACLE_CAP: usize = 18;
/// Default bound on non-identity comparable pairs for [`oracle_models`].
pub const MODEL_ORACLE_CAP: usize = 8;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn catalan(k: u64) -> BigUint {
    binomial(2 * k, k) / (k + 1)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of model structures on `[n]`.
pub fn count_models(n: u64) -> BigUint {
    binomial(2 * n + 1, n)
}

/// Number of transfer systems on `[n]`.
pub fn count_transfer(n: u64) -> BigUint {
    catalan(n + 1)
}

/// Number of premodel structures on `[n]`, i.e. intervals in the Tamari lattice.
pub fn count_premodels(n: u64) -> BigUint {
    binomial(4 * n + 5, n) * 2u32 / ((n + 1) * (n + 2))
}

pub fn count_saturated_chain(n: u64) -> BigUint {
    BigUint::one() << n
}

pub fn stirling2(n: u64, k: u64) -> BigUint {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::zero(); i as usize + 1];
        for j in 1..=i as usize {
            let keep = if j < row.len() { &row[j] * j } else { BigUint::zero() };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_default()
}

/// Saturated transfer systems on `[m] x [n]`.
pub fn count_saturated_grid(m: u64, n: u64) -> BigUint {
    let mut total = BigInt::zero();
    for j in 2..=m + 2 {
        let term = BigInt::from(stirling2(m + 1, j - 1) * (factorial(j) / 2u32) * BigUint::from(j).pow(n as u32));
        if (m + j) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total.to_biguint().expect("count is nonnegative")
}

/// Model structures on `[n]` with homotopy category `[k]`.
pub fn shapiro(n: u64, k: u64) -> Result<BigUint, EnumerateError> {
    if k > n {
        return Err(EnumerateError::OutOfRange { n: n as usize, k: k as usize });
    }
    Ok(binomial(2 * n + 1, n - k) * (2 * (k + 1)) / (n + k + 2))
}

/// Rows `0..=n_max` of the triangle computed from
/// `Q(n, k) = Q(n-1, k-1) + 2 Q(n-1, k) + Q(n-1, k+1)`.
pub fn shapiro_recurrence(n_max: usize) -> CountTable {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let get = |k: isize| -> BigUint {
            if k < 0 {
                BigUint::zero()
            } else {
                prev.get(k as usize).cloned().unwrap_or_default()
            }
        };
        let row = (0..=n as isize)
            .map(|k| get(k - 1) + get(k) * 2u32 + get(k + 1))
            .collect();
        rows.push(row);
    }
    CountTable { rows }
}

pub fn shapiro_table(n_max: usize) -> CountTable {
    let rows = (0..=n_max as u64)
        .map(|n| (0..=n).map(|k| shapiro(n, k).expect("k <= n")).collect())
        .collect();
    CountTable { rows }
}

/// A lower-triangular table of exact counts, `rows[n][k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

/// Tab-separated, one row per `n`, with the row sum last.
impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n\\k")?;
        for k in 0..self.rows.len() {
            write!(f, "\t{k}")?;
        }
        writeln!(f, "\tsum")?;
        for (n, row) in self.rows.iter().enumerate() {
            write!(f, "{n}")?;
            for k in 0..self.rows.len() {
                match row.get(k) {
                    Some(v) => write!(f, "\t{v}")?,
                    None => write!(f, "\t")?,
                }
            }
            writeln!(f, "\t{}", self.row_sum(n))?;
        }
        Ok(())
    }
}

/// `Q/P` for `[n]`.
pub fn q_over_p_ratio(n: u64) -> BigRational {
    BigRational::new(count_models(n).into(), count_premodels(n).into())
}

/// All compositions (ordered partitions into positive parts) of `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..1u64 << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut cur = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    parts.push(cur);
                    cur = 1;
                } else {
                    cur += 1;
                }
            }
            parts.push(cur);
            parts
        })
        .collect()
}

/// `Σ Π Cat(i_j)` over the compositions of `n`; equals `C(2n - 1, n)` for `n >= 1`.
pub fn catalan_composition_sum(n: usize) -> BigUint {
    compositions(n)
        .iter()
        .map(|parts| parts.iter().map(|&i| catalan(i as u64)).product::<BigUint>())
        .sum()
}

/// Transfer systems on `[0], [1], ..., [n]`, indexed by block size minus one.
#[derive(Debug, Clone)]
pub struct BlockSystems {
    by_len: Vec<Vec<TransferSystem>>,
}

impl BlockSystems {
    pub fn new(n: usize) -> Self {
        let by_len = (0..=n)
            .map(|k| enumerate_transfer_systems(&FiniteLattice::chain(k).into_shared()))
            .collect();
        Self { by_len }
    }

    pub fn on(&self, k: usize) -> &[TransferSystem] {
        &self.by_len[k]
    }
}

/// Lazy stream of all model structures on `[n]`: interval partitions in
/// lexicographic order, then block systems in lexicographic order with the
/// last block varying fastest.
pub struct Models {
    carrier: Arc<FiniteLattice>,
    systems: Arc<BlockSystems>,
    partitions: std::vec::IntoIter<IntervalPartition>,
    current: Option<(IntervalPartition, Vec<usize>, Vec<usize>)>,
}

impl Models {
    fn advance_partition(&mut self) {
        self.current = self.partitions.next().map(|p| {
            let lens: Vec<usize> = p.blocks().iter().map(|(lo, hi)| hi - lo).collect();
            let idx = vec![0; lens.len()];
            (p, lens, idx)
        });
    }

    pub fn carrier(&self) -> &Arc<FiniteLattice> {
        &self.carrier
    }
}

impl Iterator for Models {
    type Item = ModelStructure;

    fn next(&mut self) -> Option<ModelStructure> {
        let (p, lens, idx) = self.current.as_mut()?;
        let chosen = lens
            .iter()
            .zip(idx.iter())
            .map(|(&k, &i)| self.systems.on(k)[i].clone())
            .collect();
        let sel = ContractibleSelection::new(p.clone(), chosen).expect("blocks match systems");
        let m = from_selection_on(&self.carrier, &sel);
        let mut k = idx.len();
        loop {
            if k == 0 {
                self.advance_partition();
                break;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < self.systems.on(lens[k]).len() {
                break;
            }
            idx[k] = 0;
        }
        Some(m)
    }
}

pub fn enumerate_models(n: usize) -> Models {
    let carrier = FiniteLattice::chain(n).into_shared();
    let mut it = Models {
        carrier,
        systems: Arc::new(BlockSystems::new(n)),
        partitions: IntervalPartition::all(n).into_iter(),
        current: None,
    };
    it.advance_partition();
    it
}

/// Enumerates `[n]` in parallel over interval partitions, verifies every
/// structure, and returns how many there are. Stops at the first failure.
pub fn count_verified_models(n: usize) -> Result<usize, (ModelStructure, ModelViolation)> {
    let carrier = FiniteLattice::chain(n).into_shared();
    let systems = BlockSystems::new(n);
    let partitions = IntervalPartition::all(n);
    partitions
        .par_iter()
        .map(|p| {
            let mut count = 0;
            for_each_in_partition(&carrier, &systems, p, |m| {
                if let Err(v) = m.verify() {
                    return Err((m, v));
                }
                count += 1;
                Ok(())
            })?;
            Ok(count)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

fn for_each_in_partition<E>(
    carrier: &Arc<FiniteLattice>,
    systems: &BlockSystems,
    p: &IntervalPartition,
    mut visit: impl FnMut(ModelStructure) -> Result<(), E>,
) -> Result<(), E> {
    let lens: Vec<usize> = p.blocks().iter().map(|(lo, hi)| hi - lo).collect();
    let mut idx = vec![0usize; lens.len()];
    loop {
        let chosen = lens.iter().zip(&idx).map(|(&k, &i)| systems.on(k)[i].clone()).collect();
        let sel = ContractibleSelection::new(p.clone(), chosen).expect("blocks match systems");
        visit(from_selection_on(carrier, &sel))?;
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < systems.on(lens[k]).len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `hist[k]` = number of model structures on `[n]` with homotopy category `[k]`.
pub fn homotopy_histogram(n: usize) -> Vec<usize> {
    let mut hist = vec![0; n + 1];
    for m in enumerate_models(n) {
        hist[homotopy_category(&m).expect("chain").k] += 1;
    }
    hist
}

/// All premodel structures on `[n]`: pairs of transfer systems `R1 ⊆ R2` with
/// `AF = R1` and `F = R2`.
pub fn enumerate_premodels(n: usize) -> Vec<PremodelStructure> {
    let l = FiniteLattice::chain(n).into_shared();
    let wfs: Vec<Wfs> = enumerate_transfer_systems(&l)
        .iter()
        .map(|r| wfs_from_transfer(&l, r))
        .collect();
    let mut out = Vec::new();
    for a in &wfs {
        for b in &wfs {
            if a.right.is_subset(&b.right) {
                out.push(model::premodel_from_wfs_pair(&l, a, b).expect("nested"));
            }
        }
    }
    out
}

/// Counts inclusion pairs of transfer systems on `[n]` without building premodels.
pub fn count_premodel_pairs(n: usize) -> usize {
    let l = FiniteLattice::chain(n).into_shared();
    let systems = enumerate_transfer_systems(&l);
    systems
        .par_iter()
        .map(|a| systems.iter().filter(|b| a.is_subsystem_of(b)).count())
        .sum()
}

/// Saturated transfer systems on any lattice, by filtering the full enumeration.
pub fn saturated_systems(l: &Arc<FiniteLattice>) -> Vec<TransferSystem> {
    enumerate_transfer_systems(l)
        .into_iter()
        .filter(|r| is_saturated(l, r))
        .collect()
}

fn non_identity_indices(l: &FiniteLattice) -> Vec<usize> {
    (0..l.arrow_count())
        .filter(|&i| !l.arrow(i).is_identity())
        .collect()
}

fn check_cap(l: &FiniteLattice, cap: usize) -> Result<Vec<usize>, EnumerateError> {
    let pairs = non_identity_indices(l);
    if pairs.len() > cap || pairs.len() >= 64 {
        return Err(EnumerateError::CapExceeded { pairs: pairs.len(), cap });
    }
    Ok(pairs)
}

fn subset(l: &FiniteLattice, pairs: &[usize], mask: u64) -> ArrowSet {
    let mut s = l.identities();
    for (bit, &i) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// Every reflexive arrow set that is a transfer system, paired with its
/// lifting-derived left class. Sorted by right class.
pub fn oracle_wfs(l: &Arc<FiniteLattice>, cap: usize) -> Result<Vec<Wfs>, EnumerateError> {
    let pairs = check_cap(l, cap)?;
    let mut out: Vec<Wfs> = (0..1u64 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let right = subset(l, &pairs, mask);
            is_transfer_system(l, &right).ok()?;
            Some(Wfs {
                left: l.left_lifting(&right),
                right,
            })
        })
        .collect();
    out.sort_by(|a, b| a.right.cmp(&b.right));
    Ok(out)
}

/// Every triple `(W, C, F)` of identity-containing arrow sets passing
/// [`verify_model`]. Each class must in particular be closed under
/// composition, so only such sets are paired up.
pub fn oracle_models(l: &Arc<FiniteLattice>, cap: usize) -> Result<Vec<ModelStructure>, EnumerateError> {
    let pairs = check_cap(l, cap)?;
    let categories: Vec<ArrowSet> = (0..1u64 << pairs.len())
        .map(|mask| subset(l, &pairs, mask))
        .filter(|s| is_composition_closed(l, s))
        .collect();
    let mut out: Vec<ModelStructure> = categories
        .par_iter()
        .flat_map_iter(|w| {
            let mut found = Vec::new();
            for c in &categories {
                for f in &categories {
                    if verify_model(l, w, c, f).is_ok() {
                        found.push(ModelStructure::new_unchecked(
                            Arc::clone(l),
                            w.clone(),
                            c.clone(),
                            f.clone(),
                        ));
                    }
                }
            }
            found
        })
        .collect();
    out.sort_by(|a, b| (a.w(), a.c(), a.f()).cmp(&(b.w(), b.c(), b.f())));
    Ok(out)
}

fn is_composition_closed(l: &FiniteLattice, s: &ArrowSet) -> bool {
    l.members(s).all(|a| {
        l.members(s)
            .filter(|b| b.src == a.dst)
            .all(|b| s.contains(l.idx(a.src, b.dst)))
    })
}
