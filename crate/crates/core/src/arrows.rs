//! Dense bit-vector sets of comparable pairs.
//!
//! An [`ArrowSet`] is indexed by the canonical enumeration of the comparable
//! pairs of its carrier lattice (see [`FiniteLattice::arrows`]). Every set
//! algebra operation is a word-wise bit operation, which is what keeps the
//! brute-force oracles and the lifting checks cheap.
//!
//! [`FiniteLattice::arrows`]: crate::FiniteLattice::arrows

use std::cmp::Ordering;
use std::fmt;

/// Fingerprint of a carrier lattice, used to catch sets mixed across lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeId(pub u64);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArrowSet {
    carrier: LatticeId,
    len: usize,
    words: Vec<u64>,
}

impl ArrowSet {
    pub(crate) fn empty(carrier: LatticeId, len: usize) -> Self {
        Self {
            carrier,
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub(crate) fn full(carrier: LatticeId, len: usize) -> Self {
        let mut s = Self::empty(carrier, len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn carrier(&self) -> LatticeId {
        self.carrier
    }

    /// Number of comparable pairs in the carrier (the universe size).
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        let w = &mut self.words[idx >> 6];
        let bit = 1u64 << (idx & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        let w = &mut self.words[idx >> 6];
        let bit = 1u64 << (idx & 63);
        let present = *w & bit != 0;
        *w &= !bit;
        present
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the members, ascending.
    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            (self.carrier, self.len),
            (other.carrier, other.len),
            "arrow sets over different lattices"
        );
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    /// Complement within the comparable pairs of the carrier.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn trim(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Builds a set from the low `len` bits of a mask. Only valid for
    /// universes of at most 64 arrows; used by the subset-scan oracles.
    #[cfg(test)]
    pub(crate) fn from_mask(carrier: LatticeId, len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mut s = Self::empty(carrier, len);
        if len > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// The raw bit words, least significant bit first.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Lexicographic order on the canonical bit-vector: the set containing the
/// first differing arrow is the larger one.
impl Ord for ArrowSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.carrier, self.len)
            .cmp(&(other.carrier, other.len))
            .then_with(|| {
                for (a, b) in self.words.iter().zip(&other.words) {
                    let diff = a ^ b;
                    if diff != 0 {
                        let low = diff & diff.wrapping_neg();
                        return if a & low != 0 {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for ArrowSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ArrowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}
