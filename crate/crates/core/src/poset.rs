//! Small explicit posets: Hasse diagrams and meet/join existence.

#[derive(Debug, Clone)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// `leq(i, j)` must be a partial order on `0..size`.
    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut rel = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                rel[i * size + j] = leq(i, j);
            }
        }
        Self { size, leq: rel }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    /// Covering relations `(lower, upper)`, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let covered = (0..self.size)
                    .any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.size)
            .filter(|&k| self.leq(k, i) && self.leq(k, j))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&k| self.leq(k, m)))
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.size)
            .filter(|&k| self.leq(i, k) && self.leq(j, k))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&m| upper.iter().all(|&k| self.leq(m, k)))
    }

    /// Pairs lacking a meet or a join; empty iff the poset is a lattice.
    pub fn lattice_failures(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in i + 1..self.size {
                if self.meet(i, j).is_none() || self.join(i, j).is_none() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_square() {
        let p = FinitePoset::from_fn(4, |i, j| i & j == i);
        assert_eq!(p.hasse(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(p.lattice_failures().is_empty());
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = FinitePoset::from_fn(2, |i, j| i == j);
        assert_eq!(p.lattice_failures(), vec![(0, 1)]);
    }
}
