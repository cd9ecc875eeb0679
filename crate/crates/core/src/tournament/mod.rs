//! Tournament representation and the constructions used throughout the crate.
//!
//! A [`Tournament`] stores one packed bit row per vertex: bit `v` of row `u`
//! is set iff `u → v`. Rows are `u64` words, so set intersections over
//! out-neighbourhoods cost `n / 64` word operations.

mod canonical;
mod generators;
mod io;
pub(crate) mod random;

pub use canonical::{canonical_code, canonical_code_fixing, CanonicalCode, MAX_CANONICAL_ORDER};
pub use generators::{
    blowup, cyclic, flip_perturb, interval, mix, random_tournament, transitive, BlowupSpec, MixSpec,
    WeightVector,
};
pub use io::{read_trn, write_trn};

use crate::error::{Error, Result};

/// A tournament on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Tournament {
    /// Builds a tournament from a rule deciding each pair `u < v`:
    /// `forward(u, v)` true means `u → v`, false means `v → u`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Self::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if forward(u, v) {
                    t.set_bit(u, v);
                } else {
                    t.set_bit(v, u);
                }
            }
        }
        t
    }

    /// Builds a tournament from an `n × n` orientation matrix.
    ///
    /// Entry `rows[i][j]` is 1 iff `i → j`; the diagonal must be 0.
    pub fn from_matrix(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::order(0, "a tournament needs at least one vertex"));
        }
        if rows.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: rows.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            if row[i] != 0 {
                return Err(Error::NotATournament(format!("diagonal entry ({i},{i}) is set")));
            }
            if let Some(j) = row.iter().position(|&x| x > 1) {
                return Err(Error::NotATournament(format!(
                    "entry ({i},{j}) is {}, expected 0 or 1",
                    row[j]
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] + rows[j][i] != 1 {
                    return Err(Error::NotATournament(format!(
                        "pair ({i},{j}) must be oriented exactly one way, found {} and {}",
                        rows[i][j], rows[j][i]
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |u, v| rows[u][v] == 1))
    }

    pub(crate) fn empty(n: usize) -> Self {
        let words = words_for(n);
        Tournament {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    #[inline]
    fn set_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    fn clear_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1u64 << (v % 64));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of `u64` words per row.
    pub fn words(&self) -> usize {
        self.words
    }

    /// True iff `u → v`. Must not be called with `u == v`.
    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        debug_assert!(u != v, "orientation of a vertex with itself is undefined");
        (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Packed out-neighbourhood of `u`.
    #[inline]
    pub fn out_row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.out_degree(u)).collect()
    }

    /// Sorted out-degree sequence.
    pub fn score_sequence(&self) -> Vec<usize> {
        let mut s = self.out_degrees();
        s.sort_unstable();
        s
    }

    /// Out-neighbours of `u` in increasing order.
    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.out_row(u))
    }

    /// Reverses the orientation of the pair `{u, v}`.
    pub fn flip(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "flip needs two distinct vertices");
        if self.beats(u, v) {
            self.clear_bit(u, v);
            self.set_bit(v, u);
        } else {
            self.clear_bit(v, u);
            self.set_bit(u, v);
        }
    }

    /// The tournament with every arc reversed.
    pub fn reversed(&self) -> Self {
        Self::from_fn(self.n, |u, v| self.beats(v, u))
    }

    /// Relabels vertices: vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        Self::from_fn(self.n, |i, j| self.beats(perm[i], perm[j]))
    }

    /// Subtournament induced on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |i, j| self.beats(vertices[i], vertices[j]))
    }

    /// Orientation matrix with 0 on the diagonal.
    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| u8::from(u != v && self.beats(u, v))).collect())
            .collect()
    }

    /// Checks antisymmetric completeness and irreflexivity of the packed rows.
    pub fn check_invariants(&self) -> Result<()> {
        let tail = self.n % 64;
        for u in 0..self.n {
            let row = self.out_row(u);
            if (row[u / 64] >> (u % 64)) & 1 == 1 {
                return Err(Error::Invariant(format!("vertex {u} beats itself")));
            }
            if tail != 0 && row[self.words - 1] >> tail != 0 {
                return Err(Error::Invariant(format!("row {u} has bits beyond n")));
            }
            for v in (u + 1)..self.n {
                if self.beats(u, v) == self.beats(v, u) {
                    return Err(Error::Invariant(format!("pair ({u},{v}) is not oriented exactly once")));
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament(n={}", self.n)?;
        if self.n <= 12 {
            for u in 0..self.n {
                let row: String = (0..self.n)
                    .map(|v| if u == v { '-' } else if self.beats(u, v) { '1' } else { '0' })
                    .collect();
                write!(f, " {row}")?;
            }
        }
        write!(f, ")")
    }
}

/// Iterates the set bit positions of a packed bitset.
pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            }
        })
    })
}
