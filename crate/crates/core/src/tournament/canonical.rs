//! Brute-force canonical forms for small tournaments.
//!
//! The code of a labelled tournament lists the orientation bits of the pairs
//! `(i, j)`, `i < j`, column by column: `(0,1), (0,2), (1,2), (0,3), …`. Bit
//! value 1 means `i → j` and the first pair is the most significant bit. The
//! canonical code is the minimum over relabelings, found by a depth-first
//! search that places vertices position by position and prunes any branch
//! whose prefix already exceeds the best code.

use super::Tournament;
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_code`].
pub const MAX_CANONICAL_ORDER: usize = 8;

/// Relabeling-invariant code of a tournament on at most
/// [`MAX_CANONICAL_ORDER`] vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: u8,
    bits: u32,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_parts(n: usize, bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_CANONICAL_ORDER {
            return Err(Error::order(n, "codes cover orders 1..=8"));
        }
        let len = n * (n - 1) / 2;
        if len < 32 && bits >> len != 0 {
            return Err(Error::param(format!("code 0x{bits:x} has more than {len} bits")));
        }
        Ok(CanonicalCode { n: n as u8, bits })
    }

    /// Rebuilds the labelled tournament this code spells out.
    pub fn to_tournament(&self) -> Tournament {
        let n = self.n();
        let len = n * (n - 1) / 2;
        let mut pos = 0;
        let mut m = vec![vec![false; n]; n];
        for j in 1..n {
            for row in m.iter_mut().take(j) {
                row[j] = (self.bits >> (len - 1 - pos)) & 1 == 1;
                pos += 1;
            }
        }
        Tournament::from_fn(n, |u, v| m[u][v])
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let len = self.n() * (self.n() - 1) / 2;
        write!(f, "{}:", self.n)?;
        for p in 0..len {
            write!(f, "{}", (self.bits >> (len - 1 - p)) & 1)?;
        }
        Ok(())
    }
}

/// Canonical code over all `n!` relabelings.
pub fn canonical_code(t: &Tournament) -> Result<CanonicalCode> {
    canonical_code_fixing(t, 0)
}

/// Canonical code over relabelings that fix vertices `0..fixed` in place.
///
/// With `fixed = 2` this is the label-preserving isomorphism class used for
/// flags over an edge type.
pub fn canonical_code_fixing(t: &Tournament, fixed: usize) -> Result<CanonicalCode> {
    let n = t.n();
    if n == 0 || n > MAX_CANONICAL_ORDER {
        return Err(Error::order(n, "canonical codes are computed by brute force for n <= 8"));
    }
    if fixed > n {
        return Err(Error::param(format!("cannot fix {fixed} of {n} vertices")));
    }
    let mut search = Search {
        t,
        n,
        placed: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    for v in 0..fixed {
        search.placed.push(v);
        search.used |= 1 << v;
    }
    let prefix = prefix_bits(t, &search.placed);
    search.descend(prefix, fixed * fixed.saturating_sub(1) / 2);
    let (bits, _) = search.best.expect("search visits at least one labeling");
    Ok(CanonicalCode { n: n as u8, bits })
}

fn prefix_bits(t: &Tournament, placed: &[usize]) -> u32 {
    let mut bits = 0u32;
    for j in 1..placed.len() {
        for &pi in &placed[..j] {
            bits = (bits << 1) | u32::from(t.beats(pi, placed[j]));
        }
    }
    bits
}

struct Search<'a> {
    t: &'a Tournament,
    n: usize,
    placed: Vec<usize>,
    used: u32,
    /// Best complete code and its bit length.
    best: Option<(u32, usize)>,
}

impl Search<'_> {
    fn descend(&mut self, prefix: u32, len: usize) {
        if self.placed.len() == self.n {
            if self.best.is_none_or(|(b, _)| prefix < b) {
                self.best = Some((prefix, len));
            }
            return;
        }
        let total = self.n * (self.n - 1) / 2;
        for v in 0..self.n {
            if self.used & (1 << v) != 0 {
                continue;
            }
            let mut bits = prefix;
            for &p in &self.placed {
                bits = (bits << 1) | u32::from(self.t.beats(p, v));
            }
            let new_len = len + self.placed.len();
            if let Some((best, _)) = self.best {
                let best_prefix = best >> (total - new_len);
                if bits > best_prefix {
                    continue;
                }
            }
            self.placed.push(v);
            self.used |= 1 << v;
            self.descend(bits, new_len);
            self.placed.pop();
            self.used &= !(1 << v);
        }
    }
}
