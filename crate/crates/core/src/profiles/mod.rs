//! Exact 3- and 4-vertex subtournament counts.
//!
//! Densities are always `count / C(n, k)`, which makes the identities below
//! exact at every finite `n`:
//!
//! * `t4 + c4 + w + l = C(n,4)`
//! * `2·c4 + w + l = (n − 3)·c3`
//! * `t4 − c4 = 1 − 4·c3` (as densities)
//!
//! `c3` comes from the out-degree sequence, `c4` and `t4` from per-edge
//! counts, and `w`, `l` from cyclic triangles inside in- and
//! out-neighbourhoods. All three routes use word-parallel intersections of
//! the packed rows.

mod edge;
mod incremental;
mod sample;

pub use edge::{edge_stats, moments, x_cdf, EdgeCounts, EdgeStats, ExactMoments, MomentReport};
pub use incremental::IncrementalProfile;
pub use sample::{sample_profile4, Estimate, SampledProfile};

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// `C(n, k)` for the small `k` used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

#[inline]
pub(crate) fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Counts of transitive and cyclic triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Profile3Counts {
    pub n: usize,
    pub t3: u64,
    pub c3: u64,
}

impl Profile3Counts {
    pub fn total(&self) -> u64 {
        binomial(self.n as u64, 3)
    }

    pub fn t3_density(&self) -> f64 {
        self.t3 as f64 / self.total() as f64
    }

    pub fn c3_density(&self) -> f64 {
        self.c3 as f64 / self.total() as f64
    }
}

/// Counts of the four 4-vertex types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Profile4Counts {
    pub n: usize,
    pub t4: u64,
    pub c4: u64,
    pub w: u64,
    pub l: u64,
}

impl Profile4Counts {
    pub fn total(&self) -> u64 {
        binomial(self.n as u64, 4)
    }

    pub fn densities(&self) -> [f64; 4] {
        let total = self.total() as f64;
        [self.t4, self.c4, self.w, self.l].map(|c| c as f64 / total)
    }

    pub fn get(&self, ty: FourType) -> u64 {
        match ty {
            FourType::T4 => self.t4,
            FourType::C4 => self.c4,
            FourType::W => self.w,
            FourType::L => self.l,
        }
    }
}

/// Isomorphism types of 4-vertex tournaments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FourType {
    /// Transitive.
    T4,
    /// Strongly connected; contains a directed 4-cycle.
    C4,
    /// Cyclic triangle plus a sink.
    W,
    /// Cyclic triangle plus a source.
    L,
}

impl FourType {
    pub const ALL: [FourType; 4] = [FourType::T4, FourType::C4, FourType::W, FourType::L];

    /// Classification by sorted score sequence.
    pub fn from_scores(mut scores: [usize; 4]) -> Option<Self> {
        scores.sort_unstable();
        match scores {
            [0, 1, 2, 3] => Some(FourType::T4),
            [1, 1, 2, 2] => Some(FourType::C4),
            [0, 2, 2, 2] => Some(FourType::W),
            [1, 1, 1, 3] => Some(FourType::L),
            _ => None,
        }
    }

    /// Number of cyclic triangles in a tournament of this type.
    pub fn cyclic_triangles(self) -> u64 {
        match self {
            FourType::T4 => 0,
            FourType::C4 => 2,
            FourType::W | FourType::L => 1,
        }
    }
}

impl std::fmt::Display for FourType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FourType::T4 => "T4",
            FourType::C4 => "C4",
            FourType::W => "W",
            FourType::L => "L",
        })
    }
}

/// Classifies a 4-vertex tournament.
pub fn classify4(t: &Tournament) -> Result<FourType> {
    if t.n() != 4 {
        return Err(Error::order(t.n(), "classify4 needs exactly 4 vertices"));
    }
    classify_quad(t, [0, 1, 2, 3])
}

/// Classifies the subtournament induced on four distinct vertices.
pub(crate) fn classify_quad(t: &Tournament, q: [usize; 4]) -> Result<FourType> {
    let mut scores = [0usize; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j && t.beats(q[i], q[j]) {
                scores[i] += 1;
            }
        }
    }
    FourType::from_scores(scores)
        .ok_or_else(|| Error::Invariant(format!("score sequence {scores:?} is not a tournament")))
}

/// Cyclic triangle count by the degree identity
/// `c3 = C(n,3) − Σ_v C(outdeg(v), 2)`.
pub fn profile3(t: &Tournament) -> Result<Profile3Counts> {
    let n = t.n();
    if n < 3 {
        return Err(Error::order(n, "profile3 needs n >= 3"));
    }
    let total = binomial(n as u64, 3);
    let transitive: u64 = (0..n).map(|v| choose2(t.out_degree(v) as u64)).sum();
    Ok(Profile3Counts {
        n,
        t3: transitive,
        c3: total - transitive,
    })
}

/// Cyclic triangles inside the vertex set `set` (a packed bitset).
pub(crate) fn c3_within(t: &Tournament, set: &[u64]) -> u64 {
    let size: u64 = set.iter().map(|w| w.count_ones() as u64).sum();
    let transitive: u64 = crate::tournament::iter_bits(set)
        .map(|x| {
            let d: u64 = t
                .out_row(x)
                .iter()
                .zip(set)
                .map(|(a, b)| (a & b).count_ones() as u64)
                .sum();
            choose2(d)
        })
        .sum();
    binomial(size, 3) - transitive
}

/// In-neighbourhood of `v` as a packed bitset.
pub(crate) fn in_row(t: &Tournament, v: usize, buf: &mut Vec<u64>) {
    let n = t.n();
    buf.clear();
    buf.extend(t.out_row(v).iter().map(|w| !w));
    buf[v / 64] &= !(1u64 << (v % 64));
    let tail = n % 64;
    if tail != 0 {
        let last = buf.len() - 1;
        buf[last] &= (1u64 << tail) - 1;
    }
}

/// `(w, l)`: cyclic triangles summed over in- and out-neighbourhoods.
pub(crate) fn sink_source_counts(t: &Tournament) -> (u64, u64) {
    let mut buf = Vec::with_capacity(t.words());
    let mut w = 0;
    let mut l = 0;
    for v in 0..t.n() {
        l += c3_within(t, t.out_row(v));
        in_row(t, v, &mut buf);
        w += c3_within(t, &buf);
    }
    (w, l)
}

/// Exact counts of `T4`, `C4`, `W`, `L`.
///
/// `c4 = Σ_e C(cyc(e), 2)`, `t4 = Σ_e C(thru(e), 2)`, `l = Σ_v c3(N⁺(v))`,
/// `w = Σ_v c3(N⁻(v))`.
pub fn profile4(t: &Tournament) -> Result<Profile4Counts> {
    let n = t.n();
    if n < 4 {
        return Err(Error::order(n, "profile4 needs n >= 4"));
    }
    let stats = edge_stats(t)?;
    let (w, l) = sink_source_counts(t);
    Ok(Profile4Counts {
        n,
        t4: stats.sum_choose2_thru(),
        c4: stats.sum_choose2_cyc(),
        w,
        l,
    })
}

/// Outcome of a single exact identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Every exact identity evaluated on one tournament.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Evaluates the exact count identities in integer arithmetic. Any failure is
/// a bug in the counting code, never a property of the input.
pub fn verify_identities(t: &Tournament) -> Result<IdentityReport> {
    let n = t.n();
    if n < 4 {
        return Err(Error::order(n, "identity checks need n >= 4"));
    }
    let p3 = profile3(t)?;
    let p4 = profile4(t)?;
    let stats = edge_stats(t)?;
    let c3n = binomial(n as u64, 3) as i128;
    let c4n = binomial(n as u64, 4) as i128;
    let (t3, c3) = (p3.t3 as i128, p3.c3 as i128);
    let (t4, c4, w, l) = (p4.t4 as i128, p4.c4 as i128, p4.w as i128, p4.l as i128);
    let m = n as i128;

    let mut checks = Vec::new();
    let mut check = |name: &'static str, lhs: i128, rhs: i128| {
        checks.push(IdentityCheck {
            name,
            holds: lhs == rhs,
            detail: format!("{lhs} vs {rhs}"),
        });
    };
    check("four-count sum = C(n,4)", t4 + c4 + w + l, c4n);
    check("2c4 + w + l = (n-3)c3", 2 * c4 + w + l, (m - 3) * c3);
    check("t4 - c4 = 1 - 4c3 (densities)", (t4 - c4) * c3n, c4n * (c3n - 4 * c3));
    check("t3 + c3 = C(n,3)", t3 + c3, c3n);
    check("sum cyc = 3 c3", stats.sum_cyc() as i128, 3 * c3);
    check("sum thru = t3", stats.sum_thru() as i128, t3);
    check("sum C(cyc,2) = c4", stats.sum_choose2_cyc() as i128, c4);
    check("sum C(thru,2) = t4", stats.sum_choose2_thru() as i128, t4);
    check("sum cyc*thru = 2 c4", stats.sum_cyc_thru() as i128, 2 * c4);

    let upper = |name: &'static str, holds: bool, detail: String| IdentityCheck { name, holds, detail };
    checks.push(upper(
        "c4 <= (n-3) c3 / 2",
        2 * c4 <= (m - 3) * c3,
        format!("2c4 = {}, (n-3)c3 = {}", 2 * c4, (m - 3) * c3),
    ));
    // Largest possible c3 density: (n+1)/(4(n-2)) for odd n, (n+2)/(4(n-1)) for even n.
    let (num, den) = if n % 2 == 1 { (m + 1, 4 * (m - 2)) } else { (m + 2, 4 * (m - 1)) };
    checks.push(upper(
        "c3 density <= regular-tournament maximum",
        c3 * den <= num * c3n,
        format!("c3 = {c3} of {c3n}, bound {num}/{den}"),
    ));
    Ok(IdentityReport { n, checks })
}
