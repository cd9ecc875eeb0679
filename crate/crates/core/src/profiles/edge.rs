//! Per-edge third-vertex counts and the edge random variables built on them.
//!
//! For an arc `u → v` every other vertex `w` falls in exactly one class:
//!
//! | class     | arcs            |
//! |-----------|-----------------|
//! | `cyc`     | `v → w → u`     |
//! | `thru`    | `u → w → v`     |
//! | `dom_out` | `u → w`, `v → w`|
//! | `dom_in`  | `w → u`, `w → v`|
//!
//! On a uniformly random arc, `X = cyc / (n−2)` is the chance that a random
//! third vertex closes a cyclic triangle, `Y = thru / (n−2)` the chance that it
//! sits on the directed path `u → w → v`, and `Z = 1 + 2(X − Y)`.

use num_rational::Ratio;

use super::{binomial, choose2};
use crate::error::{Error, Result};
use crate::tournament::Tournament;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCounts {
    pub tail: usize,
    pub head: usize,
    pub cyc: u32,
    pub thru: u32,
    pub dom_out: u32,
    pub dom_in: u32,
}

/// Third-vertex counts for every arc, listed in ascending pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStats {
    pub n: usize,
    pub edges: Vec<EdgeCounts>,
}

#[inline]
fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
fn popcount_andnot(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & !y).count_ones()).sum()
}

/// Counts for the arc `tail → head`.
pub(crate) fn counts_for(t: &Tournament, tail: usize, head: usize) -> EdgeCounts {
    let (a, b) = (t.out_row(tail), t.out_row(head));
    // head's row never contains tail or head itself.
    let cyc = popcount_andnot(b, a);
    // tail's row contains head, which is absent from head's row.
    let thru = popcount_andnot(a, b) - 1;
    let dom_out = popcount_and(a, b);
    let dom_in = (t.n() as u32 - 2) - cyc - thru - dom_out;
    EdgeCounts {
        tail,
        head,
        cyc,
        thru,
        dom_out,
        dom_in,
    }
}

pub fn edge_stats(t: &Tournament) -> Result<EdgeStats> {
    let n = t.n();
    if n < 3 {
        return Err(Error::order(n, "edge statistics need n >= 3"));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push(if t.beats(u, v) { counts_for(t, u, v) } else { counts_for(t, v, u) });
        }
    }
    Ok(EdgeStats { n, edges })
}

impl EdgeStats {
    pub fn sum_cyc(&self) -> u64 {
        self.edges.iter().map(|e| e.cyc as u64).sum()
    }

    pub fn sum_thru(&self) -> u64 {
        self.edges.iter().map(|e| e.thru as u64).sum()
    }

    pub fn sum_choose2_cyc(&self) -> u64 {
        self.edges.iter().map(|e| choose2(e.cyc as u64)).sum()
    }

    pub fn sum_choose2_thru(&self) -> u64 {
        self.edges.iter().map(|e| choose2(e.thru as u64)).sum()
    }

    pub fn sum_cyc_thru(&self) -> u64 {
        self.edges.iter().map(|e| e.cyc as u64 * e.thru as u64).sum()
    }

    /// `X` for every edge, in edge order.
    pub fn x_values(&self) -> Vec<f64> {
        let d = (self.n - 2) as f64;
        self.edges.iter().map(|e| e.cyc as f64 / d).collect()
    }
}

/// Moments of `X`, `Y` and `Z` over a uniformly random arc.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub e_x: f64,
    pub e_y: f64,
    pub e_x2: f64,
    pub e_xy: f64,
    pub e_y2: f64,
    pub e_z2: f64,
    pub var_x: f64,
    /// Exact values, present for `n ≤ 1000`.
    pub exact: Option<ExactMoments>,
}

/// The same moments as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMoments {
    pub e_x: Ratio<i128>,
    pub e_y: Ratio<i128>,
    pub e_x2: Ratio<i128>,
    pub e_xy: Ratio<i128>,
    pub e_y2: Ratio<i128>,
    pub e_z2: Ratio<i128>,
    pub var_x: Ratio<i128>,
}

impl ExactMoments {
    /// `E[Z²]` expanded through the other moments.
    pub fn z2_expansion(&self) -> Ratio<i128> {
        let k = |c: i128| Ratio::from_integer(c);
        k(1) + k(4) * self.e_x - k(4) * self.e_y + k(4) * self.e_x2 - k(8) * self.e_xy + k(4) * self.e_y2
    }
}

/// Largest order for which [`MomentReport::exact`] is filled in.
pub const EXACT_MOMENT_MAX_N: usize = 1000;

pub fn moments(t: &Tournament) -> Result<MomentReport> {
    let n = t.n();
    if n < 4 {
        return Err(Error::order(n, "moments need n >= 4"));
    }
    let stats = edge_stats(t)?;
    let d = (n - 2) as i128;
    let mut s = [0i128; 6]; // cyc, thru, cyc², cyc·thru, thru², (d + 2cyc − 2thru)²
    for e in &stats.edges {
        let (c, h) = (e.cyc as i128, e.thru as i128);
        let z = d + 2 * c - 2 * h;
        s[0] += c;
        s[1] += h;
        s[2] += c * c;
        s[3] += c * h;
        s[4] += h * h;
        s[5] += z * z;
    }
    let m = binomial(n as u64, 2) as i128;
    let first = m * d;
    let second = m * d * d;
    let f = |num: i128, den: i128| num as f64 / den as f64;
    let (e_x, e_x2) = (f(s[0], first), f(s[2], second));
    let exact = (n <= EXACT_MOMENT_MAX_N).then(|| {
        let r1 = |num: i128| Ratio::new(num, first);
        let r2 = |num: i128| Ratio::new(num, second);
        let e_x = r1(s[0]);
        let e_x2 = r2(s[2]);
        ExactMoments {
            e_x,
            e_y: r1(s[1]),
            e_x2,
            e_xy: r2(s[3]),
            e_y2: r2(s[4]),
            e_z2: r2(s[5]),
            var_x: e_x2 - e_x * e_x,
        }
    });
    Ok(MomentReport {
        e_x,
        e_y: f(s[1], first),
        e_x2,
        e_xy: f(s[3], second),
        e_y2: f(s[4], second),
        e_z2: f(s[5], second),
        var_x: e_x2 - e_x * e_x,
        exact,
    })
}

/// Empirical tail `φ_T(x)`: the fraction of arcs with `X ≥ x`, for each `x`
/// of an ascending grid.
pub fn x_cdf(t: &Tournament, grid: &[f64]) -> Result<Vec<f64>> {
    if grid.windows(2).any(|w| w[0] > w[1]) || grid.iter().any(|x| x.is_nan()) {
        return Err(Error::param("x_cdf grid must be sorted ascending"));
    }
    let stats = edge_stats(t)?;
    let d = (t.n() - 2) as f64;
    let mut cyc: Vec<u32> = stats.edges.iter().map(|e| e.cyc).collect();
    cyc.sort_unstable();
    let m = cyc.len() as f64;
    Ok(grid
        .iter()
        .map(|&x| {
            let below = cyc.partition_point(|&c| (c as f64 / d) < x);
            (cyc.len() - below) as f64 / m
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::profile3;
    use crate::tournament::{cyclic, random_tournament, transitive};

    fn standard_c4() -> Tournament {
        // a→b→c→d→a with a→c and b→d.
        Tournament::from_fn(4, |u, v| matches!((u, v), (0, 1) | (1, 2) | (2, 3) | (0, 2) | (1, 3)))
    }

    #[test]
    fn brute_force_classes() {
        let t = random_tournament(40, 8);
        let stats = edge_stats(&t).unwrap();
        for e in &stats.edges {
            let (u, v) = (e.tail, e.head);
            let mut k = [0u32; 4];
            for w in (0..40).filter(|&w| w != u && w != v) {
                let idx = match (t.beats(u, w), t.beats(v, w)) {
                    (false, true) => 0,
                    (true, false) => 1,
                    (true, true) => 2,
                    (false, false) => 3,
                };
                k[idx] += 1;
            }
            assert_eq!([e.cyc, e.thru, e.dom_out, e.dom_in], k);
            assert_eq!(k.iter().sum::<u32>(), 38);
        }
    }

    #[test]
    fn transitive_has_no_cycles_through_edges() {
        let stats = edge_stats(&transitive(12)).unwrap();
        assert!(stats.edges.iter().all(|e| e.cyc == 0));
    }

    #[test]
    fn c4_edge_values() {
        let t = standard_c4();
        assert!(t.beats(3, 0));
        let stats = edge_stats(&t).unwrap();
        let mut cyc: Vec<u32> = stats.edges.iter().map(|e| e.cyc).collect();
        cyc.sort_unstable();
        assert_eq!(cyc, vec![0, 1, 1, 1, 1, 2]);
        assert_eq!(stats.sum_choose2_cyc(), 1);
    }

    #[test]
    fn cyclic_five_sums() {
        let stats = edge_stats(&cyclic(5).unwrap()).unwrap();
        assert_eq!(stats.sum_cyc(), 15);
        assert_eq!(stats.sum_choose2_cyc(), 5);
    }

    #[test]
    fn moments_of_cyclic_five() {
        let m = moments(&cyclic(5).unwrap()).unwrap();
        let ex = m.exact.unwrap();
        assert_eq!(ex.e_x, Ratio::new(1, 2));
        assert_eq!(ex.e_x2, Ratio::new(25, 90));
        assert_eq!(ex.var_x, Ratio::new(25, 90) - Ratio::new(1, 4));
    }

    #[test]
    fn moments_of_transitive() {
        let ex = moments(&transitive(9)).unwrap().exact.unwrap();
        assert_eq!(ex.e_x, Ratio::from_integer(0));
        assert_eq!(ex.e_x2, Ratio::from_integer(0));
        assert_eq!(ex.e_y, Ratio::new(1, 3));
    }

    #[test]
    fn moment_identities_exact() {
        for seed in 0..20 {
            let n = 6 + seed as usize * 7;
            let t = random_tournament(n, seed);
            let ex = moments(&t).unwrap().exact.unwrap();
            let p3 = profile3(&t).unwrap();
            assert_eq!(ex.e_x, Ratio::new(p3.c3 as i128, binomial(n as u64, 3) as i128));
            assert_eq!(ex.e_z2, ex.z2_expansion());
            assert!(ex.var_x >= Ratio::from_integer(0));
        }
    }

    #[test]
    fn tail_function() {
        let phi = x_cdf(&transitive(10), &[0.0, 1e-9, 0.5]).unwrap();
        assert_eq!(phi, vec![1.0, 0.0, 0.0]);
        assert!(x_cdf(&transitive(10), &[0.5, 0.1]).is_err());
        let t = random_tournament(80, 2);
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let phi = x_cdf(&t, &grid).unwrap();
        assert_eq!(phi[0], 1.0);
        assert!(phi.windows(2).all(|w| w[0] >= w[1]));
    }
}
