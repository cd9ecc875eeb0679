//! Minimising `Σ w⁴` over probability vectors with a prescribed `Σ w³`.
//!
//! The minimiser has `m − 1` equal weights `a` and one weight `b ≤ a`, with
//! the smallest feasible `m`. For a fixed `m`, solving `(m−1)a + b = 1` and
//! `(m−1)a³ + b³ = C` with `a ≥ b > 0` is possible exactly when
//! `1/m² ≤ C < 1/(m−1)²`: at `b = 1/m` the cube sum is `1/m²`, and as `b → 0`
//! it increases to `1/(m−1)²`.

use super::check_domain;
use crate::error::{Error, Result};

/// The `(m−1) × a, 1 × b` weight vector and the densities it implies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupOptimum {
    pub m: usize,
    pub a: f64,
    pub b: f64,
    pub c3: f64,
    pub c4: f64,
}

impl BlowupOptimum {
    fn from_weights(m: usize, a: f64, b: f64) -> Self {
        let k = (m - 1) as f64;
        let cubes = k * a.powi(3) + b.powi(3);
        let fourths = k * a.powi(4) + b.powi(4);
        BlowupOptimum {
            m,
            a,
            b,
            c3: cubes / 4.0,
            c4: 0.375 * fourths,
        }
    }

    /// The full weight vector `(a, …, a, b)`.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![self.a; self.m - 1];
        w.push(self.b);
        w
    }

    pub fn sum_residual(&self) -> f64 {
        (self.m - 1) as f64 * self.a + self.b - 1.0
    }

    pub fn cube_residual(&self, target: f64) -> f64 {
        (self.m - 1) as f64 * self.a.powi(3) + self.b.powi(3) - target
    }

    pub fn fourth_power_sum(&self) -> f64 {
        (self.m - 1) as f64 * self.a.powi(4) + self.b.powi(4)
    }
}

const EXACT_SQUARE_EPS: f64 = 1e-12;

/// Whether `C = 1/m²` up to rounding.
fn is_balanced(cube_sum: f64, m: usize) -> bool {
    (cube_sum - 1.0 / (m * m) as f64).abs() <= EXACT_SQUARE_EPS
}

/// Smallest `m` with `1/m² ≤ C`.
fn smallest_parts(cube_sum: f64) -> usize {
    let r = 1.0 / cube_sum.sqrt();
    let rounded = r.round().max(1.0) as usize;
    if is_balanced(cube_sum, rounded) {
        rounded
    } else {
        r.ceil() as usize
    }
}

/// Minimum of `Σ w⁴` over `m`-part probability vectors with `Σ w³ = C`, or
/// `None` when `C` is outside `[1/m², 1/(m−1)²)`.
pub fn min_fourth_power_sum(cube_sum: f64, m: usize) -> Result<Option<BlowupOptimum>> {
    if !(cube_sum > 0.0 && cube_sum <= 1.0 + EXACT_SQUARE_EPS) {
        return Err(Error::param(format!("cube sum {cube_sum} must lie in (0, 1]")));
    }
    if m == 0 {
        return Err(Error::param("need at least one part"));
    }
    if m == 1 {
        return Ok(is_balanced(cube_sum, 1).then(|| BlowupOptimum::from_weights(1, 1.0, 1.0)));
    }
    let low = 1.0 / (m * m) as f64;
    let high = 1.0 / ((m - 1) * (m - 1)) as f64;
    if is_balanced(cube_sum, m) {
        let w = 1.0 / m as f64;
        return Ok(Some(BlowupOptimum::from_weights(m, w, w)));
    }
    if cube_sum < low || cube_sum >= high {
        return Ok(None);
    }
    let k = (m - 1) as f64;
    let excess = |b: f64| {
        let a = (1.0 - b) / k;
        k * a.powi(3) + b.powi(3) - cube_sum
    };
    // excess is decreasing in b on (0, 1/m]: positive near 0, non-positive at 1/m.
    let (mut lo, mut hi) = (0.0, 1.0 / m as f64);
    if excess(lo) <= 0.0 || excess(hi) > 0.0 {
        return Err(Error::Numerical(format!("root bracket failed for C = {cube_sum}, m = {m}")));
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = 0.5 * (lo + hi);
    Ok(Some(BlowupOptimum::from_weights(m, (1.0 - b) / k, b)))
}

/// Smallest `c4` among random blow-ups of transitive tournaments with the
/// given `c3`.
pub fn conjectured_min_c4(c3: f64) -> Result<BlowupOptimum> {
    if !(c3 > 0.0) {
        return Err(Error::param(format!("c3 = {c3} must be positive")));
    }
    check_domain("c3", c3, 0.0, 0.25)?;
    let cube_sum = (4.0 * c3).min(1.0);
    let m = smallest_parts(cube_sum);
    for candidate in [m, m + 1, m.saturating_sub(1)] {
        if candidate == 0 {
            continue;
        }
        if let Some(opt) = min_fourth_power_sum(cube_sum, candidate)? {
            return Ok(opt);
        }
    }
    Err(Error::Numerical(format!("no feasible part count for c3 = {c3}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplacementBranch {
    /// `(x, y, y) → (s, t, 0)`.
    Pair,
    /// `(x, y, y) → (s, s, t)`.
    Triple,
}

/// One step of the exchange argument: replace `(x, y, y)` keeping the sum and
/// the cube sum while strictly lowering the fourth-power sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplacementResult {
    pub x: f64,
    pub y: f64,
    pub branch: ReplacementBranch,
    pub s: f64,
    pub t: f64,
    /// Discriminant `(x+2y)⁴ − 8y(x+y)²(x+2y)`, for the `Pair` branch.
    pub discriminant: Option<f64>,
}

impl ReplacementResult {
    pub fn input(&self) -> [f64; 3] {
        [self.x, self.y, self.y]
    }

    pub fn output(&self) -> [f64; 3] {
        match self.branch {
            ReplacementBranch::Pair => [self.s, self.t, 0.0],
            ReplacementBranch::Triple => [self.s, self.s, self.t],
        }
    }

    pub fn power_sums(v: [f64; 3], k: i32) -> f64 {
        v.iter().map(|x| x.powi(k)).sum()
    }
}

/// Ratio `y/x` at which the exchange switches branches: `(√5 − 1)/4`.
pub fn branch_threshold() -> f64 {
    (5f64.sqrt() - 1.0) / 4.0
}

pub fn replace_step(x: f64, y: f64) -> Result<ReplacementResult> {
    if !(y > 0.0) || !(x > y) || !x.is_finite() {
        return Err(Error::param(format!("replacement needs x > y > 0, got x = {x}, y = {y}")));
    }
    let sum = x + 2.0 * y;
    if y < branch_threshold() * x {
        // s, t are the roots of sum·s² − sum²·s + 2y(x+y)² = 0.
        let d = sum.powi(4) - 8.0 * y * (x + y).powi(2) * sum;
        let s = (sum * sum + d.max(0.0).sqrt()) / (2.0 * sum);
        let t = (sum - s).max(0.0);
        Ok(ReplacementResult {
            x,
            y,
            branch: ReplacementBranch::Pair,
            s,
            t,
            discriminant: Some(d),
        })
    } else {
        let s = (2.0 * x + 3.0 * y - (y * (4.0 * x + 5.0 * y)).sqrt()) / 2.0;
        let mut t = sum - 2.0 * s;
        if t < 0.0 && t > -1e-12 * x {
            t = 0.0;
        }
        Ok(ReplacementResult {
            x,
            y,
            branch: ReplacementBranch::Triple,
            s,
            t,
            discriminant: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn named_optima() {
        let o = conjectured_min_c4(1.0 / 16.0).unwrap();
        assert_eq!(o.m, 2);
        assert_abs_diff_eq!(o.a, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(o.c4, 3.0 / 64.0, epsilon = 1e-12);
        let o = conjectured_min_c4(1.0 / 36.0).unwrap();
        assert_eq!(o.m, 3);
        assert_abs_diff_eq!(o.c4, 1.0 / 72.0, epsilon = 1e-12);
        let o = conjectured_min_c4(0.25).unwrap();
        assert_eq!(o.m, 1);
        assert_abs_diff_eq!(o.c4, 0.375, epsilon = 1e-12);
    }

    #[test]
    fn unbalanced_optimum() {
        let o = conjectured_min_c4(0.02).unwrap();
        assert_eq!(o.m, 4);
        assert!(o.sum_residual().abs() < 1e-10);
        assert!(o.cube_residual(0.08).abs() < 1e-10);
        assert!(o.a > 0.297 && o.a < 0.298, "a = {}", o.a);
        assert!(o.a >= o.b && o.b > 0.0);
    }

    #[test]
    fn feasibility_bracket() {
        let o = min_fourth_power_sum(0.25, 2).unwrap().unwrap();
        assert_abs_diff_eq!(o.fourth_power_sum(), 0.125, epsilon = 1e-14);
        assert!(min_fourth_power_sum(0.25, 5).unwrap().is_none());
        assert!(min_fourth_power_sum(0.25, 3).unwrap().is_none());
        let o = min_fourth_power_sum(1.0, 1).unwrap().unwrap();
        assert_eq!(o.weights(), vec![1.0]);
        assert_eq!(o.fourth_power_sum(), 1.0);
        assert!(min_fourth_power_sum(0.9, 1).unwrap().is_none());
        assert!(min_fourth_power_sum(0.0, 2).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(conjectured_min_c4(0.0).is_err());
        assert!(conjectured_min_c4(0.3).is_err());
        assert!(replace_step(0.2, 0.2).is_err());
        assert!(replace_step(0.2, 0.0).is_err());
    }

    #[test]
    fn replacement_examples() {
        let r = replace_step(1.0, 0.2).unwrap();
        assert_eq!(r.branch, ReplacementBranch::Pair);
        assert_abs_diff_eq!(r.s, 0.98031, epsilon = 1e-5);
        assert_abs_diff_eq!(r.t, 0.41969, epsilon = 1e-5);
        assert_abs_diff_eq!(ReplacementResult::power_sums(r.output(), 3), 1.016, epsilon = 1e-12);
        assert_abs_diff_eq!(ReplacementResult::power_sums(r.output(), 4), 0.9545469388, epsilon = 1e-9);

        let r = replace_step(0.5, 0.25).unwrap();
        assert_eq!(r.branch, ReplacementBranch::Triple);
        assert_abs_diff_eq!(r.s, 0.424305, epsilon = 5e-6);
        assert_abs_diff_eq!(r.t, 0.151390, epsilon = 5e-6);
        assert_abs_diff_eq!(ReplacementResult::power_sums(r.output(), 3), 0.15625, epsilon = 1e-12);
        assert_abs_diff_eq!(ReplacementResult::power_sums(r.output(), 4), 0.0653509238, epsilon = 1e-9);

        let x = 0.8;
        let r = replace_step(x, branch_threshold() * x).unwrap();
        assert_eq!(r.branch, ReplacementBranch::Triple);
        assert!(r.t.abs() < 1e-9);
    }
}
