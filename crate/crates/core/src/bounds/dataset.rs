use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{check_domain, conjectured_min_c4, lb_flag, lb_variance, ub_c4_from_c3, ub_c4_from_t4, ub_t4_from_t3};
use crate::error::{Error, Result};

/// The four boundary plots.
///
/// * `Fig1`: `(t3, t4)`, abscissa `t3 ∈ [3/4, 1]`.
/// * `Fig2`: `(c3, c4)`, abscissa `c3 ∈ [0, 1/4]`.
/// * `Fig3`: `(t4, c4)`, abscissa `t4 ∈ [3/8, 1]`.
/// * `Fig4`: `(c3, c4)` zoomed to `c3 ∈ [0, 0.07]`.
///
/// Lower curves are moved between axes with `t3 = 1 − c3` and `t4 = c4 + 1 − 4c3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Figure {
    pub fn abscissa(self) -> &'static str {
        match self {
            Figure::Fig1 => "t3",
            Figure::Fig2 | Figure::Fig4 => "c3",
            Figure::Fig3 => "t4",
        }
    }

    pub fn header(self) -> String {
        format!("{},upper,lb_variance,lb_flag,conjectured,m", self.abscissa())
    }

    /// Closed abscissa range plotted for this figure.
    pub fn range(self) -> (f64, f64) {
        match self {
            Figure::Fig1 => (0.75, 1.0),
            Figure::Fig2 => (0.0, 0.25),
            Figure::Fig3 => (0.375, 1.0),
            Figure::Fig4 => (0.0, 0.07),
        }
    }

    /// `points` equally spaced abscissas covering [`Self::range`].
    pub fn grid(self, points: usize) -> Result<Vec<f64>> {
        if points < 2 {
            return Err(Error::param(format!("grid needs at least 2 points, got {points}")));
        }
        let (lo, hi) = self.range();
        Ok((0..points)
            .map(|i| if i + 1 == points { hi } else { lo + (hi - lo) * i as f64 / (points - 1) as f64 })
            .collect())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches("fig") {
            "1" => Ok(Figure::Fig1),
            "2" => Ok(Figure::Fig2),
            "3" => Ok(Figure::Fig3),
            "4" => Ok(Figure::Fig4),
            _ => Err(Error::param(format!("unknown figure {s:?}, expected 1-4"))),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            Figure::Fig1 => 1,
            Figure::Fig2 => 2,
            Figure::Fig3 => 3,
            Figure::Fig4 => 4,
        };
        write!(f, "fig{k}")
    }
}

/// One dataset row, every value in the figure's own axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub x: f64,
    pub upper: f64,
    pub lb_variance: f64,
    pub lb_flag: f64,
    pub conjectured: f64,
    /// Part count of the conjectured optimum; `None` where no blow-up is involved (`c3 = 0`).
    pub m: Option<usize>,
}

impl CurveRow {
    /// CSV line with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let m = self.m.map(|m| m.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            sig12(self.x),
            sig12(self.upper),
            sig12(self.lb_variance),
            sig12(self.lb_flag),
            sig12(self.conjectured),
            m
        )
    }
}

/// Formats with 12 significant digits, dropping trailing zeros.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Conjectured minimum `c4` at `c3`, with `0` at `c3 = 0` and the part count.
fn conjectured(c3: f64) -> Result<(f64, Option<usize>)> {
    if c3 <= 0.0 {
        return Ok((0.0, None));
    }
    let o = conjectured_min_c4(c3.min(0.25))?;
    Ok((o.c4, Some(o.m)))
}

/// Smallest `c4 ∈ [0, t4]` with `c4 ≥ f((c4 + 1 − t4)/4)`: a lower curve in
/// `(c3, c4)` axes carried to `(t4, c4)` axes.
fn lower_in_t4_axes(t4: f64, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let gap = |c4: f64| -> Result<f64> { Ok(c4 - f(((c4 + 1.0 - t4) / 4.0).clamp(0.0, 0.25))?) };
    if gap(0.0)? >= 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, t4);
    if gap(hi)? < 0.0 {
        return Err(Error::Numerical(format!("no lower boundary point at t4 = {t4}")));
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn row(x: f64, fig: Figure) -> Result<CurveRow> {
    match fig {
        Figure::Fig2 | Figure::Fig4 => {
            check_domain("c3", x, 0.0, 0.25)?;
            let (conjectured, m) = conjectured(x)?;
            Ok(CurveRow {
                x,
                upper: ub_c4_from_c3(x)?,
                lb_variance: lb_variance(x)?,
                lb_flag: lb_flag(x)?,
                conjectured,
                m,
            })
        }
        Figure::Fig1 => {
            check_domain("t3", x, 0.75, 1.0)?;
            let c3 = (1.0 - x).clamp(0.0, 0.25);
            let shift = 1.0 - 4.0 * c3;
            let (conjectured, m) = conjectured(c3)?;
            Ok(CurveRow {
                x,
                upper: ub_t4_from_t3(x)?,
                lb_variance: lb_variance(c3)? + shift,
                lb_flag: lb_flag(c3)? + shift,
                conjectured: conjectured + shift,
                m,
            })
        }
        Figure::Fig3 => {
            check_domain("t4", x, 0.375, 1.0)?;
            let conj = lower_in_t4_axes(x, |c3| Ok(conjectured(c3)?.0))?;
            let c3 = ((conj + 1.0 - x) / 4.0).clamp(0.0, 0.25);
            Ok(CurveRow {
                x,
                upper: ub_c4_from_t4(x)?,
                lb_variance: lower_in_t4_axes(x, lb_variance)?,
                lb_flag: lower_in_t4_axes(x, lb_flag)?,
                conjectured: conj,
                m: conjectured(c3)?.1,
            })
        }
    }
}

/// Evaluates every curve of `fig` at the given abscissas, in grid order.
pub fn curve_dataset(grid: &[f64], fig: Figure) -> Result<Vec<CurveRow>> {
    grid.par_iter().map(|&x| row(x, fig)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fig4_named_points() {
        let rows = curve_dataset(&[0.0, 1.0 / 16.0, 0.03, 0.25], Figure::Fig2).unwrap();
        assert_eq!(rows[0].m, None);
        assert_eq!(rows[0].conjectured, 0.0);
        assert_abs_diff_eq!(rows[1].lb_flag, 3.0 / 64.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rows[1].conjectured, 3.0 / 64.0, epsilon = 1e-12);
        assert!(rows[2].lb_flag < rows[2].conjectured - 1e-6);
        assert_abs_diff_eq!(rows[3].lb_flag, 0.375, epsilon = 1e-12);
        assert_abs_diff_eq!(rows[3].conjectured, 0.375, epsilon = 1e-12);
        assert_eq!(rows[3].m, Some(1));
    }

    #[test]
    fn other_axes() {
        let r = curve_dataset(&[1.0, 0.75], Figure::Fig1).unwrap();
        assert_abs_diff_eq!(r[0].upper, 1.0);
        assert_abs_diff_eq!(r[0].conjectured, 1.0);
        assert_abs_diff_eq!(r[1].conjectured, 0.375, epsilon = 1e-12);
        let r = curve_dataset(&[0.5, 1.0, 0.375], Figure::Fig3).unwrap();
        assert_abs_diff_eq!(r[0].upper, 0.5);
        assert_abs_diff_eq!(r[1].conjectured, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r[2].conjectured, 0.375, epsilon = 1e-9);
        for row in &r {
            assert!(row.lb_variance <= row.lb_flag + 1e-12);
            assert!(row.lb_flag <= row.conjectured + 1e-9);
            assert!(row.conjectured <= row.upper + 1e-9);
        }
        assert!(curve_dataset(&[0.5], Figure::Fig1).is_err());
    }

    #[test]
    fn grid_and_format() {
        let g = Figure::Fig4.grid(8).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g[7], 0.07);
        assert!(Figure::Fig4.grid(1).is_err());
        assert_eq!("3".parse::<Figure>().unwrap(), Figure::Fig3);
        assert_eq!("fig4".parse::<Figure>().unwrap(), Figure::Fig4);
        assert_eq!(sig12(3.0 / 64.0), "0.046875");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(Figure::Fig3.header(), "t4,upper,lb_variance,lb_flag,conjectured,m");
    }
}
