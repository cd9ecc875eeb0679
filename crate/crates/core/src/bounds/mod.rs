//! Bounds on `c4` in terms of `c3`, and the blow-up constructions that
//! conjecturally attain the minimum.
//!
//! A random blow-up of the transitive tournament `T_m` with weights `w` has
//! `c3 = ¼ Σ w_i³` and `c4 = ⅜ Σ w_i⁴`, so minimising `c4` at fixed `c3` over
//! such blow-ups is minimising `Σ w⁴` subject to `Σ w = 1`, `Σ w³ = 4·c3`.

mod curves;
mod dataset;
mod optimum;
mod predict;

pub use curves::{lb_flag, lb_variance, ub_c4_from_c3, ub_c4_from_t4, ub_t4_from_t3};
pub use dataset::{curve_dataset, sig12, CurveRow, Figure};
pub use optimum::{
    branch_threshold, conjectured_min_c4, min_fourth_power_sum, replace_step, BlowupOptimum, ReplacementBranch, ReplacementResult,
};
pub use predict::{mix_profile_prediction, predict_blowup_profile};

use crate::error::{Error, Result};

/// Slack allowed when checking that an argument lies in a closed interval.
const DOMAIN_EPS: f64 = 1e-12;

pub(crate) fn check_domain(name: &str, x: f64, lo: f64, hi: f64) -> Result<()> {
    if x.is_finite() && x >= lo - DOMAIN_EPS && x <= hi + DOMAIN_EPS {
        Ok(())
    } else {
        Err(Error::param(format!("{name} = {x} is outside [{lo}, {hi}]")))
    }
}
