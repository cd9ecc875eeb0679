use super::check_domain;
use crate::error::Result;

/// `c4 ≥ 6·c3²`, i.e. `Var(X) ≥ 0` for the edge variable `X`.
pub fn lb_variance(c3: f64) -> Result<f64> {
    check_domain("c3", c3, 0.0, 0.25)?;
    Ok(6.0 * c3 * c3)
}

/// `c4 ≥ 18·c3² / (1 + 8·c3)`, from Cauchy–Schwarz on `X` and `Z = 1 + 2(X − Y)`.
pub fn lb_flag(c3: f64) -> Result<f64> {
    check_domain("c3", c3, 0.0, 0.25)?;
    Ok(18.0 * c3 * c3 / (1.0 + 8.0 * c3))
}

/// `c4 ≤ 2·c3`.
pub fn ub_c4_from_c3(c3: f64) -> Result<f64> {
    check_domain("c3", c3, 0.0, 0.25)?;
    Ok(2.0 * c3)
}

/// `t4 ≤ 2·t3 − 1`.
pub fn ub_t4_from_t3(t3: f64) -> Result<f64> {
    check_domain("t3", t3, 0.75, 1.0)?;
    Ok(2.0 * t3 - 1.0)
}

/// `c4 ≤ min(t4, 1 − t4)`.
pub fn ub_c4_from_t4(t4: f64) -> Result<f64> {
    check_domain("t4", t4, 0.375, 1.0)?;
    Ok(t4.min(1.0 - t4))
}
