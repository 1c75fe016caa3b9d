//! Associated Legendre function of the first kind on the ray `z > 1`.
//!
//! Evaluated through
//! `P^μ_λ(z) = w^{-μ/2} (1−w)^{-λ} ₂F₁(−λ, −λ−μ; 1−μ; w) / Γ(1−μ)`, `w = (z−1)/(z+1)`,
//! which keeps the hypergeometric argument inside `[0, 1)` for every `z > 1`.

use super::hyp2f1::hyp2f1_regularized_split;
use crate::error::{check_finite, domain, Result};

/// `P^μ_λ(z)` for real order `mu`, real degree `lam` and `z > 1`.
pub fn legendre_p(mu: f64, lam: f64, z: f64) -> Result<f64> {
    check_finite("mu", mu)?;
    check_finite("lam", lam)?;
    check_finite("z", z)?;
    if z <= 1.0 {
        return domain(format!("legendre_p requires z > 1, got {z}"));
    }
    legendre_p_w(mu, lam, (z - 1.0) / (z + 1.0), 2.0 / (z + 1.0))
}

/// Same function parametrised by `w = (z−1)/(z+1)` and its complement `1 − w`.
pub(crate) fn legendre_p_w(mu: f64, lam: f64, w: f64, one_minus_w: f64) -> Result<f64> {
    if w <= 0.0 {
        return domain("legendre_p: argument must exceed 1");
    }
    Ok(w.powf(-0.5 * mu) * legendre_p_scaled(mu, lam, w, one_minus_w)?)
}

/// `w^{μ/2} P^μ_λ`, which stays finite as `w → 0` and lets callers merge the
/// singular factor `w^{−μ/2}` with their own powers. Accepts `w = 0`.
pub(crate) fn legendre_p_scaled(mu: f64, lam: f64, w: f64, one_minus_w: f64) -> Result<f64> {
    if w < 0.0 {
        return domain("legendre_p: argument must exceed 1");
    }
    let f = hyp2f1_regularized_split(-lam, -lam - mu, 1.0 - mu, w, one_minus_w)?;
    Ok(one_minus_w.powf(-lam) * f)
}
