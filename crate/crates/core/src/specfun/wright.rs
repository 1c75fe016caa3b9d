//! Entire series with gamma-product denominators: the Wright function
//! `J^μ_{γ,λ}` and the multi-index Mittag-Leffler function.

use serde::{Deserialize, Serialize};

use super::gamma::{is_pole, ln_abs_gamma};
use super::series::SeriesAccumulator;
use crate::error::{check_finite, domain, Error, Result};

/// Indices of `J^μ_{γ,λ}(z) = Σ (−1)^m (z/2)^{2m+γ+2λ} / (Γ(γ+mμ+λ+1) Γ(λ+m+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WrightParams {
    pub gamma: f64,
    pub mu: f64,
    pub lambda: f64,
}

impl WrightParams {
    pub fn new(gamma: f64, mu: f64, lambda: f64) -> Self {
        Self { gamma, mu, lambda }
    }
}

/// `E(z) = Σ_k z^k / ∏ᵢ Γ(μᵢ + k/ρᵢ)`; `rho` stores the slopes `1/ρᵢ` directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MittagLefflerParams {
    pub rho: Vec<f64>,
    pub mu: Vec<f64>,
}

impl MittagLefflerParams {
    pub fn new(rho: impl Into<Vec<f64>>, mu: impl Into<Vec<f64>>) -> Self {
        Self {
            rho: rho.into(),
            mu: mu.into(),
        }
    }

    /// `E_{(α,α),(α,α)}`, the kernel of the resolvent.
    pub fn doubled(alpha: f64) -> Self {
        Self::new([alpha, alpha], [alpha, alpha])
    }

    fn validate(&self) -> Result<()> {
        if self.rho.len() != self.mu.len() || self.rho.is_empty() {
            return domain("Mittag-Leffler rho and mu must be non-empty and of equal length");
        }
        if self.rho.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return domain("Mittag-Leffler slopes 1/rho must be positive");
        }
        for &m in &self.mu {
            check_finite("Mittag-Leffler mu", m)?;
        }
        Ok(())
    }
}

/// `ln|1/∏Γ(argᵢ)|` and its sign; `None` if some argument sits on a pole.
fn ln_recip_product(args: impl IntoIterator<Item = f64>) -> Option<(f64, f64)> {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for a in args {
        if is_pole(a) {
            return None;
        }
        let (l, s) = ln_abs_gamma(a);
        ln -= l;
        sign *= s;
    }
    Some((ln, sign))
}

/// Accepted rounding loss of an alternating sum, relative to `1 + |sum|`.
const CANCELLATION_LIMIT: f64 = 1e-6;

/// Converged sum, or an error when the largest term has swamped it.
fn finish(acc: &SeriesAccumulator, what: &'static str) -> Result<f64> {
    let v = acc.value();
    if acc.max_abs_term() * f64::EPSILON > CANCELLATION_LIMIT * (1.0 + v.abs()) {
        return Err(Error::NoConvergence {
            what,
            terms: acc.terms(),
        });
    }
    Ok(v)
}

pub fn wright_j(p: WrightParams, z: f64) -> Result<f64> {
    let WrightParams { gamma, mu, lambda } = p;
    for (name, v) in [("gamma", gamma), ("mu", mu), ("lambda", lambda), ("z", z)] {
        check_finite(name, v)?;
    }
    if mu <= 0.0 {
        return domain(format!("wright_j is implemented for mu > 0, got {mu}"));
    }
    if z < 0.0 {
        return domain("wright_j requires z >= 0");
    }
    let lead = gamma + 2.0 * lambda;
    if z == 0.0 {
        return if lead == 0.0 {
            Ok(ln_recip_product([gamma + lambda + 1.0, lambda + 1.0])
                .map_or(0.0, |(l, s)| s * l.exp()))
        } else if lead > 0.0 {
            Ok(0.0)
        } else {
            domain("wright_j is unbounded at z = 0 when gamma + 2 lambda < 0")
        };
    }
    let ln_half = (0.5 * z).ln();
    // past this index the term ratio is below 1/2
    let settle = (2.0 * 0.25 * z * z).powf(1.0 / (1.0 + mu)) + gamma.abs() + lambda.abs() + 2.0;
    let mut acc = SeriesAccumulator::new();
    let mut m = 0usize;
    loop {
        let mf = m as f64;
        let term = match ln_recip_product([gamma + mf * mu + lambda + 1.0, lambda + mf + 1.0]) {
            Some((ln, sign)) => {
                let alt = if m % 2 == 0 { 1.0 } else { -1.0 };
                alt * sign * ((2.0 * mf + lead) * ln_half + ln).exp()
            }
            None => 0.0,
        };
        let stop = acc.push(term);
        if stop && mf > settle {
            return finish(&acc, "Wright series (cancellation)");
        }
        if acc.exhausted() {
            return Err(Error::NoConvergence {
                what: "Wright series",
                terms: acc.terms(),
            });
        }
        m += 1;
    }
}

pub fn mittag_leffler_multi(p: &MittagLefflerParams, z: f64) -> Result<f64> {
    p.validate()?;
    check_finite("z", z)?;
    let base = ln_recip_product(p.mu.iter().copied());
    if z == 0.0 {
        return Ok(base.map_or(0.0, |(l, s)| s * l.exp()));
    }
    let slope_sum: f64 = p.rho.iter().sum();
    let shift_max = p
        .mu
        .iter()
        .zip(&p.rho)
        .map(|(m, s)| m.abs() / s)
        .fold(0.0, f64::max);
    let settle = (2.0 * z.abs()).powf(1.0 / slope_sum) + shift_max + 2.0;
    let ln_z = z.abs().ln();
    let neg = z < 0.0;
    let mut acc = SeriesAccumulator::new();
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let args = p.mu.iter().zip(&p.rho).map(|(m, s)| m + kf * s);
        let term = match ln_recip_product(args) {
            Some((ln, sign)) => {
                let alt = if neg && k % 2 == 1 { -1.0 } else { 1.0 };
                alt * sign * (kf * ln_z + ln).exp()
            }
            None => 0.0,
        };
        let stop = acc.push(term);
        if stop && kf > settle {
            return finish(&acc, "multi-index Mittag-Leffler series (cancellation)");
        }
        if acc.exhausted() {
            return Err(Error::NoConvergence {
                what: "multi-index Mittag-Leffler series",
                terms: acc.terms(),
            });
        }
        k += 1;
    }
}
