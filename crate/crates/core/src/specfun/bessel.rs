//! Bessel function of the first kind `J_ν(x)` for real order `ν > −1` and `x ≥ 0`.
//!
//! Power series for `x ≤ 8`, Miller's backward recurrence normalised by the
//! Neumann sum `(x/2)^ν = Σ (ν+2k) Γ(ν+k)/k! · J_{ν+2k}(x)` in the middle range,
//! and the Hankel asymptotic expansion once `x ≥ 30` and `4ν² ≤ x`.

use std::f64::consts::PI;

use super::gamma::{gamma_unchecked, rgamma};
use super::series::SeriesAccumulator;
use crate::error::{check_finite, domain, Error, Result};

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_LIMIT: f64 = 30.0;

pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    check_finite("order", order)?;
    check_finite("x", x)?;
    if order <= -1.0 {
        return domain(format!("bessel_j requires order > -1, got {order}"));
    }
    if x < 0.0 {
        return domain(format!("bessel_j requires x >= 0, got {x}"));
    }
    if x == 0.0 {
        return match order {
            o if o == 0.0 => Ok(1.0),
            o if o > 0.0 => Ok(0.0),
            _ => domain("bessel_j of negative order is unbounded at 0"),
        };
    }
    if x <= SERIES_LIMIT {
        series(order, x)
    } else if x >= ASYMPTOTIC_LIMIT && 4.0 * order * order <= x {
        Ok(asymptotic(order, x))
    } else {
        Ok(miller(order, x))
    }
}

fn series(nu: f64, x: f64) -> Result<f64> {
    let q = -0.25 * x * x;
    let mut acc = SeriesAccumulator::new();
    let mut term = 1.0;
    let mut k = 0.0;
    while !acc.push(term) {
        if acc.exhausted() {
            return Err(Error::NoConvergence {
                what: "bessel_j power series",
                terms: acc.terms(),
            });
        }
        k += 1.0;
        term *= q / (k * (nu + k));
    }
    Ok((0.5 * x).powf(nu) * rgamma(nu + 1.0) * acc.value())
}

fn miller(nu: f64, x: f64) -> f64 {
    let top = (x + 25.0 + 2.0 * x.sqrt()).ceil() as usize;
    let top = top + top % 2;
    // Neumann weights c_i for J_{ν+2i}
    let half = top / 2;
    let mut weights = Vec::with_capacity(half + 1);
    weights.push(gamma_unchecked(nu + 1.0));
    if half >= 1 {
        weights.push((nu + 2.0) * weights[0]);
    }
    for i in 2..=half {
        let fi = i as f64;
        let prev = weights[i - 1];
        weights.push(prev * (nu + 2.0 * fi) / (nu + 2.0 * fi - 2.0) * (nu + fi - 1.0) / fi);
    }
    let mut next = 0.0; // J_{ν+k+1}
    let mut cur = 1e-30; // J_{ν+k}
    let mut norm = if top % 2 == 0 { weights[half] * cur } else { 0.0 };
    for k in (1..=top).rev() {
        let prev = 2.0 * (nu + k as f64) / x * cur - next;
        next = cur;
        cur = prev;
        let kk = k - 1;
        if kk % 2 == 0 {
            norm += weights[kk / 2] * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
    }
    cur * (0.5 * x).powf(nu) / norm
}

fn asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            term *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        }
        if term.abs() > last || term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
