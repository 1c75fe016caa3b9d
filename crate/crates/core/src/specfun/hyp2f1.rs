//! Gauss hypergeometric function ₂F₁(a, b; c; z) on `0 ≤ z < 1`.
//!
//! * `z ≤ 0.5`, or `z ≤ 0.9` with `a, b, c > 0`: the Gauss series.
//! * `z > 0.5`: the connection formula in powers of `1 − z`. When `c − a − b`
//!   is an integer the logarithmic limit expansions are used; when it is within
//!   `1e-3` of an integer the value is interpolated in `a` across five nodes
//!   straddling the logarithmic case, which avoids the `1/(c−a−b−m)` cancellation.
//!
//! Callers that know `1 − z` more accurately than `1 − z` can be formed in
//! floating point (kernels near `y → ∞`) use [`hyp2f1_split`].

use super::gamma::{digamma, is_pole, rgamma, GammaRatio};
use super::series::SeriesAccumulator;
use crate::error::{check_finite, domain, Error, Result};

pub const Z_SWITCH: f64 = 0.5;
/// Series limit when every term is positive; the connection formula cancels
/// badly there once `c − a − b` is small.
const POSITIVE_SWITCH: f64 = 0.9;
const NEAR_INTEGER: f64 = 1e-3;

/// ₂F₁(a, b; c; z) for `0 ≤ z < 1`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    for (name, v) in [("a", a), ("b", b), ("c", c), ("z", z)] {
        check_finite(name, v)?;
    }
    if !(0.0..1.0).contains(&z) {
        return domain(format!("hyp2f1 requires 0 <= z < 1, got z = {z}"));
    }
    hyp2f1_split(a, b, c, z, 1.0 - z)
}

/// ₂F₁ with the complement `w = 1 − z` supplied separately.
pub(crate) fn hyp2f1_split(a: f64, b: f64, c: f64, z: f64, w: f64) -> Result<f64> {
    if is_pole(c) {
        return domain(format!("hyp2f1: c = {c} is a non-positive integer"));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    let positive = a > 0.0 && b > 0.0 && c > 0.0;
    if is_pole(a) || is_pole(b) || z <= Z_SWITCH || (positive && z <= POSITIVE_SWITCH) {
        return gauss_series(a, b, c, z);
    }
    let d = c - a - b;
    // Euler transformation turns these into terminating series.
    if is_pole(c - a) || is_pole(c - b) {
        return Ok(w.powf(d) * gauss_series(c - a, c - b, c, z)?);
    }
    if w == 0.0 {
        return if d > 0.0 {
            GammaRatio::new([c, d], [c - a, c - b]).value()
        } else {
            domain("hyp2f1 diverges at z = 1 when c - a - b <= 0")
        };
    }
    let m = d.round();
    let eps = d - m;
    let exact_tol = 1e-13 * (1.0 + a.abs() + b.abs() + c.abs());
    if eps.abs() <= exact_tol {
        log_connection(a, b, m as i64, w)
    } else if eps.abs() < NEAR_INTEGER {
        near_integer(b, c, z, w, m as i64, eps)
    } else {
        connection(a, b, c, w)
    }
}

/// ₂F₁(a, b; c; 1 − w) for `w` too small to represent, given `ln w`.
///
/// Returns `(v, l)` with ₂F₁ ≈ `v·eˡ`; the neglected terms are `O(w ln w)`
/// relative to the kept ones.
pub(crate) fn hyp2f1_near_one(a: f64, b: f64, c: f64, ln_w: f64) -> Result<(f64, f64)> {
    if is_pole(c) {
        return domain(format!("hyp2f1: c = {c} is a non-positive integer"));
    }
    let d = c - a - b;
    let m = d.round();
    if (d - m).abs() <= 1e-13 * (1.0 + a.abs() + b.abs() + c.abs()) {
        if m > 0.0 {
            return Ok((GammaRatio::new([c, m], [c - a, c - b]).value()?, 0.0));
        }
        if is_pole(a) || is_pole(b) {
            return domain("hyp2f1 near z = 1 with a terminating series and c = a + b + m, m <= 0");
        }
        if m == 0.0 {
            let g = GammaRatio::new([c], [a, b]).value()?;
            let psi1 = digamma(1.0);
            return Ok((g * (2.0 * psi1 - digamma(a) - digamma(b) - ln_w), 0.0));
        }
        return Ok((GammaRatio::new([c, -m], [a, b]).value()?, m * ln_w));
    }
    let g1 = GammaRatio::new([c, d], [c - a, c - b]).value()?;
    let g2 = GammaRatio::new([c, -d], [a, b]).value()?;
    if d > 0.0 {
        Ok((g1 + g2 * (d * ln_w).exp(), 0.0))
    } else {
        Ok((g2 + g1 * (-d * ln_w).exp(), d * ln_w))
    }
}

/// `₂F₁(a,b;c;z) / Γ(c)`, finite for every `c` including the non-positive integers.
pub fn hyp2f1_regularized(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    hyp2f1_regularized_split(a, b, c, z, 1.0 - z)
}

pub(crate) fn hyp2f1_regularized_split(a: f64, b: f64, c: f64, z: f64, w: f64) -> Result<f64> {
    if !is_pole(c) {
        return Ok(hyp2f1_split(a, b, c, z, w)? * rgamma(c));
    }
    // c = −n: F/Γ(c) = (a)_{n+1}(b)_{n+1} z^{n+1}/(n+1)! · F(a+n+1, b+n+1; n+2; z)
    let n = (-c) as usize;
    let mut coef = 1.0;
    for k in 0..=n {
        coef *= (a + k as f64) * (b + k as f64) * z / (k as f64 + 1.0);
    }
    if coef == 0.0 {
        return Ok(0.0);
    }
    let shift = n as f64 + 1.0;
    Ok(coef * hyp2f1_split(a + shift, b + shift, shift + 1.0, z, w)?)
}

fn gauss_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut acc = SeriesAccumulator::new();
    let mut term = 1.0;
    let mut n = 0.0;
    loop {
        if acc.push(term) {
            return Ok(acc.value());
        }
        if acc.exhausted() {
            return Err(Error::NoConvergence {
                what: "hyp2f1 Gauss series",
                terms: acc.terms(),
            });
        }
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        n += 1.0;
    }
}

/// Non-logarithmic connection formula (c − a − b not an integer).
fn connection(a: f64, b: f64, c: f64, w: f64) -> Result<f64> {
    let d = c - a - b;
    let g1 = GammaRatio::new([c, d], [c - a, c - b]).value()?;
    let g2 = GammaRatio::new([c, -d], [a, b]).value()?;
    let mut total = 0.0;
    if g1 != 0.0 {
        total += g1 * gauss_series(a, b, 1.0 - d, w)?;
    }
    if g2 != 0.0 {
        total += g2 * w.powf(d) * gauss_series(c - a, c - b, 1.0 + d, w)?;
    }
    Ok(total)
}

/// Logarithmic connection formulas for `c = a + b + m`, `m` an integer.
fn log_connection(a: f64, b: f64, m: i64, w: f64) -> Result<f64> {
    let ln_w = w.ln();
    if m >= 0 {
        let mu = m as usize;
        let mf = m as f64;
        let c = a + b + mf;
        // finite part
        let mut finite = 0.0;
        if mu > 0 {
            let coef = GammaRatio::new([mf, c], [a + mf, b + mf]).value()?;
            if coef != 0.0 {
                let mut t = 1.0;
                let mut s = 0.0;
                for n in 0..mu {
                    s += t;
                    let nf = n as f64;
                    t *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
                }
                finite = coef * s;
            }
        }
        let coef = GammaRatio::new([c], [a, b]).value()?;
        if coef == 0.0 {
            return Ok(finite);
        }
        let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
        let pref = -sign * w.powi(m as i32) * coef;
        let inv_m_fact: f64 = 1.0 / (1..=mu).fold(1.0, |p, k| p * k as f64);
        let series = log_series(a + mf, b + mf, mf, inv_m_fact, ln_w, w)?;
        Ok(finite + pref * series)
    } else {
        let k = (-m) as usize;
        let kf = k as f64;
        let c = a + b - kf;
        let mut finite = 0.0;
        let coef = GammaRatio::new([kf, c], [a, b]).value()?;
        if coef != 0.0 {
            let mut t = 1.0;
            let mut s = 0.0;
            for n in 0..k {
                s += t;
                let nf = n as f64;
                t *= (a - kf + nf) * (b - kf + nf) / ((nf + 1.0) * (1.0 - kf + nf)) * w;
            }
            finite = coef * w.powi(-(k as i32)) * s;
        }
        let coef2 = GammaRatio::new([c], [a - kf, b - kf]).value()?;
        if coef2 == 0.0 {
            return Ok(finite);
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let inv_k_fact: f64 = 1.0 / (1..=k).fold(1.0, |p, j| p * j as f64);
        let series = log_series(a, b, kf, inv_k_fact, ln_w, w)?;
        Ok(finite - sign * coef2 * series)
    }
}

/// Σₙ (p)ₙ(q)ₙ / (n!(n+m)!) wⁿ [ln w − ψ(n+1) − ψ(n+m+1) + ψ(p+n) + ψ(q+n)].
fn log_series(p: f64, q: f64, m: f64, inv_m_fact: f64, ln_w: f64, w: f64) -> Result<f64> {
    let mut acc = SeriesAccumulator::new();
    let mut coef = inv_m_fact;
    let mut psi_1 = digamma(1.0);
    let mut psi_m = digamma(m + 1.0);
    let mut psi_p = digamma(p);
    let mut psi_q = digamma(q);
    let mut n = 0.0;
    loop {
        let term = coef * (ln_w - psi_1 - psi_m + psi_p + psi_q);
        if acc.push(term) {
            return Ok(acc.value());
        }
        if acc.exhausted() {
            return Err(Error::NoConvergence {
                what: "hyp2f1 logarithmic connection series",
                terms: acc.terms(),
            });
        }
        coef *= (p + n) * (q + n) / ((n + 1.0) * (n + m + 1.0)) * w;
        psi_1 += 1.0 / (n + 1.0);
        psi_m += 1.0 / (n + m + 1.0);
        psi_p += 1.0 / (p + n);
        psi_q += 1.0 / (q + n);
        n += 1.0;
    }
}

/// Five-node Lagrange interpolation in `a` around the logarithmic case.
fn near_integer(b: f64, c: f64, z: f64, w: f64, m: i64, eps: f64) -> Result<f64> {
    const H: f64 = NEAR_INTEGER;
    let nodes = [-2.0 * H, -H, 0.0, H, 2.0 * H];
    let mut values = [0.0; 5];
    for (v, &e) in values.iter_mut().zip(&nodes) {
        // shift a so that c − a' − b = m + e
        let a_node = c - b - m as f64 - e;
        *v = if e == 0.0 {
            if is_pole(a_node) {
                gauss_series(a_node, b, c, z)?
            } else {
                log_connection(a_node, b, m, w)?
            }
        } else if is_pole(a_node) {
            gauss_series(a_node, b, c, z)?
        } else {
            connection(a_node, b, c, w)?
        };
    }
    let mut total = 0.0;
    for i in 0..5 {
        let mut l = 1.0;
        for j in 0..5 {
            if i != j {
                l *= (eps - nodes[j]) / (nodes[i] - nodes[j]);
            }
        }
        total += l * values[i];
    }
    Ok(total)
}
