//! Exact power-polynomial algebra: `Σ aₖ x^{mₖ}` with real exponents, closed
//! under `B_ν` and `C_ν`, plus the closed-form images of powers under the
//! classical and Bessel fractional integrals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, Error, Result};
use crate::specfun::{gamma_ratio, GammaRatio};

/// Finite sum of real powers, kept sorted by exponent with distinct exponents
/// and no zero coefficients.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PowerPolynomial {
    terms: Vec<(f64, f64)>,
}

impl PowerPolynomial {
    /// Build from `(coefficient, exponent)` pairs; equal exponents are merged.
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut terms: Vec<(f64, f64)> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match merged.last_mut() {
                Some(last) if last.1 == m => last.0 += c,
                _ => merged.push((c, m)),
            }
        }
        merged.retain(|&(c, _)| c != 0.0);
        Self { terms: merged }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coefficient: f64, exponent: f64) -> Self {
        Self::new([(coefficient, exponent)])
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0.0)
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<f64> {
        self.terms.last().map(|t| t.1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(c, m)| c * pow(x, m)).sum()
    }

    fn map_terms(&self, f: impl Fn(f64, f64) -> (f64, f64)) -> Self {
        Self::new(self.terms.iter().map(|&(c, m)| f(c, m)))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map_terms(|c, m| (k * c, m))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).copied())
    }

    /// Multiply by `x^p`.
    pub fn times_power(&self, p: f64) -> Self {
        self.map_terms(|c, m| (c, m + p))
    }

    /// `D = d/dx`.
    pub fn derivative(&self) -> Self {
        self.map_terms(|c, m| (c * m, m - 1.0))
    }

    /// `B_ν x^m = m(m − 1 + ν) x^{m−2}`.
    pub fn bessel(&self, nu: f64) -> Self {
        self.map_terms(|c, m| (c * m * (m - 1.0 + nu), m - 2.0))
    }

    /// `C_ν x^m = (m − 1)(m − ν) x^{m−2}`.
    pub fn clifford(&self, nu: f64) -> Self {
        self.map_terms(|c, m| (c * (m - 1.0) * (m - nu), m - 2.0))
    }

    pub fn bessel_pow(&self, nu: f64, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.bessel(nu))
    }

    pub fn clifford_pow(&self, nu: f64, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.clifford(nu))
    }

    /// Exact image under `B^{-α}_{ν,0+}` or `B^{-α}_{ν,−}`, term by term.
    pub fn frac_integral(&self, nu: f64, alpha: f64, side: FracPowerSide) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for &(c, m) in &self.terms {
            out.push((c * frac_power_coefficient(nu, alpha, m, side)?, m + 2.0 * alpha));
        }
        Ok(Self::new(out))
    }

    /// Exact image under the positive power `B^β`, the inverse of
    /// [`frac_integral`](Self::frac_integral) on each admissible term.
    pub fn frac_power(&self, nu: f64, beta: f64, side: FracPowerSide) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for &(c, m) in &self.terms {
            let source = m - 2.0 * beta;
            let k = frac_power_coefficient(nu, beta, source, side)?;
            if k == 0.0 {
                return domain(format!("x^{m} is not in the range of the fractional integral"));
            }
            out.push((c / k, source));
        }
        Ok(Self::new(out))
    }
}

fn pow(x: f64, m: f64) -> f64 {
    if m == 0.0 {
        1.0
    } else if m == m.round() && m.abs() < 64.0 {
        x.powi(m as i32)
    } else {
        x.powf(m)
    }
}

impl fmt::Display for PowerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·x^{m}")?;
        }
        Ok(())
    }
}

pub fn bessel_apply_poly(nu: f64, p: &PowerPolynomial) -> PowerPolynomial {
    p.bessel(nu)
}

pub fn clifford_apply_poly(nu: f64, p: &PowerPolynomial) -> PowerPolynomial {
    p.clifford(nu)
}

/// Endpoint of a classical fractional integral of a power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RlSide {
    /// `I^μ_{0+}`.
    LeftFromZero,
    /// `I^μ_−` (Liouville, to infinity).
    RightToInfinity,
}

/// `I^μ x^m = κ x^{m+μ}`; returns `(κ, m + μ)`.
pub fn rl_power_closed_form(side: RlSide, order: f64, m: f64) -> Result<(f64, f64)> {
    check_finite("order", order)?;
    check_finite("exponent", m)?;
    if order <= 0.0 {
        return domain("fractional order must be positive");
    }
    let ratio = match side {
        RlSide::LeftFromZero => {
            if m <= -1.0 {
                return domain(format!("I_0+ of x^{m} requires m > -1"));
            }
            GammaRatio::new([m + 1.0], [m + 1.0 + order])
        }
        RlSide::RightToInfinity => {
            if m + order >= 0.0 {
                return domain(format!("I_- of x^{m} requires m + order < 0"));
            }
            GammaRatio::new([-m - order], [-m])
        }
    };
    Ok((gamma_ratio(&ratio)?, m + order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FracPowerSide {
    LeftZero,
    RightInfinite,
}

/// `κ` with `B^{-α} x^m = κ x^{m+2α}` for the `0+` and `−` variants.
///
/// `LeftZero` needs `m > −1` and `m + ν > −1`. `RightInfinite` needs
/// `m + 2α + ν < 1` and `m + 2α < 0`.
pub fn frac_power_coefficient(nu: f64, alpha: f64, m: f64, side: FracPowerSide) -> Result<f64> {
    for (name, v) in [("nu", nu), ("alpha", alpha), ("m", m)] {
        check_finite(name, v)?;
    }
    if alpha <= 0.0 {
        return domain("alpha must be positive");
    }
    let ratio = match side {
        FracPowerSide::LeftZero => {
            if m <= -1.0 || m + nu <= -1.0 {
                return domain(format!(
                    "left-sided power rule needs m > -1 and m + nu > -1, got m = {m}, nu = {nu}"
                ));
            }
            GammaRatio::new(
                [(m + nu + 1.0) / 2.0, m / 2.0 + 1.0],
                [alpha + m / 2.0 + 1.0, alpha + (m + nu + 1.0) / 2.0],
            )
        }
        FracPowerSide::RightInfinite => {
            if m + 2.0 * alpha + nu >= 1.0 || m + 2.0 * alpha >= 0.0 {
                return domain(format!(
                    "right-sided power rule needs m + 2 alpha + nu < 1 and m + 2 alpha < 0, \
                     got m = {m}, alpha = {alpha}, nu = {nu}"
                ));
            }
            GammaRatio::new(
                [-alpha - m / 2.0, -(nu - 1.0) / 2.0 - alpha - m / 2.0],
                [(1.0 - nu - m) / 2.0, -m / 2.0],
            )
        }
    };
    let g = gamma_ratio(&ratio).map_err(|e| match e {
        Error::Pole { value, .. } => Error::Domain(format!("gamma pole at {value}")),
        other => other,
    })?;
    Ok((-2.0 * alpha).exp2() * g)
}
