//! Generalized Taylor formulas with integer powers of `B_ν` (anchored at a
//! right endpoint `b`) and of the Clifford-type operator
//! `C_ν f = D²f − D((ν/y) f)` (anchored at a left endpoint `a`), with
//! fractional Bessel integrals of integer order as remainders.

use serde::{Deserialize, Serialize};

use crate::besselfrac::{frac_integral, KernelMethod, OperatorParams, SampleFunction, Variant};
use crate::error::{check_finite, domain, Result};
use crate::quad::{EvalResult, QuadSpec};
use crate::specfun::{hyp2f1_split, rgamma};
use crate::symfun::PowerPolynomial;

/// Boundary data of a `k`-term expansion.
///
/// For the Bessel formula the pairs are `(B^{i−1}f(b), D B^{i−1}f(b))`; for
/// the Clifford formula they are `(C^{i−1}f(a), a^ν (D x^{−ν} C^{i−1}f)(a))`,
/// `i = 1..k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorData {
    pub nu: f64,
    pub anchor: f64,
    pub k: usize,
    pub boundary_values: Vec<(f64, f64)>,
}

impl TaylorData {
    pub fn new(nu: f64, anchor: f64, boundary_values: Vec<(f64, f64)>) -> Result<Self> {
        let d = Self {
            nu,
            anchor,
            k: boundary_values.len(),
            boundary_values,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("nu", self.nu)?;
        check_finite("anchor", self.anchor)?;
        if self.nu < 0.0 {
            return domain(format!("nu must be >= 0, got {}", self.nu));
        }
        if self.anchor <= 0.0 {
            return domain(format!("anchor must be > 0, got {}", self.anchor));
        }
        if self.k == 0 || self.boundary_values.len() != self.k {
            return domain(format!(
                "need k >= 1 boundary pairs, got k = {} with {} pairs",
                self.k,
                self.boundary_values.len()
            ));
        }
        Ok(())
    }

    /// Bessel data at `b` from exact images of a power polynomial.
    pub fn bessel_from_poly(nu: f64, b: f64, k: usize, p: &PowerPolynomial) -> Result<Self> {
        let mut g = p.clone();
        let mut pairs = Vec::with_capacity(k);
        for _ in 0..k {
            pairs.push((g.eval(b), g.derivative().eval(b)));
            g = g.bessel(nu);
        }
        Self::new(nu, b, pairs)
    }

    /// Bessel data at `b` from a function with closed-form images and derivatives.
    pub fn bessel_from_sample(nu: f64, b: f64, k: usize, f: &SampleFunction) -> Result<Self> {
        let mut pairs = Vec::with_capacity(k);
        for i in 0..k {
            let g = f.bessel_image(nu, i);
            let pair = g.as_ref().and_then(|g| Some((g.eval(b), g.derivative_at(b)?)));
            match pair {
                Some(pair) => pairs.push(pair),
                None => return domain(format!("{} has no closed-form Bessel images", f.name())),
            }
        }
        Self::new(nu, b, pairs)
    }

    /// Clifford data at `a` from exact images of a power polynomial.
    pub fn clifford_from_poly(nu: f64, a: f64, k: usize, p: &PowerPolynomial) -> Result<Self> {
        let mut g = p.clone();
        let mut pairs = Vec::with_capacity(k);
        for _ in 0..k {
            let v = g.eval(a);
            // a^ν D(x^{−ν} g)(a) = g'(a) − ν g(a)/a
            pairs.push((v, g.derivative().eval(a) - nu * v / a));
            g = g.clifford(nu);
        }
        Self::new(nu, a, pairs)
    }
}

/// `₂F₁(p, q; c; 1 − w)` with the terminating branch `q = 0` returning 1.
fn f21(p: f64, q: f64, c: f64, z: f64, w: f64) -> Result<f64> {
    if q == 0.0 {
        return Ok(1.0);
    }
    hyp2f1_split(p, q, c, z, w)
}

/// Partial sum of the Bessel formula at `0 < x < b`.
pub fn taylor_sum_bessel(d: &TaylorData, x: f64) -> Result<f64> {
    d.validate()?;
    let b = d.anchor;
    check_finite("x", x)?;
    if !(x > 0.0 && x < b) {
        return domain(format!("x = {x} must lie in (0, {b})"));
    }
    let u = 0.5 * (b - x) * (b + x) / b;
    let z = (b - x) * (b + x) / (b * b);
    let w = (x / b) * (x / b);
    let h = 0.5 * (d.nu - 1.0);
    let mut sum = 0.0;
    for (idx, &(value, slope)) in d.boundary_values.iter().enumerate() {
        let i = (idx + 1) as f64;
        let first = rgamma(2.0 * i - 1.0) * u.powi(2 * idx as i32) * f21(i + h, i - 1.0, 2.0 * i - 1.0, z, w)?;
        let second = rgamma(2.0 * i) * u.powi(2 * idx as i32 + 1) * f21(i + h, i, 2.0 * i, z, w)?;
        sum += first * value - second * slope;
    }
    Ok(sum)
}

/// Second parameter of the first hypergeometric factor in the Clifford formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliffordReading {
    /// `₂F₁(i + (ν−1)/2, i; 2i − 1; ·)`.
    #[default]
    AsPrinted,
    /// `₂F₁(i + (ν−1)/2, i − 1; 2i − 1; ·)`, mirroring the Bessel formula.
    Mirrored,
}

/// Partial sum of the Clifford formula at `x > a`.
pub fn taylor_sum_clifford(d: &TaylorData, x: f64, reading: CliffordReading) -> Result<f64> {
    d.validate()?;
    let a = d.anchor;
    check_finite("x", x)?;
    if x <= a {
        return domain(format!("x = {x} must exceed a = {a}"));
    }
    let u = 0.5 * (x - a) * (x + a) / x;
    let z = (x - a) * (x + a) / (x * x);
    let w = (a / x) * (a / x);
    let h = 0.5 * (d.nu - 1.0);
    let mut sum = 0.0;
    for (idx, &(value, slope)) in d.boundary_values.iter().enumerate() {
        let i = (idx + 1) as f64;
        let q = match reading {
            CliffordReading::AsPrinted => i,
            CliffordReading::Mirrored => i - 1.0,
        };
        let first = rgamma(2.0 * i - 1.0) * u.powi(2 * idx as i32) * (a / x) * f21(i + h, q, 2.0 * i - 1.0, z, w)?;
        let second = rgamma(2.0 * i) * u.powi(2 * idx as i32 + 1) * f21(i + h, i, 2.0 * i, z, w)?;
        sum += first * value + second * slope;
    }
    Ok(sum)
}

fn remainder(p: OperatorParams, g: &SampleFunction, x: f64, spec: &QuadSpec) -> Result<EvalResult> {
    if g.as_polynomial().is_some_and(|q| q.is_zero()) {
        p.validate()?;
        return Ok(EvalResult::exact(0.0));
    }
    frac_integral(&p, g, x, spec, KernelMethod::Hypergeometric)
}

/// `B^{-k}_{ν,b−}(B^k f)(x)`, the remainder of the Bessel formula.
pub fn taylor_remainder_bessel(
    nu: f64,
    b: f64,
    k: usize,
    bk_f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    remainder(OperatorParams::new(nu, k as f64, Variant::RightFinite { b })?, bk_f, x, spec)
}

/// Operator applied to `C^k f` in the Clifford remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliffordRemainder {
    /// `B^{-k}_{ν,a+}(C^k f)`.
    #[default]
    AsPrinted,
    /// `x^ν B^{-k}_{ν,a+}(x^{−ν} C^k f)`, the inverse that matches
    /// `C_ν = x^ν B_ν x^{−ν}`.
    Conjugated,
}

/// `B^{-k}_{ν,a+}(C^k f)(x)`, the remainder of the Clifford formula.
pub fn taylor_remainder_clifford(
    nu: f64,
    a: f64,
    k: usize,
    ck_f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    taylor_remainder_clifford_with(CliffordRemainder::AsPrinted, nu, a, k, ck_f, x, spec)
}

/// Clifford remainder in either form.
pub fn taylor_remainder_clifford_with(
    form: CliffordRemainder,
    nu: f64,
    a: f64,
    k: usize,
    ck_f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    let p = OperatorParams::new(nu, k as f64, Variant::LeftFinite { a })?;
    match form {
        CliffordRemainder::AsPrinted => remainder(p, ck_f, x, spec),
        CliffordRemainder::Conjugated => {
            let g = match ck_f.as_polynomial() {
                Some(q) => SampleFunction::polynomial(q.times_power(-nu)),
                None => {
                    let h = ck_f.clone();
                    SampleFunction::custom(
                        format!("x^-{nu}*{}", ck_f.name()),
                        move |y| y.powf(-nu) * h.eval(y),
                        ck_f.decay(),
                        ck_f.smoothness(),
                        ck_f.origin_exponent() - nu,
                    )
                }
            };
            Ok(remainder(p, &g, x, spec)?.scaled(x.powf(nu)))
        }
    }
}

/// `f = x^ν` has `C_ν f = 0` and `D(x^{−ν} f) = 0`, so the one-term Clifford
/// formula must return `x^ν` exactly. Returns the partial sum minus `x^ν`.
pub fn clifford_reading_probe(nu: f64, a: f64, x: f64, reading: CliffordReading) -> Result<f64> {
    let d = TaylorData::clifford_from_poly(nu, a, 1, &PowerPolynomial::monomial(1.0, nu))?;
    Ok(taylor_sum_clifford(&d, x, reading)? - x.powf(nu))
}
