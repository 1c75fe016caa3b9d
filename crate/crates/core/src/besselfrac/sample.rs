//! Test functions with the metadata the integral operators need to choose a
//! quadrature and to reject inputs for which an integral would diverge.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::specfun::bessel_j;
use crate::symfun::PowerPolynomial;

/// Behaviour of a function as `y → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Decay {
    /// Zero for `y > R`.
    Compact(f64),
    /// Faster than every power.
    Exponential,
    /// `|f(y)| = O(y^{-rate})`.
    Algebraic(f64),
    /// Nothing known; infinite variants reject such functions.
    None,
}

/// Smoothness marker for functions with derivatives of every order.
pub const SMOOTH: u32 = u32::MAX;

#[derive(Clone)]
enum Form {
    Poly(PowerPolynomial),
    /// `P(x²)·e^{−c x²}` with `P` given by ascending coefficients in `s = x²`.
    GaussPoly { coeffs: Vec<f64>, c: f64 },
    Opaque(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A real function on `(0, ∞)` with decay, smoothness and origin metadata.
#[derive(Clone)]
pub struct SampleFunction {
    name: String,
    form: Form,
    decay: Decay,
    smoothness: u32,
    /// `p` with `f(y) = O(y^p)` as `y → 0⁺`.
    origin_exponent: f64,
}

impl fmt::Debug for SampleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampleFunction")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .field("smoothness", &self.smoothness)
            .field("origin_exponent", &self.origin_exponent)
            .field("exact", &self.has_exact_images())
            .finish()
    }
}

fn poly_decay(p: &PowerPolynomial) -> Decay {
    match p.degree() {
        None => Decay::Compact(0.0),
        Some(d) if d < 0.0 => Decay::Algebraic(-d),
        Some(_) => Decay::None,
    }
}

impl SampleFunction {
    /// Arbitrary function with caller-declared metadata.
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        decay: Decay,
        smoothness: u32,
        origin_exponent: f64,
    ) -> Self {
        Self {
            name: name.into(),
            form: Form::Opaque(Arc::new(f)),
            decay,
            smoothness,
            origin_exponent,
        }
    }

    pub fn polynomial(p: PowerPolynomial) -> Self {
        let origin = p.terms().first().map_or(0.0, |t| t.1);
        Self {
            name: format!("poly[{p}]"),
            decay: poly_decay(&p),
            smoothness: SMOOTH,
            origin_exponent: origin,
            form: Form::Poly(p),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::polynomial(PowerPolynomial::constant(c)).named(format!("constant({c})"))
    }

    pub fn power(m: f64) -> Self {
        Self::polynomial(PowerPolynomial::monomial(1.0, m)).named(format!("x^{m}"))
    }

    pub fn zero() -> Self {
        Self::polynomial(PowerPolynomial::zero()).named("zero")
    }

    /// `P(x²)·e^{−c x²}`, `c > 0`; `coeffs` ascend in powers of `x²`.
    pub fn gaussian_poly(coeffs: Vec<f64>, c: f64) -> Self {
        let lead = coeffs.iter().position(|&a| a != 0.0).unwrap_or(0);
        Self {
            name: format!("gaussian_poly({coeffs:?}, {c})"),
            form: Form::GaussPoly { coeffs, c },
            decay: Decay::Exponential,
            smoothness: SMOOTH,
            origin_exponent: 2.0 * lead as f64,
        }
    }

    /// `e^{−c x²}`.
    pub fn gaussian(c: f64) -> Self {
        Self::gaussian_poly(vec![1.0], c).named(format!("gaussian({c})"))
    }

    /// `e^{−c x}`.
    pub fn exponential(c: f64) -> Self {
        Self::custom(format!("exponential({c})"), move |x| (-c * x).exp(), Decay::Exponential, SMOOTH, 0.0)
    }

    /// `x·e^{−x²}`.
    pub fn x_gaussian() -> Self {
        Self::custom("x*gaussian(1)", |x| x * (-x * x).exp(), Decay::Exponential, SMOOTH, 1.0)
    }

    /// `y^{(1−ν)/2} J_{(ν−1)/2}(yξ)`, bounded at the origin.
    pub fn bessel_profile(nu: f64, xi: f64) -> Self {
        let order = 0.5 * (nu - 1.0);
        Self::custom(
            format!("bessel_profile({nu}, {xi})"),
            move |y| {
                if y == 0.0 {
                    (0.5 * xi).powf(order) * crate::specfun::rgamma(order + 1.0)
                } else {
                    y.powf(-order) * bessel_j(order, y * xi).unwrap_or(f64::NAN)
                }
            },
            Decay::Algebraic(0.5 * nu),
            SMOOTH,
            0.0,
        )
    }

    /// Indicator of `(0, r)`.
    pub fn indicator(r: f64) -> Self {
        Self::custom(
            format!("indicator(0, {r})"),
            move |x| if x > 0.0 && x < r { 1.0 } else { 0.0 },
            Decay::Compact(r),
            0,
            0.0,
        )
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = decay;
        self
    }

    pub fn with_smoothness(mut self, smoothness: u32) -> Self {
        self.smoothness = smoothness;
        self
    }

    pub fn with_origin_exponent(mut self, p: f64) -> Self {
        self.origin_exponent = p;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn smoothness(&self) -> u32 {
        self.smoothness
    }

    pub fn origin_exponent(&self) -> f64 {
        self.origin_exponent
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.form {
            Form::Poly(p) => p.eval(x),
            Form::GaussPoly { coeffs, c } => {
                let s = x * x;
                let e = (-c * s).exp();
                if e == 0.0 {
                    return 0.0;
                }
                let poly = coeffs.iter().rev().fold(0.0, |acc, &a| acc * s + a);
                poly * e
            }
            Form::Opaque(f) => f(x),
        }
    }

    /// The power-polynomial form, if the function is one.
    pub fn as_polynomial(&self) -> Option<&PowerPolynomial> {
        match &self.form {
            Form::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn has_exact_images(&self) -> bool {
        !matches!(self.form, Form::Opaque(_))
    }

    /// `f'(x)` in closed form, when the function carries one.
    pub fn derivative_at(&self, x: f64) -> Option<f64> {
        match &self.form {
            Form::Poly(p) => Some(p.derivative().eval(x)),
            Form::GaussPoly { coeffs, c } => {
                let s = x * x;
                let e = (-c * s).exp();
                if e == 0.0 {
                    return Some(0.0);
                }
                let poly = coeffs.iter().rev().fold(0.0, |acc, &a| acc * s + a);
                let dpoly = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(0.0, |acc, (k, &a)| acc * s + k as f64 * a);
                // d/dx [P(x²) e^{−c x²}] = 2x (P'(s) − c P(s)) e^{−cs}
                Some(2.0 * x * (dpoly - c * poly) * e)
            }
            Form::Opaque(_) => None,
        }
    }

    /// `B_ν^n f` in closed form, when the function carries one.
    pub fn bessel_image(&self, nu: f64, n: usize) -> Option<SampleFunction> {
        match &self.form {
            Form::Poly(p) => Some(Self::polynomial(p.bessel_pow(nu, n))),
            Form::GaussPoly { coeffs, c } => {
                let mut g = coeffs.clone();
                for _ in 0..n {
                    g = gauss_poly_bessel(&g, *c, nu);
                }
                Some(Self::gaussian_poly(g, *c))
            }
            Form::Opaque(_) => None,
        }
        .map(|s| s.named(format!("B_{nu}^{n}[{}]", self.name)))
    }
}

/// In `s = x²`, `B_ν = 4s d²/ds² + 2(1+ν) d/ds`; acting on `g(s)e^{−cs}` it
/// maps `g` to `4s(g'' − 2c g' + c² g) + 2(1+ν)(g' − c g)`.
fn gauss_poly_bessel(g: &[f64], c: f64, nu: f64) -> Vec<f64> {
    let n = g.len();
    let d1: Vec<f64> = (1..n).map(|k| k as f64 * g[k]).collect();
    let d2: Vec<f64> = (2..n).map(|k| (k * (k - 1)) as f64 * g[k]).collect();
    let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
    let mut out = vec![0.0; n + 1];
    for (k, o) in out.iter_mut().enumerate() {
        // 4s·(…) shifts degree by one
        let inner = |j: usize| at(&d2, j) - 2.0 * c * at(&d1, j) + c * c * at(g, j);
        let shifted = if k >= 1 { 4.0 * inner(k - 1) } else { 0.0 };
        *o = shifted + 2.0 * (1.0 + nu) * (at(&d1, k) - c * at(g, k));
    }
    while out.len() > 1 && out.last() == Some(&0.0) {
        out.pop();
    }
    out
}
