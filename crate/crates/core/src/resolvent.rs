//! Resolvent `R_λ = (B^{-α}_{ν,−} − λI)^{-1}`.
//!
//! The closed form collapses the Neumann series `−(1/λ) Σ λ^{−k} B^{−αk}`
//! into a Mittag-Leffler kernel under a Beta-type `t`-integral:
//!
//! ```text
//! R_λ f(x) = −f(x)/λ − (1/λ²) ∫_x^∞ f(y) ((y²−x²)/(2y))^{2α−1}
//!            ∫_0^1 t^{α−1}(1−t)^{α−1} (1 − (1−x²/y²) t)^{−α−(ν−1)/2} E(w) dt dy,
//! w = (1/λ) (t(1−t)(y²−x²)² / (4(y² − (y²−x²) t)))^α,
//! ```
//!
//! with `E = E_{(α,α),(α,α)}`.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::besselfrac::{
    frac_integral, integrate_operator, Decay, KernelMethod, OperatorParams, SampleFunction, Variant,
};
use crate::error::{check_finite, domain, Error, Result};
use crate::quad::{integrate_finite_with, Abscissa, EvalResult, QuadSpec};
use crate::specfun::{mittag_leffler_multi, MittagLefflerParams};

/// `B^{-α}_{ν,−}`, the spectral parameter `λ` and the Neumann truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventParams {
    pub op: OperatorParams,
    pub lambda: f64,
    /// Highest power `K` kept in the Neumann series.
    pub series_terms: usize,
}

impl ResolventParams {
    pub fn new(nu: f64, alpha: f64, lambda: f64, series_terms: usize) -> Result<Self> {
        let p = Self {
            op: OperatorParams::new(nu, alpha, Variant::RightInfinite)?,
            lambda,
            series_terms,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        self.op.validate()?;
        if self.op.variant != Variant::RightInfinite {
            return domain("the resolvent is defined for the RightInfinite variant only");
        }
        check_finite("lambda", self.lambda)?;
        if self.lambda == 0.0 {
            return domain("lambda must be nonzero");
        }
        Ok(())
    }
}

fn check_decay(f: &SampleFunction) -> Result<()> {
    match f.decay() {
        Decay::Exponential | Decay::Compact(_) => Ok(()),
        d => Err(Error::Metadata(format!(
            "{} has decay {d:?}; the resolvent is evaluated for exponentially decaying \
             or compactly supported functions",
            f.name()
        ))),
    }
}

fn not_converged() -> EvalResult {
    EvalResult {
        value: f64::NAN,
        error_estimate: f64::INFINITY,
        evaluations: 0,
        converged: false,
    }
}

/// `R_λ f(x)` from the Mittag-Leffler closed form by nested quadrature.
///
/// A Mittag-Leffler series that cannot be summed (argument too large for
/// the chosen `λ`) yields a NaN value with `converged = false`.
pub fn resolvent_apply(p: &ResolventParams, f: &SampleFunction, x: f64, spec: &QuadSpec) -> Result<EvalResult> {
    p.validate()?;
    spec.validate()?;
    check_finite("x", x)?;
    if x <= 0.0 {
        return domain(format!("x must be > 0, got {x}"));
    }
    check_decay(f)?;
    let OperatorParams { nu, alpha, .. } = p.op;
    let lambda = p.lambda;
    let ml = MittagLefflerParams::doubled(alpha);
    let exponent = -alpha - 0.5 * (nu - 1.0);
    let inner_spec = QuadSpec::new((0.1 * spec.abs_tol).max(1e-16), (0.1 * spec.rel_tol).max(1e-14))
        .with_hints(alpha - 1.0, alpha - 1.0);
    let inner_ok = Cell::new(true);
    let evaluations = Cell::new(0usize);
    let kernel = |y: f64, gap: f64| -> Result<f64> {
        let d = gap * (x + y); // y² − x²
        let yy = y * y;
        let xx = x * x;
        let inner = integrate_finite_with(
            |q: Abscissa| {
                let (t, s) = (q.from_lo, q.to_hi);
                // 1 − (1 − x²/y²) t and y² − (y² − x²) t, free of cancellation
                let one_minus_zt = s + t * xx / yy;
                let denom = yy * s + xx * t;
                let arg = (0.25 * t * s * d * d / denom).powf(alpha) / lambda;
                match mittag_leffler_multi(&ml, arg) {
                    Ok(e) => t.powf(alpha - 1.0) * s.powf(alpha - 1.0) * one_minus_zt.powf(exponent) * e,
                    Err(_) => f64::NAN,
                }
            },
            0.0,
            1.0,
            &inner_spec,
        )?;
        let pref = (0.5 * d / y).powf(2.0 * alpha - 1.0);
        // an inner miss only matters through its weight in the outer integral
        if !inner.converged && inner.error_estimate * (pref * f.eval(y)).abs() > 0.1 * spec.abs_tol {
            inner_ok.set(false);
        }
        evaluations.set(evaluations.get() + inner.evaluations);
        Ok(pref * inner.value)
    };
    let tail = match integrate_operator(&p.op, f, x, spec, 2.0 * alpha - 1.0, kernel) {
        Ok(r) => r,
        Err(Error::Evaluation(_)) | Err(Error::NoConvergence { .. }) => return Ok(not_converged()),
        Err(e) => return Err(e),
    };
    let lead = -f.eval(x) / lambda;
    let scale = -1.0 / (lambda * lambda);
    Ok(EvalResult {
        value: lead + scale * tail.value,
        error_estimate: scale.abs() * tail.error_estimate,
        evaluations: tail.evaluations + evaluations.get(),
        converged: tail.converged && inner_ok.get(),
    })
}

/// `−(1/λ) Σ_{k=0}^{K} λ^{−k} (B^{−αk} f)(x)`, each term one fractional
/// integral of order `αk`. Not converged when the last term exceeds `abs_tol`.
pub fn neumann_oracle(
    p: &ResolventParams,
    f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
    method: KernelMethod,
) -> Result<EvalResult> {
    p.validate()?;
    spec.validate()?;
    check_finite("x", x)?;
    if x <= 0.0 {
        return domain(format!("x must be > 0, got {x}"));
    }
    let lambda = p.lambda;
    let mut total = EvalResult::exact(f.eval(x));
    let mut last = total.value.abs();
    let mut power = 1.0;
    for k in 1..=p.series_terms {
        power /= lambda;
        let op = p.op.with_alpha(p.op.alpha * k as f64);
        let term = frac_integral(&op, f, x, spec, method)?.scaled(power);
        last = term.value.abs();
        total = total.plus(term);
    }
    let truncated = last <= spec.abs_tol;
    let mut r = total.scaled(-1.0 / lambda);
    r.error_estimate += last / lambda.abs();
    Ok(r.with_converged(r.converged && truncated))
}

/// Which evaluation of `R_λ f` feeds the residual check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolventSource {
    #[default]
    Closed,
    Neumann,
}

/// Chebyshev interpolant on `[a, b]` through the extrema nodes.
struct Chebyshev {
    a: f64,
    b: f64,
    coeffs: Vec<f64>,
}

impl Chebyshev {
    fn nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..=n)
            .map(|j| {
                let c = (std::f64::consts::PI * j as f64 / n as f64).cos();
                0.5 * (a + b) + 0.5 * (b - a) * c
            })
            .collect()
    }

    fn fit(a: f64, b: f64, values: &[f64]) -> Self {
        let n = values.len() - 1;
        let nf = n as f64;
        let coeffs = (0..=n)
            .map(|k| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                        w * v * (std::f64::consts::PI * (k * j) as f64 / nf).cos()
                    })
                    .sum();
                let w = if k == 0 || k == n { 1.0 } else { 2.0 };
                w * s / nf
            })
            .collect();
        Self { a, b, coeffs }
    }

    fn eval(&self, x: f64) -> f64 {
        let t = (2.0 * x - self.a - self.b) / (self.b - self.a);
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + self.coeffs[0]
    }
}

/// Options of [`resolvent_residual`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualOptions {
    pub source: ResolventSource,
    /// Chebyshev degree of the interpolant of `R_λ f`.
    pub degree: usize,
    /// `R_λ f` is sampled on `[x, x + window]` and taken as zero beyond.
    pub window: f64,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        Self {
            source: ResolventSource::Closed,
            degree: 48,
            window: 8.0,
        }
    }
}

/// `(B^{-α} − λ)(R_λ f)(x)`, which should reproduce `f(x)`: `R_λ f` is
/// sampled, interpolated and passed through the operator once more.
pub fn resolvent_residual(
    p: &ResolventParams,
    f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
    method: KernelMethod,
    opts: &ResidualOptions,
) -> Result<EvalResult> {
    p.validate()?;
    if opts.degree < 2 || !(opts.window > 0.0) {
        return domain("residual check needs degree >= 2 and a positive window");
    }
    let (a, b) = (x, x + opts.window);
    let mut samples = Vec::with_capacity(opts.degree + 1);
    let mut converged = true;
    for y in Chebyshev::nodes(a, b, opts.degree) {
        let r = match opts.source {
            ResolventSource::Closed => resolvent_apply(p, f, y, spec)?,
            ResolventSource::Neumann => neumann_oracle(p, f, y, spec, method)?,
        };
        converged &= r.converged;
        samples.push(r.value);
    }
    let cheb = Chebyshev::fit(a, b, &samples);
    let at_x = cheb.eval(x);
    let interp = SampleFunction::custom(
        "resolvent interpolant",
        move |y| if y > b { 0.0 } else { cheb.eval(y.max(a)) },
        Decay::Compact(b),
        crate::besselfrac::SMOOTH,
        0.0,
    );
    let applied = frac_integral(&p.op, &interp, x, spec, method)?;
    let mut r = applied.plus(EvalResult::exact(-p.lambda * at_x));
    r.converged &= converged;
    Ok(r)
}
