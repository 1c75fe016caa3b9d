//! Fractional powers of `B_ν = D² + (ν/x) D`.
//!
//! The four integral variants
//!
//! * `B^{-α}_{ν,b−} f(x) = ∫_x^b K_R(x, y) f(y) dy`
//! * `B^{-α}_{ν,a+} f(x) = ∫_a^x K_L(x, y) f(y) dy`
//! * `B^{-α}_{ν,−} f(x) = ∫_x^∞ K_R(x, y) f(y) dy`
//! * `B^{-α}_{ν,0+} f(x) = ∫_0^x K_L(x, y) f(y) dy`
//!
//! share the kernels of [`kernel`]. Positive powers are `B_ν^n B^{-(n−β)}`.

pub mod kernel;
mod sample;

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

pub use kernel::{
    builtin_kernels, Hypergeometric, KernelMethod, KernelRegistry, KernelSide, KernelStrategy,
    Legendre,
};
pub use sample::{Decay, SampleFunction, SMOOTH};

use crate::error::{check_finite, domain, Error, Result};
use crate::quad::{
    integrate_finite, integrate_finite_with, integrate_semi_infinite_with, Abscissa, EvalResult, QuadSpec,
};
use crate::symfun::FracPowerSide;

/// Endpoint configuration of the operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Variant {
    /// `∫_x^b`, defined for `0 < x < b`.
    RightFinite { b: f64 },
    /// `∫_a^x`, defined for `x > a > 0`.
    LeftFinite { a: f64 },
    /// `∫_x^∞`.
    RightInfinite,
    /// `∫_0^x`.
    LeftZero,
}

impl Variant {
    pub fn side(&self) -> KernelSide {
        match self {
            Variant::RightFinite { .. } | Variant::RightInfinite => KernelSide::Right,
            Variant::LeftFinite { .. } | Variant::LeftZero => KernelSide::Left,
        }
    }

    /// The power-rule side for the variants that map powers to powers.
    pub fn power_side(&self) -> Option<FracPowerSide> {
        match self {
            Variant::LeftZero => Some(FracPowerSide::LeftZero),
            Variant::RightInfinite => Some(FracPowerSide::RightInfinite),
            _ => None,
        }
    }

    /// Open interval of admissible evaluation points.
    pub fn domain(&self) -> (f64, f64) {
        match *self {
            Variant::RightFinite { b } => (0.0, b),
            Variant::LeftFinite { a } => (a, f64::INFINITY),
            Variant::RightInfinite | Variant::LeftZero => (0.0, f64::INFINITY),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        x > lo && x < hi
    }
}

/// `ν`, `α` and the variant: one fractional Bessel integral `B^{-α}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub nu: f64,
    pub alpha: f64,
    pub variant: Variant,
}

impl OperatorParams {
    pub fn new(nu: f64, alpha: f64, variant: Variant) -> Result<Self> {
        let p = Self { nu, alpha, variant };
        p.validate()?;
        Ok(p)
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("nu", self.nu)?;
        check_finite("alpha", self.alpha)?;
        if self.nu < 0.0 {
            return domain(format!("nu must be >= 0, got {}", self.nu));
        }
        if self.alpha <= 0.0 {
            return domain(format!("alpha must be > 0, got {}", self.alpha));
        }
        match self.variant {
            Variant::RightFinite { b: e } | Variant::LeftFinite { a: e } => {
                if !(e > 0.0 && e.is_finite()) {
                    return domain(format!("finite endpoint must be positive and finite, got {e}"));
                }
            }
            Variant::RightInfinite | Variant::LeftZero => {}
        }
        Ok(())
    }

    fn check_point(&self, x: f64) -> Result<()> {
        check_finite("x", x)?;
        if !self.variant.contains(x) {
            let (lo, hi) = self.variant.domain();
            return domain(format!("x = {x} outside the operator domain ({lo}, {hi})"));
        }
        Ok(())
    }

    /// Exponent `g` with `K_R(x, y) = O(y^g)` as `y → ∞`.
    pub fn kernel_growth(&self) -> f64 {
        2.0 * self.alpha - 1.0 + (self.nu - 1.0).max(0.0)
    }

    /// Exponent of `K_L(x, y)` as `y → 0⁺`.
    pub fn kernel_origin_exponent(&self) -> f64 {
        self.nu.min(1.0)
    }
}

/// Weight multiplying `f(y)` in `B^{-α} f(x)`.
pub fn kernel_value(p: &OperatorParams, x: f64, y: f64, method: KernelMethod) -> Result<f64> {
    p.validate()?;
    check_finite("x", x)?;
    check_finite("y", y)?;
    let side = p.variant.side();
    let ordered = match side {
        KernelSide::Right => 0.0 < x && x < y,
        KernelSide::Left => 0.0 < y && y < x,
    };
    if !ordered {
        return domain(format!("kernel ordering violated for {side:?} side: x = {x}, y = {y}"));
    }
    method.strategy().weight(p.nu, p.alpha, side, x, y, (y - x).abs())
}

/// Integrate `kernel(y, gap)·f(y)` over the variant's range, with the diagonal
/// singularity `gap^{diag_hint}` handled by the quadrature.
pub(crate) fn integrate_operator<K>(
    p: &OperatorParams,
    f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
    diag_hint: f64,
    kernel: K,
) -> Result<EvalResult>
where
    K: Fn(f64, f64) -> Result<f64>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let term = |y: f64, gap: f64| -> f64 {
        if failure.borrow().is_some() {
            return 0.0;
        }
        let fy = f.eval(y);
        if fy == 0.0 {
            return 0.0;
        }
        match kernel(y, gap) {
            Ok(k) => k * fy,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let result = match p.variant {
        Variant::RightFinite { b } => integrate_finite_with(
            |q: Abscissa| term(q.x, q.from_lo),
            x,
            b,
            &spec.with_hints(diag_hint, 0.0),
        )?,
        Variant::LeftFinite { a } => integrate_finite_with(
            |q: Abscissa| term(q.x, q.to_hi),
            a,
            x,
            &spec.with_hints(0.0, diag_hint),
        )?,
        Variant::LeftZero => {
            let origin = p.kernel_origin_exponent() + f.origin_exponent();
            if origin <= -1.0 {
                return Err(Error::Metadata(format!(
                    "{} behaves like y^{} at 0; the integral from 0 diverges",
                    f.name(),
                    f.origin_exponent()
                )));
            }
            integrate_finite_with(
                |q: Abscissa| term(q.x, q.to_hi),
                0.0,
                x,
                &spec.with_hints(origin, diag_hint),
            )?
        }
        Variant::RightInfinite => {
            let growth = p.kernel_growth();
            let (end, tail_hint) = match f.decay() {
                Decay::None => {
                    return Err(Error::Metadata(format!(
                        "{} has no declared decay; the integral to infinity is undefined",
                        f.name()
                    )))
                }
                Decay::Compact(r) => (r, 0.0),
                Decay::Exponential => (f64::INFINITY, 0.0),
                Decay::Algebraic(rate) => {
                    if rate <= growth + 1.0 {
                        return Err(Error::Metadata(format!(
                            "{} decays like y^-{rate}, but the kernel grows like y^{growth}; \
                             the integral to infinity diverges",
                            f.name()
                        )));
                    }
                    (f64::INFINITY, rate - growth - 2.0)
                }
            };
            if end <= x {
                EvalResult::zero()
            } else {
                // [x, 2x] carries the diagonal singularity; below the unit
                // scale a logarithmic segment bridges 2x to 1; the rest runs
                // to the end of the support.
                let third = QuadSpec {
                    abs_tol: spec.abs_tol / 3.0,
                    ..*spec
                };
                let mut lo = (2.0 * x).min(end);
                let mut total = integrate_finite_with(
                    |q: Abscissa| term(q.x, q.from_lo),
                    x,
                    lo,
                    &third.with_hints(diag_hint, 0.0),
                )?;
                let bridge_end = end.min(1.0);
                if bridge_end > lo {
                    // e^u overflows for subnormal x; fall back to log space there
                    let ln_x = x.ln();
                    total = total.plus(integrate_finite(
                        |u| {
                            let (y, gap) = if u < 700.0 {
                                (x * u.exp(), x * u.exp_m1())
                            } else {
                                let y = (ln_x + u).exp();
                                (y, y - x)
                            };
                            term(y, gap) * y
                        },
                        (lo / x).ln(),
                        bridge_end.ln() - ln_x,
                        &third.without_hints(),
                    )?);
                    lo = bridge_end;
                }
                if end > lo {
                    let offset = lo - x;
                    total = total.plus(if end.is_finite() {
                        integrate_finite_with(
                            |q: Abscissa| term(q.x, offset + q.from_lo),
                            lo,
                            end,
                            &third.without_hints(),
                        )?
                    } else {
                        integrate_semi_infinite_with(
                            |q: Abscissa| term(q.x, offset + q.from_lo),
                            lo,
                            lo,
                            &third.with_hints(0.0, tail_hint),
                        )?
                    });
                }
                total
            }
        }
    };
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let ok = result.meets(spec);
    Ok(result.with_converged(ok))
}

/// `B^{-α} f` as a function of `x`, evaluated by [`frac_integral`] at each
/// call, with metadata derived from the kernel asymptotics. Failed
/// evaluations return NaN, which quadrature reports as an error.
pub fn operator_image(
    p: OperatorParams,
    f: SampleFunction,
    spec: QuadSpec,
    method: KernelMethod,
) -> SampleFunction {
    let p0 = f.origin_exponent();
    // K_L(x, y) = O(x^{2α−1−min(ν,1)}) for fixed y as x → ∞
    let left_rate = 1.0 + p.nu.min(1.0) - 2.0 * p.alpha;
    let left_decay = if left_rate > 0.0 { Decay::Algebraic(left_rate) } else { Decay::None };
    let (decay, origin) = match p.variant {
        Variant::RightInfinite => {
            let decay = match f.decay() {
                Decay::Algebraic(r) => Decay::Algebraic(r - 2.0 * p.alpha),
                d => d,
            };
            // K_R(x, y) ~ x^{1−ν} as x → 0 when ν > 1
            (decay, (1.0 - p.nu).min(0.0).min(p0 + 2.0 * p.alpha))
        }
        Variant::RightFinite { b } => (Decay::Compact(b), (1.0 - p.nu).min(0.0)),
        Variant::LeftZero => (left_decay, p0 + 2.0 * p.alpha),
        Variant::LeftFinite { .. } => (left_decay, 0.0),
    };
    let name = format!("B^-{}_{}[{}]", p.alpha, p.nu, f.name());
    let smoothness = f.smoothness();
    SampleFunction::custom(
        name,
        move |x| match frac_integral(&p, &f, x, &spec, method) {
            Ok(r) => r.value,
            Err(_) => f64::NAN,
        },
        decay,
        smoothness,
        origin,
    )
}

/// `(B^{-α} f)(x)` by quadrature with the chosen kernel method.
pub fn frac_integral(
    p: &OperatorParams,
    f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
    method: KernelMethod,
) -> Result<EvalResult> {
    frac_integral_with_kernel(p, f, x, spec, method.strategy())
}

/// [`frac_integral`] with an arbitrary kernel strategy.
pub fn frac_integral_with_kernel(
    p: &OperatorParams,
    f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
    kernel: &dyn KernelStrategy,
) -> Result<EvalResult> {
    p.validate()?;
    spec.validate()?;
    p.check_point(x)?;
    let side = p.variant.side();
    integrate_operator(p, f, x, spec, 2.0 * p.alpha - 1.0, |y, gap| {
        kernel.weight(p.nu, p.alpha, side, x, y, gap)
    })
}

/// `expm1(c·L)/c`, continued to `L` at `c = 0`.
fn phi(c: f64, l: f64) -> f64 {
    if c.abs() < 1e-8 {
        l * (1.0 + 0.5 * c * l)
    } else {
        (c * l).exp_m1() / c
    }
}

/// `B^{-1} f(x)` through the elementary kernels available for `0 ≤ ν ≤ 1`:
/// `K_R = y((x/y)^{1−ν} − 1)/(ν − 1)` and `K_L = y(1 − (y/x)^{ν−1})/(ν − 1)`,
/// with logarithmic limits at `ν = 1`. For `ν > 1` the call is forwarded to
/// [`frac_integral`] with the hypergeometric kernel.
pub fn alpha_one_apply(
    p: &OperatorParams,
    f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    p.validate()?;
    spec.validate()?;
    if p.alpha != 1.0 {
        return domain(format!("alpha_one_apply requires alpha = 1, got {}", p.alpha));
    }
    if p.nu > 1.0 {
        return frac_integral(p, f, x, spec, KernelMethod::Hypergeometric);
    }
    p.check_point(x)?;
    let nu = p.nu;
    match p.variant.side() {
        KernelSide::Right => integrate_operator(p, f, x, spec, 0.0, |y, gap| {
            Ok(-y * phi(1.0 - nu, (-gap / y).ln_1p()))
        }),
        KernelSide::Left => integrate_operator(p, f, x, spec, 0.0, |y, gap| {
            Ok(-y * phi(nu - 1.0, (-gap / x).ln_1p()))
        }),
    }
}

/// Five-point central approximations of `(g', g'')` from samples at
/// `x − 2h, x − h, x, x + h, x + 2h`.
fn stencil(v: &[f64; 5], h: f64) -> (f64, f64) {
    let d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
    let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
    (d1, d2)
}

/// `B_ν^n g(x)` by nested five-point stencils with one Richardson step.
/// Returns the value and an error estimate that includes the propagated
/// sample errors.
fn bessel_power_numeric(
    g: &dyn Fn(f64) -> Result<EvalResult>,
    nu: f64,
    n: usize,
    x: f64,
    h: f64,
) -> Result<EvalResult> {
    if n == 0 {
        return g(x);
    }
    let at_step = |h: f64| -> Result<EvalResult> {
        let mut vals = [0.0; 5];
        let mut noise = 0.0;
        let mut evals = 0;
        let mut converged = true;
        for (k, v) in vals.iter_mut().enumerate() {
            let r = bessel_power_numeric(g, nu, n - 1, x + (k as f64 - 2.0) * h, h)?;
            *v = r.value;
            noise = f64::max(noise, r.error_estimate);
            evals += r.evaluations;
            converged &= r.converged;
        }
        let (d1, d2) = stencil(&vals, h);
        // Σ|weights| of the second-difference stencil is 64/(12h²)
        let propagated = noise * (64.0 / (12.0 * h * h) + nu / x * 18.0 / (12.0 * h));
        Ok(EvalResult {
            value: d2 + nu / x * d1,
            error_estimate: propagated,
            evaluations: evals,
            converged,
        })
    };
    let coarse = at_step(h)?;
    let fine = at_step(0.5 * h)?;
    let value = (16.0 * fine.value - coarse.value) / 15.0;
    Ok(EvalResult {
        value,
        error_estimate: (value - fine.value).abs() + fine.error_estimate + coarse.error_estimate,
        evaluations: coarse.evaluations + fine.evaluations,
        converged: coarse.converged && fine.converged,
    })
}

/// `B^β f(x) = B_ν^n (B^{-(n−β)} f)(x)` with `n = ⌈β⌉`.
///
/// Exact when `f` carries closed-form Bessel images: integer `β` uses them
/// directly, and powers under the `0+` and `−` variants use the power rule.
/// Otherwise the inner integral is differentiated numerically, which needs
/// `smoothness ≥ 2n + 1`.
pub fn frac_derivative(
    p: &OperatorParams,
    beta: f64,
    f: &SampleFunction,
    x: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    p.validate()?;
    spec.validate()?;
    check_finite("beta", beta)?;
    if beta <= 0.0 {
        return domain(format!("frac_derivative requires beta > 0, got {beta}"));
    }
    p.check_point(x)?;
    let rounded = beta.round();
    let integer = (beta - rounded).abs() <= 1e-12 * beta.max(1.0);
    let n = if integer { rounded as usize } else { beta.ceil() as usize };
    if integer {
        if let Some(img) = f.bessel_image(p.nu, n) {
            return Ok(EvalResult::exact(img.eval(x)));
        }
    } else if let (Some(poly), Some(side)) = (f.as_polynomial(), p.variant.power_side()) {
        return Ok(EvalResult::exact(poly.frac_power(p.nu, beta, side)?.eval(x)));
    }
    if f.smoothness() < (2 * n + 1) as u32 {
        return Err(Error::Metadata(format!(
            "{} has smoothness {}, numeric B^{beta} needs at least {}",
            f.name(),
            f.smoothness(),
            2 * n + 1
        )));
    }
    let mut h = (1e-3 * x).max(1e-4);
    let (lo, hi) = p.variant.domain();
    let reach = 2.0 * n as f64;
    h = h.min(0.9 * (x - lo) / reach).min(0.9 * (hi - x) / reach);
    let inner_spec = QuadSpec::new(1e-15, 1e-14);
    let r = if integer {
        bessel_power_numeric(&|y| Ok(EvalResult::exact(f.eval(y))), p.nu, n, x, h)?
    } else {
        let q = p.with_alpha(n as f64 - beta);
        bessel_power_numeric(
            &|y| frac_integral(&q, f, y, &inner_spec, KernelMethod::Hypergeometric),
            p.nu,
            n,
            x,
            h,
        )?
    };
    let ok = r.meets(spec);
    Ok(r.with_converged(ok))
}
