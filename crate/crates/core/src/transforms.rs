//! Mellin and Hankel transforms, the R-transform with a Wright kernel, and
//! the transform identities satisfied by `B^{-α}_{ν,−}`.

use serde::{Deserialize, Serialize};

use crate::besselfrac::{operator_image, Decay, KernelMethod, OperatorParams, SampleFunction, Variant};
use crate::error::{check_finite, domain, Error, Result};
use crate::quad::{integrate_finite, integrate_oscillatory, integrate_semi_infinite, EvalResult, QuadSpec};
use crate::specfun::{bessel_j, gamma_ratio, wright_j, GammaRatio, WrightParams};

/// Mellin variable `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinPoint {
    pub s: f64,
}

impl MellinPoint {
    /// Whether `s > ν − 1`, the half-plane where the symbol identity holds.
    pub fn admissible_for(&self, nu: f64) -> bool {
        self.s > nu - 1.0
    }
}

impl From<f64> for MellinPoint {
    fn from(s: f64) -> Self {
        Self { s }
    }
}

/// Hankel variable `ξ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HankelPoint {
    pub xi: f64,
}

impl HankelPoint {
    pub fn validate(&self) -> Result<()> {
        check_finite("xi", self.xi)?;
        if self.xi <= 0.0 {
            return domain(format!("xi must be > 0, got {}", self.xi));
        }
        Ok(())
    }
}

impl From<f64> for HankelPoint {
    fn from(xi: f64) -> Self {
        Self { xi }
    }
}

/// A half of the Mellin integral that diverges.
fn divergent() -> EvalResult {
    EvalResult {
        value: f64::INFINITY,
        error_estimate: f64::INFINITY,
        evaluations: 0,
        converged: false,
    }
}

/// The two halves `∫_0^1` and `∫_1^∞` of a Mellin integral, each judged on
/// its own so that a divergent strip can be located.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinHalves {
    pub lower: EvalResult,
    pub upper: EvalResult,
}

impl MellinHalves {
    pub fn total(&self) -> EvalResult {
        self.lower.plus(self.upper)
    }
}

pub fn mellin_transform_halves(
    f: &SampleFunction,
    s: impl Into<MellinPoint>,
    spec: &QuadSpec,
) -> Result<MellinHalves> {
    let s = s.into().s;
    check_finite("s", s)?;
    spec.validate()?;
    let half = QuadSpec {
        abs_tol: 0.5 * spec.abs_tol,
        ..*spec
    };
    let g = |x: f64| {
        let v = f.eval(x);
        if v == 0.0 {
            0.0
        } else {
            x.powf(s - 1.0) * v
        }
    };
    let origin = s - 1.0 + f.origin_exponent();
    let cut = match f.decay() {
        Decay::Compact(r) => r.min(1.0),
        _ => 1.0,
    };
    let lower = if origin <= -1.0 {
        divergent()
    } else if cut <= 0.0 {
        EvalResult::zero()
    } else {
        let r = integrate_finite(g, 0.0, cut, &half.with_hints(origin, 0.0))?;
        r.with_converged(r.meets(&half))
    };
    let upper = match f.decay() {
        Decay::Compact(r) if r <= 1.0 => EvalResult::zero(),
        Decay::Compact(r) => integrate_finite(g, 1.0, r, &half.without_hints())?,
        Decay::Exponential => integrate_semi_infinite(g, 1.0, &half.without_hints())?,
        Decay::Algebraic(rate) => {
            // integrand ~ y^{s−1−rate}
            let q = rate - s + 1.0;
            if q <= 1.0 {
                divergent()
            } else {
                integrate_semi_infinite(g, 1.0, &half.with_decay_exponent(q))?
            }
        }
        Decay::None => {
            return Err(Error::Metadata(format!(
                "{} has no declared decay; its Mellin transform is undefined",
                f.name()
            )))
        }
    };
    let upper = upper.with_converged(upper.converged && upper.meets(&half));
    Ok(MellinHalves { lower, upper })
}

/// `∫_0^∞ x^{s−1} f(x) dx`. A divergent half gives an infinite, unconverged result.
pub fn mellin_transform(f: &SampleFunction, s: impl Into<MellinPoint>, spec: &QuadSpec) -> Result<EvalResult> {
    Ok(mellin_transform_halves(f, s, spec)?.total())
}

/// Mellin multiplier of `B^{-α}_{ν,−}`:
/// `2^{−2α} Γ(s/2) Γ(s/2 − (ν−1)/2) / (Γ(α + s/2 − (ν−1)/2) Γ(α + s/2))`.
pub fn mellin_symbol(nu: f64, alpha: f64, s: f64) -> Result<f64> {
    for (name, v) in [("nu", nu), ("alpha", alpha), ("s", s)] {
        check_finite(name, v)?;
    }
    if s <= nu - 1.0 {
        return domain(format!("the Mellin symbol needs s > nu - 1, got s = {s}, nu = {nu}"));
    }
    let h = 0.5 * (nu - 1.0);
    let r = GammaRatio::new([0.5 * s, 0.5 * s - h], [alpha + 0.5 * s - h, alpha + 0.5 * s]);
    let g = gamma_ratio(&r).map_err(|e| match e {
        Error::Pole { .. } => Error::Domain(format!("gamma pole in the Mellin symbol: {e}")),
        other => other,
    })?;
    Ok((-2.0 * alpha).exp2() * g)
}

/// McMahon's approximation to the `k`-th positive zero of `J_μ`, `k ≥ 1`.
fn bessel_zero_estimate(mu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * mu - 0.25) * std::f64::consts::PI;
    let m = 4.0 * mu * mu;
    let e = 8.0 * beta;
    beta - (m - 1.0) / e - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * e.powi(3))
}

/// `∫_0^∞ kernel(x) x^{(ν+1)/2} f(x) dx` for an oscillatory kernel of
/// argument `xξ` with the zeros of `J_{(ν−1)/2}`. The range is split at the
/// first zero beyond `x = 10/ξ` and the tail is summed panel by panel.
fn bessel_type_integral<K>(
    nu: f64,
    f: &SampleFunction,
    xi: f64,
    origin: f64,
    spec: &QuadSpec,
    kernel: K,
) -> Result<EvalResult>
where
    K: Fn(f64) -> Result<f64>,
{
    let failure = std::cell::RefCell::new(None);
    let g = |x: f64| {
        let v = f.eval(x);
        if v == 0.0 || failure.borrow().is_some() {
            return 0.0;
        }
        match kernel(x * xi) {
            Ok(k) => k * x.powf(0.5 * (nu + 1.0)) * v,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    if origin <= -1.0 {
        return Err(Error::Metadata(format!(
            "{} is too singular at 0 for the Hankel-type integral",
            f.name()
        )));
    }
    let order = 0.5 * (nu - 1.0);
    let first = (1..)
        .find(|&k| bessel_zero_estimate(order, k) >= 10.0)
        .expect("zeros grow without bound");
    let points = |k: usize| bessel_zero_estimate(order, first + k) / xi;
    let hinted = spec.with_hints(origin, 0.0);
    let result = match f.decay() {
        Decay::Compact(r) if r <= 0.0 => EvalResult::zero(),
        Decay::Compact(r) => {
            // panels between zeros inside the support
            let mut acc = EvalResult::zero();
            let mut lo = 0.0;
            let mut k = 0;
            while lo < r {
                let hi = points(k).min(r);
                let s = if k == 0 { hinted } else { spec.without_hints() };
                acc = acc.plus(integrate_finite(g, lo, hi, &s)?);
                lo = hi;
                k += 1;
            }
            acc
        }
        Decay::Exponential => integrate_oscillatory(g, 0.0, points, &hinted)?,
        Decay::Algebraic(rate) => {
            // J(xξ) x^{(ν+1)/2} f ~ x^{ν/2 − rate} times an oscillation
            if rate <= 0.5 * nu {
                return Err(Error::Metadata(format!(
                    "{} decays like y^-{rate}; the Hankel-type integral needs rate > nu/2",
                    f.name()
                )));
            }
            integrate_oscillatory(g, 0.0, points, &hinted)?
        }
        Decay::None => {
            return Err(Error::Metadata(format!(
                "{} has no declared decay; the Hankel-type integral is undefined",
                f.name()
            )))
        }
    };
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(result.with_converged(result.converged && result.meets(spec)))
}

/// `H_ν f(ξ) = ξ^{−ν} ∫_0^∞ J_{(ν−1)/2}(xξ) x^{(ν+1)/2} f(x) dx`.
pub fn hankel_transform(
    nu: f64,
    f: &SampleFunction,
    xi: impl Into<HankelPoint>,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    let xi = xi.into();
    xi.validate()?;
    check_finite("nu", nu)?;
    if nu < 0.0 {
        return domain(format!("nu must be >= 0, got {nu}"));
    }
    spec.validate()?;
    let order = 0.5 * (nu - 1.0);
    // J_μ(xξ) x^{(ν+1)/2} ~ x^ν at the origin
    let origin = nu + f.origin_exponent();
    let r = bessel_type_integral(nu, f, xi.xi, origin, spec, |z| bessel_j(order, z))?;
    Ok(r.scaled(xi.xi.powf(-nu)))
}

/// `R f(ξ) = ∫_0^∞ J¹_{(ν−1)/2, α}(xξ) x^{(ν+1)/2} f(x) dx`, `α ≥ 0`.
///
/// The Wright kernel is summed from its power series, which loses accuracy
/// to cancellation for arguments beyond about 25; there the evaluation
/// fails rather than return a degraded value.
pub fn r_transform(
    nu: f64,
    alpha: f64,
    f: &SampleFunction,
    xi: impl Into<HankelPoint>,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    let xi = xi.into();
    xi.validate()?;
    check_finite("nu", nu)?;
    check_finite("alpha", alpha)?;
    if nu < 0.0 || alpha < 0.0 {
        return domain(format!("need nu >= 0 and alpha >= 0, got nu = {nu}, alpha = {alpha}"));
    }
    spec.validate()?;
    let params = WrightParams::new(0.5 * (nu - 1.0), 1.0, alpha);
    // J¹(z) ~ z^{(ν−1)/2 + 2α}
    let origin = nu + 2.0 * alpha + f.origin_exponent();
    bessel_type_integral(nu, f, xi.xi, origin, spec, |z| wright_j(params, z))
}

/// Left and right sides of one identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentitySides {
    pub lhs: EvalResult,
    pub rhs: EvalResult,
}

impl IdentitySides {
    pub fn abs_diff(&self) -> f64 {
        (self.lhs.value - self.rhs.value).abs()
    }

    pub fn rel_diff(&self) -> f64 {
        let scale = self.lhs.value.abs().max(self.rhs.value.abs());
        if scale == 0.0 {
            0.0
        } else {
            self.abs_diff() / scale
        }
    }
}

/// Tolerances for operator images nested inside an outer integral.
fn inner_spec(spec: &QuadSpec) -> QuadSpec {
    QuadSpec::new((0.1 * spec.abs_tol).max(1e-15), (0.1 * spec.rel_tol).max(1e-14))
}

/// Mellin identity: `M[B^{-α}_{ν,−} f](s)` against `symbol(ν, α, s)·M[f](s + 2α)`.
pub fn mellin_identity(
    nu: f64,
    alpha: f64,
    f: &SampleFunction,
    s: f64,
    spec: &QuadSpec,
    method: KernelMethod,
) -> Result<IdentitySides> {
    let symbol = mellin_symbol(nu, alpha, s)?;
    let p = OperatorParams::new(nu, alpha, Variant::RightInfinite)?;
    let image = operator_image(p, f.clone(), inner_spec(spec), method);
    let lhs = mellin_transform(&image, s, spec)?;
    let rhs = mellin_transform(f, s + 2.0 * alpha, spec)?.scaled(symbol);
    Ok(IdentitySides { lhs, rhs })
}

/// `∫_0^∞ h` split at 1, with the origin exponent as a hint and the
/// decay of `h` taken from the declared decay of its factors.
fn half_line(h: impl Fn(f64) -> f64, origin: f64, decay: Decay, spec: &QuadSpec) -> Result<EvalResult> {
    if origin <= -1.0 {
        return Ok(divergent());
    }
    let half = QuadSpec {
        abs_tol: 0.5 * spec.abs_tol,
        ..*spec
    };
    let lower = integrate_finite(&h, 0.0, 1.0, &half.with_hints(origin, 0.0))?;
    let upper = match decay {
        Decay::Compact(r) if r <= 1.0 => EvalResult::zero(),
        Decay::Compact(r) => integrate_finite(&h, 1.0, r, &half.without_hints())?,
        Decay::Exponential => integrate_semi_infinite(&h, 1.0, &half.without_hints())?,
        _ => return domain("integration by parts is checked for exponentially decaying functions only"),
    };
    let r = lower.plus(upper);
    Ok(r.with_converged(r.converged && r.meets(spec)))
}

fn fast_decay(f: &SampleFunction, g: &SampleFunction) -> Decay {
    match (f.decay(), g.decay()) {
        (Decay::Compact(a), Decay::Compact(b)) => Decay::Compact(a.min(b)),
        (Decay::Compact(a), _) | (_, Decay::Compact(a)) => Decay::Compact(a),
        (Decay::Exponential, _) | (_, Decay::Exponential) => Decay::Exponential,
        (d, _) => d,
    }
}

/// Integration by parts: `∫ f·(B^{-α}_{ν,0+} g)·x^ν dx` against
/// `∫ g·(B^{-α}_{ν,−} f)·x^ν dx` over `(0, ∞)`.
pub fn integration_by_parts(
    nu: f64,
    alpha: f64,
    f: &SampleFunction,
    g: &SampleFunction,
    spec: &QuadSpec,
    method: KernelMethod,
) -> Result<IdentitySides> {
    let inner = inner_spec(spec);
    let left = operator_image(OperatorParams::new(nu, alpha, Variant::LeftZero)?, g.clone(), inner, method);
    let right = operator_image(OperatorParams::new(nu, alpha, Variant::RightInfinite)?, f.clone(), inner, method);
    let decay = fast_decay(f, g);
    let product = |a: &SampleFunction, b: &SampleFunction| {
        let (a, b) = (a.clone(), b.clone());
        move |x: f64| {
            let va = a.eval(x);
            if va == 0.0 {
                0.0
            } else {
                va * b.eval(x) * x.powf(nu)
            }
        }
    };
    let lhs = half_line(
        product(f, &left),
        f.origin_exponent() + left.origin_exponent() + nu,
        decay,
        spec,
    )?;
    let rhs = half_line(
        product(g, &right),
        g.origin_exponent() + right.origin_exponent() + nu,
        decay,
        spec,
    )?;
    Ok(IdentitySides { lhs, rhs })
}

/// Which normalisation of the Hankel identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HankelForm {
    /// `H_ν(B^{-α}_{ν,−} f)(ξ) = ξ^{−2α−ν} R f(ξ)`, consistent with the
    /// `ξ^{−ν}` normalisation of `H_ν`.
    #[default]
    Consistent,
    /// `H_ν(B^{-α}_{ν,−} f)(ξ) = ξ^{−2α} R f(ξ)`, which agrees with the
    /// consistent form only at `ξ = 1`.
    Literal,
}

/// Hankel identity for `B^{-α}_{ν,−}` with the R-transform on the right.
pub fn hankel_identity(
    nu: f64,
    alpha: f64,
    f: &SampleFunction,
    xi: f64,
    form: HankelForm,
    spec: &QuadSpec,
    method: KernelMethod,
) -> Result<IdentitySides> {
    let p = OperatorParams::new(nu, alpha, Variant::RightInfinite)?;
    let image = operator_image(p, f.clone(), inner_spec(spec), method);
    let lhs = hankel_transform(nu, &image, xi, spec)?;
    let power = match form {
        HankelForm::Consistent => -2.0 * alpha - nu,
        HankelForm::Literal => -2.0 * alpha,
    };
    let rhs = r_transform(nu, alpha, f, xi, spec)?.scaled(xi.powf(power));
    Ok(IdentitySides { lhs, rhs })
}
