//! Double-exponential quadrature with algebraic endpoint hints, adaptive
//! bisection, a semi-infinite map and a zero-partition integrator for
//! oscillatory tails.
//!
//! Integrands may be written against [`Abscissa`], which carries the distances
//! to both ends of the interval computed without cancellation. Kernels that are
//! singular at an endpoint should use those distances rather than `x − a`.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, Error, Result};

/// Finest tanh-sinh level; the step at level `j` is `2^{-j}`.
const MAX_LEVEL: usize = 7;
/// Levels below this never report convergence.
const MIN_LEVEL: usize = 3;
const T_MAX: f64 = 6.0;
/// Evaluation budget of one adaptive call before it gives up.
const MAX_EVALUATIONS: usize = 400_000;
/// Panels summed by the oscillatory integrator before extrapolation is required.
const MAX_PANELS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
    /// Power `σ` of an algebraic singularity `(x − a)^σ` at the lower end.
    pub left_exponent_hint: f64,
    /// Power at the upper end. For semi-infinite ranges this refers to the
    /// integrand after the map `y = a + t/(1 − t)`, at `t = 1`.
    pub right_exponent_hint: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_depth: 24,
            left_exponent_hint: 0.0,
            right_exponent_hint: 0.0,
        }
    }
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_hints(mut self, left: f64, right: f64) -> Self {
        self.left_exponent_hint = left;
        self.right_exponent_hint = right;
        self
    }

    pub fn with_left_hint(mut self, left: f64) -> Self {
        self.left_exponent_hint = left;
        self
    }

    pub fn with_right_hint(mut self, right: f64) -> Self {
        self.right_exponent_hint = right;
        self
    }

    /// Right hint for a semi-infinite integrand decaying like `y^q`, `q < −1`.
    pub fn with_decay_exponent(self, q: f64) -> Self {
        self.with_right_hint(-q - 2.0)
    }

    pub fn without_hints(self) -> Self {
        self.with_hints(0.0, 0.0)
    }

    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return domain("quadrature tolerances must be positive");
        }
        for (name, h) in [
            ("left exponent hint", self.left_exponent_hint),
            ("right exponent hint", self.right_exponent_hint),
        ] {
            check_finite(name, h)?;
            if h <= -1.0 {
                return domain(format!("{name} must exceed -1, got {h}"));
            }
        }
        Ok(())
    }
}

/// Value of a quadrature or series together with its error diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    pub fn zero() -> Self {
        Self::exact(0.0)
    }

    /// Sum of two independent results.
    pub fn plus(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scaled(self, c: f64) -> Self {
        Self {
            value: c * self.value,
            error_estimate: c.abs() * self.error_estimate,
            ..self
        }
    }

    pub fn with_converged(mut self, converged: bool) -> Self {
        self.converged = self.converged && converged;
        self
    }

    /// True when `error_estimate ≤ max(abs_tol, rel_tol·|value|)`.
    pub fn meets(&self, spec: &QuadSpec) -> bool {
        self.error_estimate <= spec.tolerance_for(self.value)
    }
}

impl std::iter::Sum for EvalResult {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Self::plus)
    }
}

/// A quadrature node together with its distances to the two ends of the
/// original interval. For semi-infinite ranges `to_hi` is infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lo: f64,
    pub to_hi: f64,
}

struct Level {
    /// `(d, c)`: unit-interval distance of the node pair from the nearer end and its weight.
    nodes: Vec<(f64, f64)>,
}

fn levels() -> &'static [Level] {
    static LEVELS: OnceLock<Vec<Level>> = OnceLock::new();
    LEVELS.get_or_init(|| {
        (0..=MAX_LEVEL)
            .map(|j| {
                let h = 0.5f64.powi(j as i32);
                let (start, step) = if j == 0 { (1.0, 1.0) } else { (h, 2.0 * h) };
                let mut nodes = Vec::new();
                let mut t = start;
                while t <= T_MAX {
                    let u = FRAC_PI_2 * t.sinh();
                    let d = 1.0 / (1.0 + (2.0 * u).exp());
                    let ch = u.cosh();
                    let c = FRAC_PI_2 * t.cosh() / (2.0 * ch * ch);
                    if d > 0.0 && c > 0.0 {
                        nodes.push((d, c));
                    }
                    t += step;
                }
                Level { nodes }
            })
            .collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Plain,
    /// `x = lo + len·w^p` concentrates nodes at the lower end.
    LeftPower(f64),
    RightPower(f64),
}

/// Sub-interval described by offsets from the global ends, so that distances
/// to a singular endpoint stay exact.
#[derive(Debug, Clone, Copy)]
struct Panel {
    lo_off: f64,
    hi_rem: f64,
    shape: Shape,
}

struct Problem<'a, F: Fn(Abscissa) -> f64> {
    f: &'a F,
    a: f64,
    b: f64,
    len: f64,
    spec: QuadSpec,
    evaluations: usize,
    /// Set when the integrand overflowed at some node; the result is then unreliable.
    overflowed: bool,
}

fn power_shape(sigma: f64) -> Option<f64> {
    (sigma != 0.0).then(|| 1.0 / (1.0 + sigma))
}

/// `(ln w, ln(1 − w))` from the two complementary unit distances.
fn split_logs(d0: f64, d1: f64) -> (f64, f64) {
    let lw = if d0 < 0.5 { d0.ln() } else { (-d1).ln_1p() };
    let l1w = if d1 < 0.5 { d1.ln() } else { (-d0).ln_1p() };
    (lw, l1w)
}

impl<F: Fn(Abscissa) -> f64> Problem<'_, F> {
    fn panel_len(&self, p: &Panel) -> f64 {
        self.len - p.lo_off - p.hi_rem
    }

    /// Map a unit node with distances `(d0, d1)` from (lower, upper) into the
    /// panel and evaluate `f · jacobian`. Returns `None` for skipped nodes.
    fn eval(&mut self, p: &Panel, d0: f64, d1: f64) -> Result<Option<f64>> {
        let l = self.panel_len(p);
        let (dl, dh, jac) = match p.shape {
            Shape::Plain => (l * d0, l * d1, l),
            Shape::LeftPower(q) => {
                let (lw, _) = split_logs(d0, d1);
                let wq = (q * lw).exp();
                (l * wq, -l * (q * lw).exp_m1(), l * q * ((q - 1.0) * lw).exp())
            }
            Shape::RightPower(q) => {
                let (_, l1w) = split_logs(d0, d1);
                let vq = (q * l1w).exp();
                (-l * (q * l1w).exp_m1(), l * vq, l * q * ((q - 1.0) * l1w).exp())
            }
        };
        if !(dl > 0.0 && dh > 0.0 && jac > 0.0 && jac.is_finite()) {
            return Ok(None);
        }
        let from_lo = p.lo_off + dl;
        let to_hi = p.hi_rem + dh;
        let x = if from_lo <= to_hi {
            self.a + from_lo
        } else {
            self.b - to_hi
        };
        self.evaluations += 1;
        let v = (self.f)(Abscissa { x, from_lo, to_hi }) * jac;
        if v.is_nan() {
            return Err(Error::Evaluation(x));
        }
        if v.is_infinite() {
            self.overflowed = true;
            return Ok(None);
        }
        Ok(Some(v))
    }

    /// Tanh-sinh on one panel, refining until two successive levels agree.
    fn tanh_sinh(&mut self, p: &Panel, abs_share: f64) -> Result<EvalResult> {
        let start = self.evaluations;
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        if let Some(v) = self.eval(p, 0.5, 0.5)? {
            sum += FRAC_PI_2 * 0.5 * v;
            abs_sum += (FRAC_PI_2 * 0.5 * v).abs();
        }
        let mut prev = f64::NAN;
        let mut result = EvalResult::zero();
        for (j, level) in levels().iter().enumerate() {
            for &(d, c) in &level.nodes {
                for (d0, d1) in [(d, 1.0 - d), (1.0 - d, d)] {
                    if let Some(v) = self.eval(p, d0, d1)? {
                        sum += c * v;
                        abs_sum += (c * v).abs();
                    }
                }
            }
            let h = 0.5f64.powi(j as i32);
            let estimate = h * sum;
            let floor = 4.0 * f64::EPSILON * h * abs_sum;
            let diff = if prev.is_nan() { f64::INFINITY } else { (estimate - prev).abs() };
            let err = diff.max(floor);
            result = EvalResult {
                value: estimate,
                error_estimate: err,
                evaluations: self.evaluations - start,
                converged: false,
            };
            let tol = abs_share.max(self.spec.rel_tol * estimate.abs());
            if j >= MIN_LEVEL && err <= tol {
                result.converged = true;
                return Ok(result);
            }
            prev = estimate;
        }
        Ok(result)
    }

    fn adaptive(&mut self, p: Panel, abs_share: f64, depth: usize) -> Result<EvalResult> {
        let r = self.tanh_sinh(&p, abs_share)?;
        if r.converged || depth >= self.spec.max_depth || self.evaluations > MAX_EVALUATIONS {
            return Ok(r);
        }
        let half = 0.5 * self.panel_len(&p);
        let (left_shape, right_shape) = match p.shape {
            Shape::Plain => (Shape::Plain, Shape::Plain),
            s @ Shape::LeftPower(_) => (s, Shape::Plain),
            s @ Shape::RightPower(_) => (Shape::Plain, s),
        };
        let left = Panel {
            lo_off: p.lo_off,
            hi_rem: p.hi_rem + half,
            shape: left_shape,
        };
        let right = Panel {
            lo_off: p.lo_off + half,
            hi_rem: p.hi_rem,
            shape: right_shape,
        };
        let l = self.adaptive(left, 0.5 * abs_share, depth + 1)?;
        let r2 = self.adaptive(right, 0.5 * abs_share, depth + 1)?;
        let mut combined = l.plus(r2);
        combined.evaluations += r.evaluations;
        Ok(combined)
    }

    fn run(&mut self) -> Result<EvalResult> {
        let left = power_shape(self.spec.left_exponent_hint);
        let right = power_shape(self.spec.right_exponent_hint);
        let panels: Vec<Panel> = match (left, right) {
            (None, None) => vec![Panel {
                lo_off: 0.0,
                hi_rem: 0.0,
                shape: Shape::Plain,
            }],
            _ => {
                let half = 0.5 * self.len;
                vec![
                    Panel {
                        lo_off: 0.0,
                        hi_rem: half,
                        shape: left.map_or(Shape::Plain, Shape::LeftPower),
                    },
                    Panel {
                        lo_off: half,
                        hi_rem: 0.0,
                        shape: right.map_or(Shape::Plain, Shape::RightPower),
                    },
                ]
            }
        };
        let share = self.spec.abs_tol / panels.len() as f64;
        let mut total = EvalResult::zero();
        for p in panels {
            total = total.plus(self.adaptive(p, share, 0)?);
        }
        let ok = total.converged && total.meets(&self.spec) && !self.overflowed;
        Ok(total.with_converged(ok))
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    check_finite("lower limit", a)?;
    check_finite("upper limit", b)?;
    if !(b > a) {
        return domain(format!("integration requires b > a, got a = {a}, b = {b}"));
    }
    Ok(())
}

/// `∫_a^b f` where `f` receives the node with exact endpoint distances.
pub fn integrate_finite_with<F: Fn(Abscissa) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    spec.validate()?;
    check_interval(a, b)?;
    Problem {
        f: &f,
        a,
        b,
        len: b - a,
        spec: *spec,
        evaluations: 0,
        overflowed: false,
    }
    .run()
}

/// `∫_a^b f(x) dx`. Nodes that round onto an endpoint are skipped.
///
/// An integrand singular at a nonzero endpoint loses its distance to that
/// endpoint when it recomputes `x − a` from `x`; use
/// [`integrate_finite_with`] there.
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    integrate_finite_with(
        |p: Abscissa| if p.x <= a || p.x >= b { 0.0 } else { f(p.x) },
        a,
        b,
        spec,
    )
}

/// `∫_a^∞ f` through `y = a + s·t/(1 − t)`; `f` sees `from_lo = y − a`.
pub fn integrate_semi_infinite_with<F: Fn(Abscissa) -> f64>(
    f: F,
    a: f64,
    scale: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    check_finite("lower limit", a)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return domain("semi-infinite scale must be positive");
    }
    integrate_finite_with(
        |p: Abscissa| {
            let (t, one_minus_t) = (p.from_lo, p.to_hi);
            let off = scale * t / one_minus_t;
            let y = a + off;
            if !y.is_finite() {
                return 0.0;
            }
            let v = f(Abscissa {
                x: y,
                from_lo: off,
                to_hi: f64::INFINITY,
            });
            if v == 0.0 {
                0.0
            } else {
                v * (scale / one_minus_t) / one_minus_t
            }
        },
        0.0,
        1.0,
        spec,
    )
}

/// `∫_a^∞ f(y) dy` for integrands with declared monotone decay.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    spec: &QuadSpec,
) -> Result<EvalResult> {
    integrate_semi_infinite_with(
        |p: Abscissa| if p.x <= a { 0.0 } else { f(p.x) },
        a,
        1.0,
        spec,
    )
}

/// Wynn's epsilon algorithm on a sequence of partial sums; returns the last
/// two diagonal estimates.
pub fn wynn_epsilon(partial: &[f64]) -> Option<(f64, f64)> {
    let n = partial.len();
    if n < 3 {
        return None;
    }
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial.to_vec();
    let mut estimates = Vec::new();
    for k in 1..n {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            let v = if d == 0.0 { f64::INFINITY } else { prev[i + 1] + 1.0 / d };
            next.push(v);
        }
        if k % 2 == 0 {
            if let Some(&last) = next.last() {
                if last.is_finite() {
                    estimates.push(last);
                }
            }
        }
        prev = cur;
        cur = next;
        if cur.len() < 2 {
            break;
        }
    }
    match estimates.as_slice() {
        [.., a, b] => Some((*a, *b)),
        [b] => Some((*b, partial[n - 1])),
        [] => None,
    }
}

/// `∫_a^∞ f` for oscillatory `f`: integrate `[a, p₀]`, then panel by panel
/// between consecutive breakpoints `p_k = points(k)`. Summation stops after
/// three consecutive panels below `abs_tol/10`; otherwise the alternating
/// partial sums are extrapolated with Wynn's epsilon algorithm.
pub fn integrate_oscillatory<F, P>(f: F, a: f64, points: P, spec: &QuadSpec) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
    P: Fn(usize) -> f64,
{
    spec.validate()?;
    let inner = QuadSpec {
        abs_tol: spec.abs_tol / 20.0,
        rel_tol: spec.rel_tol / 10.0,
        ..*spec
    };
    let first = points(0);
    let total = if first > a {
        integrate_finite(&f, a, first, &inner)?
    } else {
        EvalResult::zero()
    };
    let plain = inner.without_hints();
    let mut partial = Vec::new();
    let mut tail = EvalResult::zero();
    let mut small_run = 0;
    let mut lo = first.max(a);
    for k in 1..=MAX_PANELS {
        let hi = points(k);
        if !(hi > lo) {
            return domain("oscillatory breakpoints must increase");
        }
        let r = integrate_finite(&f, lo, hi, &plain)?;
        tail = tail.plus(r);
        partial.push(tail.value);
        if r.value.abs() < spec.abs_tol / 10.0 {
            small_run += 1;
            if small_run >= 3 {
                return Ok(total.plus(tail));
            }
        } else {
            small_run = 0;
        }
        if k >= 12 && k % 4 == 0 {
            if let Some((e1, e2)) = wynn_epsilon(&partial) {
                let err = (e2 - e1).abs() + tail.error_estimate;
                let value = total.value + e2;
                if err <= spec.tolerance_for(value) {
                    return Ok(EvalResult {
                        value,
                        error_estimate: total.error_estimate + err,
                        evaluations: total.evaluations + tail.evaluations,
                        converged: total.converged && tail.converged,
                    });
                }
            }
        }
        lo = hi;
    }
    let (value, err) = match wynn_epsilon(&partial) {
        Some((e1, e2)) => (e2, (e2 - e1).abs()),
        None => (tail.value, f64::INFINITY),
    };
    Ok(EvalResult {
        value: total.value + value,
        error_estimate: total.error_estimate + err + tail.error_estimate,
        evaluations: total.evaluations + tail.evaluations,
        converged: false,
    })
}
