use std::f64::consts::PI;

use approx::assert_relative_eq;
use fracbessel::quad::{integrate_finite, integrate_finite_with, integrate_oscillatory, integrate_semi_infinite, Abscissa};
use fracbessel::specfun::bessel_j;
use fracbessel::QuadSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec() -> QuadSpec {
    QuadSpec::new(1e-12, 1e-12)
}

#[test]
fn worked_examples() {
    let r = integrate_finite(|x| x.powf(-0.5), 0.0, 1.0, &spec().with_left_hint(-0.5)).unwrap();
    assert!((r.value - 2.0).abs() < 1e-10);
    let r = integrate_finite(|x| (1.0 - x).powf(-0.3), 0.0, 1.0, &spec().with_right_hint(-0.3)).unwrap();
    assert_relative_eq!(r.value, 1.0 / 0.7, max_relative = 1e-10);
    assert_relative_eq!(integrate_finite(|_| 1.0, 2.0, 5.0, &spec()).unwrap().value, 3.0, max_relative = 1e-14);
    let r = integrate_semi_infinite(|x| (-x).exp(), 0.0, &spec()).unwrap();
    assert_relative_eq!(r.value, 1.0, max_relative = 1e-11);
    let r = integrate_semi_infinite(|x| x * (-x * x).exp(), 0.0, &spec()).unwrap();
    assert_relative_eq!(r.value, 0.5, max_relative = 1e-11);
    let r = integrate_semi_infinite(|x| 1.0 / (1.0 + x * x), 0.0, &spec().with_decay_exponent(-2.0)).unwrap();
    assert_relative_eq!(r.value, PI / 2.0, max_relative = 1e-11);
}

/// Integrands on `(0, 1)` with closed-form integrals and their endpoint hints.
struct Case {
    f: Box<dyn Fn(Abscissa) -> f64>,
    truth: f64,
    left: f64,
    right: f64,
}

fn corpus() -> Vec<Case> {
    let mut cases = Vec::new();
    for k in 0..25 {
        let s = -0.95 + 0.075 * k as f64;
        // ∫ x^s = 1/(s+1)
        cases.push(Case { f: Box::new(move |p| p.x.powf(s)), truth: 1.0 / (s + 1.0), left: s, right: 0.0 });
        // ∫ (1−x)^s = 1/(s+1)
        cases.push(Case { f: Box::new(move |p| p.to_hi.powf(s)), truth: 1.0 / (s + 1.0), left: 0.0, right: s });
        let c = 0.5 + k as f64;
        // ∫ e^{cx} = (e^c − 1)/c
        cases.push(Case { f: Box::new(move |p| (c * p.x).exp()), truth: c.exp_m1() / c, left: 0.0, right: 0.0 });
        let w = 1.0 + 2.0 * k as f64;
        // ∫ cos(wx) = sin(w)/w
        cases.push(Case { f: Box::new(move |p| (w * p.x).cos()), truth: w.sin() / w, left: 0.0, right: 0.0 });
    }
    cases
}

#[test]
fn error_estimates_are_honest() {
    let cases = corpus();
    assert_eq!(cases.len(), 100);
    let mut honest = 0;
    for c in &cases {
        let s = QuadSpec::new(1e-10, 1e-10).with_hints(c.left, c.right);
        let r = integrate_finite_with(&c.f, 0.0, 1.0, &s).unwrap();
        let err = (r.value - c.truth).abs();
        if err <= 5.0 * r.error_estimate.max(f64::EPSILON * c.truth.abs()) {
            honest += 1;
        }
        assert!(r.converged);
    }
    assert!(honest >= 95, "only {honest} of 100 estimates bound the error");
}

#[test]
fn singular_endpoints_meet_tolerance() {
    for k in 1..20 {
        let sigma = -0.05 * k as f64;
        let s = QuadSpec::new(1e-11, 1e-11).with_left_hint(sigma);
        let r = integrate_finite_with(|p| p.from_lo.powf(sigma) * p.x.exp(), 1.0, 2.0, &s).unwrap();
        // ∫_1^2 (x−1)^σ e^x dx = e Σ 1/(n!(σ+1+n))
        let truth: f64 = (0..40)
            .map(|n| std::f64::consts::E / (1..=n).map(|j| j as f64).product::<f64>() / (sigma + 1.0 + n as f64))
            .sum();
        assert!((r.value - truth).abs() <= 10.0 * s.tolerance_for(truth), "σ = {sigma}: {} vs {truth}", r.value);
    }
}

#[test]
fn additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (p, q, w) = (rng.gen_range(-2.0..2.0), rng.gen_range(0.1..3.0), rng.gen_range(0.5..6.0));
        let f = move |x: f64| (p * x).exp() * (w * x).sin() + q / (1.0 + x * x);
        let a: f64 = rng.gen_range(-3.0..0.0);
        let b: f64 = rng.gen_range(0.5..4.0);
        let c = rng.gen_range(a..b);
        let whole = integrate_finite(f, a, b, &spec()).unwrap();
        let left = integrate_finite(f, a, c, &spec()).unwrap();
        let right = integrate_finite(f, c, b, &spec()).unwrap();
        let budget = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-14;
        assert!((whole.value - left.value - right.value).abs() <= budget);
    }
}

#[test]
fn oscillatory_bessel_tail() {
    // ∫_0^∞ J_0(x) dx = 1, partitioned near the zeros of J_0
    let r = integrate_oscillatory(|x| bessel_j(0.0, x).unwrap(), 0.0, |k| (k as f64 + 0.75) * PI, &spec()).unwrap();
    assert_relative_eq!(r.value, 1.0, max_relative = 1e-9);
}
