use approx::assert_relative_eq;
use fracbessel::specfun::{gamma_ratio, rgamma, GammaRatio};
use fracbessel::transforms::{
    hankel_identity, hankel_transform, integration_by_parts, mellin_identity, mellin_symbol, mellin_transform,
    mellin_transform_halves, HankelForm, MellinPoint,
};
use fracbessel::{Error, KernelMethod, QuadSpec, SampleFunction};
use proptest::prelude::*;

const HYP: KernelMethod = KernelMethod::Hypergeometric;

fn spec() -> QuadSpec {
    QuadSpec::new(1e-12, 1e-10)
}

#[test]
fn mellin_needs_declared_decay() {
    let f = SampleFunction::custom("opaque", |x| (-x).exp(), fracbessel::Decay::None, 0, 0.0);
    assert!(matches!(mellin_transform(&f, 1.0, &spec()), Err(Error::Metadata(_))));
}

#[test]
fn mellin_of_gaussian_family() {
    for s in [0.5, 1.0, 2.5, 4.0] {
        let r = mellin_transform(&SampleFunction::gaussian(1.0), s, &spec()).unwrap();
        let want = 0.5 * fracbessel::specfun::gamma(0.5 * s).unwrap();
        assert_relative_eq!(r.value, want, max_relative = 1e-9);
    }
    let h = mellin_transform_halves(&SampleFunction::gaussian(1.0), -0.5, &spec()).unwrap();
    assert!(!h.lower.converged && h.lower.value.is_infinite());
    assert!(MellinPoint::from(0.6).admissible_for(1.5) && !MellinPoint::from(0.4).admissible_for(1.5));
}

#[test]
fn theorem_one_spot_checks() {
    for (f, nu, alpha, s) in [
        (SampleFunction::gaussian(1.0), 0.5, 0.5, 1.0),
        (SampleFunction::exponential(1.0), 1.5, 0.3, 2.0),
        (SampleFunction::x_gaussian(), 0.0, 1.0, 1.0),
    ] {
        let sides = mellin_identity(nu, alpha, &f, s, &spec(), HYP).unwrap();
        assert!(sides.rel_diff() < 1e-5, "{} {nu} {alpha} {s}: {sides:?}", f.name());
    }
}

#[test]
fn integration_by_parts_example() {
    let f = SampleFunction::gaussian(1.0);
    let g = SampleFunction::gaussian_poly(vec![0.0, 1.0], 1.0);
    let sides = integration_by_parts(0.5, 0.5, &f, &g, &spec(), HYP).unwrap();
    assert!(sides.rel_diff() < 1e-5, "{sides:?}");
}

#[test]
fn hankel_identity_forms() {
    let f = SampleFunction::gaussian(1.0);
    let sides = hankel_identity(0.5, 0.5, &f, 1.0, HankelForm::Literal, &spec(), HYP).unwrap();
    assert!(sides.rel_diff() < 1e-4, "{sides:?}");
    let sides = hankel_identity(0.5, 0.5, &f, 2.0, HankelForm::Consistent, &spec(), HYP).unwrap();
    assert!(sides.rel_diff() < 1e-4, "{sides:?}");
    // away from ξ = 1 the literal power of ξ misses a factor ξ^{−ν}
    let literal = hankel_identity(0.5, 0.5, &f, 2.0, HankelForm::Literal, &spec(), HYP).unwrap();
    assert_relative_eq!(literal.lhs.value / literal.rhs.value, 2f64.powf(-0.5), max_relative = 1e-6);
}

#[test]
fn hankel_small_xi_scaling() {
    // ξ^{(ν+1)/2} H_ν f(ξ) → 2^{−μ}/Γ(μ+1) ∫ x^ν f, μ = (ν−1)/2
    let f = SampleFunction::indicator(1.0);
    for nu in [0.0, 0.5, 2.0] {
        let mu = 0.5 * (nu - 1.0);
        let limit = (-mu as f64).exp2() * rgamma(mu + 1.0) / (nu + 1.0);
        let xi: f64 = 1e-3;
        let r = hankel_transform(nu, &f, xi, &spec()).unwrap();
        assert_relative_eq!(xi.powf(0.5 * (nu + 1.0)) * r.value, limit, max_relative = 1e-5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbol_group_law(nu in 0.0f64..3.0, a in 0.05f64..2.0, b in 0.05f64..2.0, gap in 0.05f64..4.0) {
        let s = nu - 1.0 + gap;
        let lhs = mellin_symbol(nu, a, s).unwrap() * mellin_symbol(nu, b, s + 2.0 * a).unwrap();
        let rhs = mellin_symbol(nu, a + b, s).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn symbol_at_nu_zero(a in 0.05f64..3.0, s in 0.05f64..6.0) {
        let got = mellin_symbol(0.0, a, s).unwrap();
        let want = gamma_ratio(&GammaRatio::new([s], [s + 2.0 * a])).unwrap();
        prop_assert!((got - want).abs() <= 1e-12 * want.abs());
    }
}
