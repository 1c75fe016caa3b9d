use approx::assert_relative_eq;
use fracbessel::specfun::{gamma_ratio, GammaRatio};
use fracbessel::symfun::{
    bessel_apply_poly, clifford_apply_poly, frac_power_coefficient, rl_power_closed_form, FracPowerSide,
    RlSide,
};
use fracbessel::PowerPolynomial;
use proptest::prelude::*;

#[test]
fn bessel_images_of_monomials() {
    let nu = 1.3;
    assert!(bessel_apply_poly(nu, &PowerPolynomial::constant(5.0)).is_zero());
    let b = bessel_apply_poly(nu, &PowerPolynomial::monomial(1.0, 2.0));
    assert_eq!(b.terms(), &[(2.0 * (1.0 + nu), 0.0)]);
    let b = bessel_apply_poly(nu, &PowerPolynomial::monomial(1.0, 4.0));
    assert_eq!(b.terms(), &[(4.0 * (3.0 + nu), 2.0)]);
}

#[test]
fn clifford_kills_x_to_the_nu() {
    for nu in [0.0, 0.5, 1.0, 2.7] {
        assert!(clifford_apply_poly(nu, &PowerPolynomial::monomial(1.0, nu)).is_zero());
    }
}

#[test]
fn proposition_one_examples() {
    let k = frac_power_coefficient(0.0, 1.0, 0.0, FracPowerSide::LeftZero).unwrap();
    assert_relative_eq!(k, 0.5, max_relative = 1e-15);
    let k = frac_power_coefficient(1.0, 1.0, 0.0, FracPowerSide::LeftZero).unwrap();
    assert_relative_eq!(k, 0.25, max_relative = 1e-15);
    let k = frac_power_coefficient(0.0, 0.25, -2.0, FracPowerSide::RightInfinite).unwrap();
    assert_relative_eq!(k, 0.886_226_925_452_758, max_relative = 1e-14);
    assert!(frac_power_coefficient(0.5, 1.0, -1.0, FracPowerSide::RightInfinite).is_err());
    assert!(frac_power_coefficient(0.5, 1.0, -1.5, FracPowerSide::LeftZero).is_err());
}

#[test]
fn liouville_closed_forms() {
    let (k, e) = rl_power_closed_form(RlSide::LeftFromZero, 1.0, 0.0).unwrap();
    assert_eq!((k, e), (1.0, 1.0));
    let (k, e) = rl_power_closed_form(RlSide::RightToInfinity, 1.0, -3.0).unwrap();
    assert_relative_eq!(k, 0.5, max_relative = 1e-15);
    assert_eq!(e, -2.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coefficient_group_law_left(nu in 0.0f64..3.0, a in 0.05f64..2.0, b in 0.05f64..2.0, m in -0.9f64..4.0) {
        let side = FracPowerSide::LeftZero;
        let lhs = frac_power_coefficient(nu, b, m, side).unwrap()
            * frac_power_coefficient(nu, a, m + 2.0 * b, side).unwrap();
        let rhs = frac_power_coefficient(nu, a + b, m, side).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn coefficient_group_law_right(nu in 0.0f64..3.0, a in 0.05f64..1.5, b in 0.05f64..1.5, gap in 0.05f64..3.0) {
        let side = FracPowerSide::RightInfinite;
        // m + 2(α+β) + max(ν, 1) = 1 − gap keeps every intermediate admissible
        let m = 1.0 - gap - nu.max(1.0) - 2.0 * (a + b);
        let lhs = frac_power_coefficient(nu, b, m, side).unwrap()
            * frac_power_coefficient(nu, a, m + 2.0 * b, side).unwrap();
        let rhs = frac_power_coefficient(nu, a + b, m, side).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn bessel_undoes_integral_on_powers(nu in 0.0f64..3.0, m in -0.9f64..5.0) {
        let k = frac_power_coefficient(nu, 1.0, m, FracPowerSide::LeftZero).unwrap();
        let back = bessel_apply_poly(nu, &PowerPolynomial::monomial(k, m + 2.0));
        prop_assert_eq!(back.terms().len(), 1);
        let (c, e) = back.terms()[0];
        prop_assert!((c - 1.0).abs() <= 1e-13 && (e - m).abs() <= 1e-15);
    }

    #[test]
    fn nu_zero_is_riemann_liouville(a in 0.05f64..3.0, m in -0.9f64..5.0) {
        let k = frac_power_coefficient(0.0, a, m, FracPowerSide::LeftZero).unwrap();
        let want = gamma_ratio(&GammaRatio::new([m + 1.0], [m + 1.0 + 2.0 * a])).unwrap();
        prop_assert!((k - want).abs() <= 1e-12 * want.abs());
    }

    #[test]
    fn bessel_is_linear(c1 in -5.0f64..5.0, c2 in -5.0f64..5.0, m1 in 0.0f64..6.0, m2 in 0.0f64..6.0, nu in 0.0f64..3.0, x in 0.1f64..4.0) {
        let p = PowerPolynomial::new([(c1, m1), (c2, m2)]);
        let whole = bessel_apply_poly(nu, &p).eval(x);
        let parts = bessel_apply_poly(nu, &PowerPolynomial::monomial(c1, m1)).eval(x)
            + bessel_apply_poly(nu, &PowerPolynomial::monomial(c2, m2)).eval(x);
        prop_assert!((whole - parts).abs() <= 1e-12 * (1.0 + parts.abs()));
    }
}
