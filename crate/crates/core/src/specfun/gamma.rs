//! Log-gamma, signed gamma, digamma and the bracket ratio `Γ[num; den]`.

use std::f64::consts::PI;

use crate::error::{check_finite, domain, Error, RatioSide, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// ζ(k) − 1 for k = 2, 3, …, 25.
const ZETA_MINUS_ONE: [f64; 24] = [
    0.644_934_066_848_226_4,
    0.202_056_903_159_594_3,
    0.082_323_233_711_138_19,
    0.036_927_755_143_369_93,
    0.017_343_061_984_449_14,
    0.008_349_277_381_922_827,
    0.004_077_356_197_944_339,
    0.002_008_392_826_082_214,
    0.000_994_575_127_818_085_3,
    0.000_494_188_604_119_464_6,
    0.000_246_086_553_308_048_3,
    0.000_122_713_347_578_489_1,
    6.124_813_505_870_483e-5,
    3.058_823_630_702_049e-5,
    1.528_225_940_865_187e-5,
    7.637_197_637_899_762e-6,
    3.817_293_264_999_840e-6,
    1.908_212_716_553_939e-6,
    9.539_620_338_727_961e-7,
    4.769_329_867_878_065e-7,
    2.384_505_027_277_330e-7,
    1.192_199_259_653_111e-7,
    5.960_818_905_125_948e-8,
    2.980_350_351_465_228e-8,
];

/// `ln Γ(1 + ε)` for `|ε| ≤ 1/2`, accurate in the relative sense near the root at ε = 0.
fn ln_gamma_1p(eps: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = -eps;
    for (i, z) in ZETA_MINUS_ONE.iter().enumerate() {
        pow *= -eps;
        sum += z * pow / (i as f64 + 2.0);
    }
    -eps.ln_1p() + eps * (1.0 - EULER_GAMMA) + sum
}

fn stirling(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            + r2 * (-1.0 / 360.0
                + r2 * (1.0 / 1260.0
                    + r2 * (-1.0 / 1680.0
                        + r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360_360.0 + r2 / 156.0))))));
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// `ln Γ(x)` for `x > 0`, no argument checks.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        return ln_gamma_pos(x + 1.0) - x.ln();
    }
    if x < 1.5 {
        return ln_gamma_1p(x - 1.0);
    }
    if x >= 15.0 {
        return stirling(x);
    }
    // shift down into [1.5, 2.5) where ln Γ(2 + ε) = ln(1 + ε) + ln Γ(1 + ε)
    let mut shifted = x;
    let mut prod = 1.0;
    while shifted >= 2.5 {
        shifted -= 1.0;
        prod *= shifted;
    }
    let eps = shifted - 2.0;
    eps.ln_1p() + ln_gamma_1p(eps) + prod.ln()
}

/// Natural logarithm of the gamma function for positive arguments.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_finite("log_gamma argument", x)?;
    if x <= 0.0 {
        return domain(format!("log_gamma requires x > 0, got {x}"));
    }
    Ok(ln_gamma_pos(x))
}

/// `sin(πx)` with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

pub(crate) fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(ln |Γ(x)|, sign Γ(x))` for any real non-pole `x`.
pub(crate) fn ln_abs_gamma(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma_pos(x), 1.0);
    }
    let s = sin_pi(x);
    let lg = PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x);
    (lg, s.signum())
}

/// Gamma function for real arguments. Poles yield an error.
pub fn gamma(x: f64) -> Result<f64> {
    check_finite("gamma argument", x)?;
    if is_pole(x) {
        return Err(Error::Pole {
            side: RatioSide::Numerator,
            index: 0,
            value: x,
        });
    }
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x > 0.0 && x < 20.0 && x == x.round() {
        let mut f = 1.0;
        for k in 2..(x as u32) {
            f *= k as f64;
        }
        return f;
    }
    let (lg, s) = ln_abs_gamma(x);
    s * lg.exp()
}

/// Reciprocal gamma, which is entire: zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_pole(x) {
        return 0.0;
    }
    let (lg, s) = ln_abs_gamma(x);
    s * (-lg).exp()
}

/// Digamma ψ(x) for real non-pole arguments.
pub fn digamma(x: f64) -> f64 {
    if is_pole(x) {
        return f64::NAN;
    }
    if x < 0.0 {
        // ψ(1 − x) − ψ(x) = π cot(πx)
        let c = (PI * x).cos();
        return digamma(1.0 - x) - PI * c / sin_pi(x);
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 20.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let r2 = 1.0 / (y * y);
    let tail = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0 - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0)))));
    acc + y.ln() - 0.5 / y - tail
}

/// The bracket `Γ[num₁, num₂, …; den₁, den₂, …] = ∏Γ(numᵢ) / ∏Γ(denⱼ)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GammaRatio {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl GammaRatio {
    pub fn new(numerator: impl Into<Vec<f64>>, denominator: impl Into<Vec<f64>>) -> Self {
        Self {
            numerator: numerator.into(),
            denominator: denominator.into(),
        }
    }

    /// Signed logarithm of the ratio: `Some((ln|r|, sign))`, or `None` when the
    /// ratio vanishes because of a denominator pole.
    pub fn ln_abs(&self) -> Result<Option<(f64, f64)>> {
        for &v in self.numerator.iter().chain(&self.denominator) {
            check_finite("gamma ratio argument", v)?;
        }
        // identical arguments cancel exactly, poles included
        let mut used = vec![false; self.denominator.len()];
        let mut live_num = Vec::with_capacity(self.numerator.len());
        for (i, &a) in self.numerator.iter().enumerate() {
            match (0..self.denominator.len()).find(|&j| !used[j] && self.denominator[j] == a) {
                Some(j) => used[j] = true,
                None => live_num.push((i, a)),
            }
        }
        if let Some(&(index, value)) = live_num.iter().find(|(_, a)| is_pole(*a)) {
            return Err(Error::Pole {
                side: RatioSide::Numerator,
                index,
                value,
            });
        }
        let live_den: Vec<f64> = self
            .denominator
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(&d, _)| d)
            .collect();
        if live_den.iter().any(|&d| is_pole(d)) {
            return Ok(None);
        }
        let mut ln = 0.0;
        let mut sign = 1.0;
        for &(_, a) in &live_num {
            let (l, s) = ln_abs_gamma(a);
            ln += l;
            sign *= s;
        }
        for &d in &live_den {
            let (l, s) = ln_abs_gamma(d);
            ln -= l;
            sign *= s;
        }
        Ok(Some((ln, sign)))
    }

    pub fn value(&self) -> Result<f64> {
        Ok(match self.ln_abs()? {
            Some((ln, sign)) if ln == 0.0 => sign,
            Some((ln, sign)) => sign * ln.exp(),
            None => 0.0,
        })
    }
}

/// Evaluate `Γ[num; den]`.
pub fn gamma_ratio(r: &GammaRatio) -> Result<f64> {
    r.value()
}
