//! Kernels of the fractional Bessel integrals as interchangeable strategies.
//!
//! A [`KernelStrategy`] returns the full weight multiplying `f(y)`, prefactor
//! included, so that every registered strategy must produce the same numbers.
//! Strategies are registered by name in a [`KernelRegistry`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::{hyp2f1_near_one, hyp2f1_split, legendre_p_scaled, rgamma};

/// Which side of `x` the integration variable lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSide {
    /// `y > x` (the `b−` and `−` variants).
    Right,
    /// `y < x` (the `a+` and `0+` variants).
    Left,
}

/// One way of evaluating the kernel.
pub trait KernelStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// Weight at `(x, y)`. `gap = |y − x| > 0` is passed separately so that
    /// callers near the diagonal can supply it without cancellation.
    fn weight(&self, nu: f64, alpha: f64, side: KernelSide, x: f64, y: f64, gap: f64) -> Result<f64>;
}

/// `((y²−x²)/(2y))^{2α−1} ₂F₁(α+(ν−1)/2, α; 2α; 1−x²/y²) / Γ(2α)` on the right
/// and `(y/x)^ν ((x²−y²)/(2x))^{2α−1} ₂F₁(…; 1−y²/x²) / Γ(2α)` on the left.
pub struct Hypergeometric;

impl KernelStrategy for Hypergeometric {
    fn name(&self) -> &'static str {
        "hypergeometric"
    }

    fn weight(&self, nu: f64, alpha: f64, side: KernelSide, x: f64, y: f64, gap: f64) -> Result<f64> {
        let a = alpha + 0.5 * (nu - 1.0);
        let c = 2.0 * alpha;
        let sum = x + y;
        let (outer, near, far_exponent) = match side {
            KernelSide::Right => (y, x, 0.0),
            KernelSide::Left => (x, y, nu),
        };
        let ratio = near / outer;
        // z = 1 − near²/outer², w = near²/outer²
        let w = ratio * ratio;
        // (outer² − near²) / (2·outer), with gap last so subnormal gaps survive
        let base = (0.5 * sum / outer) * gap;
        if w < f64::MIN_POSITIVE {
            let ln_ratio = near.ln() - outer.ln();
            let (v, l) = hyp2f1_near_one(a, alpha, c, 2.0 * ln_ratio)?;
            let ln_rest = l + far_exponent * ln_ratio + (c - 1.0) * base.ln();
            return Ok(v * rgamma(c) * ln_rest.exp());
        }
        let z = (gap / outer) * (sum / outer);
        let f = hyp2f1_split(a, alpha, c, z, w)?;
        Ok(ratio.powf(far_exponent) * base.powf(c - 1.0) * f * rgamma(c))
    }
}

/// `√π / (2^{2α−1} Γ(α)) · |y²−x²|^{α−1/2} (y/x)^{ν/2} P^{1/2−α}_{ν/2−1}((x/y + y/x)/2)`,
/// the same kernel for both sides.
pub struct Legendre;

impl KernelStrategy for Legendre {
    fn name(&self) -> &'static str {
        "legendre"
    }

    fn weight(&self, nu: f64, alpha: f64, side: KernelSide, x: f64, y: f64, gap: f64) -> Result<f64> {
        let sum = x + y;
        // (z−1)/(z+1) and 2/(z+1) for z = (x/y + y/x)/2
        let w = (gap / sum).powi(2);
        let one_minus_w = 4.0 * (x / sum) * (y / sum);
        if one_minus_w < f64::MIN_POSITIVE {
            // beyond the range of the Legendre argument the shared asymptotics take over
            return Hypergeometric.weight(nu, alpha, side, x, y, gap);
        }
        let p = legendre_p_scaled(0.5 - alpha, 0.5 * nu - 1.0, w, one_minus_w)?;
        let pref = std::f64::consts::PI.sqrt() * (1.0 - 2.0 * alpha).exp2() * rgamma(alpha);
        // (gap·sum)^{α−1/2} · (gap/sum)^{α−1/2} = gap^{2α−1}
        Ok(pref * gap.powf(2.0 * alpha - 1.0) * (y / x).powf(0.5 * nu) * p)
    }
}

/// Kernel strategies keyed by name.
#[derive(Default)]
pub struct KernelRegistry {
    entries: BTreeMap<&'static str, Box<dyn KernelStrategy>>,
}

impl KernelRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::new();
        r.register(Box::new(Hypergeometric));
        r.register(Box::new(Legendre));
        r
    }

    /// Add a strategy, replacing any previous one of the same name.
    pub fn register(&mut self, strategy: Box<dyn KernelStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Option<&dyn KernelStrategy> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

/// Process-wide registry holding the built-in strategies.
pub fn builtin_kernels() -> &'static KernelRegistry {
    static REGISTRY: OnceLock<KernelRegistry> = OnceLock::new();
    REGISTRY.get_or_init(KernelRegistry::with_builtins)
}

/// Selector for the built-in kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMethod {
    #[default]
    Hypergeometric,
    Legendre,
}

impl KernelMethod {
    pub const ALL: [KernelMethod; 2] = [KernelMethod::Hypergeometric, KernelMethod::Legendre];

    pub fn name(self) -> &'static str {
        match self {
            KernelMethod::Hypergeometric => "hypergeometric",
            KernelMethod::Legendre => "legendre",
        }
    }

    pub fn strategy(self) -> &'static dyn KernelStrategy {
        builtin_kernels()
            .get(self.name())
            .expect("built-in kernel strategies are always registered")
    }
}

impl fmt::Display for KernelMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelMethod {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hypergeometric" | "hyp" | "2f1" => Ok(Self::Hypergeometric),
            "legendre" => Ok(Self::Legendre),
            other => domain(format!("unknown kernel method '{other}'")),
        }
    }
}
