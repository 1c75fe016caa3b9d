//! Named test functions selectable from the command line.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use anyhow::{bail, Result};
use fracbessel::SampleFunction;

use crate::config::FunctionConfig;

/// A family of sample functions with named real parameters.
pub trait TestFunction: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Parameter names with their defaults.
    fn params(&self) -> &'static [(&'static str, f64)];

    /// Build the function; `nu` is the operator's `ν` for families that depend on it.
    fn build(&self, params: &BTreeMap<String, f64>, nu: f64) -> Result<SampleFunction>;
}

struct Constant;
struct Power;
struct Gaussian;
struct Exponential;
struct BesselProfile;

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        bail!("parameter {name} must be positive, got {v}")
    }
}

impl TestFunction for Constant {
    fn name(&self) -> &'static str {
        "constant"
    }
    fn summary(&self) -> &'static str {
        "f(x) = c"
    }
    fn params(&self) -> &'static [(&'static str, f64)] {
        &[("c", 1.0)]
    }
    fn build(&self, p: &BTreeMap<String, f64>, _: f64) -> Result<SampleFunction> {
        Ok(SampleFunction::constant(p["c"]))
    }
}

impl TestFunction for Power {
    fn name(&self) -> &'static str {
        "power"
    }
    fn summary(&self) -> &'static str {
        "f(x) = x^m"
    }
    fn params(&self) -> &'static [(&'static str, f64)] {
        &[("m", 1.0)]
    }
    fn build(&self, p: &BTreeMap<String, f64>, _: f64) -> Result<SampleFunction> {
        Ok(SampleFunction::power(p["m"]))
    }
}

impl TestFunction for Gaussian {
    fn name(&self) -> &'static str {
        "gaussian"
    }
    fn summary(&self) -> &'static str {
        "f(x) = exp(-c x^2)"
    }
    fn params(&self) -> &'static [(&'static str, f64)] {
        &[("c", 1.0)]
    }
    fn build(&self, p: &BTreeMap<String, f64>, _: f64) -> Result<SampleFunction> {
        Ok(SampleFunction::gaussian(positive("c", p["c"])?))
    }
}

impl TestFunction for Exponential {
    fn name(&self) -> &'static str {
        "exponential"
    }
    fn summary(&self) -> &'static str {
        "f(x) = exp(-c x)"
    }
    fn params(&self) -> &'static [(&'static str, f64)] {
        &[("c", 1.0)]
    }
    fn build(&self, p: &BTreeMap<String, f64>, _: f64) -> Result<SampleFunction> {
        Ok(SampleFunction::exponential(positive("c", p["c"])?))
    }
}

impl TestFunction for BesselProfile {
    fn name(&self) -> &'static str {
        "bessel-profile"
    }
    fn summary(&self) -> &'static str {
        "f(y) = y^((1-nu)/2) J_((nu-1)/2)(y xi), nu taken from the operator"
    }
    fn params(&self) -> &'static [(&'static str, f64)] {
        &[("xi", 1.0)]
    }
    fn build(&self, p: &BTreeMap<String, f64>, nu: f64) -> Result<SampleFunction> {
        Ok(SampleFunction::bessel_profile(nu, positive("xi", p["xi"])?))
    }
}

/// Test functions keyed by name.
#[derive(Default)]
pub struct FunctionRegistry {
    entries: BTreeMap<&'static str, Box<dyn TestFunction>>,
}

impl FunctionRegistry {
    pub fn with_builtins() -> Self {
        let mut r = Self::default();
        r.register(Box::new(Constant));
        r.register(Box::new(Power));
        r.register(Box::new(Gaussian));
        r.register(Box::new(Exponential));
        r.register(Box::new(BesselProfile));
        r
    }

    pub fn register(&mut self, f: Box<dyn TestFunction>) {
        self.entries.insert(f.name(), f);
    }

    pub fn get(&self, name: &str) -> Option<&dyn TestFunction> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn TestFunction> + '_ {
        self.entries.values().map(|b| b.as_ref())
    }

    /// Resolve a configured function: unknown names or parameters are errors,
    /// missing parameters take their defaults.
    pub fn build(&self, cfg: &FunctionConfig, nu: f64) -> Result<SampleFunction> {
        let Some(f) = self.get(&cfg.name) else {
            let known: Vec<_> = self.entries.keys().copied().collect();
            bail!("unknown function {:?}; known: {}", cfg.name, known.join(", "));
        };
        let mut params: BTreeMap<String, f64> = f.params().iter().map(|&(k, v)| (k.to_string(), v)).collect();
        for (k, &v) in &cfg.params {
            if !params.contains_key(k) {
                bail!("function {} has no parameter {k:?}", f.name());
            }
            if !v.is_finite() {
                bail!("parameter {k} must be finite");
            }
            params.insert(k.clone(), v);
        }
        f.build(&params, nu)
    }
}

pub fn builtin_functions() -> &'static FunctionRegistry {
    static REGISTRY: OnceLock<FunctionRegistry> = OnceLock::new();
    REGISTRY.get_or_init(FunctionRegistry::with_builtins)
}

/// One line per registered function, for help output.
pub fn catalogue() -> String {
    builtin_functions()
        .iter()
        .map(|f| {
            let params: Vec<_> = f.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("  {:<15} {} ({})", f.name(), f.summary(), params.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
