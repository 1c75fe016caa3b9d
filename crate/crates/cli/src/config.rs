//! Job configuration: an optional TOML or JSON file overlaid with command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use fracbessel::transforms::HankelForm;
use fracbessel::{KernelMethod, OperatorParams, QuadSpec, Variant};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionConfig {
    #[serde(default = "default_function")]
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl Default for FunctionConfig {
    fn default() -> Self {
        Self { name: default_function(), params: BTreeMap::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    #[serde(default = "default_points")]
    pub n_points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self { x_min: 0.5, x_max: 2.0, n_points: 4 }
    }
}

impl Grid {
    /// Evenly spaced points; a single point sits at `x_min`.
    pub fn points(&self) -> Vec<f64> {
        if self.n_points == 1 {
            return vec![self.x_min];
        }
        let step = (self.x_max - self.x_min) / (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|i| if i + 1 == self.n_points { self.x_max } else { self.x_min + step * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadConfig {
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: default_abs_tol(), rel_tol: default_rel_tol() }
    }
}

/// Parameters used only by some commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    /// Second order of the group-law check.
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Mellin points.
    #[serde(default = "default_s")]
    pub s: Vec<f64>,
    /// Hankel points.
    #[serde(default = "default_xi")]
    pub xi: Vec<f64>,
    #[serde(default)]
    pub hankel_form: HankelForm,
    /// Second kernel argument for `kernel`.
    #[serde(default)]
    pub y: Option<f64>,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Neumann-series length of the resolvent.
    #[serde(default = "default_terms")]
    pub terms: usize,
    /// Number of Taylor terms.
    #[serde(default = "default_k")]
    pub k: usize,
    /// Overrides each check's own relative tolerance.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        serde_json::from_value(Value::Object(Map::new())).expect("every field has a default")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default = "default_operator")]
    pub operator: OperatorParams,
    #[serde(default)]
    pub function: FunctionConfig,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub quad: QuadConfig,
    #[serde(default)]
    pub output: OutputFormat,
    #[serde(default)]
    pub method: KernelMethod,
    #[serde(default)]
    pub checks: CheckConfig,
}

fn default_function() -> String {
    "gaussian".into()
}
fn default_points() -> usize {
    1
}
fn default_abs_tol() -> f64 {
    1e-12
}
fn default_rel_tol() -> f64 {
    1e-10
}
fn default_beta() -> f64 {
    0.5
}
fn default_s() -> Vec<f64> {
    vec![1.0, 2.0]
}
fn default_xi() -> Vec<f64> {
    vec![0.5, 1.0, 2.0]
}
fn default_lambda() -> f64 {
    -5.0
}
fn default_terms() -> usize {
    16
}
fn default_k() -> usize {
    2
}
fn default_operator() -> OperatorParams {
    OperatorParams { nu: 0.5, alpha: 0.5, variant: Variant::LeftZero }
}

impl JobConfig {
    pub fn quad_spec(&self) -> QuadSpec {
        QuadSpec::new(self.quad.abs_tol, self.quad.rel_tol)
    }

    pub fn validate(&self) -> Result<()> {
        self.operator.validate().context("operator")?;
        self.quad_spec().validate().context("quad")?;
        let g = &self.grid;
        if !(g.x_min.is_finite() && g.x_max.is_finite()) {
            bail!("grid bounds must be finite");
        }
        if g.x_min > g.x_max {
            bail!("grid x_min = {} exceeds x_max = {}", g.x_min, g.x_max);
        }
        if g.n_points == 0 {
            bail!("grid needs n_points >= 1");
        }
        let v = self.operator.variant;
        for x in [g.x_min, g.x_max] {
            if !v.contains(x) {
                let (lo, hi) = v.domain();
                bail!("grid point {x} lies outside the domain ({lo}, {hi}) of {v:?}");
            }
        }
        let c = &self.checks;
        if c.s.is_empty() || c.xi.is_empty() {
            bail!("checks.s and checks.xi must not be empty");
        }
        if c.xi.iter().any(|&xi| !(xi > 0.0 && xi.is_finite())) {
            bail!("Hankel points must be positive");
        }
        if c.k == 0 || c.terms == 0 {
            bail!("checks.k and checks.terms must be >= 1");
        }
        if let Some(t) = c.tolerance {
            if !(t > 0.0) {
                bail!("checks.tolerance must be positive");
            }
        }
        Ok(())
    }
}

/// Flags shared by every subcommand; each one overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// TOML or JSON job file.
    #[arg(long, short)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Operator index nu.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Order alpha of the fractional integral.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// right_finite, left_finite, right_infinite or left_zero.
    #[arg(long)]
    pub variant: Option<String>,
    /// b for right_finite, a for left_finite.
    #[arg(long)]
    pub endpoint: Option<f64>,
    /// Test function name (see `fracbessel --help`).
    #[arg(long)]
    pub function: Option<String>,
    /// Test function parameter as NAME=VALUE; repeatable.
    #[arg(long = "param", value_parser = parse_param, allow_negative_numbers = true)]
    pub params: Vec<(String, f64)>,
    /// Lower grid end; alone it gives a single point.
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    /// Upper grid end.
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    /// Number of equally spaced grid points.
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Report format.
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    /// hypergeometric or legendre.
    #[arg(long)]
    pub method: Option<String>,
    /// Second order for group-check.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Mellin arguments, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<f64>>,
    /// Hankel arguments, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub xi: Option<Vec<f64>>,
    /// consistent or literal.
    #[arg(long)]
    pub hankel_form: Option<String>,
    /// Second kernel argument.
    #[arg(long)]
    pub y: Option<f64>,
    /// Resolvent parameter lambda.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Neumann terms for the resolvent oracle.
    #[arg(long)]
    pub terms: Option<usize>,
    /// Number of Taylor terms.
    #[arg(long)]
    pub k: Option<usize>,
    /// Relative tolerance for identity checks (default per check).
    #[arg(long)]
    pub tolerance: Option<f64>,
}

fn parse_param(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let v = v.trim().parse::<f64>().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn read_file(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
        Some("toml") => toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
        _ => bail!("{}: config files must end in .toml or .json", path.display()),
    };
    if !value.is_object() {
        bail!("{}: top level must be a table", path.display());
    }
    Ok(value)
}

fn set(root: &mut Value, path: &[&str], v: Value) {
    let mut node = root;
    for key in &path[..path.len() - 1] {
        let map = node.as_object_mut().expect("config nodes are tables");
        node = map.entry(key.to_string()).or_insert_with(|| Value::Object(Map::new()));
        if !node.is_object() {
            *node = Value::Object(Map::new());
        }
    }
    node.as_object_mut()
        .expect("config nodes are tables")
        .insert(path[path.len() - 1].to_string(), v);
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

impl JobArgs {
    /// Merge the file (if any) with the flags and validate the result.
    pub fn resolve(&self) -> Result<JobConfig> {
        let mut root = match &self.config {
            Some(path) => read_file(path)?,
            None => Value::Object(Map::new()),
        };
        let Value::Object(defaults) = serde_json::to_value(default_operator())? else {
            unreachable!("operator params serialize to a table")
        };
        for (key, v) in defaults {
            if root.pointer(&format!("/operator/{key}")).is_none() {
                set(&mut root, &["operator", &key], v);
            }
        }
        let scalars = [
            (&["operator", "nu"][..], self.nu),
            (&["operator", "alpha"], self.alpha),
            (&["grid", "x_min"], self.x_min),
            (&["grid", "x_max"], self.x_max),
            (&["quad", "abs_tol"], self.abs_tol),
            (&["quad", "rel_tol"], self.rel_tol),
            (&["checks", "beta"], self.beta),
            (&["checks", "y"], self.y),
            (&["checks", "lambda"], self.lambda),
            (&["checks", "tolerance"], self.tolerance),
        ];
        for (path, v) in scalars {
            if let Some(v) = v {
                set(&mut root, path, num(v));
            }
        }
        if self.x_min.is_some() != self.x_max.is_some() && root.pointer("/grid/x_max").is_none() {
            let only = self.x_min.or(self.x_max).expect("one bound is set");
            set(&mut root, &["grid", "x_min"], num(only));
            set(&mut root, &["grid", "x_max"], num(only));
        }
        for (path, v) in [(&["grid", "n_points"][..], self.n_points), (&["checks", "terms"], self.terms), (&["checks", "k"], self.k)] {
            if let Some(v) = v {
                set(&mut root, path, Value::from(v));
            }
        }
        if let Some(kind) = &self.variant {
            set(&mut root, &["operator", "variant"], Value::Object(Map::from_iter([("kind".into(), Value::from(kind.as_str()))])));
        }
        if let Some(e) = self.endpoint {
            let field = match root.pointer("/operator/variant/kind").and_then(Value::as_str) {
                Some("right_finite") => "b",
                Some("left_finite") => "a",
                other => bail!("--endpoint needs a finite variant, got {other:?}"),
            };
            set(&mut root, &["operator", "variant", field], num(e));
        }
        if let Some(name) = &self.function {
            set(&mut root, &["function", "name"], Value::from(name.as_str()));
        }
        for (k, v) in &self.params {
            set(&mut root, &["function", "params", k], num(*v));
        }
        if let Some(o) = self.output {
            set(&mut root, &["output"], serde_json::to_value(o)?);
        }
        if let Some(m) = &self.method {
            set(&mut root, &["method"], Value::from(m.as_str()));
        }
        if let Some(f) = &self.hankel_form {
            set(&mut root, &["checks", "hankel_form"], Value::from(f.as_str()));
        }
        if let Some(s) = &self.s {
            set(&mut root, &["checks", "s"], Value::from_iter(s.iter().map(|&v| num(v))));
        }
        if let Some(xi) = &self.xi {
            set(&mut root, &["checks", "xi"], Value::from_iter(xi.iter().map(|&v| num(v))));
        }
        let config: JobConfig = serde_json::from_value(root).context("invalid configuration")?;
        config.validate()?;
        Ok(config)
    }
}
