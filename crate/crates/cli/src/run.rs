//! Resolved jobs and the point-evaluation commands.

use anyhow::{bail, Result};
use fracbessel::resolvent::{resolvent_apply, ResolventParams};
use fracbessel::{frac_integral, kernel_value, EvalResult, Error, QuadSpec, SampleFunction};
use rayon::prelude::*;

use crate::config::JobConfig;
use crate::functions::builtin_functions;
use crate::report::PointRecord;

/// A validated configuration with its test function built.
pub struct Job {
    pub config: JobConfig,
    pub f: SampleFunction,
    pub spec: QuadSpec,
}

impl Job {
    pub fn new(config: JobConfig) -> Result<Self> {
        let f = builtin_functions().build(&config.function, config.operator.nu)?;
        let spec = config.quad_spec();
        Ok(Self { config, f, spec })
    }

    pub fn points(&self) -> Vec<f64> {
        self.config.grid.points()
    }
}

/// Domain and metadata errors describe the configuration and are returned;
/// anything else is a numeric failure and becomes the `failed` record.
pub fn settle<T>(r: fracbessel::Result<T>, failed: impl FnOnce() -> T) -> Result<T> {
    match r {
        Ok(v) => Ok(v),
        Err(e @ (Error::Domain(_) | Error::Metadata(_))) => Err(e.into()),
        Err(e) => {
            eprintln!("numeric failure: {e}");
            Ok(failed())
        }
    }
}

fn on_grid(job: &Job, eval: impl Fn(f64) -> fracbessel::Result<EvalResult> + Sync) -> Result<Vec<PointRecord>> {
    job.points()
        .par_iter()
        .map(|&x| settle(eval(x).map(|r| PointRecord::new(x, r)), || PointRecord::failed(x)))
        .collect()
}

/// `B^{-α} f` on the grid.
pub fn eval(job: &Job) -> Result<Vec<PointRecord>> {
    let p = job.config.operator;
    on_grid(job, |x| frac_integral(&p, &job.f, x, &job.spec, job.config.method))
}

/// The kernel at `(x, y)` for each grid `x` and the configured `y`.
pub fn kernel(job: &Job) -> Result<Vec<PointRecord>> {
    let Some(y) = job.config.checks.y else {
        bail!("kernel needs the second argument y (--y or checks.y)");
    };
    let p = job.config.operator;
    on_grid(job, |x| {
        kernel_value(&p, x, y, job.config.method).map(|v| EvalResult { evaluations: 1, ..EvalResult::exact(v) })
    })
}

/// `(B^{-α}_− − λ)^{-1} f` on the grid; the variant is always right-infinite.
pub fn resolvent(job: &Job) -> Result<Vec<PointRecord>> {
    let c = &job.config;
    let p = ResolventParams::new(c.operator.nu, c.operator.alpha, c.checks.lambda, c.checks.terms)?;
    on_grid(job, |x| resolvent_apply(&p, &job.f, x, &job.spec))
}
