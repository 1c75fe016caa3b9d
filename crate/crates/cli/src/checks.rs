//! Identity checks selectable by name; `suite` runs every applicable one.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use anyhow::{bail, Result};
use fracbessel::besselfrac::operator_image;
use fracbessel::taylor::{taylor_remainder_bessel, taylor_sum_bessel, TaylorData};
use fracbessel::transforms::{hankel_identity, mellin_identity, IdentitySides};
use fracbessel::{frac_integral, Decay, OperatorParams, PowerPolynomial, SampleFunction, Variant};
use rayon::prelude::*;

use crate::report::CheckRecord;
use crate::run::{settle, Job};

/// One identity, compared at the points the job configures.
pub trait IdentityCheck: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Default relative tolerance of a passing comparison.
    fn tolerance(&self) -> f64;

    /// Why the check cannot run on this job, if it cannot.
    fn requirement(&self, job: &Job) -> Result<()>;

    fn run(&self, job: &Job, tol: f64) -> Result<Vec<CheckRecord>>;
}

fn sides(identity: String, s: fracbessel::Result<IdentitySides>, tol: f64) -> Result<CheckRecord> {
    let failed = identity.clone();
    settle(
        s.map(|s| CheckRecord::compare(identity, s.lhs.value, s.rhs.value, s.lhs.converged && s.rhs.converged, tol)),
        || CheckRecord::failed(failed),
    )
}

fn needs_fast_decay(f: &SampleFunction) -> Result<()> {
    match f.decay() {
        Decay::Exponential | Decay::Compact(_) => Ok(()),
        d => bail!("{} must decay exponentially or have compact support, has {d:?}", f.name()),
    }
}

struct Mellin;

impl IdentityCheck for Mellin {
    fn name(&self) -> &'static str {
        "mellin"
    }
    fn summary(&self) -> &'static str {
        "Mellin transform of the right-infinite integral against the gamma-ratio symbol, at each s"
    }
    fn tolerance(&self) -> f64 {
        1e-5
    }
    fn requirement(&self, job: &Job) -> Result<()> {
        needs_fast_decay(&job.f)?;
        let nu = job.config.operator.nu;
        if let Some(s) = job.config.checks.s.iter().find(|&&s| !(s > nu - 1.0)) {
            bail!("Mellin point s = {s} needs s > nu - 1 = {}", nu - 1.0);
        }
        Ok(())
    }
    fn run(&self, job: &Job, tol: f64) -> Result<Vec<CheckRecord>> {
        let OperatorParams { nu, alpha, .. } = job.config.operator;
        job.config
            .checks
            .s
            .par_iter()
            .map(|&s| sides(format!("mellin s={s}"), mellin_identity(nu, alpha, &job.f, s, &job.spec, job.config.method), tol))
            .collect()
    }
}

struct GroupLaw;

impl IdentityCheck for GroupLaw {
    fn name(&self) -> &'static str {
        "group"
    }
    fn summary(&self) -> &'static str {
        "B^-alpha B^-beta f against B^-(alpha+beta) f on the grid"
    }
    fn tolerance(&self) -> f64 {
        1e-6
    }
    fn requirement(&self, job: &Job) -> Result<()> {
        match job.config.operator.variant {
            Variant::LeftZero | Variant::RightInfinite => Ok(()),
            v => bail!("the group law is checked for left_zero and right_infinite only, got {v:?}"),
        }
    }
    fn run(&self, job: &Job, tol: f64) -> Result<Vec<CheckRecord>> {
        let OperatorParams { nu, alpha, variant } = job.config.operator;
        let beta = job.config.checks.beta;
        let method = job.config.method;
        let inner = operator_image(OperatorParams::new(nu, beta, variant)?, job.f.clone(), job.spec, method);
        let outer = OperatorParams::new(nu, alpha, variant)?;
        let whole = OperatorParams::new(nu, alpha + beta, variant)?;
        job.points()
            .par_iter()
            .map(|&x| {
                let id = format!("group x={x}");
                let pair = frac_integral(&outer, &inner, x, &job.spec, method).and_then(|l| {
                    frac_integral(&whole, &job.f, x, &job.spec, method).map(|r| (l, r))
                });
                settle(
                    pair.map(|(l, r)| CheckRecord::compare(id.clone(), l.value, r.value, l.converged && r.converged, tol)),
                    || CheckRecord::failed(id.clone()),
                )
            })
            .collect()
    }
}

struct LeftInverse;

impl LeftInverse {
    /// `g` with `g` and `g'` vanishing at the finite endpoint, or the job's function otherwise.
    fn subject(job: &Job) -> Result<SampleFunction> {
        let square = |e: f64| {
            let e2 = e * e;
            SampleFunction::polynomial(PowerPolynomial::new([(e2 * e2, 0.0), (-2.0 * e2, 2.0), (1.0, 4.0)]))
                .named(format!("(x^2 - {e2})^2"))
        };
        Ok(match job.config.operator.variant {
            Variant::RightFinite { b } => square(b),
            Variant::LeftFinite { a } => square(a),
            _ => job.f.clone(),
        })
    }
}

impl IdentityCheck for LeftInverse {
    fn name(&self) -> &'static str {
        "inverse"
    }
    fn summary(&self) -> &'static str {
        "B^-1 (B_nu g) against g; finite variants use (x^2 - e^2)^2 for the endpoint e"
    }
    fn tolerance(&self) -> f64 {
        1e-7
    }
    fn requirement(&self, job: &Job) -> Result<()> {
        let g = Self::subject(job)?;
        if g.bessel_image(job.config.operator.nu, 1).is_none() {
            bail!("{} has no closed-form Bessel image", g.name());
        }
        Ok(())
    }
    fn run(&self, job: &Job, tol: f64) -> Result<Vec<CheckRecord>> {
        let OperatorParams { nu, variant, .. } = job.config.operator;
        let g = Self::subject(job)?;
        let Some(bg) = g.bessel_image(nu, 1) else {
            bail!("{} has no closed-form Bessel image", g.name());
        };
        let p = OperatorParams::new(nu, 1.0, variant)?;
        job.points()
            .par_iter()
            .map(|&x| {
                let id = format!("inverse x={x}");
                settle(
                    frac_integral(&p, &bg, x, &job.spec, job.config.method)
                        .map(|r| CheckRecord::compare(id.clone(), r.value, g.eval(x), r.converged, tol)),
                    || CheckRecord::failed(id.clone()),
                )
            })
            .collect()
    }
}

struct Hankel;

impl IdentityCheck for Hankel {
    fn name(&self) -> &'static str {
        "hankel"
    }
    fn summary(&self) -> &'static str {
        "Hankel transform of the right-infinite integral against the Wright-kernel transform, at each xi"
    }
    fn tolerance(&self) -> f64 {
        1e-4
    }
    fn requirement(&self, job: &Job) -> Result<()> {
        needs_fast_decay(&job.f)
    }
    fn run(&self, job: &Job, tol: f64) -> Result<Vec<CheckRecord>> {
        let OperatorParams { nu, alpha, .. } = job.config.operator;
        let form = job.config.checks.hankel_form;
        job.config
            .checks
            .xi
            .par_iter()
            .map(|&xi| {
                let s = hankel_identity(nu, alpha, &job.f, xi, form, &job.spec, job.config.method);
                sides(format!("hankel xi={xi}"), s, tol)
            })
            .collect()
    }
}

struct Taylor;

impl IdentityCheck for Taylor {
    fn name(&self) -> &'static str {
        "taylor"
    }
    fn summary(&self) -> &'static str {
        "k-term Bessel Taylor formula at b plus its integral remainder against f"
    }
    fn tolerance(&self) -> f64 {
        1e-7
    }
    fn requirement(&self, job: &Job) -> Result<()> {
        let Variant::RightFinite { .. } = job.config.operator.variant else {
            bail!("the Taylor formula expands about b and needs the right_finite variant");
        };
        if job.f.bessel_image(job.config.operator.nu, job.config.checks.k).is_none() {
            bail!("{} has no closed-form Bessel images", job.f.name());
        }
        Ok(())
    }
    fn run(&self, job: &Job, tol: f64) -> Result<Vec<CheckRecord>> {
        self.requirement(job)?;
        let Variant::RightFinite { b } = job.config.operator.variant else {
            unreachable!("checked by requirement")
        };
        let nu = job.config.operator.nu;
        let k = job.config.checks.k;
        let data = TaylorData::bessel_from_sample(nu, b, k, &job.f)?;
        let bk = job.f.bessel_image(nu, k).expect("checked by requirement");
        job.points()
            .par_iter()
            .map(|&x| {
                let id = format!("taylor x={x}");
                let total = taylor_sum_bessel(&data, x).and_then(|sum| {
                    taylor_remainder_bessel(nu, b, k, &bk, x, &job.spec).map(|r| (sum + r.value, r.converged))
                });
                settle(
                    total.map(|(t, ok)| CheckRecord::compare(id.clone(), t, job.f.eval(x), ok, tol)),
                    || CheckRecord::failed(id.clone()),
                )
            })
            .collect()
    }
}

/// Identity checks keyed by name.
#[derive(Default)]
pub struct CheckRegistry {
    entries: BTreeMap<&'static str, Box<dyn IdentityCheck>>,
}

impl CheckRegistry {
    pub fn with_builtins() -> Self {
        let mut r = Self::default();
        r.register(Box::new(Mellin));
        r.register(Box::new(GroupLaw));
        r.register(Box::new(LeftInverse));
        r.register(Box::new(Hankel));
        r.register(Box::new(Taylor));
        r
    }

    pub fn register(&mut self, check: Box<dyn IdentityCheck>) {
        self.entries.insert(check.name(), check);
    }

    pub fn get(&self, name: &str) -> Option<&dyn IdentityCheck> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn IdentityCheck> + '_ {
        self.entries.values().map(|b| b.as_ref())
    }
}

pub fn builtin_checks() -> &'static CheckRegistry {
    static REGISTRY: OnceLock<CheckRegistry> = OnceLock::new();
    REGISTRY.get_or_init(CheckRegistry::with_builtins)
}

/// Run one check, or fail with the reason it does not apply.
pub fn run_check(check: &dyn IdentityCheck, job: &Job) -> Result<Vec<CheckRecord>> {
    check.requirement(job)?;
    check.run(job, job.config.checks.tolerance.unwrap_or(check.tolerance()))
}

/// Every registered check that applies, in name order; skipped ones are reported on stderr.
pub fn run_suite(job: &Job) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    for check in builtin_checks().iter() {
        match check.requirement(job) {
            Ok(()) => records.extend(run_check(check, job)?),
            Err(e) => eprintln!("skipping {}: {e:#}", check.name()),
        }
    }
    if records.is_empty() {
        bail!("no check applies to this configuration");
    }
    Ok(records)
}
