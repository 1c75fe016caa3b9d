//! Report records and their CSV and JSON encodings.

use std::io::Write;

use anyhow::Result;
use fracbessel::EvalResult;
use serde::{Deserialize, Serialize};

use crate::config::OutputFormat;

/// Non-finite values are written as JSON `null` and read back as NaN.
mod nullable {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: f64,
    #[serde(with = "nullable")]
    pub value: f64,
    #[serde(with = "nullable")]
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl PointRecord {
    pub fn new(x: f64, r: EvalResult) -> Self {
        Self {
            x,
            value: r.value,
            error_estimate: r.error_estimate,
            evaluations: r.evaluations,
            converged: r.converged && r.value.is_finite(),
        }
    }

    pub fn failed(x: f64) -> Self {
        Self { x, value: f64::NAN, error_estimate: f64::NAN, evaluations: 0, converged: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub identity: String,
    #[serde(with = "nullable")]
    pub lhs: f64,
    #[serde(with = "nullable")]
    pub rhs: f64,
    #[serde(with = "nullable")]
    pub abs_diff: f64,
    #[serde(with = "nullable")]
    pub rel_diff: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Compare two sides; `converged` is false when either side is unreliable.
    pub fn compare(identity: String, lhs: f64, rhs: f64, converged: bool, tol: f64) -> Self {
        let abs_diff = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs());
        let rel_diff = if scale == 0.0 { 0.0 } else { abs_diff / scale };
        Self { identity, lhs, rhs, abs_diff, rel_diff, pass: converged && rel_diff <= tol }
    }

    pub fn failed(identity: String) -> Self {
        Self { identity, lhs: f64::NAN, rhs: f64::NAN, abs_diff: f64::NAN, rel_diff: f64::NAN, pass: false }
    }
}

pub enum Report {
    Points(Vec<PointRecord>),
    Checks(Vec<CheckRecord>),
}

impl Report {
    pub fn success(&self) -> bool {
        match self {
            Report::Points(r) => r.iter().all(|p| p.converged),
            Report::Checks(r) => r.iter().all(|c| c.pass),
        }
    }

    pub fn write(&self, format: OutputFormat, out: impl Write) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => {
                let mut out = out;
                match self {
                    Report::Points(r) => serde_json::to_writer_pretty(&mut out, r)?,
                    Report::Checks(r) => serde_json::to_writer_pretty(&mut out, r)?,
                }
                writeln!(out)?;
                Ok(())
            }
        }
    }

    // `{:?}` gives the shortest round-tripping form, with an exponent for tiny values.
    fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match self {
            Report::Points(records) => {
                w.write_record(["x", "value", "error_estimate", "evaluations", "converged"])?;
                for r in records {
                    w.write_record([
                        format!("{:?}", r.x),
                        format!("{:?}", r.value),
                        format!("{:?}", r.error_estimate),
                        r.evaluations.to_string(),
                        r.converged.to_string(),
                    ])?;
                }
            }
            Report::Checks(records) => {
                w.write_record(["identity", "lhs", "rhs", "abs_diff", "rel_diff", "pass"])?;
                for r in records {
                    w.write_record([
                        r.identity.clone(),
                        format!("{:?}", r.lhs),
                        format!("{:?}", r.rhs),
                        format!("{:?}", r.abs_diff),
                        format!("{:?}", r.rel_diff),
                        r.pass.to_string(),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}
