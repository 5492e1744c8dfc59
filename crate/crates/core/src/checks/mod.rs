//! Named verification checks behind one trait, selected at run time.

mod builtin;

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::scalar::serde_str;
use crate::stages::ConstructionPlan;

pub use builtin::{
    CrossedProductCheck, EquivarianceCheck, FellAbsorptionCheck, FixedPointCheck, IrrepCheck, OuternessCheck,
    RankLedgerCheck, RcTableCheck, SequenceCheck, CROSSED_FIBER_CAP, CROSSED_SAMPLE_DENSITY,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub detail: serde_json::Value,
}

impl Outcome {
    pub fn from_bool(ok: bool, detail: serde_json::Value) -> Self {
        Self {
            status: if ok { Status::Pass } else { Status::Fail },
            reason: None,
            detail,
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Self {
            status: Status::Skipped,
            reason: Some(reason.into()),
            detail: serde_json::Value::Null,
        }
    }
}

/// Inputs shared by every check.
pub struct CheckContext<'a> {
    pub plan: &'a ConstructionPlan,
    pub seed: u64,
    /// Random functions per stage for the equivariance check.
    pub trials: usize,
    /// Sample points or random elements per check.
    pub samples: usize,
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn run(&self, ctx: &CheckContext) -> Result<Outcome>;
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub group: String,
    #[serde(with = "serde_str::rational")]
    pub eta: num_rational::BigRational,
    pub stages: usize,
    pub matrix_cap: usize,
    pub seed: u64,
    pub trials: usize,
    pub samples: usize,
    pub verdicts: Vec<Verdict>,
    /// No check failed. Skipped checks are listed with their reason.
    pub passed: bool,
}

pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut r = Self { checks: Vec::new() };
        r.register(Box::new(SequenceCheck));
        r.register(Box::new(IrrepCheck));
        r.register(Box::new(FellAbsorptionCheck));
        r.register(Box::new(EquivarianceCheck));
        r.register(Box::new(RankLedgerCheck));
        r.register(Box::new(OuternessCheck));
        r.register(Box::new(CrossedProductCheck));
        r.register(Box::new(FixedPointCheck));
        r.register(Box::new(RcTableCheck));
        r
    }
}

impl CheckRegistry {
    pub fn empty() -> Self {
        Self { checks: Vec::new() }
    }

    /// A later registration under an existing name replaces it.
    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.retain(|c| c.name() != check.name());
        self.checks.push(check);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn run_one(check: &dyn Check, ctx: &CheckContext, timing: bool) -> Verdict {
        let start = Instant::now();
        let outcome = check.run(ctx).unwrap_or_else(|e| Outcome {
            status: Status::Fail,
            reason: Some(e.to_string()),
            detail: serde_json::Value::Null,
        });
        Verdict {
            name: check.name(),
            outcome,
            elapsed_ms: timing.then(|| start.elapsed().as_millis()),
        }
    }

    /// Runs the named checks, or all of them when `only` is empty.
    pub fn run(&self, ctx: &CheckContext, only: &[String], timing: bool) -> Result<SuiteReport> {
        for name in only {
            if self.get(name).is_none() {
                return Err(crate::Error::OutOfRange(format!(
                    "unknown check `{name}`; known: {}",
                    self.names().join(", ")
                )));
            }
        }
        let verdicts: Vec<Verdict> = self
            .checks
            .iter()
            .filter(|c| only.is_empty() || only.iter().any(|n| n == c.name()))
            .map(|c| Self::run_one(c.as_ref(), ctx, timing))
            .collect();
        let plan = ctx.plan;
        Ok(SuiteReport {
            group: plan.group().name().to_string(),
            eta: plan.eta().clone(),
            stages: plan.stage_count(),
            matrix_cap: plan.matrix_cap(),
            seed: ctx.seed,
            trials: ctx.trials,
            samples: ctx.samples,
            passed: verdicts.iter().all(|v| v.outcome.status != Status::Fail),
            verdicts,
        })
    }
}
