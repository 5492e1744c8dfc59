use num_bigint::BigInt;
use serde_json::json;

use crate::checks::{Check, CheckContext, Outcome, Status};
use crate::comparison::rc_upper_table;
use crate::crossed::{crossed_report, fixed_point_dimension, InnerAction, FIXED_POINT_UNKNOWN_CAP};
use crate::error::{Error, Result};
use crate::group::{irrep_dimensions, DEFAULT_CLUSTER_TOL};
use crate::linalg::{fell_absorption_unitary, Permutation};
use crate::seq::convergence_report;
use crate::stages::{check_equivariance, outerness_gap, rank_ledger};

/// Largest fiber on which crossed-product identities are sampled.
pub const CROSSED_FIBER_CAP: usize = 16;
/// Probability that an entry of a random crossed element is nonzero.
pub const CROSSED_SAMPLE_DENSITY: f64 = 0.5;

fn cap_reason(n: usize, dim: &BigInt, cap: usize) -> String {
    format!("stage {n}: dimension {dim} exceeds cap {cap}")
}

/// Combines per-stage results: any failure fails, nothing run is SKIPPED.
fn combine(ran: usize, ok: bool, skipped: &[String], detail: serde_json::Value) -> Outcome {
    if ran == 0 {
        return Outcome::skipped(skipped.join("; "));
    }
    Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        reason: (!skipped.is_empty()).then(|| format!("partially skipped: {}", skipped.join("; "))),
        detail,
    }
}

pub struct SequenceCheck;

impl Check for SequenceCheck {
    fn name(&self) -> &'static str {
        "sequence"
    }
    fn describe(&self) -> &'static str {
        "ledger recomputes from d; gaps positive; d nondecreasing; u nonincreasing"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let ledger = ctx.plan.ledger();
        let report = convergence_report(ledger);
        let ok = ledger.is_self_consistent() && report.all_gaps_positive && report.d_nondecreasing && report.u_nonincreasing;
        Ok(Outcome::from_bool(ok, serde_json::to_value(&report)?))
    }
}

pub struct IrrepCheck;

impl Check for IrrepCheck {
    fn name(&self) -> &'static str {
        "irreps"
    }
    fn describe(&self) -> &'static str {
        "irreducible dimensions agree with class count, abelianization and order"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let group = ctx.plan.group();
        let inv = match irrep_dimensions(group, ctx.seed, DEFAULT_CLUSTER_TOL) {
            Err(Error::GroupTooLarge { order, cap }) => {
                return Ok(Outcome::skipped(format!("group order {order} exceeds cap {cap}")))
            }
            other => other?,
        };
        let ok = inv.check(group.order()).is_ok();
        Ok(Outcome::from_bool(ok, serde_json::to_value(&inv)?))
    }
}

pub struct FellAbsorptionCheck;

impl Check for FellAbsorptionCheck {
    fn name(&self) -> &'static str {
        "fell-absorption"
    }
    fn describe(&self) -> &'static str {
        "w (z_g ⊗ z_g) w* = z_g ⊗ 1 for every g"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let plan = ctx.plan;
        let nu = plan.nu();
        let w = fell_absorption_unitary(plan.group())?;
        let one = Permutation::identity(nu);
        let mut failing = Vec::new();
        for g in 0..nu {
            let z = plan.z(g);
            let lhs = &(&w * &z.kron(z).to_matrix()) * &w.adjoint();
            if lhs != z.kron(&one).to_matrix() {
                failing.push(plan.group().label(g).to_string());
            }
        }
        Ok(Outcome::from_bool(
            failing.is_empty() && w.is_unitary(),
            json!({ "dimension": nu * nu, "elements": nu, "failing": failing }),
        ))
    }
}

pub struct EquivarianceCheck;

impl Check for EquivarianceCheck {
    fn name(&self) -> &'static str {
        "equivariance"
    }
    fn describe(&self) -> &'static str {
        "Γ(α_g f) = α_g Γ(f) entrywise on random functions, every g, every materializable step"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let plan = ctx.plan;
        let (mut verdicts, mut skipped, mut ok) = (Vec::new(), Vec::new(), true);
        for n in 0..plan.stage_count() {
            if !plan.is_materializable(n + 1) {
                skipped.push(cap_reason(n + 1, &plan.fiber_dim(n + 1), plan.matrix_cap()));
                continue;
            }
            let v = check_equivariance(plan, n, ctx.trials, ctx.seed.wrapping_add(n as u64))?;
            ok &= v.passed;
            verdicts.push(v);
        }
        Ok(combine(verdicts.len(), ok, &skipped, serde_json::to_value(&verdicts)?))
    }
}

pub struct RankLedgerCheck;

impl Check for RankLedgerCheck {
    fn name(&self) -> &'static str {
        "rank-ledger"
    }
    fn describe(&self) -> &'static str {
        "rank recursion of p_n against materialized ranks; normalized trace 1/ν"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let plan = ctx.plan;
        let report = rank_ledger(plan, plan.stage_count(), ctx.samples.max(1), ctx.seed)?;
        let nu = plan.nu() as i64;
        let ok = report
            .entries
            .iter()
            .all(|e| e.closed_form_agrees && e.normalized_trace == crate::scalar::rat(1, nu));
        let skipped: Vec<String> = report
            .skipped_stages
            .iter()
            .map(|&n| cap_reason(n, &plan.fiber_dim(n), plan.matrix_cap()))
            .collect();
        let mut out = Outcome::from_bool(ok, serde_json::to_value(&report)?);
        if !skipped.is_empty() {
            out.reason = Some(format!("spot checks skipped: {}", skipped.join("; ")));
        }
        Ok(out)
    }
}

pub struct OuternessCheck;

impl Check for OuternessCheck {
    fn name(&self) -> &'static str {
        "outerness"
    }
    fn describe(&self) -> &'static str {
        "‖w(e_11 ⊗ 1)w* − w(e_gg ⊗ 1)w*‖ = 1 for g ≠ 1"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let plan = ctx.plan;
        let group = plan.group();
        let gaps = (0..plan.nu())
            .filter(|&g| g != group.identity())
            .map(|g| outerness_gap(plan, g))
            .collect::<Result<Vec<_>>>()?;
        if gaps.is_empty() {
            return Ok(Outcome::skipped("trivial group has no non-identity element"));
        }
        let ok = gaps.iter().all(|g| g.norm == crate::scalar::rat(1, 1));
        Ok(Outcome::from_bool(ok, serde_json::to_value(&gaps)?))
    }
}

pub struct CrossedProductCheck;

impl Check for CrossedProductCheck {
    fn name(&self) -> &'static str {
        "crossed-product"
    }
    fn describe(&self) -> &'static str {
        "associativity, involution, trace, averaging projection and ψ on random elements"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let plan = ctx.plan;
        let (mut reports, mut skipped, mut ok) = (Vec::new(), Vec::new(), true);
        for n in 0..=plan.stage_count() {
            let fiber = plan.fiber_dim(n);
            if !plan.is_materializable(n) || fiber > BigInt::from(CROSSED_FIBER_CAP) {
                skipped.push(cap_reason(n, &fiber, CROSSED_FIBER_CAP.min(plan.matrix_cap())));
                continue;
            }
            let act = InnerAction::stage(plan, n)?;
            let r = crossed_report(&act, ctx.samples, CROSSED_SAMPLE_DENSITY, ctx.seed.wrapping_add(n as u64))?;
            ok &= r.passed;
            reports.push(json!({ "stage": n, "report": r }));
        }
        Ok(combine(reports.len(), ok, &skipped, json!(reports)))
    }
}

pub struct FixedPointCheck;

impl Check for FixedPointCheck {
    fn name(&self) -> &'static str {
        "fixed-points"
    }
    fn describe(&self) -> &'static str {
        "fixed-point algebra of the stage action has dimension ν r(n)²"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let plan = ctx.plan;
        let (mut rows, mut skipped, mut ok) = (Vec::new(), Vec::new(), true);
        for n in 0..=plan.stage_count() {
            let fiber = plan.fiber_dim(n);
            if !plan.is_materializable(n) || &fiber * &fiber > BigInt::from(FIXED_POINT_UNKNOWN_CAP) {
                skipped.push(format!("stage {n}: {fiber}² unknowns exceed cap {FIXED_POINT_UNKNOWN_CAP}"));
                continue;
            }
            let dim = fixed_point_dimension(&InnerAction::stage(plan, n)?)?;
            let r = plan.ledger().r(n);
            let expected = BigInt::from(plan.nu()) * &r * &r;
            ok &= BigInt::from(dim) == expected;
            rows.push(json!({ "stage": n, "dimension": dim, "expected": expected.to_string() }));
        }
        Ok(combine(rows.len(), ok, &skipped, json!(rows)))
    }
}

pub struct RcTableCheck;

impl Check for RcTableCheck {
    fn name(&self) -> &'static str {
        "rc-table"
    }
    fn describe(&self) -> &'static str {
        "algebra and crossed-product bound columns coincide, decrease strictly and stay above η"
    }
    fn run(&self, ctx: &CheckContext) -> Result<Outcome> {
        let plan = ctx.plan;
        let inv = match irrep_dimensions(plan.group(), ctx.seed, DEFAULT_CLUSTER_TOL) {
            Err(Error::GroupTooLarge { order, cap }) => {
                return Ok(Outcome::skipped(format!("group order {order} exceeds cap {cap}")))
            }
            other => other?,
        };
        let table = rc_upper_table(plan.ledger(), &inv)?;
        let ok = table.columns_coincide() && table.strictly_decreasing_above_eta();
        Ok(Outcome::from_bool(ok, serde_json::to_value(&table)?))
    }
}
