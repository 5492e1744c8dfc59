use anyhow::{bail, Context};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crossrc_core::checks::{CheckContext, CheckRegistry, Status, SuiteReport};
use crossrc_core::comparison::{rc_upper_table, search_certificate, ComparisonCertificate, RcTable};
use crossrc_core::crossed::{crossed_report, InnerAction};
use crossrc_core::group::{build_group, irrep_dimensions, GroupTable, DEFAULT_CLUSTER_TOL};
use crossrc_core::scalar::{fmt_rational, parse_rational, to_f64};
use crossrc_core::stages::{build_construction, ConstructionPlan};
use num_rational::BigRational;

use crate::args::{BuildArgs, CertificateArgs, Common, CrossedArgs, Format, TableArgs, VerifyArgs};
use crate::output;

/// Gap below which a stage counts as converged in the rc table.
pub const TABLE_TOLERANCE: f64 = 1e-6;

fn group_and_eta(common: &Common) -> anyhow::Result<(GroupTable, BigRational)> {
    let group = build_group(&common.group)?;
    let eta = parse_rational(&common.eta)?;
    if common.stages == 0 {
        bail!(crossrc_core::Error::OutOfRange("--stages must be at least 1".into()));
    }
    Ok((group, eta))
}

fn plan(common: &Common, seed: u64) -> anyhow::Result<ConstructionPlan> {
    let (group, eta) = group_and_eta(common)?;
    Ok(build_construction(&group, &eta, common.stages, common.matrix_cap, seed)?)
}

fn decimal(r: &BigRational) -> String {
    format!("{:.12e}", to_f64(r))
}

pub fn build(args: &BuildArgs) -> anyhow::Result<bool> {
    let plan = plan(&args.common, args.seed)?;
    let summary = plan.summary();
    let rendered = match args.common.format {
        Format::Json => output::json(&summary)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = summary
                .stages
                .iter()
                .map(|s| {
                    vec![
                        s.stage.to_string(),
                        s.dim_x.to_string(),
                        s.fiber_dim.to_string(),
                        s.materialized.to_string(),
                    ]
                })
                .collect();
            output::csv(&["stage", "dimX", "fiber", "materialized"], &rows)?
        }
    };
    output::emit(&args.common, "build", rendered)?;
    Ok(true)
}

pub fn verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let plan = plan(&args.common, args.seed)?;
    let ctx = CheckContext {
        plan: &plan,
        seed: args.seed,
        trials: args.trials,
        samples: args.samples,
    };
    let report: SuiteReport = CheckRegistry::default().run(&ctx, &args.checks, args.timing)?;
    let rendered = match args.common.format {
        Format::Json => output::json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .verdicts
                .iter()
                .map(|v| {
                    let status = match v.outcome.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Skipped => "SKIPPED",
                    };
                    vec![v.name.to_string(), status.to_string(), v.outcome.reason.clone().unwrap_or_default()]
                })
                .collect();
            output::csv(&["check", "status", "reason"], &rows)?
        }
    };
    output::emit(&args.common, "verify", rendered)?;
    Ok(report.passed)
}

#[derive(Serialize)]
struct TableReport<'a> {
    group: &'a str,
    #[serde(flatten)]
    table: &'a RcTable,
    tolerance: f64,
    /// First stage whose gap to η is below the tolerance.
    first_stage_within_tolerance: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimals: Option<Vec<serde_json::Value>>,
}

pub fn rc_table(args: &TableArgs) -> anyhow::Result<bool> {
    let plan = plan(&args.common, args.seed)?;
    let inv = irrep_dimensions(plan.group(), args.seed, DEFAULT_CLUSTER_TOL)?;
    let table = rc_upper_table(plan.ledger(), &inv)?;
    let rendered = match args.common.format {
        Format::Json => output::json(&TableReport {
            group: plan.group().name(),
            table: &table,
            tolerance: TABLE_TOLERANCE,
            first_stage_within_tolerance: table.first_stage_within(TABLE_TOLERANCE),
            decimals: args.common.decimals.then(|| {
                table
                    .rows
                    .iter()
                    .map(|r| json!({ "stage": r.stage, "bound": decimal(&r.algebra_bound), "gap": decimal(&r.gap) }))
                    .collect()
            }),
        })?,
        Format::Csv => {
            let mut header = vec!["stage", "dimX", "fiber", "bound", "gap"];
            if args.common.decimals {
                header.extend(["bound_decimal", "gap_decimal"]);
            }
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.stage.to_string(),
                        r.dim_x.to_string(),
                        r.fiber.to_string(),
                        fmt_rational(&r.algebra_bound),
                        fmt_rational(&r.gap),
                    ];
                    if args.common.decimals {
                        row.extend([decimal(&r.algebra_bound), decimal(&r.gap)]);
                    }
                    row
                })
                .collect();
            output::csv(&header, &rows)?
        }
    };
    output::emit(&args.common, "rc-table", rendered)?;
    Ok(table.columns_coincide() && table.strictly_decreasing_above_eta())
}

#[derive(Serialize)]
struct CertificateReport<'a> {
    group: &'a str,
    ledger_stages: usize,
    #[serde(flatten)]
    certificate: &'a ComparisonCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace_of_e_decimal: Option<String>,
}

pub fn certificate(args: &CertificateArgs) -> anyhow::Result<bool> {
    let (group, eta) = group_and_eta(&args.common)?;
    let lambda = parse_rational(&args.lambda)?;
    // validates eta against the group and the cap before searching
    build_construction(&group, &eta, 1, args.common.matrix_cap, 0)?;
    let (ledger, cert) = search_certificate(group.order() as u64, &eta, &lambda, args.horizon, args.max_stages)?;
    let rendered = match args.common.format {
        Format::Json => output::json(&CertificateReport {
            group: group.name(),
            ledger_stages: ledger.len(),
            certificate: &cert,
            trace_of_e_decimal: args.common.decimals.then(|| decimal(&cert.trace_of_e)),
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = cert
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.m.to_string(),
                        c.r_m.to_string(),
                        c.s_m.to_string(),
                        c.pushed_rank.to_string(),
                        c.threshold.to_string(),
                        c.holds.to_string(),
                    ]
                })
                .collect();
            output::csv(&["m", "r_m", "s_m", "pushed_rank", "threshold", "holds"], &rows)?
        }
    };
    output::emit(&args.common, "certificate", rendered)?;
    Ok(cert.all_hold && cert.recomputed_agrees)
}

pub fn crossed(args: &CrossedArgs) -> anyhow::Result<bool> {
    let plan = plan(&args.common, args.seed)?;
    if args.stage > plan.stage_count() {
        bail!(crossrc_core::Error::OutOfRange(format!(
            "--stage {} exceeds --stages {}",
            args.stage,
            plan.stage_count()
        )));
    }
    if !(0.0..=1.0).contains(&args.density) {
        bail!(crossrc_core::Error::OutOfRange("--density must lie in [0, 1]".into()));
    }
    let act = InnerAction::stage(&plan, args.stage)?;
    let report = crossed_report(&act, args.samples, args.density, args.seed)?;
    let expected_fixed = plan.fiber_dim(args.stage).to_usize().map(|d| d * d / plan.nu());
    let fixed_ok = report.fixed_point_dimension.map_or(true, |d| Some(d) == expected_fixed);
    let value = json!({
        "group": plan.group().name(),
        "stage": args.stage,
        "expected_fixed_point_dimension": expected_fixed,
        "report": report,
    });
    let rendered = match args.common.format {
        Format::Json => output::json(&value)?,
        Format::Csv => {
            let fields = serde_json::to_value(&report)?;
            let rows: Vec<Vec<String>> = fields
                .as_object()
                .context("report is an object")?
                .iter()
                .map(|(k, v)| vec![k.clone(), v.to_string().trim_matches('"').to_string()])
                .collect();
            output::csv(&["field", "value"], &rows)?
        }
    };
    output::emit(&args.common, "crossed-report", rendered)?;
    Ok(report.passed && fixed_ok)
}

