mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};

/// Exit status when a check or certificate fails.
const EXIT_FAILED: u8 = 1;
/// Exit status for invalid configuration or I/O errors.
const EXIT_ERROR: u8 = 2;

fn error_kind(err: &anyhow::Error) -> &'static str {
    use crossrc_core::Error as E;
    if let Some(e) = err.downcast_ref::<E>() {
        return match e {
            E::GroupSpec(_) => "group_spec",
            E::GroupTable(_) => "group_table",
            E::GroupTooLarge { .. } => "group_too_large",
            E::InvalidRational(_) => "invalid_rational",
            E::OutOfRange(_) => "out_of_range",
            E::Dimension(_) => "dimension",
            E::SizeCap { .. } => "size_cap",
            E::NotHermitian => "not_hermitian",
            E::NotPositive(_) => "not_positive",
            E::NotNormal(_) => "not_normal",
            E::NotUnitPoint(_) => "not_unit_point",
            E::MissingPoint(_) => "missing_point",
            E::DegenerateSample { .. } => "degenerate_sample",
            E::NotRepresentation(_) => "not_representation",
            E::LedgerTooShort(_) => "ledger_too_short",
            E::Inconsistent(_) => "inconsistent",
            E::Json(_) => "serialization",
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return "io";
    }
    "error"
}

fn report_error(kind: &str, message: String) -> ExitCode {
    let obj = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{obj}");
    ExitCode::from(EXIT_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_error("usage", e.render().to_string().trim().to_string()),
    };
    let result = match &cli.command {
        Command::Build(a) => commands::build(a),
        Command::Verify(a) => commands::verify(a),
        Command::RcTable(a) => commands::rc_table(a),
        Command::Certificate(a) => commands::certificate(a),
        Command::CrossedReport(a) => commands::crossed(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => report_error(error_kind(&e), format!("{e:#}")),
    }
}
