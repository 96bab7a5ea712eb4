//! `zil` — batch verification front end for the identity catalog.
//!
//! Two subcommands: `list` prints the registry, `verify` evaluates a
//! filtered selection and renders a report as text, JSON, or CSV.  Exit
//! codes: 0 when every selected proven entry passes, 1 when one fails (or
//! fails to converge), 2 for configuration errors such as an unknown id.
//! Adjudication and conjecture entries never affect the exit code.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use zil_core::catalog::{
    load_catalog, run_suite, CheckResult, Filter, Report, Section, Status, Verdict,
};
use zil_core::{Context, Real};

#[derive(Parser)]
#[command(name = "zil", version, about = "Numerical verification of classical series and integral identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries with their anchors and status.
    List(CommonArgs),
    /// Evaluate catalog entries and report pass/fail/adjudication results.
    Verify(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Select specific identity ids (repeatable).
    #[arg(long = "id")]
    ids: Vec<String>,
    /// Restrict to one catalog section.
    #[arg(long, value_parser = parse_section)]
    section: Option<Section>,
    /// Restrict to one status tier.
    #[arg(long, value_parser = parse_status)]
    status: Option<Status>,
    /// Decimal digits of working precision (default 40, or $ZIL_DIGITS).
    #[arg(long)]
    digits: Option<u32>,
    /// Worker threads for identity checks.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_section(s: &str) -> Result<Section, String> {
    Section::parse(s).ok_or_else(|| format!("unknown section {s:?} (expected S5..S8)"))
}

fn parse_status(s: &str) -> Result<Status, String> {
    Status::parse(s)
        .ok_or_else(|| format!("unknown status {s:?} (expected proven, adjudicate, conjecture)"))
}

fn resolve_digits(args: &CommonArgs) -> Result<u32, String> {
    if let Some(d) = args.digits {
        return Ok(d);
    }
    if let Ok(env) = std::env::var("ZIL_DIGITS") {
        return env
            .trim()
            .parse::<u32>()
            .map_err(|_| format!("ZIL_DIGITS must be a positive integer, got {env:?}"));
    }
    Ok(40)
}

fn filter_from(args: &CommonArgs) -> Filter {
    Filter {
        section: args.section,
        status: args.status,
        id_prefix: None,
        ids: args.ids.clone(),
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
                .and_then(|_| {
                    if body.ends_with('\n') {
                        Ok(())
                    } else {
                        lock.write_all(b"\n")
                    }
                })
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

fn decimal(ctx: &Context, v: &Option<Real>) -> Option<String> {
    v.as_ref().map(|x| ctx.to_decimal(x))
}

fn cmd_list(args: &CommonArgs) -> Result<String, String> {
    let filter = filter_from(args);
    let catalog = load_catalog();
    let rows: Vec<_> = catalog.iter().filter(|e| filter.matches(e)).collect();
    match args.format {
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "id": e.id,
                        "section": e.section.as_str(),
                        "status": e.status().as_str(),
                        "tol_class": e.tol_class.as_str(),
                        "anchor": e.anchor,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items).map_err(|e| e.to_string())
        }
        Format::Csv => {
            let mut body = String::from("id,section,status,tol_class,anchor\n");
            for e in rows {
                body.push_str(&format!(
                    "{},{},{},{},{}\n",
                    e.id,
                    e.section.as_str(),
                    e.status().as_str(),
                    e.tol_class.as_str(),
                    csv_quote(e.anchor)
                ));
            }
            Ok(body)
        }
        Format::Text => {
            let id_w = rows.iter().map(|e| e.id.len()).max().unwrap_or(2).max(2);
            let mut body = String::new();
            for e in &rows {
                body.push_str(&format!(
                    "{:<id_w$}  {}  {:<11}  {:<8}  [{}]\n",
                    e.id,
                    e.section.as_str(),
                    e.status().as_str(),
                    e.tol_class.as_str(),
                    e.anchor,
                ));
            }
            body.push_str(&format!("{} entries\n", rows.len()));
            Ok(body)
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_text(ctx: &Context, report: &Report) -> String {
    let mut body = String::new();
    for r in &report.results {
        let head = match &r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Adjudicated(_) => "ADJUDICATED",
            Verdict::ConjectureValue => "CONJECTURE",
        };
        body.push_str(&format!("{head:<11} {} [{}]", r.id, r.anchor));
        if let Some(re) = &r.rel_err {
            body.push_str(&format!("  rel_err = {}", ctx.to_decimal(re)));
        }
        body.push('\n');
        for line in &r.detail {
            body.push_str(&format!("    {line}\n"));
        }
        if let Some(err) = &r.error {
            body.push_str(&format!("    error: {err}\n"));
        }
    }
    body.push_str(&format!(
        "summary: {} pass, {} fail, {} adjudicated, {} conjectures (digits = {})\n",
        report.pass, report.fail, report.adjudicated, report.conjectures, report.digits
    ));
    body
}

fn render_json(ctx: &Context, report: &Report) -> Result<String, String> {
    let results: Vec<serde_json::Value> = report
        .results
        .iter()
        .map(|r: &CheckResult| {
            serde_json::json!({
                "id": r.id,
                "section": r.section.as_str(),
                "status": r.status.as_str(),
                "anchor": r.anchor,
                "lhs": decimal(ctx, &r.lhs),
                "rhs": decimal(ctx, &r.rhs),
                "abs_err": decimal(ctx, &r.abs_err),
                "rel_err": decimal(ctx, &r.rel_err),
                "verdict": r.verdict.describe(),
                "detail": r.detail,
                "error": r.error,
                "elapsed_ms": r.elapsed.as_millis() as u64,
            })
        })
        .collect();
    let coverage: Vec<serde_json::Value> = report
        .coverage
        .iter()
        .map(|(anchor, id)| serde_json::json!({ "anchor": anchor, "id": id }))
        .collect();
    let doc = serde_json::json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "digits": report.digits,
        "results": results,
        "summary": {
            "pass": report.pass,
            "fail": report.fail,
            "adjudicated": report.adjudicated,
            "conjectures": report.conjectures,
        },
        "coverage": coverage,
    });
    serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())
}

fn render_csv(ctx: &Context, report: &Report) -> String {
    let mut body = String::from("id,section,status,lhs,rhs,rel_err,verdict\n");
    for r in &report.results {
        body.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.id,
            r.section.as_str(),
            r.status.as_str(),
            decimal(ctx, &r.lhs).unwrap_or_default(),
            decimal(ctx, &r.rhs).unwrap_or_default(),
            decimal(ctx, &r.rel_err).unwrap_or_default(),
            r.verdict.token(),
        ));
    }
    body
}

fn cmd_verify(args: &CommonArgs) -> Result<(String, bool), String> {
    let digits = resolve_digits(args)?;
    let ctx = Context::new(digits).map_err(|e| e.to_string())?;
    let catalog = load_catalog();
    for id in &args.ids {
        if !catalog.iter().any(|e| e.id == *id) {
            return Err(format!("unknown identity id: {id}"));
        }
    }
    let filter = filter_from(args);
    if !catalog.iter().any(|e| filter.matches(e)) {
        return Err("filters select no catalog entries".to_string());
    }
    let report = run_suite(&ctx, &filter, args.jobs.max(1));
    let body = match args.format {
        Format::Text => render_text(&ctx, &report),
        Format::Json => render_json(&ctx, &report)?,
        Format::Csv => render_csv(&ctx, &report),
    };
    Ok((body, report.fail == 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::List(args) => match cmd_list(args) {
            Ok(body) => match emit(&args.out, &body) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("zil: {e}");
                    ExitCode::from(2)
                }
            },
            Err(e) => {
                eprintln!("zil: {e}");
                ExitCode::from(2)
            }
        },
        Command::Verify(args) => match cmd_verify(args) {
            Ok((body, all_pass)) => match emit(&args.out, &body) {
                Ok(()) if all_pass => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("zil: {e}");
                    ExitCode::from(2)
                }
            },
            Err(e) => {
                eprintln!("zil: {e}");
                ExitCode::from(2)
            }
        },
    }
}
