//! Command-line front end: compute adjusted moments, construct the
//! exceptional polynomials, and run the verification battery.
//!
//! Exit codes: 0 success, 1 check or solve failure, 2 invalid parameters.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;
use std::io::Write;
use std::process::ExitCode;
use xop_core::detrep::{build_matrix, solve_coefficients};
use xop_core::family::{make_family, FamilyDescriptor, FamilyKind};
use xop_core::moments::{generate_moments, moment_by_quadrature_with, MomentTable};
use xop_core::quadrature::QuadratureSpec;
use xop_core::verify::{verify_family, x2_standard_checks, Check, CheckStatus};

#[derive(Parser)]
#[command(name = "xop", version, about = "X1 exceptional orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the adjusted-moment table
    Moments(MomentsArgs),
    /// Construct one polynomial and print its coefficients
    Poly(PolyArgs),
    /// Run the verification battery and print the report
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Lag1,
    Lag2,
    Lag3,
    Jacobi,
}

impl FamilyArg {
    fn kind(self) -> FamilyKind {
        match self {
            FamilyArg::Lag1 => FamilyKind::LaguerreI,
            FamilyArg::Lag2 => FamilyKind::LaguerreII,
            FamilyArg::Lag3 => FamilyKind::LaguerreIII,
            FamilyArg::Jacobi => FamilyKind::Jacobi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Family: lag1, lag2, lag3, or jacobi
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Second parameter (jacobi only)
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Relative tolerance for any quadrature the command performs
    #[arg(long)]
    quad_tol: Option<f64>,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of moments to print (k = 0 .. count-1)
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Cross-check every entry against quadrature of the defining integral
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    /// Also run the codimension-two candidate battery
    #[arg(long)]
    x2_flag: bool,
}

/// 17 significant digits: round-trips through f64 exactly.
fn num(x: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{x:.16e}")).expect("valid JSON number")
}

fn num_opt(x: Option<f64>) -> Option<Box<RawValue>> {
    x.map(num)
}

fn spec_from(common: &CommonArgs) -> Result<QuadratureSpec, String> {
    let mut spec = QuadratureSpec::default();
    if let Some(t) = common.quad_tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(format!("--quad-tol must be in (0, 1), got {t}"));
        }
        spec.rel_tol = t;
        spec.abs_tol = t * 0.01;
    }
    Ok(spec)
}

fn emit(common: &CommonArgs, text: &str) -> Result<(), String> {
    match &common.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("write {path:?}: {e}")),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| format!("stdout: {e}"))
        }
    }
}

#[derive(Serialize)]
struct ParamsOut {
    alpha: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<Box<RawValue>>,
}

fn params_out(f: &FamilyDescriptor) -> ParamsOut {
    ParamsOut {
        alpha: num(f.alpha),
        beta: num_opt(f.beta),
    }
}

#[derive(Serialize)]
struct MomentOut {
    k: usize,
    value: Box<RawValue>,
    source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_estimate: Option<Box<RawValue>>,
}

#[derive(Serialize)]
struct MomentsOut {
    family: &'static str,
    parameters: ParamsOut,
    moments: Vec<MomentOut>,
}

fn cmd_moments(args: &MomentsArgs) -> Result<ExitCode, String> {
    let family = make_family(
        args.common.family.kind(),
        args.common.alpha,
        args.common.beta,
    )
    .map_err(|e| e.to_string())?;
    if args.count == 0 {
        return Err(String::from("--count must be at least 1"));
    }
    let spec = spec_from(&args.common)?;
    let table = generate_moments(&family, args.count.saturating_sub(1).max(2))
        .map_err(|e| e.to_string())?;

    let mut failed = false;
    let mut rows: Vec<MomentOut> = Vec::new();
    for (k, e) in table.entries().iter().enumerate().take(args.count) {
        let mut err = e.error_estimate;
        if args.check {
            let (q, _) = moment_by_quadrature_with(&family, k, &spec)
                .map_err(|e| e.to_string())?;
            let discrepancy = (e.value - q).abs();
            err = Some(discrepancy);
            if discrepancy > 1e-8 * (1.0 + q.abs()) {
                failed = true;
            }
        }
        rows.push(MomentOut {
            k,
            value: num(e.value),
            source: e.source.name(),
            error_estimate: num_opt(err),
        });
    }

    let text = match args.format {
        Format::Json => {
            let out = MomentsOut {
                family: family.kind.name(),
                parameters: params_out(&family),
                moments: rows,
            };
            let mut s = serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("k,value,source,error_estimate\n");
            for r in rows {
                let err = r
                    .error_estimate
                    .map(|v| v.get().to_string())
                    .unwrap_or_default();
                s.push_str(&format!("{},{},{},{}\n", r.k, r.value.get(), r.source, err));
            }
            s
        }
    };
    emit(&args.common, &text)?;
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize)]
struct PolyOut {
    family: &'static str,
    parameters: ParamsOut,
    degree: usize,
    center: Box<RawValue>,
    shifted_coeffs: Vec<Box<RawValue>>,
    monomial_coeffs: Vec<Box<RawValue>>,
    condition_estimate: Box<RawValue>,
}

fn cmd_poly(args: &PolyArgs) -> Result<ExitCode, String> {
    let family = make_family(
        args.common.family.kind(),
        args.common.alpha,
        args.common.beta,
    )
    .map_err(|e| e.to_string())?;
    let n = args.degree;
    let moments: MomentTable =
        generate_moments(&family, (2 * n).max(2)).map_err(|e| e.to_string())?;
    let mm = build_matrix(&family, n, &moments).map_err(|e| e.to_string())?;
    let (c, condition_estimate) = solve_coefficients(&mm).map_err(|e| e.to_string())?;
    let shifted = xop_core::poly::ShiftedPolynomial::new(family.xi, c);
    let mono = shifted.to_monomial();

    let out = PolyOut {
        family: family.kind.name(),
        parameters: params_out(&family),
        degree: n,
        center: num(family.xi),
        shifted_coeffs: (0..=n).map(|i| num(shifted.coeff(i))).collect(),
        monomial_coeffs: (0..=n).map(|i| num(mono.coeff(i))).collect(),
        condition_estimate: num(condition_estimate),
    };
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("i,shifted_coeff,monomial_coeff\n");
            for i in 0..=n {
                s.push_str(&format!(
                    "{},{},{}\n",
                    i,
                    out.shifted_coeffs[i].get(),
                    out.monomial_coeffs[i].get()
                ));
            }
            s
        }
    };
    emit(&args.common, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    anchor: &'static str,
    status: &'static str,
    residual: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<Box<RawValue>>,
    note: String,
}

fn check_out(c: &Check) -> CheckOut {
    CheckOut {
        name: c.name.clone(),
        anchor: c.anchor,
        status: c.status.name(),
        residual: num(c.residual),
        tolerance: if c.tolerance.is_nan() {
            None
        } else {
            Some(num(c.tolerance))
        },
        note: c.note.clone(),
    }
}

#[derive(Serialize)]
struct ReportOut {
    family: &'static str,
    params: ParamsOut,
    checks: Vec<CheckOut>,
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let family = make_family(
        args.common.family.kind(),
        args.common.alpha,
        args.common.beta,
    )
    .map_err(|e| e.to_string())?;
    let report = verify_family(&family, args.max_degree).map_err(|e| e.to_string())?;
    let mut checks: Vec<CheckOut> = report.checks.iter().map(check_out).collect();
    let mut all_passed = report.all_passed();
    if args.x2_flag {
        let extra = x2_standard_checks(family.alpha).map_err(|e| e.to_string())?;
        all_passed = all_passed && extra.iter().all(|c| c.status != CheckStatus::Fail);
        checks.extend(extra.iter().map(check_out));
    }
    let out = ReportOut {
        family: report.family,
        params: ParamsOut {
            alpha: num(report.alpha),
            beta: num_opt(report.beta),
        },
        checks,
    };
    let mut text = serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?;
    text.push('\n');
    emit(&args.common, &text)?;
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Moments(a) => cmd_moments(a),
        Command::Poly(a) => cmd_poly(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
