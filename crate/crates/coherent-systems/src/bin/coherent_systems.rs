//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input/parse errors, 3 curve or polarization
//! validation errors, 4 precondition failures (for example a non-good
//! polarization where a threshold needs one), 5 internal assertion
//! failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coherent_systems::bounds::{alpha_range_bound, BoundsError, SystemType};
use coherent_systems::document::{CurveDocument, DocumentError};
use coherent_systems::oracle::{
    critical_values_bruteforce, goodness_bruteforce, identity_suite, spanning_trees_bruteforce,
    IdentityOutcome,
};
use coherent_systems::rational::{parse_rational, Rational};
use coherent_systems::report::{
    bounds_section, census_section, critical_values_section, curve_section, full_report,
    goodness_section, to_json, ReportError,
};
use coherent_systems::{is_good, NodalCurve, Polarization, ValidationError};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "coherent-systems",
    version,
    about = "Exact stability landscape of coherent systems on polarized nodal curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a curve document and print its basic invariants.
    Validate {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide goodness of the polarization and test the structure sheaf.
    Goodness {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Thresholds, terminal window and critical values for one type.
    Bounds {
        #[arg(long)]
        curve: PathBuf,
        /// System type as `r,d,k` with exact rational r and d.
        #[arg(long = "type")]
        system_type: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Critical values in a window (any polarization).
    CriticalValues {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long = "type")]
        system_type: String,
        /// Right end of the open window (0, M); defaults to the range bound.
        #[arg(long)]
        window: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Census of the terminal moduli space for integer (r, d, k).
    Census {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long = "type")]
        system_type: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the brute-force oracles against the main implementations.
    Verify {
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long = "type")]
        system_type: Option<String>,
        #[arg(long)]
        window: Option<String>,
        /// Oracle configuration, e.g. `rmax=6,trials=2000,seed=0`.
        #[arg(long = "oracle-range")]
        oracle_range: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Validate, goodness, bounds and census in one run.
    Report {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long = "type")]
        system_type: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_PARSE,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        let code = match &e {
            DocumentError::Json(_) | DocumentError::Rational { .. } => EXIT_PARSE,
            DocumentError::Curve(_) | DocumentError::Sheaf(_) => EXIT_VALIDATION,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        CliError {
            message: e.to_string(),
            code: EXIT_VALIDATION,
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        let code = match &e {
            BoundsError::Validation(_) => EXIT_VALIDATION,
            _ => EXIT_PRECONDITION,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Validation(v) => v.into(),
            ReportError::Bounds(b) => b.into(),
            ReportError::Census(c) => CliError {
                message: c.to_string(),
                code: EXIT_PRECONDITION,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| run(cli.command));
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("internal assertion failed");
            eprintln!("internal error: {message}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn load_curve(path: &PathBuf) -> Result<(NodalCurve, Polarization), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let document = CurveDocument::from_json(&text)?;
    Ok(document.build()?)
}

/// Parses `r,d,k` with exact rational `r` and `d`.
fn parse_type(text: &str) -> Result<SystemType, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::parse(format!(
            "type must be `r,d,k`, got `{text}`"
        )));
    }
    let r = parse_rational(parts[0]).map_err(|e| CliError::parse(e.to_string()))?;
    let d = parse_rational(parts[1]).map_err(|e| CliError::parse(e.to_string()))?;
    let k: u32 = parts[2].parse().map_err(|_| {
        CliError::parse(format!(
            "k must be a nonnegative integer, got `{}`",
            parts[2]
        ))
    })?;
    Ok(SystemType::new(r, d, k)?)
}

fn integer_type(ty: &SystemType) -> Result<(i64, i64, i64), CliError> {
    if !ty.w_rank().is_integer() || !ty.w_degree().is_integer() {
        return Err(CliError {
            message: format!(
                "census requires integer r and d, got r = {}, d = {}",
                ty.w_rank(),
                ty.w_degree()
            ),
            code: EXIT_PRECONDITION,
        });
    }
    let r = ty.w_rank().to_integer().to_i64();
    let d = ty.w_degree().to_integer().to_i64();
    match (r, d) {
        (Some(r), Some(d)) => Ok((r, d, ty.sections() as i64)),
        _ => Err(CliError {
            message: "census type does not fit in 64-bit integers".into(),
            code: EXIT_PRECONDITION,
        }),
    }
}

fn emit<T: Serialize>(format: Format, section: &T, text: String) {
    match format {
        Format::Text => print!("{text}"),
        Format::Structured => println!("{}", to_json(section)),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Validate { curve, format } => {
            let (curve, pol) = load_curve(&curve)?;
            let section = curve_section(&curve, &pol);
            emit(format, &section, section.text());
            Ok(())
        }
        Command::Goodness { curve, format } => {
            let (curve, pol) = load_curve(&curve)?;
            let section = goodness_section(&curve, &pol).map_err(CliError::from)?;
            emit(format, &section, section.text());
            Ok(())
        }
        Command::Bounds {
            curve,
            system_type,
            format,
        } => {
            let (curve, pol) = load_curve(&curve)?;
            let ty = parse_type(&system_type)?;
            let section = bounds_section(&curve, &pol, &ty).map_err(CliError::from)?;
            emit(format, &section, section.text());
            Ok(())
        }
        Command::CriticalValues {
            curve,
            system_type,
            window,
            format,
        } => {
            let (curve, pol) = load_curve(&curve)?;
            let ty = parse_type(&system_type)?;
            let window = match window {
                Some(text) => parse_rational(&text).map_err(|e| CliError::parse(e.to_string()))?,
                None => {
                    let bound = alpha_range_bound(&curve, &pol, &ty)?;
                    if !bound.is_positive() {
                        return Err(CliError {
                            message: format!(
                                "range bound {bound} is not positive; pass an explicit --window"
                            ),
                            code: EXIT_PRECONDITION,
                        });
                    }
                    bound
                }
            };
            let section =
                critical_values_section(&curve, &pol, &ty, &window).map_err(CliError::from)?;
            emit(format, &section, section.text());
            Ok(())
        }
        Command::Census {
            curve,
            system_type,
            format,
        } => {
            let (curve, _pol) = load_curve(&curve)?;
            let ty = parse_type(&system_type)?;
            let (r, d, k) = integer_type(&ty)?;
            let section = census_section(&curve, r, d, k).map_err(CliError::from)?;
            emit(format, &section, section.text());
            Ok(())
        }
        Command::Verify {
            curve,
            system_type,
            window,
            oracle_range,
            format,
        } => run_verify(curve, system_type, window, oracle_range, format),
        Command::Report {
            curve,
            system_type,
            format,
        } => {
            let (curve, pol) = load_curve(&curve)?;
            let ty = parse_type(&system_type)?;
            let report = full_report(&curve, &pol, &ty).map_err(CliError::from)?;
            emit(format, &report, report.text());
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Default)]
struct OracleRange {
    r_max: u64,
    trials: u32,
    seed: u64,
}

fn parse_oracle_range(text: Option<&str>) -> Result<OracleRange, CliError> {
    let mut range = OracleRange {
        r_max: 6,
        trials: 2000,
        seed: 0,
    };
    let Some(text) = text else {
        return Ok(range);
    };
    for part in text.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::parse(format!("oracle range entry `{part}` is not key=value"))
        })?;
        let parse_u64 = |v: &str| -> Result<u64, CliError> {
            v.trim()
                .parse()
                .map_err(|_| CliError::parse(format!("`{v}` is not an integer")))
        };
        match key.trim() {
            "rmax" => range.r_max = parse_u64(value)?,
            "trials" => range.trials = parse_u64(value)? as u32,
            "seed" => range.seed = parse_u64(value)?,
            other => {
                return Err(CliError::parse(format!(
                    "unknown oracle range key `{other}` (expected rmax, trials, seed)"
                )))
            }
        }
    }
    Ok(range)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct VerifyCheck {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct VerifySection {
    checks: Vec<VerifyCheck>,
    all_passed: bool,
}

fn run_verify(
    curve_path: Option<PathBuf>,
    system_type: Option<String>,
    window: Option<String>,
    oracle_range: Option<String>,
    format: Format,
) -> Result<(), CliError> {
    let range = parse_oracle_range(oracle_range.as_deref())?;
    let mut checks = Vec::new();

    let identity = identity_suite(range.seed, range.trials).map_err(|e| CliError {
        message: e.to_string(),
        code: EXIT_PARSE,
    })?;
    checks.push(VerifyCheck {
        name: "identity-suite".into(),
        passed: identity.passed(),
        detail: match &identity.outcome {
            IdentityOutcome::Pass => format!("{} trials", identity.trials),
            IdentityOutcome::Counterexample { check, detail } => {
                format!("counterexample in {check}: {detail}")
            }
        },
    });

    if let Some(path) = curve_path {
        let (curve, pol) = load_curve(&path)?;

        let lp = is_good(&curve, &pol).map_err(|e| CliError {
            message: e.to_string(),
            code: EXIT_VALIDATION,
        })?;
        let brute = goodness_bruteforce(&curve, &pol, range.r_max).map_err(|e| CliError {
            message: e.to_string(),
            code: EXIT_PRECONDITION,
        })?;
        checks.push(VerifyCheck {
            name: "goodness-oracle".into(),
            passed: lp.verdict == brute.verdict,
            detail: format!(
                "lp verdict {:?}, bruteforce verdict {:?} (r_max = {})",
                lp.verdict, brute.verdict, range.r_max
            ),
        });

        let matrix_tree = curve.spanning_tree_count();
        let enumerated = spanning_trees_bruteforce(&curve);
        checks.push(VerifyCheck {
            name: "spanning-trees-oracle".into(),
            passed: matrix_tree == enumerated,
            detail: format!("matrix-tree {matrix_tree}, enumeration {enumerated}"),
        });

        if let Some(type_text) = system_type {
            let ty = parse_type(&type_text)?;
            let window = match window {
                Some(text) => parse_rational(&text).map_err(|e| CliError::parse(e.to_string()))?,
                None => {
                    let bound = alpha_range_bound(&curve, &pol, &ty)?;
                    if bound.is_positive() {
                        bound
                    } else {
                        Rational::from_integer(2.into())
                    }
                }
            };
            let main =
                coherent_systems::bounds::enumerate_critical_values(&curve, &pol, &ty, &window)?;
            let main_alphas: Vec<Rational> = main.iter().map(|cv| cv.alpha.clone()).collect();
            let brute = critical_values_bruteforce(&curve, &pol, &ty, &window)?;
            checks.push(VerifyCheck {
                name: "critical-values-oracle".into(),
                passed: main_alphas == brute,
                detail: format!(
                    "{} values from the enumeration, {} from the scan, window (0, {})",
                    main_alphas.len(),
                    brute.len(),
                    window
                ),
            });
        }
    }

    let all_passed = checks.iter().all(|c| c.passed);
    let section = VerifySection { checks, all_passed };
    let mut text = String::new();
    for check in &section.checks {
        text.push_str(&format!(
            "{}: {} ({})\n",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        ));
    }
    emit(format, &section, text);
    if all_passed {
        Ok(())
    } else {
        Err(CliError {
            message: "oracle disagreement".into(),
            code: EXIT_INTERNAL,
        })
    }
}
