//! `coorbitsym`: JSON in, JSON out.
//!
//! Exit codes: 0 decided or passed, 1 fixture mismatch, 2 input error,
//! 3 math-domain error. Errors are written to stderr as JSON.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use coorbitsym::fixtures::run_fixture_suite;
use coorbitsym::io::{parse_group, parse_matrix};
use coorbitsym::linalg::RationalMatrix;
use coorbitsym::oracle::{distortion_scan, weak_equivalence_count, OracleConfig};
use coorbitsym::shearlet::{validate_spec, ShearletGroup, ShearletGroupSpec};
use coorbitsym::symmetry::{is_coorbit_compatible, symmetry_group_report};
use coorbitsym::Error;

#[derive(Parser)]
#[command(
    name = "coorbitsym",
    version,
    about = "Coorbit compatible dilations of shearlet groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Pretty-print the JSON output
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the JSON output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a group spec for the shearlet group axioms
    Validate {
        #[arg(long)]
        group: PathBuf,
    },
    /// Decide whether a matrix is coorbit compatible with the group
    Check {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Dimension report of the symmetry group
    Symgroup {
        #[arg(long)]
        group: PathBuf,
    },
    /// Empirical distortion of the induced map on word balls
    Oracle(OracleArgs),
    /// Run the built-in regression fixtures
    PaperExamples {
        /// Seed for the random Toeplitz coefficients
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, default_value_t = 12)]
    radius: u32,
    #[arg(long, default_value_t = 0.25)]
    step: f64,
    #[arg(long, default_value_t = 400)]
    samples: u32,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    net_resolution: usize,
    /// Comma-separated radius ladder; defaults to R/2, 3R/4, R
    #[arg(long, value_delimiter = ',')]
    scales: Vec<u32>,
    /// Also count covering intersections at the full radius
    #[arg(long)]
    coverings: bool,
}

struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_math_domain() { 3 } else { 2 },
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

fn input_error(kind: &str, message: String) -> Failure {
    Failure {
        code: 2,
        kind: kind.to_string(),
        message,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error("io", format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<ShearletGroupSpec, Failure> {
    Ok(parse_group(&read(path)?)?)
}

fn load_group(path: &Path) -> Result<ShearletGroup, Failure> {
    Ok(ShearletGroup::new(load_spec(path)?)?)
}

fn load_matrix(path: &Path) -> Result<RationalMatrix, Failure> {
    Ok(parse_matrix(&read(path)?)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Output JSON plus exit code.
fn run(command: Command) -> Result<(Value, u8), Failure> {
    match command {
        Command::Validate { group } => {
            let report = validate_spec(&load_spec(&group)?);
            let code = if report.valid { 0 } else { 2 };
            Ok((to_value(&report), code))
        }
        Command::Check { group, matrix } => {
            let g = load_group(&group)?;
            let a = load_matrix(&matrix)?;
            Ok((to_value(&is_coorbit_compatible(&g, &a)?), 0))
        }
        Command::Symgroup { group } => {
            let g = load_group(&group)?;
            Ok((to_value(&symmetry_group_report(&g)), 0))
        }
        Command::Oracle(args) => {
            let g = load_group(&args.group)?;
            let a = load_matrix(&args.matrix)?;
            let config = OracleConfig {
                step: args.step,
                radius: args.radius,
                samples: args.samples,
                seed: args.seed,
                net_resolution: args.net_resolution,
                scales: args.scales,
                ..OracleConfig::default()
            };
            let mut out = to_value(&distortion_scan(&g, &config, &a)?);
            if args.coverings {
                out["coverings"] = to_value(&weak_equivalence_count(&g, &config, &a)?);
            }
            Ok((out, 0))
        }
        Command::PaperExamples { seed } => {
            let report = run_fixture_suite(seed);
            let code = if report.passed { 0 } else { 1 };
            Ok((to_value(&report), code))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("JSON values render")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, code)) => {
            let text = render(&value, cli.pretty);
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, text + "\n") {
                        let f = input_error("io", format!("{}: {e}", path.display()));
                        eprintln!("{}", render(&error_json(&f), false));
                        return ExitCode::from(f.code);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("{}", render(&error_json(&f), false));
            ExitCode::from(f.code)
        }
    }
}

fn error_json(f: &Failure) -> Value {
    json!({"error": {"kind": f.kind, "message": f.message}, "exit_code": f.code})
}
