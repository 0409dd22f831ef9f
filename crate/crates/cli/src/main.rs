//! `gctool`: load structures and algebras from JSON, run the verifiers, and
//! emit reports, type maps, and twistor summaries.
//!
//! Exit status: 0 when every check passes, 1 on a verification failure, and
//! 2 on input or parameter errors (including malformed JSON and rejected
//! configuration values).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gctool_core::examples::{
    verify_kt, verify_torus, ExampleError, KodairaThurstonExample, TorusExample,
};
use gctool_core::gcs::{is_generalized_complex, GcsError, GenStructure};
use gctool_core::hyper::{
    anticommutator_outcome, build_family, AnticommutatorOutcome, FamilyError, SphereFamily,
};
use gctool_core::json::{
    parse_bundle, parse_scalar, twistor_report_to_csv, twistor_report_to_json, type_map_to_csv,
    type_map_to_json, JsonError,
};
use gctool_core::lie::{cotangent_double, nijenhuis_raw, LieError};
use gctool_core::report::{CheckItem, Conventions, Report};
use gctool_core::scalar::{Rat, Scalar};
use gctool_core::twistor::twistor_type_report;

#[derive(Parser)]
#[command(
    name = "gctool",
    version,
    about = "Verification tools for linear generalized complex structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct ConfigArgs {
    /// Arithmetic lane: exact rationals, or floating point with a tolerance.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Comparison tolerance; must be positive (ignored by exact arithmetic).
    #[arg(long, global = true, default_value_t = 1e-9)]
    epsilon: f64,
    /// Sphere sampling resolution: grid² lattice points plus the six axes.
    #[arg(long, global = true, default_value_t = 64)]
    grid: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Encoding for tabular outputs (verification reports are always JSON).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Count the S² factor as symplectic: it then adds 0 to each twistor
    /// type instead of 1.
    #[arg(long, global = true)]
    s2_symplectic: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a structure bundle: square, pairing
    /// orthogonality, the pair anticommutator, and integrability when a
    /// base algebra is given.
    Verify { input: PathBuf },
    /// Sample fiber types over the sphere family built from a structure
    /// pair.
    Typemap { input: PathBuf },
    /// Build a named worked example and run its full verification report.
    Example {
        #[command(subcommand)]
        which: ExampleCommand,
    },
    /// Classify the twistor space assembled from a structure pair.
    TwistorReport { input: PathBuf },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// Nilmanifold bundle pair at parameters (b1, b2); b2 must be nonzero.
    Kt {
        #[arg(long, default_value = "0")]
        b1: String,
        #[arg(long, default_value = "1")]
        b2: String,
    },
    /// Torus family; lambda and mu are comma-separated lists with
    /// lambda_i² + mu_i² = 1 for every i.
    Torus {
        #[arg(long, value_name = "LIST")]
        lambda: String,
        #[arg(long, value_name = "LIST")]
        mu: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Structure(#[from] GcsError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Algebra(#[from] LieError),
    #[error(transparent)]
    Example(#[from] ExampleError),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = &cli.config;
    if !(cfg.epsilon > 0.0 && cfg.epsilon.is_finite()) {
        return Err(CliError::Input(format!(
            "epsilon must be a positive finite number, got {}",
            cfg.epsilon
        )));
    }
    if cfg.grid < 2 {
        return Err(CliError::Input(format!(
            "grid must be at least 2, got {}",
            cfg.grid
        )));
    }
    match cfg.mode {
        Mode::Exact => dispatch::<Rat>(&cli.command, cfg),
        Mode::Float => dispatch::<f64>(&cli.command, cfg),
    }
}

fn dispatch<S: Scalar>(cmd: &Command, cfg: &ConfigArgs) -> Result<bool, CliError> {
    match cmd {
        Command::Verify { input } => cmd_verify::<S>(input, cfg),
        Command::Typemap { input } => cmd_typemap::<S>(input, cfg),
        Command::Example { which } => cmd_example::<S>(which, cfg),
        Command::TwistorReport { input } => cmd_twistor_report::<S>(input, cfg),
    }
}

fn mode_name<S: Scalar>() -> &'static str {
    if S::EXACT {
        "exact"
    } else {
        "float"
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(cfg: &ConfigArgs, text: &str) -> Result<(), CliError> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cfg.output {
        Some(path) => fs::write(path, body).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Parses a command-line scalar: "p/q", an integer, or (float lane only) a
/// decimal literal.
fn parse_param<S: Scalar>(text: &str) -> Result<S, CliError> {
    let t = text.trim();
    if let Ok(v) = parse_scalar::<S>(&serde_json::Value::String(t.to_string())) {
        return Ok(v);
    }
    let x: f64 = t
        .parse()
        .map_err(|_| CliError::Input(format!("cannot parse `{t}` as a number or \"p/q\"")))?;
    S::from_f64_checked(x).ok_or_else(|| {
        CliError::Input(format!(
            "`{t}` is not exactly representable; write it as \"p/q\" or use --mode float"
        ))
    })
}

fn parse_param_list<S: Scalar>(text: &str) -> Result<Vec<S>, CliError> {
    text.split(',').map(parse_param).collect()
}

/// Builds both structures of a bundle pair, mapping any defect to an input
/// error (commands that need a pair have no pass/fail verdict of their own).
fn pair_family<S: Scalar>(text: &str, eps: f64) -> Result<SphereFamily<S>, CliError> {
    let bundle = parse_bundle::<S>(text)?;
    let pair = bundle.pair.ok_or_else(|| {
        CliError::Input("this command needs a bundle with a `pair` matrix".to_string())
    })?;
    let i1 = GenStructure::new(bundle.structure, eps)?;
    let i2 = GenStructure::new(pair, eps)?;
    Ok(build_family(&i1, &i2)?)
}

fn cmd_verify<S: Scalar>(input: &Path, cfg: &ConfigArgs) -> Result<bool, CliError> {
    let text = read_input(input)?;
    let bundle = parse_bundle::<S>(&text)?;
    let m = &bundle.structure;
    if m.rows() != m.cols() || m.rows() % 2 != 0 {
        return Err(CliError::Structure(GcsError::BadShape {
            rows: m.rows(),
            cols: m.cols(),
        }));
    }
    let dim_v = m.rows() / 2;
    if dim_v % 2 != 0 {
        return Err(CliError::Structure(GcsError::OddDimension(dim_v)));
    }

    let eps = cfg.epsilon;
    let mut checks = Vec::new();
    let srep = is_generalized_complex(m, eps);
    let mut square = CheckItem::new("structure squares to −Id", srep.squares_to_minus_id)
        .with_residual(srep.square_residual);
    if !srep.squares_to_minus_id {
        square = square.with_detail("square check failed");
    }
    checks.push(square);
    let mut orth = CheckItem::new(
        "structure preserves the split pairing",
        srep.pairing_orthogonal,
    )
    .with_residual(srep.orthogonality_residual);
    if !srep.pairing_orthogonal {
        orth = orth.with_detail("orthogonality check failed");
    }
    checks.push(orth);

    let structure = if srep.is_valid() {
        let s = GenStructure::new(m.clone(), eps)?;
        let ty = s.type_of();
        checks.push(
            CheckItem::new("type lies in [0, dim V / 2]", ty <= dim_v)
                .with_detail(format!("type = {ty}")),
        );
        Some(s)
    } else {
        None
    };

    let pair = match (&bundle.pair, &structure) {
        (Some(pm), Some(s)) => {
            let prep = is_generalized_complex(pm, eps);
            checks.push(
                CheckItem::new("pair squares to −Id", prep.squares_to_minus_id)
                    .with_residual(prep.square_residual),
            );
            checks.push(
                CheckItem::new("pair preserves the split pairing", prep.pairing_orthogonal)
                    .with_residual(prep.orthogonality_residual),
            );
            if prep.is_valid() {
                let p = GenStructure::new(pm.clone(), eps)?;
                let item = match anticommutator_outcome(s, &p) {
                    AnticommutatorOutcome::Scalar { p, in_range } => {
                        CheckItem::new("pair anticommutator is a scalar with |p| < 1", in_range)
                            .with_detail(format!("p = {p}"))
                    }
                    AnticommutatorOutcome::NotScalar { residual } => {
                        CheckItem::new("pair anticommutator is a scalar with |p| < 1", false)
                            .with_residual(residual)
                            .with_detail("the anticommutator is not a multiple of the identity")
                    }
                };
                checks.push(item);
                Some(p)
            } else {
                None
            }
        }
        (Some(pm), None) => {
            let prep = is_generalized_complex(pm, eps);
            checks.push(
                CheckItem::new("pair squares to −Id", prep.squares_to_minus_id)
                    .with_residual(prep.square_residual),
            );
            checks.push(
                CheckItem::new("pair preserves the split pairing", prep.pairing_orthogonal)
                    .with_residual(prep.orthogonality_residual),
            );
            None
        }
        (None, _) => None,
    };

    if let Some(base) = &bundle.base_algebra {
        if base.dim() != dim_v {
            return Err(CliError::Input(format!(
                "the base algebra has dimension {}, the structure needs {dim_v}",
                base.dim()
            )));
        }
        let double = cotangent_double(base);
        if let Some(s) = &structure {
            checks.push(integrability_item("structure", &double, s, eps)?);
        }
        if let Some(p) = &pair {
            checks.push(integrability_item("pair", &double, p, eps)?);
        }
    }

    let report = Report::new(
        "structure bundle verification",
        Conventions::new(mode_name::<S>(), eps, cfg.s2_symplectic),
        checks,
    );
    write_output(cfg, &report.to_json())?;
    Ok(report.all_pass)
}

fn integrability_item<S: Scalar>(
    who: &str,
    double: &gctool_core::lie::DoubleAlgebra<S>,
    s: &GenStructure<S>,
    eps: f64,
) -> Result<CheckItem, CliError> {
    let t = nijenhuis_raw(double, s.mat())?;
    let nonzero = t.nonzero_entries(eps);
    let mut item = CheckItem::new(
        &format!("{who} is integrable over the base algebra"),
        nonzero.is_empty(),
    )
    .with_residual(t.max_abs());
    if let Some((i, j, k, v)) = nonzero.first() {
        item = item.with_detail(format!(
            "first nonzero value N(E{}, E{}, E{}) = {}",
            i + 1,
            j + 1,
            k + 1,
            v
        ));
    }
    Ok(item)
}

fn cmd_typemap<S: Scalar>(input: &Path, cfg: &ConfigArgs) -> Result<bool, CliError> {
    let text = read_input(input)?;
    let family = pair_family::<S>(&text, cfg.epsilon)?;
    let map = family.family_typemap(cfg.grid, cfg.epsilon);
    let out = match cfg.format {
        Format::Json => type_map_to_json(&map),
        Format::Csv => type_map_to_csv(&map),
    };
    write_output(cfg, &out)?;
    Ok(true)
}

fn cmd_twistor_report<S: Scalar>(input: &Path, cfg: &ConfigArgs) -> Result<bool, CliError> {
    let text = read_input(input)?;
    let family = pair_family::<S>(&text, cfg.epsilon)?;
    let report = twistor_type_report(&family, cfg.grid, cfg.s2_symplectic, cfg.epsilon);
    let out = match cfg.format {
        Format::Json => twistor_report_to_json(&report),
        Format::Csv => twistor_report_to_csv(&report),
    };
    write_output(cfg, &out)?;
    Ok(true)
}

fn cmd_example<S: Scalar>(which: &ExampleCommand, cfg: &ConfigArgs) -> Result<bool, CliError> {
    let report = match which {
        ExampleCommand::Kt { b1, b2 } => {
            let e = KodairaThurstonExample::new(parse_param::<S>(b1)?, parse_param::<S>(b2)?)?;
            verify_kt(&e, cfg.epsilon, cfg.grid)?
        }
        ExampleCommand::Torus { lambda, mu } => {
            let e = TorusExample::new(parse_param_list::<S>(lambda)?, parse_param_list::<S>(mu)?)?;
            verify_torus(&e, cfg.epsilon, cfg.grid)?
        }
    };
    write_output(cfg, &report.to_json())?;
    Ok(report.all_pass)
}
