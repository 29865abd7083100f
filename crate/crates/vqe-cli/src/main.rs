//! `vqe`: single-point energies and dissociation scans from the command
//! line. Results go to stdout unless routed to files; exit codes are 0 for
//! success, 1 for configuration errors, 2 for runtime failures, and 3 for
//! a scan that lost some of its points.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use vqe_core::driver::{
    result_json, run_point, run_scan, scan_csv, trace_csv, write_text_file, BackendKind,
    InitialPointSpec, InitialStateKind, OptimizerKind, VarFormKind, VqeConfig,
};
use vqe_core::mapping::MappingKind;
use vqe_core::{Result, VqeError};

#[derive(Parser)]
#[command(name = "vqe", version, about = "Hydrogen-molecule VQE energies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the energy at a single bond distance.
    Point(PointArgs),
    /// Sweep the bond distance and emit the energy curve.
    Scan(ScanArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Fermion-to-qubit encoding (also accepts jordan_wigner, jw, bk).
    #[arg(long, value_parser = parse_mapping, default_value = "parity")]
    mapping: MappingKind,

    /// Force the symmetry-based two-qubit reduction on.
    #[arg(long, conflicts_with = "no_tqr")]
    tqr: bool,

    /// Force the two-qubit reduction off.
    #[arg(long = "no-tqr")]
    no_tqr: bool,

    /// Reference state placed before the variational form.
    #[arg(long, value_parser = parse_enum::<InitialStateKind>, default_value = "hartree_fock")]
    initial_state: InitialStateKind,

    /// Variational circuit family.
    #[arg(long, value_parser = parse_enum::<VarFormKind>, default_value = "uccsd")]
    ansatz: VarFormKind,

    /// Rotation-layer repetitions in the variational form.
    #[arg(long, default_value_t = 1)]
    depth: usize,

    /// Classical minimizer.
    #[arg(long, value_parser = parse_enum::<OptimizerKind>, default_value = "bfgs")]
    optimizer: OptimizerKind,

    /// Expectation evaluation: exact statevector or shot sampling.
    #[arg(long, value_parser = parse_enum::<BackendKind>, default_value = "statevector")]
    backend: BackendKind,

    /// Shots per expectation estimate on the sampled backend.
    #[arg(long, default_value_t = 8192)]
    shots: u64,

    /// Optimizer iteration budget.
    #[arg(long, default_value_t = 500)]
    max_iter: usize,

    /// Master seed for every random choice in the run.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Starting parameters: zeros, random, or v1,v2,...
    #[arg(long, value_parser = parse_initial_point, default_value = "random")]
    initial_point: InitialPointSpec,
}

impl CommonArgs {
    fn to_config(&self, distance: f64) -> VqeConfig {
        let tqr = match (self.tqr, self.no_tqr) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        };
        VqeConfig {
            distance,
            mapping: self.mapping,
            tqr,
            initial_state: self.initial_state,
            var_form: self.ansatz,
            depth: self.depth,
            optimizer: self.optimizer,
            backend: self.backend,
            shots: self.shots,
            max_iter: self.max_iter,
            seed: self.seed,
            initial_point: self.initial_point.clone(),
            ..VqeConfig::default()
        }
    }
}

#[derive(Args)]
struct PointArgs {
    /// Bond distance in angstrom.
    #[arg(long, default_value_t = 0.74)]
    dist: f64,

    #[command(flatten)]
    common: CommonArgs,

    /// Write the result JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also write the convergence trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// First bond distance in angstrom.
    #[arg(long, default_value_t = 0.3)]
    from: f64,

    /// Last bond distance in angstrom.
    #[arg(long, default_value_t = 2.5)]
    to: f64,

    /// Distance increment in angstrom.
    #[arg(long, default_value_t = 0.1)]
    step: f64,

    #[command(flatten)]
    common: CommonArgs,

    /// Start each point from the previous point's optimum.
    #[arg(long)]
    warm_start: bool,

    /// Write the curve CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_enum<T>(s: &str) -> std::result::Result<T, String>
where
    T: FromStr<Err = VqeError>,
{
    s.parse().map_err(|e: VqeError| e.to_string())
}

fn parse_mapping(s: &str) -> std::result::Result<MappingKind, String> {
    s.trim()
        .replace('_', "-")
        .parse()
        .map_err(|e: VqeError| e.to_string())
}

fn parse_initial_point(s: &str) -> std::result::Result<InitialPointSpec, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "zeros" => Ok(InitialPointSpec::Zeros),
        "random" => Ok(InitialPointSpec::Random(0.0, 1.0)),
        text => {
            let values: std::result::Result<Vec<f64>, _> = text
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect();
            match values {
                Ok(v) if !v.is_empty() => Ok(InitialPointSpec::Explicit(v)),
                _ => Err(format!(
                    "expected zeros, random, or a comma-separated list of numbers, got '{s}'"
                )),
            }
        }
    }
}

/// Spell out the distance grid; the endpoint is included when the step
/// divides the range, and fractional leftovers are dropped.
fn scan_distances(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() || !step.is_finite() || step <= 0.0 || to < from {
        return Err(VqeError::Configuration(format!(
            "scan range needs from <= to and a positive step, got from {from}, to {to}, step {step}"
        )));
    }
    let count = ((to - from) / step + 0.5).floor() as usize + 1;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let d = from + step * i as f64;
        if d > to + step * 1e-6 {
            break;
        }
        out.push(d);
    }
    Ok(out)
}

fn emit(text: &str, target: Option<&PathBuf>) -> Result<()> {
    match target {
        Some(path) => write_text_file(&path.to_string_lossy(), text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_point_command(args: &PointArgs) -> Result<ExitCode> {
    let config = args.common.to_config(args.dist);
    let result = run_point(&config)?;
    emit(&result_json(&result), args.out.as_ref())?;
    if let Some(trace_path) = &args.trace {
        write_text_file(&trace_path.to_string_lossy(), &trace_csv(&result))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_scan_command(args: &ScanArgs) -> Result<ExitCode> {
    let config = args.common.to_config(VqeConfig::default().distance);
    let distances = scan_distances(args.from, args.to, args.step)?;
    let outcome = run_scan(&config, &distances, args.warm_start)?;
    for failure in &outcome.failures {
        eprintln!(
            "scan point at {} angstrom failed: {}",
            failure.distance, failure.message
        );
    }
    emit(&scan_csv(&outcome.points), args.out.as_ref())?;
    if outcome.points.is_empty() {
        Ok(ExitCode::from(2))
    } else if outcome.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // Help and version go to stdout, usage errors to stderr.
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Point(args) => run_point_command(args),
        Command::Scan(args) => run_scan_command(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code().clamp(0, 255) as u8)
        }
    }
}
