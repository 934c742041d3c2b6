use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wtangle::check::run_check;
use wtangle::dump::{emit_matrix, Target};
use wtangle::rindler::{AccelerationParam, Scenario};
use wtangle::sweep::config::split_list;
use wtangle::sweep::{run_sweep, AccelSpec, Axis, StateKind, SweepSettings};

/// Entanglement of the four-qubit W state under uniform acceleration.
#[derive(Parser, Debug)]
#[command(name = "wtangle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep acceleration parameters and write measures as CSV.
    Sweep(SweepArgs),
    /// Compare the numeric pipeline against the closed-form curves.
    Check(CheckArgs),
    /// Print the observed density matrix or a partial transpose.
    Matrix(MatrixArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Key-value config file; flags given here override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Figure preset (fig1a .. fig9).
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    state: Option<String>,
    /// OBS=R, OBS=LO:HI or OBS=@OTHER. Repeatable.
    #[arg(long)]
    accel: Vec<String>,
    /// Points per swept axis.
    #[arg(long)]
    grid: Option<usize>,
    /// Comma-separated measure names.
    #[arg(long)]
    measures: Option<String>,
    /// Output CSV path (standard output if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Check names, or `all`.
    #[arg(default_value = "all")]
    names: Vec<String>,
    /// Shift every r fed to the numeric pipeline (fault injection).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    perturb_r: f64,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// OBS=R for each accelerated observer. Repeatable.
    #[arg(long)]
    accel: Vec<String>,
    /// Partial-transpose over this mode (for example `D1` or `A`).
    #[arg(long)]
    pt: Option<String>,
    /// Also print each entry matched against sine/cosine monomials.
    #[arg(long)]
    symbolic: bool,
}

fn sweep(args: SweepArgs) -> Result<bool, String> {
    let file = match &args.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            SweepSettings::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => SweepSettings::default(),
    };
    let mut accel = Vec::new();
    for a in &args.accel {
        for part in a.split(',').filter(|p| !p.trim().is_empty()) {
            accel.push(AccelSpec::parse(part).map_err(|e| e.to_string())?);
        }
    }
    let flags = SweepSettings {
        preset: args.preset,
        state: args
            .state
            .as_deref()
            .map(StateKind::parse)
            .transpose()
            .map_err(|e| e.to_string())?,
        accel,
        grid: args.grid,
        measures: args.measures.as_deref().map(split_list).unwrap_or_default(),
        out: args.out,
        threads: args.threads,
    };
    let cfg = file
        .overridden_by(flags)
        .resolve()
        .map_err(|e| e.to_string())?;
    let table = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let csv = table.to_csv().map_err(|e| e.to_string())?;
    match &cfg.output {
        Some(path) => std::fs::write(path, csv).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| e.to_string())?,
    }
    Ok(true)
}

fn check(args: CheckArgs) -> Result<bool, String> {
    let report = run_check(&args.names, args.perturb_r).map_err(|e| e.to_string())?;
    println!("{report}");
    Ok(report.passed())
}

fn matrix(args: MatrixArgs) -> Result<bool, String> {
    let mut scenario = Scenario::new();
    for a in &args.accel {
        let spec = AccelSpec::parse(a).map_err(|e| e.to_string())?;
        let Axis::Fixed(r) = spec.axis else {
            return Err(format!("matrix needs a fixed value, got `{a}`"));
        };
        let p = AccelerationParam::new(r).map_err(|e| e.to_string())?;
        scenario.insert(spec.observer, p);
    }
    let target = match args.pt {
        Some(mode) => Target::PartialTranspose(mode),
        None => Target::Rho,
    };
    let text = emit_matrix(&scenario, &target, args.symbolic).map_err(|e| e.to_string())?;
    print!("{text}");
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = !e.use_stderr();
            let _ = e.print();
            return if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            };
        }
    };
    let outcome = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Check(a) => check(a),
        Command::Matrix(a) => matrix(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
