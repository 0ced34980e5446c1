use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use relspin_cli::{
    cmd_curve, cmd_ppt, cmd_probs, cmd_report, cmd_simulate, parse_alpha, parse_curves, parse_povm, parse_prior,
    parse_spin, spin_range, CliResult, Format, ScenarioConfig,
};

#[derive(Parser)]
#[command(name = "relspin", version, about = "Relative-angle estimation between two spins")]
struct Cli {
    /// Output format: csv or json. Defaults to csv for tables, json otherwise.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for Monte Carlo runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpinArgs {
    /// First spin, e.g. 1/2, 3 or 1.5.
    #[arg(long)]
    j1: String,
    /// Second spin.
    #[arg(long)]
    j2: String,
}

#[derive(Args)]
struct EstimationArgs {
    #[command(flatten)]
    spins: SpinArgs,
    /// Prior over the relative angle: pap or uniform.
    #[arg(long, default_value = "pap")]
    prior: String,
    /// Measurement: optimal or local.
    #[arg(long, default_value = "optimal")]
    povm: String,
}

#[derive(Subcommand)]
enum Command {
    /// Table of p(J|alpha) on a 181-point grid, or at one angle.
    Probs {
        #[command(flatten)]
        spins: SpinArgs,
        /// Single angle: a number, `pi`, `pi/n` or `k*pi/n`.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Outcome probabilities, posteriors and information gains.
    Report {
        #[command(flatten)]
        est: EstimationArgs,
    },
    /// Average information gain for spin-1/2 with spin-j over a range of j.
    Curve {
        #[arg(long, default_value = "1/2")]
        j_min: String,
        #[arg(long, default_value = "50")]
        j_max: String,
        #[arg(long, default_value = "1/2")]
        j_step: String,
        /// Any subset of a (pap, joint), b (pap, local), c (uniform, joint), d (uniform, local).
        #[arg(long, default_value = "abcd")]
        curves: String,
    },
    /// PPT threshold of the two-outcome invariant family for spin-1/2 with spin-j.
    Ppt {
        #[arg(long)]
        j: String,
    },
    /// Monte Carlo run of repeated single-shot experiments.
    Simulate {
        #[command(flatten)]
        est: EstimationArgs,
        /// Number of trials.
        #[arg(long)]
        n: usize,
    },
}

fn format_or(cli: &Cli, default: Format) -> CliResult<Format> {
    cli.format.as_deref().map(str::parse).transpose().map(|f| f.unwrap_or(default))
}

fn scenario(cli: &Cli, est: &EstimationArgs, default: Format) -> CliResult<ScenarioConfig> {
    Ok(ScenarioConfig {
        j1: parse_spin("j1", &est.spins.j1)?,
        j2: parse_spin("j2", &est.spins.j2)?,
        prior: parse_prior(&est.prior)?,
        povm: parse_povm(&est.povm)?,
        format: format_or(cli, default)?,
        seed: cli.seed,
        alpha: None,
    })
}

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Probs { spins, alpha } => {
            let config = ScenarioConfig {
                j1: parse_spin("j1", &spins.j1)?,
                j2: parse_spin("j2", &spins.j2)?,
                prior: relspin::PriorKind::ParallelAntiparallel,
                povm: relspin::PovmKind::Optimal,
                format: format_or(cli, Format::Csv)?,
                seed: cli.seed,
                alpha: alpha.as_deref().map(parse_alpha).transpose()?,
            };
            cmd_probs(&config)
        }
        Command::Report { est } => cmd_report(&scenario(cli, est, Format::Json)?),
        Command::Curve { j_min, j_max, j_step, curves } => {
            let js = spin_range(parse_spin("j-min", j_min)?, parse_spin("j-max", j_max)?, parse_spin("j-step", j_step)?)?;
            cmd_curve(&js, &parse_curves(curves)?, format_or(cli, Format::Csv)?)
        }
        Command::Ppt { j } => cmd_ppt(parse_spin("j", j)?, format_or(cli, Format::Json)?),
        Command::Simulate { est, n } => cmd_simulate(&scenario(cli, est, Format::Json)?, *n),
    }
}

fn emit(cli: &Cli, data: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, data)?,
        None => std::io::stdout().lock().write_all(data.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|data| emit(&cli, &data)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

