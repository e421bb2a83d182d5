//! `stc`: command-line front end for the singlet-triplet gate simulator.
//!
//! Every subcommand reads one JSON config file and writes a CSV (or JSON)
//! table. Exit codes: 0 success, 1 configuration or I/O error, 2 physics
//! error (resonant denominator, occupation window, vanishing coupling).

mod commands;
mod config;
mod error;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, RunConfig};
use error::CliError;
use output::Rendered;

#[derive(Parser)]
#[command(name = "stc", about = "Singlet-triplet qubits coupled through a superconductor", disable_version_flag = true)]
struct Cli {
    /// Print the version and the physical constants table.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads for parameter sweeps.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Exchange couplings of the Hubbard model for every closed form.
    Couplings(Common),
    /// Anisotropy functions over a (rotation_angle, theta) grid.
    Gammas(Common),
    /// Eigenvalues of the four-spin model over device-parameter axes.
    Spectrum(Common),
    /// Leakage out of the computational subspace over a time_ns axis.
    Leakage(Common),
    /// Cross coupling against the Josephson phase.
    Jphi(Common),
    /// cZ gate infidelity over device-parameter axes.
    Fidelity(Common),
    /// Reduced Hubbard model against the analytic spin model.
    SwVerify(Common),
}

fn print_version() {
    println!("stc {}", env!("CARGO_PKG_VERSION"));
    for (name, value, unit) in stc_core::constants::TABLE {
        println!("{name} = {value:.10e} {unit}");
    }
}

fn run(command: &Command) -> Result<(), CliError> {
    let (Command::Couplings(args)
    | Command::Gammas(args)
    | Command::Spectrum(args)
    | Command::Leakage(args)
    | Command::Jphi(args)
    | Command::Fidelity(args)
    | Command::SwVerify(args)) = command;
    let config = RunConfig::load(&args.config)?;
    let workers = args.workers.map(|n| n as usize).or(config.workers);
    let rendered: Rendered = match command {
        Command::Couplings(_) => commands::couplings(&config)?,
        Command::Gammas(_) => commands::gammas(&config)?,
        Command::Spectrum(_) => commands::spectrum(&config)?,
        Command::Leakage(_) => commands::leakage(&config)?,
        Command::Jphi(_) => commands::jphi(&config)?,
        Command::Fidelity(_) => commands::fidelity(&config, workers)?,
        Command::SwVerify(_) => commands::sw_verify_cmd(&config)?,
    };
    let format = args.format.or(config.output.format).unwrap_or_default();
    match args.out.as_ref().or(config.output.path.as_ref()) {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Output(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            rendered.write(&mut w, format)?;
            w.flush()?;
        }
        None => rendered.write(io::stdout().lock(), format)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if cli.version {
        print_version();
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(1);
    };
    match run(&command) {
        Ok(()) | Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
