use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jcspec_cli::config::{parse_entries, Mode};
use jcspec_cli::run::run_to_destination;

/// Jaynes-Cummings transmission spectra, mode summaries and weak-coupling sweeps as CSV.
#[derive(Parser)]
#[command(name = "jcspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transmission versus drive frequency: `omega,T`.
    Spectrum(Common),
    /// Transmission over the (detuning, frequency) plane: `delta,omega,T`.
    Chart(Common),
    /// Exact peak height and linewidth of both branches against the effective-mode model.
    Modes(Common),
    /// Induced loss, dispersive shift and single-mode peak versus detuning.
    Weak(Common),
    /// Lorentzian fit of an `omega,T` trace.
    Fit {
        #[command(flatten)]
        common: Common,
        /// Trace to fit; overrides the `input` key.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; overrides the `output` key. Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Extra `key=value` assignments applied after the file.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();

    let (mode, common, input) = match cli.command {
        Command::Spectrum(c) => (Mode::Spectrum, c, None),
        Command::Chart(c) => (Mode::Chart, c, None),
        Command::Modes(c) => (Mode::Modes, c, None),
        Command::Weak(c) => (Mode::Weak, c, None),
        Command::Fit { common, input } => (Mode::Fit, common, input),
    };

    let text = match fs::read_to_string(&common.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", common.config.display());
            return ExitCode::from(2);
        }
    };
    let config = parse_entries(&text).and_then(|mut entries| {
        for o in &common.overrides {
            entries.apply_override(o)?;
        }
        if let Some(path) = &input {
            entries.apply_override(&format!("input={}", path.display()))?;
        }
        entries.resolve(Some(mode))
    });
    let mut config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", common.config.display());
            return ExitCode::from(2);
        }
    };
    if common.output.is_some() {
        config.output = common.output;
    }

    match run_to_destination(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
