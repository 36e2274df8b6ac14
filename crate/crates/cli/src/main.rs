//! `pzf` command-line front end.
//!
//! Exit status: 0 on success, 1 for invalid arguments or configuration,
//! 2 for runtime failures (I/O, too many singular trials).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pzf::harness::{
    closed_form_rates, coupling_statistics, parse_schemes, parse_snr_grid, run_sweep,
    with_threads, write_bound_csv, write_coupling_csv, write_csv, ChannelKind, SimulationConfig,
};
use pzf::Result;

#[derive(Parser, Debug)]
#[command(name = "pzf", version, about = "Phased-ZF hybrid precoding simulator")]
struct Cli {
    /// Worker threads for Monte Carlo trials (0 = one per core)
    #[arg(long, global = true, env = "PZF_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte Carlo spectral-efficiency sweep, written as CSV
    Sweep(SweepArgs),
    /// Closed-form PZF bound and full-ZF large-array rate per SNR point
    Bound(BoundArgs),
    /// Sample moments of the PZF coupling terms under Rayleigh fading
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChannelArg {
    Rayleigh,
    Mmwave,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuantDistanceArg {
    /// Wrap-around distance; 2π is the same level as 0
    Circular,
    /// Plain |φ - 2πn/2^B| with φ in [0, 2π)
    Literal,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// TOML config file; flags below override its keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base-station antennas N_t
    #[arg(long)]
    antennas: Option<usize>,
    /// Single-antenna users K (also the number of RF chains)
    #[arg(long)]
    users: Option<usize>,
    /// Channel model
    #[arg(long, value_enum)]
    channel: Option<ChannelArg>,
    /// Propagation paths per user (mmwave)
    #[arg(long)]
    paths: Option<usize>,
    /// Antenna spacing in wavelengths (mmwave and bmimo)
    #[arg(long)]
    spacing: Option<f64>,
    /// SNR grid in dB: start:step:stop, a comma list, or one value
    #[arg(long, allow_hyphen_values = true)]
    snr: Option<String>,
    /// Channel realizations per SNR point
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated schemes: pzf, pzf_q<bits>, fczf, bmimo
    #[arg(long)]
    schemes: Option<String>,
    /// Phase distance used by quantized PZF
    #[arg(long, value_enum)]
    quant_distance: Option<QuantDistanceArg>,
    /// Add the closed-form pzf_bound and fczf_asymptotic columns
    #[arg(long)]
    closed_form: bool,
    /// Allow bmimo on Rayleigh channels
    #[arg(long)]
    allow_bmimo_rayleigh: bool,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Base-station antennas N_t
    #[arg(long, default_value_t = 128)]
    antennas: usize,
    /// Users K
    #[arg(long, default_value_t = 4)]
    users: usize,
    /// SNR grid in dB: start:step:stop, a comma list, or one value
    #[arg(long, allow_hyphen_values = true, default_value = "-10:2:10")]
    snr: String,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Base-station antennas N_t
    #[arg(long, default_value_t = 256)]
    antennas: usize,
    /// Independent Rayleigh draws (at least 1000)
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SweepArgs {
    fn into_config(self) -> Result<SimulationConfig> {
        let mut cfg = match &self.config {
            Some(path) => SimulationConfig::from_file(path)?,
            None => SimulationConfig::default(),
        };
        if let Some(v) = self.antennas {
            cfg.antennas = v;
        }
        if let Some(v) = self.users {
            cfg.users = v;
        }
        if let Some(v) = self.channel {
            cfg.channel = match v {
                ChannelArg::Rayleigh => ChannelKind::Rayleigh,
                ChannelArg::Mmwave => ChannelKind::Mmwave,
            };
        }
        if let Some(v) = self.paths {
            cfg.mmwave_paths = v;
        }
        if let Some(v) = self.spacing {
            cfg.mmwave_spacing = v;
        }
        if let Some(v) = &self.snr {
            cfg.snr_grid_db = parse_snr_grid(v)?;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.schemes {
            cfg.schemes = parse_schemes(v)?;
        }
        if let Some(v) = self.quant_distance {
            cfg.quant_circular = matches!(v, QuantDistanceArg::Circular);
        }
        cfg.emit_closed_form |= self.closed_form;
        cfg.allow_bmimo_rayleigh |= self.allow_bmimo_rayleigh;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Renders into memory first so a failed run never leaves a partial file.
fn emit<F>(out: Option<&PathBuf>, render: F) -> Result<()>
where
    F: FnOnce(&mut Vec<u8>) -> Result<()>,
{
    let mut buf = Vec::new();
    render(&mut buf)?;
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(&buf)?;
            w.flush()?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&buf)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep(args) => {
            let out = args.out.clone();
            let cfg = args.into_config()?;
            let result = with_threads(cli.threads, || run_sweep(&cfg))??;
            emit(out.as_ref(), |buf| write_csv(&result, buf))
        }
        Command::Bound(args) => {
            let cfg = SimulationConfig {
                antennas: args.antennas,
                users: args.users,
                snr_grid_db: parse_snr_grid(&args.snr)?,
                ..SimulationConfig::default()
            };
            cfg.validate()?;
            let rows = closed_form_rates(&cfg)?;
            emit(args.out.as_ref(), |buf| write_bound_csv(&rows, buf))
        }
        Command::Stats(args) => {
            let stats = with_threads(cli.threads, || {
                coupling_statistics(args.antennas, args.trials, args.seed)
            })??;
            emit(args.out.as_ref(), |buf| write_coupling_csv(&stats, buf))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("error: {message}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
