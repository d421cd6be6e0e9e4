use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use svf_cli::{
    cmd_compare, cmd_process, cmd_response, cmd_stability, CliError, RunConfig, DEFAULT_N_FFT,
    DEFAULT_POINTS,
};
use svf_core::{Output, Topology};

/// State variable filter toolkit: filter audio and tabulate responses.
#[derive(Parser)]
#[command(name = "svf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and measured frequency response as CSV
    Response {
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long, default_value_t = 44100.0)]
        fs: f64,
        #[arg(long, default_value_t = DEFAULT_N_FFT)]
        n_fft: usize,
        /// Closed-form grid size
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        /// CSV destination (standard output when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Filter a mono WAV file and write one output as float32 WAV
    Process {
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Chamberlin usability limit for each Q
    Stability {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
        #[arg(long, default_value_t = 44100.0)]
        fs: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Lowpass peak drift of the Chamberlin and improved filters
    Compare {
        #[arg(long, value_delimiter = ',', default_values_t = [5000.0, 10000.0, 15000.0])]
        f: Vec<f64>,
        #[arg(long, default_value_t = 5.0)]
        q: f64,
        #[arg(long, default_value_t = 44100.0)]
        fs: f64,
        #[arg(long, default_value_t = DEFAULT_N_FFT)]
        n_fft: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FilterArgs {
    /// chamberlin, rearranged, improved or leaky
    #[arg(long, value_parser = parse_topology, default_value = "improved")]
    topology: Topology,
    /// Comma-separated outputs: hp, bp, lp, br, ap
    #[arg(long = "out", value_delimiter = ',', value_parser = parse_output, default_value = "lp")]
    outputs: Vec<Output>,
    /// Cutoff or centre frequency in Hz
    #[arg(long)]
    f: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    q: f64,
}

fn parse_topology(s: &str) -> Result<Topology, String> {
    Topology::from_name(s).ok_or_else(|| format!("unknown topology '{s}'"))
}

fn parse_output(s: &str) -> Result<Output, String> {
    Output::from_short_name(s).ok_or_else(|| format!("unknown output '{s}'"))
}

fn with_sink(path: Option<&Path>, run: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            run(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            run(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Response {
            filter,
            fs,
            n_fft,
            points,
            output,
        } => {
            let mut cfg = RunConfig::new(filter.topology, filter.outputs, filter.f, filter.q, fs);
            cfg.n_fft = n_fft;
            cfg.points = points;
            cfg.validate()?;
            with_sink(output.as_deref(), |mut w| cmd_response(&cfg, &mut w))
        }
        Command::Process {
            filter,
            input,
            output,
        } => {
            let cfg = RunConfig {
                input: Some(input.clone()),
                output: Some(output.clone()),
                ..RunConfig::new(filter.topology, filter.outputs, filter.f, filter.q, 0.0)
            };
            let report = cmd_process(&cfg, &input, &output)?;
            eprintln!(
                "svf: wrote {} samples at {} Hz to {}",
                report.samples,
                report.sample_rate,
                output.display()
            );
            Ok(())
        }
        Command::Stability { q, fs, output } => {
            with_sink(output.as_deref(), |mut w| cmd_stability(&q, fs, &mut w))
        }
        Command::Compare {
            f,
            q,
            fs,
            n_fft,
            output,
        } => with_sink(output.as_deref(), |mut w| cmd_compare(&f, q, fs, n_fft, &mut w)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("svf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
