//! Command implementations behind the `svf` binary.
//!
//! Every command writes CSV with a header row, `.` decimals and `\n` line
//! endings. Exit codes: 0 success, 2 parameter error, 3 input-format error,
//! 4 instability.

use std::io::Write;
use std::path::{Path, PathBuf};

use svf_core::analysis::{
    closed_form_curve, dft_magnitude, impulse_response, log_grid, peak_frequency, to_db,
    topology_biquad, ResponseCurve,
};
use svf_core::{
    chamberlin_frequency, stability_limit_chamberlin, Filter, FilterParams, Output, OutputBuffers,
    Topology,
};
use thiserror::Error;

pub mod wav;

pub const DEFAULT_N_FFT: usize = 8192;
pub const DEFAULT_POINTS: usize = 1024;
/// Lowest frequency of the closed-form response grid, in Hz.
pub const GRID_START_HZ: f64 = 10.0;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("bad input: {0}")]
    Format(String),
    #[error("filter unstable at sample {index}")]
    Unstable { index: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) => 2,
            CliError::Format(_) => 3,
            CliError::Unstable { .. } => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<svf_core::Error> for CliError {
    fn from(e: svf_core::Error) -> Self {
        match e {
            svf_core::Error::NonFinite { index } => CliError::Unstable { index },
            other => CliError::Param(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Settings shared by the filtering and response commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub topology: Topology,
    pub outputs: Vec<Output>,
    pub f: f64,
    pub q: f64,
    pub fs: f64,
    pub n_fft: usize,
    pub points: usize,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(topology: Topology, outputs: Vec<Output>, f: f64, q: f64, fs: f64) -> Self {
        Self {
            topology,
            outputs,
            f,
            q,
            fs,
            n_fft: DEFAULT_N_FFT,
            points: DEFAULT_POINTS,
            input: None,
            output: None,
        }
    }

    /// Checks the configuration and maps `f` to filter parameters with the
    /// topology's tuning map.
    pub fn validate(&self) -> Result<FilterParams, CliError> {
        if self.outputs.is_empty() {
            return Err(CliError::Param("at least one output must be selected".into()));
        }
        for &o in &self.outputs {
            if !self.topology.has_output(o) {
                return Err(CliError::Param(format!(
                    "{} topology has no {o} output",
                    self.topology
                )));
            }
        }
        if !(self.f.is_finite() && self.f > 0.0) {
            return Err(CliError::Param(format!("f must be > 0, got {}", self.f)));
        }
        if self.n_fft < 2 || !self.n_fft.is_power_of_two() {
            return Err(CliError::Param(format!(
                "n_fft must be a power of two >= 2, got {}",
                self.n_fft
            )));
        }
        if self.points < 2 {
            return Err(CliError::Param(format!("points must be >= 2, got {}", self.points)));
        }
        Ok(self.topology.params(self.f, self.q, self.fs)?)
    }
}

fn check_stable(buffers: &OutputBuffers) -> Result<(), CliError> {
    match buffers.overload {
        Some(index) => Err(CliError::Unstable { index }),
        None => Ok(()),
    }
}

fn measured(topology: Topology, params: &FilterParams, n: usize) -> Result<OutputBuffers, CliError> {
    let ir = impulse_response(topology, params, n)?;
    check_stable(&ir)?;
    Ok(ir)
}

fn write_curve(
    out: &mut impl Write,
    output: Output,
    source: &str,
    curve: &ResponseCurve,
) -> std::io::Result<()> {
    for ((f, m), p) in curve.freqs.iter().zip(&curve.mag).zip(&curve.phase) {
        writeln!(out, "{output},{source},{f},{},{p}", to_db(*m))?;
    }
    Ok(())
}

/// Closed-form and measured responses of each selected output.
///
/// Closed-form rows use `points` log-spaced frequencies from 10 Hz to
/// `0.49 fs`; measured rows are the DFT bins of an `n_fft`-sample impulse
/// response.
pub fn cmd_response(cfg: &RunConfig, out: &mut impl Write) -> Result<(), CliError> {
    let params = cfg.validate()?;
    let top = svf_core::BILINEAR_GUARD * cfg.fs;
    if top <= GRID_START_HZ {
        return Err(CliError::Param(format!(
            "fs must exceed {} Hz for the response grid",
            GRID_START_HZ / svf_core::BILINEAR_GUARD
        )));
    }
    let grid = log_grid(GRID_START_HZ, top, cfg.points);
    let ir = measured(cfg.topology, &params, cfg.n_fft)?;

    writeln!(out, "output,source,freq_hz,mag_db,phase_rad")?;
    for &o in &cfg.outputs {
        let c = topology_biquad(cfg.topology, &params, o)?;
        write_curve(out, o, "closed_form", &closed_form_curve(&c, &grid, cfg.fs))?;
        let curve = dft_magnitude(ir.require(o)?, cfg.fs, cfg.n_fft)?;
        write_curve(out, o, "measured", &curve)?;
    }
    Ok(())
}

/// Summary of a `process` run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessReport {
    pub samples: usize,
    pub sample_rate: u32,
}

/// Filters a mono WAV file and writes the selected output as float32 WAV.
pub fn cmd_process(cfg: &RunConfig, input: &Path, output: &Path) -> Result<ProcessReport, CliError> {
    if cfg.outputs.len() != 1 {
        return Err(CliError::Param(format!(
            "process writes exactly one output, {} selected",
            cfg.outputs.len()
        )));
    }
    let audio = wav::read_mono(input)?;
    let cfg = RunConfig {
        fs: f64::from(audio.sample_rate),
        ..cfg.clone()
    };
    let params = cfg.validate()?;
    let buffers = Filter::new(cfg.topology, params).process_block(&audio.samples)?;
    check_stable(&buffers)?;
    let selected = cfg.outputs[0];
    wav::write_float(output, buffers.require(selected)?, audio.sample_rate)?;
    Ok(ProcessReport {
        samples: audio.samples.len(),
        sample_rate: audio.sample_rate,
    })
}

/// Chamberlin usability limit per `q`, with the sine-map frequency it corresponds to.
pub fn cmd_stability(qs: &[f64], fs: f64, out: &mut impl Write) -> Result<(), CliError> {
    if !(fs.is_finite() && fs > 0.0) {
        return Err(CliError::Param(format!("fs must be > 0, got {fs}")));
    }
    let rows = qs
        .iter()
        .map(|&q| Ok((q, stability_limit_chamberlin(q)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    writeln!(out, "q,kmax,fmax_chamberlin_hz")?;
    for (q, kmax) in rows {
        writeln!(out, "{q},{kmax},{}", chamberlin_frequency(kmax, fs))?;
    }
    Ok(())
}

/// One row of [`compare_peaks`].
#[derive(Debug, Clone, PartialEq)]
pub struct PeakRow {
    pub f_hz: f64,
    pub topology: Topology,
    pub peak_hz: f64,
    /// `100 |peak - f| / f`.
    pub peak_err_pct: f64,
}

/// Lowpass peak location for the Chamberlin (sine map) and improved
/// (tangent map) filters at each target frequency.
pub fn compare_peaks(freqs: &[f64], q: f64, fs: f64, n_fft: usize) -> Result<Vec<PeakRow>, CliError> {
    let mut rows = Vec::with_capacity(2 * freqs.len());
    for &f in freqs {
        for topology in [Topology::Chamberlin, Topology::Improved] {
            let mut cfg = RunConfig::new(topology, vec![Output::Lowpass], f, q, fs);
            cfg.n_fft = n_fft;
            let params = cfg.validate()?;
            let ir = measured(topology, &params, n_fft)?;
            let curve = dft_magnitude(ir.require(Output::Lowpass)?, fs, n_fft)?;
            let peak_hz = peak_frequency(&curve)?;
            rows.push(PeakRow {
                f_hz: f,
                topology,
                peak_hz,
                peak_err_pct: 100.0 * (peak_hz - f).abs() / f,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_compare(freqs: &[f64], q: f64, fs: f64, n_fft: usize, out: &mut impl Write) -> Result<(), CliError> {
    let rows = compare_peaks(freqs, q, fs, n_fft)?;
    writeln!(out, "f_hz,topology,peak_hz,peak_err_pct")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.f_hz, r.topology, r.peak_hz, r.peak_err_pct)?;
    }
    Ok(())
}
