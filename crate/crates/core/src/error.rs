use thiserror::Error;

use crate::svf::Output;
use crate::block::Topology;

/// Errors raised by parameter validation, block processing and analysis.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("sample rate must be positive and finite, got {0}")]
    InvalidSampleRate(f64),
    #[error("frequency {f} Hz outside [0, {max} Hz) for fs = {fs} Hz")]
    FrequencyOutOfRange { f: f64, fs: f64, max: f64 },
    #[error("frequency {f} Hz exceeds the 0.49*fs guard ({max} Hz) for the tangent map")]
    FrequencyAboveGuard { f: f64, max: f64 },
    #[error("q must be positive and finite, got {0}")]
    InvalidQ(f64),
    #[error("k must be positive and finite, got {0}")]
    InvalidK(f64),
    #[error("integrator gain g must be positive and finite, got {0}")]
    InvalidGain(f64),
    #[error("non-finite output at sample {index}")]
    NonFinite { index: usize },
    #[error("{topology} topology has no {output} output")]
    MissingOutput { topology: Topology, output: Output },
    #[error("FFT size {n_fft} must be a power of two not smaller than the signal length {len}")]
    FftSize { n_fft: usize, len: usize },
    #[error("sample count must be at least 1")]
    EmptySignal,
    #[error("response curve is empty")]
    EmptyCurve,
    #[error("Butterworth order must be at least 1")]
    InvalidOrder,
    #[error("omega must lie in [0, pi), got {0}")]
    OmegaOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
