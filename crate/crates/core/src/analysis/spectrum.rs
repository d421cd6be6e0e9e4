//! Measured and closed-form magnitude/phase responses.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::analysis::biquad::BiquadCoeffs;
use crate::block::{Filter, OutputBuffers, Topology};
use crate::error::{Error, Result};
use crate::params::FilterParams;

/// Magnitude floor used when converting to decibels.
pub const DB_FLOOR: f64 = -300.0;

/// Sampled frequency response: `freqs` in Hz, linear `mag`, `phase` in radians.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResponseCurve {
    pub freqs: Vec<f64>,
    pub mag: Vec<f64>,
    pub phase: Vec<f64>,
}

impl ResponseCurve {
    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Magnitudes in dB, floored at [`DB_FLOOR`].
    pub fn mag_db(&self) -> Vec<f64> {
        self.mag.iter().map(|&m| to_db(m)).collect()
    }

    fn push(&mut self, freq: f64, h: Complex64) {
        self.freqs.push(freq);
        self.mag.push(h.norm());
        self.phase.push(h.arg());
    }
}

/// `20 log10(mag)` floored at [`DB_FLOOR`].
pub fn to_db(mag: f64) -> f64 {
    if mag > 0.0 {
        (20.0 * mag.log10()).max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}

/// `n` points spaced logarithmically from `lo` to `hi`, both inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let ratio = (hi / lo).ln();
            (0..n)
                .map(|i| lo * (ratio * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}

/// Evaluates `c` at each frequency in `freqs` (Hz) for sample rate `fs`.
pub fn closed_form_curve(c: &BiquadCoeffs, freqs: &[f64], fs: f64) -> ResponseCurve {
    let mut curve = ResponseCurve::default();
    for &f in freqs {
        curve.push(f, c.eval(2.0 * PI * f / fs));
    }
    curve
}

/// Response of the selected topology to a unit impulse from rest, `n` samples long.
pub fn impulse_response(topology: Topology, params: &FilterParams, n: usize) -> Result<OutputBuffers> {
    if n == 0 {
        return Err(Error::EmptySignal);
    }
    let mut input = vec![0.0; n];
    input[0] = 1.0;
    Filter::new(topology, *params).process_block(&input)
}

/// Zero-padded DFT of `x` on bins `0..=n_fft/2`, with bin frequencies `k fs / n_fft`.
pub fn dft_magnitude(x: &[f64], fs: f64, n_fft: usize) -> Result<ResponseCurve> {
    if n_fft == 0 || !n_fft.is_power_of_two() || n_fft < x.len() {
        return Err(Error::FftSize { n_fft, len: x.len() });
    }
    if !(fs.is_finite() && fs > 0.0) {
        return Err(Error::InvalidSampleRate(fs));
    }
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    buf.resize(n_fft, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(n_fft).process(&mut buf);

    let mut curve = ResponseCurve::default();
    for (k, &h) in buf.iter().take(n_fft / 2 + 1).enumerate() {
        curve.push(k as f64 * fs / n_fft as f64, h);
    }
    Ok(curve)
}

/// Frequency of the largest magnitude in `curve`.
///
/// Interior maxima are refined by fitting a parabola to the log-magnitude of
/// the peak point and its two neighbours. Maxima on either end of the curve,
/// or next to a zero magnitude, are returned as-is.
pub fn peak_frequency(curve: &ResponseCurve) -> Result<f64> {
    let (i, _) = curve
        .mag
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, &m)| match best {
            Some((_, bm)) if bm >= m => best,
            _ => Some((i, m)),
        })
        .ok_or(Error::EmptyCurve)?;
    if i == 0 || i + 1 == curve.len() {
        return Ok(curve.freqs[i]);
    }
    let (m0, m1, m2) = (curve.mag[i - 1], curve.mag[i], curve.mag[i + 1]);
    if m0 <= 0.0 || m2 <= 0.0 {
        return Ok(curve.freqs[i]);
    }
    let (x0, x1, x2) = (curve.freqs[i - 1], curve.freqs[i], curve.freqs[i + 1]);
    let (y0, y1, y2) = (m0.ln(), m1.ln(), m2.ln());
    let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
    let den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if den == 0.0 || !den.is_finite() {
        return Ok(x1);
    }
    Ok((x1 - 0.5 * num / den).clamp(x0, x2))
}
