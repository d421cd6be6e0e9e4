//! s-domain reference responses and the digital Butterworth power spectrum.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::svf::Output;

/// Analogue state variable response at `s = j omega`, shared denominator
/// `s^2 + (K/Q) s + K^2`.
pub fn analog_tf(k: f64, q: f64, omega: f64, output: Output) -> Complex64 {
    let s = Complex64::new(0.0, omega);
    let den = s * s + (k / q) * s + k * k;
    let num = match output {
        Output::Highpass => s * s,
        Output::Bandpass => k * s,
        Output::Lowpass => Complex64::new(k * k, 0.0),
        Output::BandReject => s * s + k * k,
        Output::Allpass => s * s - (k / q) * s + k * k,
    };
    num / den
}

/// `1 / (1 + tan^(2n)(omega / 2))`: power spectrum of the order-`n`
/// bilinear Butterworth lowpass with its cutoff at `omega = pi/2`.
pub fn butterworth_power_spectrum(n: u32, omega: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    if !(0.0..std::f64::consts::PI).contains(&omega) {
        return Err(Error::OmegaOutOfRange(omega));
    }
    let t = (0.5 * omega).tan();
    Ok(1.0 / (1.0 + t.powi(2 * n as i32)))
}
