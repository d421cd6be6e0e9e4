//! Filter parameters, tuning maps and the Chamberlin usability bound.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Upper frequency accepted by the tangent map, as a fraction of the sample rate.
pub const BILINEAR_GUARD: f64 = 0.49;

/// Frequency coefficient `k` and quality factor `q`, with the sample rate the
/// tuning maps were evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    k: f64,
    q: f64,
    sample_rate_hz: f64,
}

impl FilterParams {
    pub fn new(k: f64, q: f64, sample_rate_hz: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidK(k));
        }
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidQ(q));
        }
        check_sample_rate(sample_rate_hz)?;
        Ok(Self {
            k,
            q,
            sample_rate_hz,
        })
    }

    /// Parameters for the Chamberlin and re-arranged filters, tuned with the sine map.
    pub fn chamberlin(f: f64, q: f64, fs: f64) -> Result<Self> {
        Self::new(k_chamberlin(f, fs)?, q, fs)
    }

    /// Parameters for the improved filter, tuned with the tangent map.
    pub fn bilinear(f: f64, q: f64, fs: f64) -> Result<Self> {
        Self::new(k_bilinear(f, fs)?, q, fs)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Damping applied through the bandpass feedback path, `1/q`.
    pub fn damping(&self) -> f64 {
        1.0 / self.q
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }
}

fn check_sample_rate(fs: f64) -> Result<()> {
    if fs.is_finite() && fs > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSampleRate(fs))
    }
}

/// Sine tuning map for the Chamberlin filter: `2 sin(pi f / fs)`.
pub fn k_chamberlin(f: f64, fs: f64) -> Result<f64> {
    check_sample_rate(fs)?;
    let nyquist = 0.5 * fs;
    if !(f >= 0.0 && f < nyquist) {
        return Err(Error::FrequencyOutOfRange { f, fs, max: nyquist });
    }
    Ok(2.0 * (PI * f / fs).sin())
}

/// Tangent tuning map for the improved filter: `tan(pi f / fs)`.
///
/// Frequencies above `0.49 fs` are rejected rather than clamped.
pub fn k_bilinear(f: f64, fs: f64) -> Result<f64> {
    check_sample_rate(fs)?;
    let max = BILINEAR_GUARD * fs;
    if f.is_nan() || f < 0.0 {
        return Err(Error::FrequencyOutOfRange { f, fs, max });
    }
    if f > max {
        return Err(Error::FrequencyAboveGuard { f, max });
    }
    Ok((PI * f / fs).tan())
}

/// Inverse of the sine map: the frequency in Hz at which `k_chamberlin`
/// returns `k`. Values of `k >= 2` saturate at `fs / 2`.
pub fn chamberlin_frequency(k: f64, fs: f64) -> f64 {
    if k >= 2.0 {
        0.5 * fs
    } else if k <= 0.0 {
        0.0
    } else {
        fs / PI * (0.5 * k).asin()
    }
}

/// Upper limit of usable `k` for the Chamberlin filter at quality factor `q`:
///
/// `min(q, 2 - 1/q, 2q - 1/q, (-1/q + sqrt(8 + 1/q^2)) / 2)`
///
/// The usable range is the open interval `(0, kmax)`. When the minimum is
/// not positive (any `q <= 1/sqrt(2)`) that interval is empty and 0 is
/// returned.
pub fn stability_limit_chamberlin(q: f64) -> Result<f64> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::InvalidQ(q));
    }
    let d = 1.0 / q;
    let kmax = q
        .min(2.0 - d)
        .min(2.0 * q - d)
        .min(0.5 * (-d + (8.0 + d * d).sqrt()));
    Ok(kmax.max(0.0))
}
