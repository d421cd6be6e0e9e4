//! Closed-form z-domain transfer functions of the filter outputs.

use num_complex::Complex64;

use crate::block::Topology;
use crate::error::{Error, Result};
use crate::params::FilterParams;
use crate::svf::Output;

/// Second-order section `(b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiquadCoeffs {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl BiquadCoeffs {
    pub const IDENTITY: BiquadCoeffs = BiquadCoeffs {
        b0: 1.0,
        b1: 0.0,
        b2: 0.0,
        a1: 0.0,
        a2: 0.0,
    };

    /// Builds from an unnormalised numerator and denominator, dividing through by `a0`.
    pub fn from_unnormalized(b: [f64; 3], a: [f64; 3]) -> Self {
        let a0 = a[0];
        Self {
            b0: b[0] / a0,
            b1: b[1] / a0,
            b2: b[2] / a0,
            a1: a[1] / a0,
            a2: a[2] / a0,
        }
    }

    /// Triangle condition: both poles strictly inside the unit circle.
    pub fn is_stable(&self) -> bool {
        self.a2.abs() < 1.0 && self.a1.abs() < 1.0 + self.a2
    }

    /// Roots of `z^2 + a1 z + a2`.
    pub fn poles(&self) -> [Complex64; 2] {
        let disc = Complex64::new(self.a1 * self.a1 - 4.0 * self.a2, 0.0).sqrt();
        let half = Complex64::new(-0.5 * self.a1, 0.0);
        [half + 0.5 * disc, half - 0.5 * disc]
    }

    /// Largest pole magnitude.
    pub fn pole_radius(&self) -> f64 {
        let [p, q] = self.poles();
        p.norm().max(q.norm())
    }

    /// Frequency response at `omega` radians per sample.
    pub fn eval(&self, omega: f64) -> Complex64 {
        let z1 = Complex64::from_polar(1.0, -omega);
        let z2 = z1 * z1;
        let num = self.b0 + self.b1 * z1 + self.b2 * z2;
        let den = 1.0 + self.a1 * z1 + self.a2 * z2;
        num / den
    }

    /// Runs the difference equation over `input` from rest, in transposed
    /// direct form II.
    pub fn filter(&self, input: &[f64]) -> Vec<f64> {
        let (mut w1, mut w2) = (0.0, 0.0);
        input
            .iter()
            .map(|&x| {
                let y = self.b0 * x + w1;
                w1 = self.b1 * x - self.a1 * y + w2;
                w2 = self.b2 * x - self.a2 * y;
                y
            })
            .collect()
    }
}

/// Evaluates `c` on the unit circle. Poles on the circle give non-finite results.
pub fn eval_tf(c: &BiquadCoeffs, omega: f64) -> Complex64 {
    c.eval(omega)
}

/// Transfer functions of the re-arranged Chamberlin filter, with shared
/// denominator `1 - (2 - K/Q - K^2) z^-1 + (1 - K/Q) z^-2`.
///
/// The band-reject numerator is `1 - (2 - K^2) z^-1 + z^-2`. There is no
/// allpass response.
pub fn chamberlin_biquad(params: &FilterParams, output: Output) -> Result<BiquadCoeffs> {
    let k = params.k();
    let kq = k / params.q();
    let a1 = -(2.0 - kq - k * k);
    let a2 = 1.0 - kq;
    let (b0, b1, b2) = match output {
        Output::Highpass => (1.0, -2.0, 1.0),
        Output::Bandpass => (k, -k, 0.0),
        Output::Lowpass => (k * k, 0.0, 0.0),
        Output::BandReject => (1.0, k * k - 2.0, 1.0),
        Output::Allpass => {
            return Err(Error::MissingOutput {
                topology: Topology::Chamberlin,
                output,
            })
        }
    };
    Ok(BiquadCoeffs { b0, b1, b2, a1, a2 })
}

/// Transfer functions of the improved filter, normalised by
/// `a0 = 1 + K/Q + K^2`. The denominator is `a0 - 2(1 - K^2) z^-1 + (1 - K/Q + K^2) z^-2`.
pub fn improved_biquad(params: &FilterParams, output: Output) -> BiquadCoeffs {
    let k = params.k();
    let kq = k / params.q();
    let k2 = k * k;
    let a = [1.0 + kq + k2, -2.0 * (1.0 - k2), 1.0 - kq + k2];
    let b = match output {
        Output::Highpass => [1.0, -2.0, 1.0],
        Output::Bandpass => [k, 0.0, -k],
        Output::Lowpass => [k2, 2.0 * k2, k2],
        Output::BandReject => [1.0 + k2, -2.0 * (1.0 - k2), 1.0 + k2],
        // Denominator reversed.
        Output::Allpass => [a[2], a[1], a[0]],
    };
    BiquadCoeffs::from_unnormalized(b, a)
}

/// Exact transfer function of each output stream as produced by the ticks.
///
/// Differs from [`chamberlin_biquad`] only for the Chamberlin lowpass, which
/// lags the re-arranged one by a sample. The leaky topology is first order
/// (`b2 = a2 = 0`) with `g = k`.
pub fn topology_biquad(topology: Topology, params: &FilterParams, output: Output) -> Result<BiquadCoeffs> {
    if !topology.has_output(output) {
        return Err(Error::MissingOutput { topology, output });
    }
    match topology {
        Topology::Chamberlin => {
            let mut c = chamberlin_biquad(params, output)?;
            if output == Output::Lowpass {
                c.b1 = c.b0;
                c.b0 = 0.0;
            }
            Ok(c)
        }
        Topology::Rearranged => chamberlin_biquad(params, output),
        Topology::Improved => Ok(improved_biquad(params, output)),
        Topology::Leaky => {
            let g = params.k();
            Ok(BiquadCoeffs::from_unnormalized([g, g, 0.0], [1.0 + g, -(1.0 - g), 0.0]))
        }
    }
}
