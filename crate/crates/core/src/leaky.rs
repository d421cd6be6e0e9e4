//! First-order leaky-integrator lowpass with its delay-free loop resolved.
//!
//! The implicit update `y(n) = g (x(n) - y(n)) + s(n-1)` is solved for the
//! integrator input `u(n)` before the output and state are formed, which
//! gives the bilinear one-pole `g (1 + z^-1) / ((1 + g) - (1 - g) z^-1)`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LeakyState {
    pub s: f64,
}

impl LeakyState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        self.s = 0.0;
    }
}

/// Checks the integrator gain once so hot loops can call [`leaky_tick`].
pub fn check_gain(g: f64) -> Result<()> {
    if g.is_finite() && g > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidGain(g))
    }
}

pub fn leaky_lowpass_tick(state: &mut LeakyState, g: f64, x: f64) -> Result<f64> {
    check_gain(g)?;
    Ok(leaky_tick(state, g, x))
}

/// Unchecked tick; `g` must already satisfy [`check_gain`].
#[inline]
pub fn leaky_tick(state: &mut LeakyState, g: f64, x: f64) -> f64 {
    let u = g * (x - state.s) / (1.0 + g);
    let y = u + state.s;
    state.s = y + u;
    y
}
