//! Per-sample state variable filter ticks.
//!
//! Three discretisations of the two-integrator loop are provided:
//!
//! * [`chamberlin_tick`]: Euler integrators with the first integrator's
//!   state tapped into the second, lowpass computed first.
//! * [`rearranged_tick`]: the same filter with the unit delays moved into
//!   both feedback paths. Highpass and bandpass match Chamberlin exactly and
//!   the lowpass leads it by one sample.
//! * [`improved_tick`]: integrators with an added feedforward path
//!   (`(1 + z^-1) / (1 - z^-1)`) and a resolved highpass feedback, equivalent
//!   to the bilinear transform of the analogue filter.
//!
//! The order of operations inside each tick is fixed; the equivalence tests
//! compare streams bit for bit.

use std::fmt;

use crate::params::FilterParams;

/// One of the simultaneous filter responses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Output {
    Highpass,
    Bandpass,
    Lowpass,
    BandReject,
    Allpass,
}

impl Output {
    pub const ALL: [Output; 5] = [
        Output::Highpass,
        Output::Bandpass,
        Output::Lowpass,
        Output::BandReject,
        Output::Allpass,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Output::Highpass => "hp",
            Output::Bandpass => "bp",
            Output::Lowpass => "lp",
            Output::BandReject => "br",
            Output::Allpass => "ap",
        }
    }

    pub fn from_short_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.short_name() == name)
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Integrator states: `s1` feeds the bandpass, `s2` the lowpass.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SvfState {
    pub s1: f64,
    pub s2: f64,
}

impl SvfState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    pub fn is_finite(&self) -> bool {
        self.s1.is_finite() && self.s2.is_finite()
    }
}

/// Outputs produced by one tick. `ap` is only present for the improved filter.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SvfFrame {
    pub hp: f64,
    pub bp: f64,
    pub lp: f64,
    pub br: f64,
    pub ap: Option<f64>,
}

impl SvfFrame {
    pub fn get(&self, output: Output) -> Option<f64> {
        match output {
            Output::Highpass => Some(self.hp),
            Output::Bandpass => Some(self.bp),
            Output::Lowpass => Some(self.lp),
            Output::BandReject => Some(self.br),
            Output::Allpass => self.ap,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.hp.is_finite()
            && self.bp.is_finite()
            && self.lp.is_finite()
            && self.br.is_finite()
            && self.ap.map_or(true, f64::is_finite)
    }
}

/// Chamberlin's filter. The lowpass is computed first from the previous
/// bandpass state.
#[inline]
pub fn chamberlin_tick(state: &mut SvfState, params: &FilterParams, x: f64) -> SvfFrame {
    let k = params.k();
    let d = params.damping();
    let lp = k * state.s1 + state.s2;
    let hp = x - lp - d * state.s1;
    let bp = k * hp + state.s1;
    state.s1 = bp;
    state.s2 = lp;
    SvfFrame {
        hp,
        bp,
        lp,
        br: hp + lp,
        ap: None,
    }
}

/// Re-arranged Chamberlin filter: both feedback paths tap the integrator
/// states and the band-reject output is taken before the lowpass feedback
/// is subtracted.
#[inline]
pub fn rearranged_tick(state: &mut SvfState, params: &FilterParams, x: f64) -> SvfFrame {
    let k = params.k();
    let d = params.damping();
    let br = x - d * state.s1;
    // Same summation order as chamberlin_tick, where s2 holds its lowpass.
    let hp = x - state.s2 - d * state.s1;
    let bp = k * hp + state.s1;
    let lp = k * bp + state.s2;
    state.s1 = bp;
    state.s2 = lp;
    SvfFrame {
        hp,
        bp,
        lp,
        br,
        ap: None,
    }
}

/// Improved filter with feedforward integrators and the corrected highpass.
///
/// `k` should come from the tangent map for correct tuning.
#[inline]
pub fn improved_tick(state: &mut SvfState, params: &FilterParams, x: f64) -> SvfFrame {
    let k = params.k();
    let q = params.q();
    let d = params.damping();
    let div = 1.0 + k / q + k * k;
    let hp = (x - (d + k) * state.s1 - state.s2) / div;
    let u = k * hp;
    let bp = u + state.s1;
    state.s1 = bp + u;
    let u = k * bp;
    let lp = u + state.s2;
    state.s2 = lp + u;
    SvfFrame {
        hp,
        bp,
        lp,
        br: hp + lp,
        ap: Some(hp + lp - d * bp),
    }
}
