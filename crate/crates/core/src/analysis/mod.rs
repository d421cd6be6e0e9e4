//! Transfer-function evaluation, impulse-response spectra and peak location.

mod analog;
mod biquad;
mod spectrum;

pub use analog::{analog_tf, butterworth_power_spectrum};
pub use biquad::{chamberlin_biquad, eval_tf, improved_biquad, topology_biquad, BiquadCoeffs};
pub use spectrum::{
    closed_form_curve, dft_magnitude, impulse_response, log_grid, peak_frequency, to_db,
    ResponseCurve, DB_FLOOR,
};
