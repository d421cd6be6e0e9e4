//! Digital state variable filters.
//!
//! Sample-accurate ticks for the Chamberlin filter, its re-arranged form and
//! an improved topology whose responses equal the bilinear transform of the
//! analogue state variable filter, plus a first-order leaky integrator built
//! the same way. The [`analysis`] module evaluates the matching closed-form
//! transfer functions and measures impulse-response spectra.
//!
//! ```
//! use svf_core::{Filter, FilterParams, Output, Topology};
//!
//! let params = FilterParams::bilinear(1000.0, 0.707, 48000.0).unwrap();
//! let mut filter = Filter::new(Topology::Improved, params);
//! let out = filter.process_block(&[1.0, 0.0, 0.0, 0.0]).unwrap();
//! assert_eq!(out.get(Output::Lowpass).unwrap().len(), 4);
//! ```

pub mod analysis;
mod block;
mod error;
mod leaky;
mod params;
mod svf;

pub use block::{Filter, OutputBuffers, Topology, OVERLOAD_LEVEL};
pub use error::{Error, Result};
pub use leaky::{leaky_lowpass_tick, LeakyState};
pub use params::{
    chamberlin_frequency, k_bilinear, k_chamberlin, stability_limit_chamberlin, FilterParams,
    BILINEAR_GUARD,
};
pub use svf::{chamberlin_tick, improved_tick, rearranged_tick, Output, SvfFrame, SvfState};
