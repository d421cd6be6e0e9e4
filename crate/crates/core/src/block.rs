//! Block processing over any of the four topologies.

use std::fmt;

use crate::error::{Error, Result};
use crate::leaky::{check_gain, leaky_tick, LeakyState};
use crate::params::{k_bilinear, k_chamberlin, FilterParams};
use crate::svf::{chamberlin_tick, improved_tick, rearranged_tick, Output, SvfFrame, SvfState};

/// Magnitude above which a block is flagged as overloaded.
pub const OVERLOAD_LEVEL: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    Chamberlin,
    Rearranged,
    Improved,
    /// First-order leaky integrator; uses `k` as the integrator gain `g`.
    Leaky,
}

impl Topology {
    pub const ALL: [Topology; 4] = [
        Topology::Chamberlin,
        Topology::Rearranged,
        Topology::Improved,
        Topology::Leaky,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Topology::Chamberlin => "chamberlin",
            Topology::Rearranged => "rearranged",
            Topology::Improved => "improved",
            Topology::Leaky => "leaky",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    /// Outputs this topology produces.
    pub fn outputs(self) -> &'static [Output] {
        match self {
            Topology::Chamberlin | Topology::Rearranged => &[
                Output::Highpass,
                Output::Bandpass,
                Output::Lowpass,
                Output::BandReject,
            ],
            Topology::Improved => &Output::ALL,
            Topology::Leaky => &[Output::Lowpass],
        }
    }

    pub fn has_output(self, output: Output) -> bool {
        self.outputs().contains(&output)
    }

    /// Maps a frequency to `k` with the tuning map matching this topology:
    /// the sine map for the Euler-integrator filters, the tangent map for
    /// the bilinear-equivalent ones.
    pub fn tune(self, f: f64, fs: f64) -> Result<f64> {
        match self {
            Topology::Chamberlin | Topology::Rearranged => k_chamberlin(f, fs),
            Topology::Improved | Topology::Leaky => k_bilinear(f, fs),
        }
    }

    pub fn params(self, f: f64, q: f64, fs: f64) -> Result<FilterParams> {
        FilterParams::new(self.tune(f, fs)?, q, fs)
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-output sample buffers produced by [`Filter::process_block`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutputBuffers {
    topology: Topology,
    channels: [Vec<f64>; 5],
    /// First index at which any output exceeded [`OVERLOAD_LEVEL`].
    pub overload: Option<usize>,
}

impl OutputBuffers {
    fn with_capacity(topology: Topology, n: usize) -> Self {
        let channels = std::array::from_fn(|i| {
            if topology.has_output(Output::ALL[i]) {
                Vec::with_capacity(n)
            } else {
                Vec::new()
            }
        });
        Self {
            topology,
            channels,
            overload: None,
        }
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn get(&self, output: Output) -> Option<&[f64]> {
        self.topology
            .has_output(output)
            .then(|| self.channels[output as usize].as_slice())
    }

    /// Like [`get`](Self::get) but reports a missing output as an error.
    pub fn require(&self, output: Output) -> Result<&[f64]> {
        self.get(output).ok_or(Error::MissingOutput {
            topology: self.topology,
            output,
        })
    }

    pub fn into_output(mut self, output: Output) -> Option<Vec<f64>> {
        self.topology
            .has_output(output)
            .then(|| std::mem::take(&mut self.channels[output as usize]))
    }

    pub fn len(&self) -> usize {
        self.channels[Output::Lowpass as usize].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A filter instance: topology, parameters and the state carried between blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct Filter {
    topology: Topology,
    params: FilterParams,
    svf: SvfState,
    leaky: LeakyState,
}

impl Filter {
    pub fn new(topology: Topology, params: FilterParams) -> Self {
        Self {
            topology,
            params,
            svf: SvfState::new(),
            leaky: LeakyState::new(),
        }
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn params(&self) -> &FilterParams {
        &self.params
    }

    pub fn set_params(&mut self, params: FilterParams) {
        self.params = params;
    }

    pub fn svf_state(&self) -> &SvfState {
        &self.svf
    }

    pub fn leaky_state(&self) -> &LeakyState {
        &self.leaky
    }

    pub fn reset(&mut self) {
        self.svf.reset();
        self.leaky.reset();
    }

    /// Runs one sample. For the leaky topology only `lp` carries signal.
    #[inline]
    pub fn tick(&mut self, x: f64) -> SvfFrame {
        match self.topology {
            Topology::Chamberlin => chamberlin_tick(&mut self.svf, &self.params, x),
            Topology::Rearranged => rearranged_tick(&mut self.svf, &self.params, x),
            Topology::Improved => improved_tick(&mut self.svf, &self.params, x),
            Topology::Leaky => SvfFrame {
                lp: leaky_tick(&mut self.leaky, self.params.k(), x),
                ..SvfFrame::default()
            },
        }
    }

    /// Filters `input` sample by sample, carrying state across calls.
    ///
    /// Stops at the first sample where any output is non-finite and reports
    /// its index; the state is then left as-is and should be reset before
    /// reuse.
    pub fn process_block(&mut self, input: &[f64]) -> Result<OutputBuffers> {
        if self.topology == Topology::Leaky {
            check_gain(self.params.k())?;
        }
        let outputs = self.topology.outputs();
        let mut buffers = OutputBuffers::with_capacity(self.topology, input.len());
        for (index, &x) in input.iter().enumerate() {
            let frame = self.tick(x);
            for &output in outputs {
                // Present for every output the topology lists.
                let y = frame.get(output).unwrap_or(0.0);
                if !y.is_finite() {
                    return Err(Error::NonFinite { index });
                }
                if buffers.overload.is_none() && y.abs() > OVERLOAD_LEVEL {
                    buffers.overload = Some(index);
                }
                buffers.channels[output as usize].push(y);
            }
        }
        Ok(buffers)
    }
}
