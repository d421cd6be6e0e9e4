//! Mono WAV input (PCM16 or float32) and float32 output.

use std::path::Path;

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};

use crate::CliError;

/// Mono audio normalised to `[-1, 1)`, with its sample rate in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoAudio {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

pub fn read_mono(path: &Path) -> Result<MonoAudio, CliError> {
    let format_err = |e: hound::Error| CliError::Format(format!("{}: {e}", path.display()));
    let reader = WavReader::open(path).map_err(format_err)?;
    let spec = reader.spec();
    if spec.channels != 1 {
        return Err(CliError::Format(format!(
            "{}: expected mono input, found {} channels",
            path.display(),
            spec.channels
        )));
    }
    let samples = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Int, 16) => reader
            .into_samples::<i16>()
            .map(|s| s.map(|v| f64::from(v) / 32768.0))
            .collect::<Result<Vec<_>, _>>()
            .map_err(format_err)?,
        (SampleFormat::Float, 32) => reader
            .into_samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<Result<Vec<_>, _>>()
            .map_err(format_err)?,
        (format, bits) => {
            return Err(CliError::Format(format!(
                "{}: unsupported sample format {format:?} at {bits} bits (need PCM16 or float32)",
                path.display()
            )))
        }
    };
    Ok(MonoAudio {
        samples,
        sample_rate: spec.sample_rate,
    })
}

pub fn write_float(path: &Path, samples: &[f64], sample_rate: u32) -> Result<(), CliError> {
    let spec = WavSpec {
        channels: 1,
        sample_rate,
        bits_per_sample: 32,
        sample_format: SampleFormat::Float,
    };
    let io_err = |e: hound::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut writer = WavWriter::create(path, spec).map_err(io_err)?;
    for &s in samples {
        writer.write_sample(s as f32).map_err(io_err)?;
    }
    writer.finalize().map_err(io_err)
}

/// Writes 16-bit mono PCM; samples are scaled by 32768 and clipped.
pub fn write_pcm16(path: &Path, samples: &[f64], sample_rate: u32) -> Result<(), CliError> {
    let spec = WavSpec {
        channels: 1,
        sample_rate,
        bits_per_sample: 16,
        sample_format: SampleFormat::Int,
    };
    let io_err = |e: hound::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut writer = WavWriter::create(path, spec).map_err(io_err)?;
    for &s in samples {
        let v = (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        writer.write_sample(v).map_err(io_err)?;
    }
    writer.finalize().map_err(io_err)
}
