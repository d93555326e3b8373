//! Whole-signal spectrum-threshold pipeline.
//!
//! A compatibility re-implementation of a minimal reference decoder: each
//! symbol is generated as a real tone restarted from zero phase, the
//! magnitude spectrum of the entire concatenated signal is taken, and
//! every spectrum bin is thresholded against the spectrum mean, yielding
//! one output bit per bin (so the output has one bit per input sample).

use crate::error::Result;
use crate::modulator::{modulate, ModulatorConfig, OutputMode};
use crate::types::{BitString, FskParams};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Runs the reference pipeline: phase-reset real tone generation, full
/// signal DFT magnitude, mean threshold, one bit per transform bin.
pub fn appendix_fft_pipeline(bits: &BitString, params: &FskParams) -> Result<BitString> {
    let cfg = ModulatorConfig {
        params: *params,
        continuous_phase: false,
        output_mode: OutputMode::RealPassband,
    };
    let signal = modulate(bits, &cfg)?;

    let mut buf: Vec<Complex64> = signal.samples.clone();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    let magnitudes: Vec<f64> = buf.iter().map(|c| c.norm()).collect();

    let threshold = magnitudes.iter().sum::<f64>() / magnitudes.len() as f64;
    Ok(BitString::from_bools(magnitudes.iter().map(|&m| m > threshold)))
}
