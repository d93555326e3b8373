//! Non-coherent demodulation: correlator magnitudes or square-law power
//! detection. Neither variant needs a carrier phase reference.

use super::{conj_tone_table, symbol_count, window_correlation};
use crate::error::{Error, Result};
use crate::types::{DemodKind, FskParams, IqBuffer, SymbolStatistics};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoncoherentVariant {
    /// `|C_1| - |C_0|` per symbol window. The reference implementation.
    #[default]
    CorrelatorMagnitude,
    /// Instantaneous power, low-pass filtered, then correlated against
    /// the two tone frequencies per window.
    SquareLaw,
}

#[derive(Debug, Clone, Copy)]
pub struct NoncoherentConfig {
    pub params: FskParams,
    pub variant: NoncoherentVariant,
    /// Square-law power filter cutoff; ignored by the correlator variant.
    pub lpf_cutoff_hz: f64,
}

impl NoncoherentConfig {
    /// Correlator-magnitude variant with the power filter cutoff at twice
    /// the symbol rate.
    pub fn new(params: FskParams) -> Self {
        Self {
            params,
            variant: NoncoherentVariant::CorrelatorMagnitude,
            lpf_cutoff_hz: 2.0 / params.symbol_duration_s(),
        }
    }

    pub fn square_law(params: FskParams) -> Self {
        Self { variant: NoncoherentVariant::SquareLaw, ..Self::new(params) }
    }
}

/// Demodulates without a phase reference.
///
/// `CorrelatorMagnitude` forms `C_i = sum_n r[n] * conj(exp(j*2*pi*f_i*
/// n/fs))` over each symbol window and emits `|C_1| - |C_0|`; constant
/// input rotations cancel in the magnitudes.
///
/// `SquareLaw` squares the received signal to instantaneous power
/// `|r[n]|^2`, low-pass filters it with a Hamming-windowed sinc FIR of
/// length `4 * samples_per_symbol + 1` (unit DC gain, group delay
/// compensated), and emits the per-symbol tone-energy contrast
/// `|D_1| - |D_0|` where `D_i` correlates the filtered power against
/// tone `f_i` over the window.
pub fn noncoherent_demod(
    iq: &IqBuffer,
    cfg: &NoncoherentConfig,
    timing_offset_samples: usize,
) -> Result<SymbolStatistics> {
    if !(cfg.lpf_cutoff_hz > 0.0 && cfg.lpf_cutoff_hz < cfg.params.sample_rate_hz() / 2.0) {
        return Err(Error::InvalidParams(format!(
            "lpf_cutoff_hz must be in (0, sample_rate_hz / 2), got {}",
            cfg.lpf_cutoff_hz
        )));
    }

    let p = &cfg.params;
    let sps = p.samples_per_symbol();
    let nsym = symbol_count(iq, sps, timing_offset_samples)?;

    let t0 = conj_tone_table(iq.len(), p.tone0_hz(), p.sample_rate_hz(), 0);
    let t1 = conj_tone_table(iq.len(), p.tone1_hz(), p.sample_rate_hz(), 0);

    let values = match cfg.variant {
        NoncoherentVariant::CorrelatorMagnitude => (0..nsym)
            .map(|k| {
                let start = timing_offset_samples + k * sps;
                let c0 = window_correlation(&iq.samples, &t0, start, sps);
                let c1 = window_correlation(&iq.samples, &t1, start, sps);
                c1.norm() - c0.norm()
            })
            .collect(),
        NoncoherentVariant::SquareLaw => {
            let power: Vec<f64> = iq.samples.iter().map(|s| s.norm_sqr()).collect();
            let filtered = lowpass_fir(&power, cfg.lpf_cutoff_hz, p.sample_rate_hz(), sps);
            (0..nsym)
                .map(|k| {
                    let start = timing_offset_samples + k * sps;
                    let mut d0 = Complex64::new(0.0, 0.0);
                    let mut d1 = Complex64::new(0.0, 0.0);
                    for n in start..start + sps {
                        d0 += filtered[n] * t0[n];
                        d1 += filtered[n] * t1[n];
                    }
                    d1.norm() - d0.norm()
                })
                .collect()
        }
    };

    let demod_kind = match cfg.variant {
        NoncoherentVariant::CorrelatorMagnitude => DemodKind::Noncoherent,
        NoncoherentVariant::SquareLaw => DemodKind::NoncoherentSquareLaw,
    };
    Ok(SymbolStatistics { values, demod_kind })
}

/// Hamming-windowed sinc low-pass FIR, length `4 * sps + 1`, normalized
/// to unit DC gain, applied with the group delay of `2 * sps` samples
/// compensated (zero padding at the edges).
fn lowpass_fir(signal: &[f64], cutoff_hz: f64, sample_rate_hz: f64, sps: usize) -> Vec<f64> {
    let len = 4 * sps + 1;
    let mid = (len - 1) / 2;
    let fc = cutoff_hz / sample_rate_hz;

    let mut taps: Vec<f64> = (0..len)
        .map(|k| {
            let m = k as f64 - mid as f64;
            let sinc = if m == 0.0 { 2.0 * fc } else { (2.0 * PI * fc * m).sin() / (PI * m) };
            let window = 0.54 - 0.46 * (2.0 * PI * k as f64 / (len - 1) as f64).cos();
            sinc * window
        })
        .collect();
    let sum: f64 = taps.iter().sum();
    for t in taps.iter_mut() {
        *t /= sum;
    }

    (0..signal.len())
        .map(|n| {
            let mut acc = 0.0;
            for (k, tap) in taps.iter().enumerate() {
                // Centered convolution: the output at n reads inputs
                // n - k + mid.
                let idx = n as isize - k as isize + mid as isize;
                if idx >= 0 && (idx as usize) < signal.len() {
                    acc += tap * signal[idx as usize];
                }
            }
            acc
        })
        .collect()
}
