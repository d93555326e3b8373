//! Differential demodulation via a quadrature frequency discriminator.

use super::symbol_count;
use crate::error::Result;
use crate::types::{DemodKind, FskParams, IqBuffer, SymbolStatistics};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct DifferentialConfig {
    pub params: FskParams,
}

impl DifferentialConfig {
    pub fn new(params: FskParams) -> Self {
        Self { params }
    }
}

/// Demodulates by instantaneous frequency estimation.
///
/// The discriminator output `d[n] = arg(r[n] * conj(r[n-1]))` is the
/// phase advance from sample `n-1` to `n` in radians per sample; any
/// constant phase rotation of the input cancels in the conjugate
/// product. `d[n]` therefore measures the tone active at sample `n-1`,
/// so the statistic for the symbol window starting at `s` averages
/// `d[n]` for `n in (s, s + sps]`, which covers exactly that symbol's
/// samples. The final symbol has no successor sample and averages one
/// fewer term. The midpoint frequency `pi * (f0 + f1) / fs` is
/// subtracted so the sign of the statistic encodes the bit.
pub fn differential_demod(
    iq: &IqBuffer,
    cfg: &DifferentialConfig,
    timing_offset_samples: usize,
) -> Result<SymbolStatistics> {
    let p = &cfg.params;
    let sps = p.samples_per_symbol();
    let nsym = symbol_count(iq, sps, timing_offset_samples)?;

    let midpoint = PI * (p.tone0_hz() + p.tone1_hz()) / p.sample_rate_hz();
    let last = iq.len() - 1;

    let values = (0..nsym)
        .map(|k| {
            let start = timing_offset_samples + k * sps;
            let lo = start + 1;
            let hi = (start + sps).min(last);
            let mut acc = 0.0;
            for n in lo..=hi {
                acc += (iq.samples[n] * iq.samples[n - 1].conj()).arg();
            }
            acc / (hi - lo + 1) as f64 - midpoint
        })
        .collect();

    Ok(SymbolStatistics { values, demod_kind: DemodKind::Differential })
}
