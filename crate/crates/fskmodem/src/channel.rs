//! Channel impairment simulation: integer sample delay, amplitude gain,
//! carrier frequency offset, constant phase rotation, and additive white
//! Gaussian noise.
//!
//! Noise level is given either as a per-sample SNR or as Eb/N0. The
//! conversion convention is pinned here: with an uncoded bit per symbol
//! and `sps` samples per symbol, `snr_db = ebn0_db + 10*log10(1/sps)`,
//! i.e. the per-sample SNR is the per-bit SNR spread over the symbol's
//! samples. Signal power is measured from the input buffer as mean
//! |s[n]|^2. Coded transmissions account for the code rate by adjusting
//! `ebn0_db` before calling into the channel (see the sweep runner).

use crate::error::{Error, Result};
use crate::rng;
use crate::types::{FskParams, IqBuffer};
use num_complex::Complex64;
use rand_distr::{Distribution, Normal};
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy)]
pub struct ChannelConfig {
    /// Energy-per-bit to noise-density ratio in dB. At most one of
    /// `ebn0_db` / `snr_db` may be set; noise is disabled when neither is.
    pub ebn0_db: Option<f64>,
    /// Per-sample signal-to-noise power ratio in dB.
    pub snr_db: Option<f64>,
    /// Carrier frequency offset in Hz.
    pub cfo_hz: f64,
    /// Constant phase rotation in radians.
    pub phase_rad: f64,
    /// Amplitude scale, must be positive.
    pub gain: f64,
    /// Zeros prepended to the signal.
    pub delay_samples: usize,
    pub noise_seed: u64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            ebn0_db: None,
            snr_db: None,
            cfo_hz: 0.0,
            phase_rad: 0.0,
            gain: 1.0,
            delay_samples: 0,
            noise_seed: 0,
        }
    }
}

/// Applies impairments in a fixed order: delay, gain, rotation by
/// `exp(j*(2*pi*cfo*n/fs + phase))` with `n` indexing the delayed signal,
/// then AWGN.
///
/// Complex noise has independent Gaussian real/imaginary components of
/// variance `sigma^2 / 2` each, with `sigma^2 = signal_power /
/// 10^(snr_db/10)`. For a real input buffer (every imaginary part zero,
/// as produced by the passband modulator) only real noise is added and
/// the total noise variance is halved. Output is deterministic in
/// `noise_seed`.
pub fn apply_channel(iq: &IqBuffer, cfg: &ChannelConfig, params: &FskParams) -> Result<IqBuffer> {
    if iq.is_empty() {
        return Err(Error::EmptyInput);
    }
    if cfg.ebn0_db.is_some() && cfg.snr_db.is_some() {
        return Err(Error::ConflictingNoiseSpec);
    }
    if !(cfg.gain > 0.0 && cfg.gain.is_finite()) {
        return Err(Error::InvalidParams(format!("gain must be positive, got {}", cfg.gain)));
    }

    // The identity configuration must be a bit-exact identity, so each
    // stage is skipped entirely when inactive.
    let real_input = iq.is_real();
    let signal_power = iq.mean_power();

    let mut samples: Vec<Complex64> = if cfg.delay_samples > 0 {
        let mut v = vec![Complex64::new(0.0, 0.0); cfg.delay_samples];
        v.extend_from_slice(&iq.samples);
        v
    } else {
        iq.samples.clone()
    };

    if cfg.gain != 1.0 {
        for s in samples.iter_mut() {
            *s *= cfg.gain;
        }
    }

    if cfg.cfo_hz != 0.0 || cfg.phase_rad != 0.0 {
        let w = TAU * cfg.cfo_hz / params.sample_rate_hz();
        for (n, s) in samples.iter_mut().enumerate() {
            let angle = w * n as f64 + cfg.phase_rad;
            *s *= Complex64::new(angle.cos(), angle.sin());
        }
    }

    let snr_db = match (cfg.ebn0_db, cfg.snr_db) {
        (Some(ebn0), None) => {
            Some(ebn0 + 10.0 * (1.0 / params.samples_per_symbol() as f64).log10())
        }
        (None, Some(snr)) => Some(snr),
        _ => None,
    };
    if let Some(snr_db) = snr_db {
        let sigma_sq = signal_power / 10f64.powf(snr_db / 10.0);
        let component = Normal::new(0.0, (sigma_sq / 2.0).sqrt())
            .map_err(|e| Error::InvalidParams(format!("noise sigma: {e}")))?;
        let mut gen = rng::stream(cfg.noise_seed);
        if real_input {
            for s in samples.iter_mut() {
                s.re += component.sample(&mut gen);
            }
        } else {
            for s in samples.iter_mut() {
                *s += Complex64::new(component.sample(&mut gen), component.sample(&mut gen));
            }
        }
    }

    Ok(IqBuffer::new(samples, iq.sample_rate_hz))
}
