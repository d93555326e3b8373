//! Coherent correlator-bank demodulation with decision-directed carrier
//! phase tracking.

use super::{conj_tone_table, symbol_count, window_correlation};
use crate::error::{Error, Result};
use crate::types::{DemodKind, FskParams, IqBuffer, SymbolStatistics};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct CoherentConfig {
    pub params: FskParams,
    pub pll_enabled: bool,
    /// Loop noise bandwidth times symbol duration (Bn * T).
    pub pll_loop_bandwidth_norm: f64,
    pub pll_damping: f64,
}

impl CoherentConfig {
    pub fn new(params: FskParams) -> Self {
        Self { params, pll_enabled: true, pll_loop_bandwidth_norm: 0.02, pll_damping: 0.707 }
    }
}

/// Demodulates with per-symbol correlations against both tones, phase
/// corrected by a carrier phase estimate.
///
/// For each whole symbol window the correlations
/// `C_i = sum_n r[n] * conj(exp(j*2*pi*f_i*n/fs)) * exp(-j*theta_hat)`
/// are formed and the soft decision is `Re(C_1) - Re(C_0)`.
///
/// The phase estimate `theta_hat` comes from a second-order loop run
/// once per symbol. The phase error detector is the argument of the
/// larger-magnitude corrected correlator (decision directed). With a
/// normalized loop bandwidth `bn_t = Bn * T` and damping `zeta`, the
/// proportional and integral gains follow the standard design
///
/// ```text
/// theta = bn_t / (zeta + 1 / (4 zeta))
/// kp    = 4 zeta theta   / (1 + 2 zeta theta + theta^2)
/// ki    = 4 theta^2      / (1 + 2 zeta theta + theta^2)
/// ```
///
/// With `pll_enabled = false` the estimate is held at zero.
pub fn coherent_demod(
    iq: &IqBuffer,
    cfg: &CoherentConfig,
    timing_offset_samples: usize,
) -> Result<SymbolStatistics> {
    if !(cfg.pll_loop_bandwidth_norm > 0.0 && cfg.pll_loop_bandwidth_norm < 0.5) {
        return Err(Error::InvalidParams(format!(
            "pll_loop_bandwidth_norm must be in (0, 0.5), got {}",
            cfg.pll_loop_bandwidth_norm
        )));
    }
    if !(cfg.pll_damping > 0.0 && cfg.pll_damping.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "pll_damping must be positive, got {}",
            cfg.pll_damping
        )));
    }

    let p = &cfg.params;
    let sps = p.samples_per_symbol();
    let nsym = symbol_count(iq, sps, timing_offset_samples)?;

    let t0 = conj_tone_table(iq.len(), p.tone0_hz(), p.sample_rate_hz(), timing_offset_samples);
    let t1 = conj_tone_table(iq.len(), p.tone1_hz(), p.sample_rate_hz(), timing_offset_samples);

    let theta = cfg.pll_loop_bandwidth_norm / (cfg.pll_damping + 1.0 / (4.0 * cfg.pll_damping));
    let denom = 1.0 + 2.0 * cfg.pll_damping * theta + theta * theta;
    let kp = 4.0 * cfg.pll_damping * theta / denom;
    let ki = 4.0 * theta * theta / denom;

    let mut phase_est = 0.0_f64;
    let mut integrator = 0.0_f64;
    let mut values = Vec::with_capacity(nsym);

    for k in 0..nsym {
        let start = timing_offset_samples + k * sps;
        let c0 = window_correlation(&iq.samples, &t0, start, sps);
        let c1 = window_correlation(&iq.samples, &t1, start, sps);

        let rot = Complex64::new(phase_est.cos(), -phase_est.sin());
        let c0r = c0 * rot;
        let c1r = c1 * rot;
        values.push(c1r.re - c0r.re);

        if cfg.pll_enabled {
            let winner = if c1r.norm_sqr() > c0r.norm_sqr() { c1r } else { c0r };
            let err = winner.arg();
            integrator += ki * err;
            phase_est += kp * err + integrator;
        }
    }

    Ok(SymbolStatistics { values, demod_kind: DemodKind::Coherent })
}
