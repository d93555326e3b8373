//! Shared domain types: modulation parameters, IQ sample buffers, bit
//! strings, and per-symbol soft decisions.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Binary FSK modulation parameters.
///
/// Holds the sampling rate, the two tone frequencies, and the symbol
/// duration, together with two derived quantities: the integer number of
/// samples per symbol and the modulation index
/// `h = |tone1_hz - tone0_hz| * symbol_duration_s`.
///
/// Bit convention, fixed project-wide: bit 1 is sent on `tone1_hz`
/// ("mark"), bit 0 on `tone0_hz` ("space").
///
/// Construction validates every invariant; a constructed value is always
/// consistent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FskParams {
    sample_rate_hz: f64,
    tone0_hz: f64,
    tone1_hz: f64,
    symbol_duration_s: f64,
    samples_per_symbol: usize,
    modulation_index: f64,
}

impl FskParams {
    /// Builds a parameter set, deriving `samples_per_symbol` and the
    /// modulation index, and checks all invariants:
    ///
    /// * `sample_rate_hz` and `symbol_duration_s` positive and finite
    /// * `sample_rate_hz * symbol_duration_s` an integer within 1e-9
    ///   relative error (fractional symbol lengths silently corrupt
    ///   framing, so they are rejected outright)
    /// * `samples_per_symbol >= 2`
    /// * both tones strictly below Nyquist in magnitude
    /// * the tones are distinct
    pub fn new(
        sample_rate_hz: f64,
        tone0_hz: f64,
        tone1_hz: f64,
        symbol_duration_s: f64,
    ) -> Result<Self> {
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidParams(format!(
                "sample_rate_hz must be positive and finite, got {sample_rate_hz}"
            )));
        }
        if !(symbol_duration_s.is_finite() && symbol_duration_s > 0.0) {
            return Err(Error::InvalidParams(format!(
                "symbol_duration_s must be positive and finite, got {symbol_duration_s}"
            )));
        }
        if !tone0_hz.is_finite() || !tone1_hz.is_finite() {
            return Err(Error::InvalidParams("tone frequencies must be finite".into()));
        }

        let sps_exact = sample_rate_hz * symbol_duration_s;
        let sps_rounded = sps_exact.round();
        if (sps_exact - sps_rounded).abs() > 1e-9 * sps_rounded.max(1.0) {
            return Err(Error::InvalidParams(format!(
                "samples_per_symbol: sample_rate_hz * symbol_duration_s = {sps_exact} \
                 is not an integer within 1e-9 relative error"
            )));
        }
        if sps_rounded < 2.0 {
            return Err(Error::InvalidParams(format!(
                "samples_per_symbol must be >= 2, got {sps_rounded}"
            )));
        }

        let nyquist = sample_rate_hz / 2.0;
        if tone0_hz.abs() >= nyquist {
            return Err(Error::InvalidParams(format!(
                "Nyquist: |tone0_hz| = {} must be < sample_rate_hz / 2 = {nyquist}",
                tone0_hz.abs()
            )));
        }
        if tone1_hz.abs() >= nyquist {
            return Err(Error::InvalidParams(format!(
                "Nyquist: |tone1_hz| = {} must be < sample_rate_hz / 2 = {nyquist}",
                tone1_hz.abs()
            )));
        }
        if tone0_hz == tone1_hz {
            return Err(Error::InvalidParams(format!(
                "tone0_hz and tone1_hz must differ, both are {tone0_hz}"
            )));
        }

        Ok(Self {
            sample_rate_hz,
            tone0_hz,
            tone1_hz,
            symbol_duration_s,
            samples_per_symbol: sps_rounded as usize,
            modulation_index: (tone1_hz - tone0_hz).abs() * symbol_duration_s,
        })
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    /// Frequency carrying bit 0 ("space").
    pub fn tone0_hz(&self) -> f64 {
        self.tone0_hz
    }

    /// Frequency carrying bit 1 ("mark").
    pub fn tone1_hz(&self) -> f64 {
        self.tone1_hz
    }

    pub fn symbol_duration_s(&self) -> f64 {
        self.symbol_duration_s
    }

    pub fn samples_per_symbol(&self) -> usize {
        self.samples_per_symbol
    }

    /// Modulation index `h = |tone1 - tone0| * T`. Integer `h` makes the
    /// two tones orthogonal over one symbol.
    pub fn modulation_index(&self) -> f64 {
        self.modulation_index
    }

    /// Tone frequency for a bit value.
    pub fn tone_for_bit(&self, bit: u8) -> f64 {
        if bit == 0 {
            self.tone0_hz
        } else {
            self.tone1_hz
        }
    }
}

/// Re-validates a parameter set and returns it unchanged.
///
/// `FskParams::new` already enforces every invariant at construction;
/// this exists as an explicit checkpoint for parameter sets that arrive
/// from deserialization or user input paths.
pub fn validate_params(p: FskParams) -> Result<FskParams> {
    FskParams::new(p.sample_rate_hz, p.tone0_hz, p.tone1_hz, p.symbol_duration_s)
}

/// A complex baseband sample sequence tagged with its sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct IqBuffer {
    pub samples: Vec<Complex64>,
    pub sample_rate_hz: f64,
}

impl IqBuffer {
    pub fn new(samples: Vec<Complex64>, sample_rate_hz: f64) -> Self {
        Self { samples, sample_rate_hz }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Checks the finiteness invariant (no NaN or infinite components).
    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.samples.iter().enumerate() {
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "IqBuffer sample {i} is not finite: {s}"
                )));
            }
        }
        Ok(())
    }

    /// True when every sample has a zero imaginary component, i.e. the
    /// buffer holds a real signal (passband modulator output).
    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|s| s.im == 0.0)
    }

    /// Mean of |s[n]|^2 over the buffer.
    pub fn mean_power(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }
}

/// An ordered sequence of binary symbols, each 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    /// Wraps a bit vector, rejecting any element other than 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidParams(format!(
                "BitString elements must be 0 or 1, got {bad}"
            )));
        }
        Ok(Self { bits })
    }

    /// Builds a bit string from booleans (`true` = 1).
    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        Self { bits: bits.into_iter().map(u8::from).collect() }
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.bits.iter().copied()
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Demodulation technique identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DemodKind {
    Coherent,
    Noncoherent,
    NoncoherentSquareLaw,
    Differential,
}

impl DemodKind {
    /// Canonical name used in CSV output.
    pub fn name(&self) -> &'static str {
        match self {
            DemodKind::Coherent => "coherent",
            DemodKind::Noncoherent => "noncoherent",
            DemodKind::NoncoherentSquareLaw => "noncoherent_squarelaw",
            DemodKind::Differential => "differential",
        }
    }
}

impl std::fmt::Display for DemodKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-symbol soft decisions from a demodulator.
///
/// Convention, fixed project-wide: more positive means bit 1 more likely.
/// One value per whole symbol processed.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolStatistics {
    pub values: Vec<f64>,
    pub demod_kind: DemodKind,
}

impl SymbolStatistics {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
