//! A binary FSK modem toolkit for software-defined radio work.
//!
//! The signal path mirrors a physical link: [`modulator`] generates
//! continuous-phase FSK at complex baseband, [`channel`] applies
//! impairments (AWGN, carrier frequency offset, phase rotation, gain,
//! integer delay), [`demod`] turns samples back into per-symbol soft
//! decisions with a choice of coherent, non-coherent, or differential
//! back-ends, [`sync`] recovers symbol timing and slices soft decisions
//! into bits, and [`fec`] adds a rate-1/2 convolutional code with
//! Viterbi decoding. [`metrics`] measures bit error rates and runs
//! Monte-Carlo BER-vs-Eb/N0 sweeps; [`io`] pins the file formats.
//!
//! Everything is deterministic: all randomness is seeded ChaCha8 (see
//! [`rng`]), so any result — including multi-threaded sweeps — can be
//! reproduced bit for bit.

pub mod channel;
pub mod demod;
mod error;
pub mod fec;
pub mod io;
pub mod metrics;
pub mod modulator;
pub mod rng;
pub mod sync;
pub mod types;

pub use error::{Error, Result};
pub use types::{BitString, DemodKind, FskParams, IqBuffer, SymbolStatistics};
