//! Forward error correction: the rate-1/2, constraint-length-3
//! convolutional code with generators (7, 5) octal, zero-tail terminated,
//! decoded with hard-decision Viterbi over the 4-state trellis.

use crate::error::{Error, Result};
use crate::types::BitString;

/// The single supported code. Fields are fixed; `ConvCodeSpec::default()`
/// is the only valid value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvCodeSpec {
    pub constraint_length: u8,
    pub generators_octal: (u8, u8),
    /// Output bits per input bit is the inverse of this rate.
    pub rate_inverse: u8,
}

impl Default for ConvCodeSpec {
    fn default() -> Self {
        Self { constraint_length: 3, generators_octal: (7, 5), rate_inverse: 2 }
    }
}

const NUM_STATES: usize = 4;
const TAIL_BITS: usize = 2;

/// Output bit pair on the trellis edge from `state = (s1, s2)` with input
/// `b`: generator 7 taps (b, s1, s2), generator 5 taps (b, s2).
fn edge_output(state: usize, b: u8) -> (u8, u8) {
    let s1 = (state >> 1) as u8;
    let s2 = (state & 1) as u8;
    (b ^ s1 ^ s2, b ^ s2)
}

/// Encodes a message, appending two zero tail bits so the encoder ends in
/// the all-zero state. Output length is `2 * (len(message) + 2)`.
pub fn conv_encode(message: &BitString, spec: &ConvCodeSpec) -> Result<BitString> {
    check_spec(spec)?;
    if message.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut out = Vec::with_capacity(2 * (message.len() + TAIL_BITS));
    let mut state = 0usize;
    for b in message.iter().chain(std::iter::repeat_n(0, TAIL_BITS)) {
        let (o1, o2) = edge_output(state, b);
        out.push(o1);
        out.push(o2);
        state = ((b as usize) << 1) | (state >> 1);
    }
    BitString::from_bits(out)
}

/// Maximum-likelihood decode under the Hamming metric, with the path
/// forced to end in the all-zero state; the two tail bits are stripped
/// from the returned message.
///
/// When several paths share the minimum metric, the one whose earliest
/// differing decision bit is 0 is returned. This is resolved exactly: the
/// backward pass marks every trellis node that lies on some minimum-
/// metric path, and a forward walk over those nodes takes the 0-input
/// edge whenever it stays on a marked path.
pub fn viterbi_decode(coded: &BitString, spec: &ConvCodeSpec) -> Result<BitString> {
    check_spec(spec)?;
    if !coded.len().is_multiple_of(2) || coded.len() < 6 {
        return Err(Error::BadLength(coded.len()));
    }
    let steps = coded.len() / 2;
    let received = coded.as_slice();

    const INF: u32 = u32::MAX / 2;

    // Forward pass: per step and state, the minimum metric and a bitmask
    // over {predecessor with s2 = 0, predecessor with s2 = 1} of the
    // predecessors attaining it.
    let mut metrics = [INF; NUM_STATES];
    metrics[0] = 0;
    let mut attain = vec![[0u8; NUM_STATES]; steps];

    for t in 0..steps {
        let r1 = received[2 * t];
        let r2 = received[2 * t + 1];
        let mut next = [INF; NUM_STATES];
        for s in 0..NUM_STATES {
            let b = (s >> 1) as u8;
            // Predecessors of (b, s1) are (s1, 0) and (s1, 1).
            let s1 = s & 1;
            for s2 in 0..2 {
                let p = (s1 << 1) | s2;
                if metrics[p] >= INF {
                    continue;
                }
                let (o1, o2) = edge_output(p, b);
                let cost = metrics[p] + u32::from(o1 != r1) + u32::from(o2 != r2);
                if cost < next[s] {
                    next[s] = cost;
                    attain[t][s] = 1 << s2;
                } else if cost == next[s] {
                    attain[t][s] |= 1 << s2;
                }
            }
        }
        metrics = next;
    }

    // Backward pass: mark the states at each step that lie on a
    // minimum-metric path terminating in state 0.
    let mut on_best = vec![[false; NUM_STATES]; steps + 1];
    on_best[steps][0] = true;
    for t in (0..steps).rev() {
        for s in 0..NUM_STATES {
            if !on_best[t + 1][s] {
                continue;
            }
            let s1 = s & 1;
            for s2 in 0..2 {
                if attain[t][s] & (1 << s2) != 0 {
                    on_best[t][(s1 << 1) | s2] = true;
                }
            }
        }
    }

    // Forward walk, preferring input bit 0. An edge state -> next exists
    // on a best path iff next is marked at t+1 and state is one of its
    // attaining predecessors.
    let mut decisions = Vec::with_capacity(steps);
    let mut state = 0usize;
    for t in 0..steps {
        let mut advanced = false;
        for b in 0..2usize {
            let next = (b << 1) | (state >> 1);
            let s2 = state & 1;
            if on_best[t + 1][next] && attain[t][next] & (1 << s2) != 0 {
                decisions.push(b as u8);
                state = next;
                advanced = true;
                break;
            }
        }
        debug_assert!(advanced, "minimum-metric path lost at step {t}");
        if !advanced {
            return Err(Error::BadLength(coded.len()));
        }
    }

    decisions.truncate(steps - TAIL_BITS);
    BitString::from_bits(decisions)
}

fn check_spec(spec: &ConvCodeSpec) -> Result<()> {
    if *spec != ConvCodeSpec::default() {
        return Err(Error::InvalidParams(format!(
            "unsupported code {spec:?}: only constraint length 3 with generators (7, 5) \
             at rate 1/2 is implemented"
        )));
    }
    Ok(())
}
