//! File interchange.
//!
//! Three formats, all byte-order pinned and platform independent:
//!
//! * IQ samples: headerless interleaved 32-bit little-endian IEEE-754
//!   floats, I then Q per sample (the common "cf32" layout). The sample
//!   rate travels out of band.
//! * Bit files: text of `'0'`/`'1'` characters with an optional trailing
//!   newline and nothing else.
//! * BER sweep results: a fixed-schema CSV.

use crate::error::{Error, Result};
use crate::metrics::BerReport;
use crate::types::{BitString, IqBuffer};
use num_complex::Complex64;
use std::fs;
use std::io::Write;
use std::path::Path;

/// Writes interleaved cf32. Samples are quantized to f32; that is the
/// storage contract, so `read_iq(write_iq(x))` returns the f32-quantized
/// `x` bit-exactly.
pub fn write_iq(iq: &IqBuffer, path: &Path) -> Result<()> {
    iq.validate()?;
    let mut bytes = Vec::with_capacity(iq.len() * 8);
    for s in &iq.samples {
        bytes.extend_from_slice(&(s.re as f32).to_le_bytes());
        bytes.extend_from_slice(&(s.im as f32).to_le_bytes());
    }
    fs::write(path, bytes)?;
    Ok(())
}

/// Reads interleaved cf32 written by [`write_iq`] (or any other SDR
/// tool). The byte length must be a multiple of 8 and every float finite.
pub fn read_iq(path: &Path, sample_rate_hz: f64) -> Result<IqBuffer> {
    let bytes = fs::read(path)?;
    if bytes.len() % 8 != 0 {
        return Err(Error::MalformedFile(format!(
            "cf32 byte length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    let mut samples = Vec::with_capacity(bytes.len() / 8);
    for chunk in bytes.chunks_exact(8) {
        let re = f32::from_le_bytes(chunk[0..4].try_into().unwrap());
        let im = f32::from_le_bytes(chunk[4..8].try_into().unwrap());
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::MalformedFile(format!(
                "non-finite sample at index {}",
                samples.len()
            )));
        }
        samples.push(Complex64::new(re as f64, im as f64));
    }
    Ok(IqBuffer::new(samples, sample_rate_hz))
}

/// Writes a bit file: one `'0'`/`'1'` character per bit and a trailing
/// newline (omitted for an empty bit string).
pub fn write_bit_file(bits: &BitString, path: &Path) -> Result<()> {
    let mut out = String::with_capacity(bits.len() + 1);
    for b in bits.iter() {
        out.push(if b == 1 { '1' } else { '0' });
    }
    if !out.is_empty() {
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a bit file; any character other than `'0'`, `'1'`, or one
/// trailing newline is rejected.
pub fn read_bit_file(path: &Path) -> Result<BitString> {
    let text = fs::read_to_string(path)?;
    let body = text.strip_suffix('\n').unwrap_or(&text);
    let mut bits = Vec::with_capacity(body.len());
    for (i, c) in body.chars().enumerate() {
        match c {
            '0' => bits.push(0),
            '1' => bits.push(1),
            other => {
                return Err(Error::MalformedFile(format!(
                    "unexpected character {other:?} at position {i} in bit file"
                )))
            }
        }
    }
    BitString::from_bits(bits)
}

/// Writes BER reports as CSV with the pinned header
/// `ebn0_db,demod,fec,n_bits,n_errors,ber,seed`. `ber` is printed with 6
/// significant digits in scientific notation (e.g. `3.37000e-3`), `fec`
/// as 0/1, and `ebn0_db` in plain decimal with no trailing zeros.
pub fn write_ber_csv(reports: &[BerReport], path: &Path) -> Result<()> {
    let mut file = fs::File::create(path)?;
    write!(file, "{}", render_ber_csv(reports))?;
    Ok(())
}

/// CSV rendering shared by the file writer and stdout reporting.
pub fn render_ber_csv(reports: &[BerReport]) -> String {
    let mut out = String::from("ebn0_db,demod,fec,n_bits,n_errors,ber,seed\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{:.5e},{}\n",
            r.ebn0_db,
            r.demod_kind,
            u8::from(r.fec_enabled),
            r.n_bits,
            r.n_errors,
            r.ber,
            r.seed
        ));
    }
    out
}
