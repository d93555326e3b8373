//! `fskmodem` — file-to-file FSK modem pipelines and BER sweeps.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fskmodem::channel::{apply_channel, ChannelConfig};
use fskmodem::demod::{
    appendix_fft_pipeline, coherent_demod, differential_demod, noncoherent_demod, CoherentConfig,
    DifferentialConfig, NoncoherentConfig,
};
use fskmodem::fec::{conv_encode, viterbi_decode, ConvCodeSpec};
use fskmodem::io;
use fskmodem::metrics::{run_ber_sweep, SweepPoint};
use fskmodem::modulator::{modulate, ModulatorConfig, OutputMode};
use fskmodem::rng::random_bits;
use fskmodem::sync::{estimate_timing, slice_bits, SlicerConfig};
use fskmodem::types::{BitString, DemodKind, FskParams};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "fskmodem",
    version,
    about = "Binary FSK modem pipelines: bit generation, modulation, channel simulation, \
             demodulation, convolutional FEC, and Monte-Carlo BER sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Modulation parameters shared by every signal-processing subcommand.
#[derive(Args)]
struct SignalArgs {
    /// Sample rate in Hz
    #[arg(long)]
    fs: f64,
    /// Tone frequency for bit 0 ("space"), Hz
    #[arg(long, allow_negative_numbers = true)]
    f0: f64,
    /// Tone frequency for bit 1 ("mark"), Hz
    #[arg(long, allow_negative_numbers = true)]
    f1: f64,
    /// Symbol duration in seconds
    #[arg(long = "symbol-duration")]
    symbol_duration: f64,
}

impl SignalArgs {
    fn params(&self) -> fskmodem::Result<FskParams> {
        FskParams::new(self.fs, self.f0, self.f1, self.symbol_duration)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Technique {
    Coherent,
    Noncoherent,
    NoncoherentSquarelaw,
    Differential,
}

impl From<Technique> for DemodKind {
    fn from(t: Technique) -> Self {
        match t {
            Technique::Coherent => DemodKind::Coherent,
            Technique::Noncoherent => DemodKind::Noncoherent,
            Technique::NoncoherentSquarelaw => DemodKind::NoncoherentSquareLaw,
            Technique::Differential => DemodKind::Differential,
        }
    }
}

/// `auto` or an explicit sample offset.
#[derive(Clone, Copy, Debug)]
enum Timing {
    Auto,
    Offset(usize),
}

impl FromStr for Timing {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            Ok(Timing::Auto)
        } else {
            s.parse::<usize>()
                .map(Timing::Offset)
                .map_err(|_| format!("expected 'auto' or a sample count, got {s:?}"))
        }
    }
}

/// `mean` or an explicit threshold value.
#[derive(Clone, Copy, Debug)]
enum Threshold {
    Mean,
    Fixed(f64),
}

impl FromStr for Threshold {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "mean" {
            Ok(Threshold::Mean)
        } else {
            s.parse::<f64>()
                .map(Threshold::Fixed)
                .map_err(|_| format!("expected 'mean' or a number, got {s:?}"))
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FecMode {
    On,
    Off,
    Both,
}

/// Comma list ("0,2,4") or start:step:stop range ("0:2:12") of dB values.
#[derive(Clone, Debug)]
struct Ebn0List(Vec<f64>);

impl FromStr for Ebn0List {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ebn0_list(s).map(Ebn0List)
    }
}

/// Comma list of demodulation technique names.
#[derive(Clone, Debug)]
struct TechniqueList(Vec<DemodKind>);

impl FromStr for TechniqueList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_technique_list(s).map(TechniqueList)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write N deterministic pseudo-random bits to a bit file
    Gen {
        #[arg(long)]
        bits: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Modulate a bit file into a cf32 IQ file
    #[command(name = "mod")]
    Modulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        signal: SignalArgs,
        /// Emit sin(phase) with zero Q instead of a complex phasor
        #[arg(long)]
        real_passband: bool,
        /// Restart the phase at zero on every symbol boundary
        #[arg(long)]
        phase_reset: bool,
    },
    /// Apply channel impairments to a cf32 IQ file
    Channel {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        signal: SignalArgs,
        /// Eb/N0 in dB (enables AWGN)
        #[arg(long, conflicts_with = "snr", allow_negative_numbers = true)]
        ebn0: Option<f64>,
        /// Per-sample SNR in dB (enables AWGN)
        #[arg(long, allow_negative_numbers = true)]
        snr: Option<f64>,
        /// Carrier frequency offset in Hz
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        cfo: f64,
        /// Constant phase rotation in radians
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
        /// Amplitude gain
        #[arg(long, default_value_t = 1.0)]
        gain: f64,
        /// Integer sample delay (zeros prepended)
        #[arg(long, default_value_t = 0)]
        delay: usize,
        /// Noise seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Demodulate a cf32 IQ file into a bit file
    Demod {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        signal: SignalArgs,
        #[arg(long, value_enum)]
        technique: Technique,
        /// 'auto' to search, or an explicit sample offset
        #[arg(long, default_value = "auto")]
        timing: Timing,
        /// 'mean' for the adaptive threshold, or a fixed value
        #[arg(long, default_value = "mean", allow_negative_numbers = true)]
        threshold: Threshold,
    },
    /// Convolutionally encode a bit file (rate 1/2, K = 3)
    FecEncode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Viterbi-decode a bit file
    FecDecode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte-Carlo BER sweep over an Eb/N0 x technique x FEC grid
    BerSweep {
        /// Eb/N0 list: comma separated ("0,2,4") or start:step:stop ("0:2:12")
        #[arg(long, allow_hyphen_values = true)]
        ebn0: Ebn0List,
        /// Comma-separated technique list
        #[arg(long)]
        technique: TechniqueList,
        #[arg(long, value_enum, default_value = "off")]
        fec: FecMode,
        #[arg(long = "bits-per-point")]
        bits_per_point: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        signal: SignalArgs,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: available cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the built-in spectrum-threshold demo and print its bit string
    AppendixDemo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Box<dyn std::error::Error>> {
    match command {
        Command::Gen { bits, seed, out } => {
            io::write_bit_file(&random_bits(bits, seed), &out)?;
            eprintln!("wrote {bits} bits to {}", out.display());
        }
        Command::Modulate { input, out, signal, real_passband, phase_reset } => {
            let params = signal.params()?;
            let bits = io::read_bit_file(&input)?;
            let cfg = ModulatorConfig {
                params,
                continuous_phase: !phase_reset,
                output_mode: if real_passband {
                    OutputMode::RealPassband
                } else {
                    OutputMode::ComplexBaseband
                },
            };
            let iq = modulate(&bits, &cfg)?;
            io::write_iq(&iq, &out)?;
            eprintln!("wrote {} samples to {}", iq.len(), out.display());
        }
        Command::Channel { input, out, signal, ebn0, snr, cfo, phase, gain, delay, seed } => {
            let params = signal.params()?;
            let iq = io::read_iq(&input, params.sample_rate_hz())?;
            let cfg = ChannelConfig {
                ebn0_db: ebn0,
                snr_db: snr,
                cfo_hz: cfo,
                phase_rad: phase,
                gain,
                delay_samples: delay,
                noise_seed: seed,
            };
            let rx = apply_channel(&iq, &cfg, &params)?;
            io::write_iq(&rx, &out)?;
            eprintln!("wrote {} samples to {}", rx.len(), out.display());
        }
        Command::Demod { input, out, signal, technique, timing, threshold } => {
            let params = signal.params()?;
            let iq = io::read_iq(&input, params.sample_rate_hz())?;
            let kind = DemodKind::from(technique);
            let offset = match timing {
                Timing::Auto => {
                    let est = estimate_timing(&iq, &params, kind)?;
                    eprintln!("timing: offset {} of {}", est.offset_samples, params.samples_per_symbol());
                    est.offset_samples
                }
                Timing::Offset(n) => n,
            };
            let stats = match kind {
                DemodKind::Coherent => coherent_demod(&iq, &CoherentConfig::new(params), offset)?,
                DemodKind::Noncoherent => {
                    noncoherent_demod(&iq, &NoncoherentConfig::new(params), offset)?
                }
                DemodKind::NoncoherentSquareLaw => {
                    noncoherent_demod(&iq, &NoncoherentConfig::square_law(params), offset)?
                }
                DemodKind::Differential => {
                    differential_demod(&iq, &DifferentialConfig::new(params), offset)?
                }
            };
            let slicer = match threshold {
                Threshold::Mean => SlicerConfig::default(),
                Threshold::Fixed(t) => SlicerConfig::fixed(t),
            };
            let bits = slice_bits(&stats, &slicer)?;
            io::write_bit_file(&bits, &out)?;
            eprintln!("wrote {} bits to {}", bits.len(), out.display());
        }
        Command::FecEncode { input, out } => {
            let bits = io::read_bit_file(&input)?;
            let coded = conv_encode(&bits, &ConvCodeSpec::default())?;
            io::write_bit_file(&coded, &out)?;
            eprintln!("encoded {} bits into {}", bits.len(), coded.len());
        }
        Command::FecDecode { input, out } => {
            let coded = io::read_bit_file(&input)?;
            let decoded = viterbi_decode(&coded, &ConvCodeSpec::default())?;
            io::write_bit_file(&decoded, &out)?;
            eprintln!("decoded {} bits into {}", coded.len(), decoded.len());
        }
        Command::BerSweep {
            ebn0,
            technique,
            fec,
            bits_per_point,
            seed,
            signal,
            out,
            jobs,
        } => {
            let params = signal.params()?;
            let Ebn0List(ebn0_list) = ebn0;
            let TechniqueList(techniques) = technique;
            let fec_states: &[bool] = match fec {
                FecMode::Off => &[false],
                FecMode::On => &[true],
                FecMode::Both => &[false, true],
            };
            let mut grid = Vec::new();
            for &ebn0_db in &ebn0_list {
                for &demod_kind in &techniques {
                    for &fec_enabled in fec_states {
                        grid.push(SweepPoint { ebn0_db, demod_kind, fec_enabled });
                    }
                }
            }

            let jobs = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
            });
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
            let start = Instant::now();
            let reports = pool.install(|| run_ber_sweep(&grid, bits_per_point, seed, &params))?;
            let elapsed = start.elapsed();

            io::write_ber_csv(&reports, &out)?;

            println!("{:>8}  {:<22} {:>3}  {:>9}  {:>8}  {:>12}", "ebn0_db", "demod", "fec", "bits", "errors", "ber");
            for r in &reports {
                println!(
                    "{:>8}  {:<22} {:>3}  {:>9}  {:>8}  {:>12}",
                    r.ebn0_db,
                    r.demod_kind.name(),
                    u8::from(r.fec_enabled),
                    r.n_bits,
                    r.n_errors,
                    format!("{:.5e}", r.ber),
                );
            }
            let demod_bits: usize = reports.iter().map(|r| r.n_bits).sum();
            println!(
                "{} points, {} bits in {:.2?} ({:.0} bits/s demodulated; machine-dependent)",
                reports.len(),
                demod_bits,
                elapsed,
                demod_bits as f64 / elapsed.as_secs_f64()
            );
            eprintln!("wrote {} rows to {}", reports.len(), out.display());
        }
        Command::AppendixDemo => {
            let params = FskParams::new(1000.0, 10.0, 20.0, 1.0)?;
            let bits = BitString::from_bits(vec![0, 1])?;
            let out = appendix_fft_pipeline(&bits, &params)?;
            println!("Extracted bit string: {out}");
        }
    }
    Ok(())
}

fn parse_ebn0_list(spec: &str) -> Result<Vec<f64>, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad Eb/N0 value {s:?}"))
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range must be start:step:stop, got {spec:?}"));
        }
        let (start, step, stop) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        if step <= 0.0 {
            return Err(format!("range step must be positive, got {step}"));
        }
        let mut values = Vec::new();
        let mut k = 0u32;
        loop {
            let v = start + step * k as f64;
            if v > stop + 1e-9 {
                break;
            }
            values.push(v);
            k += 1;
        }
        if values.is_empty() {
            return Err(format!("range {spec:?} is empty"));
        }
        Ok(values)
    } else {
        let values: Result<Vec<f64>, String> = spec.split(',').map(parse).collect();
        let values = values?;
        if values.is_empty() {
            return Err("Eb/N0 list is empty".into());
        }
        Ok(values)
    }
}

fn parse_technique_list(spec: &str) -> Result<Vec<DemodKind>, String> {
    spec.split(',')
        .map(|s| match s.trim() {
            "coherent" => Ok(DemodKind::Coherent),
            "noncoherent" => Ok(DemodKind::Noncoherent),
            "noncoherent-squarelaw" => Ok(DemodKind::NoncoherentSquareLaw),
            "differential" => Ok(DemodKind::Differential),
            other => Err(format!(
                "unknown technique {other:?}; expected coherent, noncoherent, \
                 noncoherent-squarelaw, or differential"
            )),
        })
        .collect()
}
