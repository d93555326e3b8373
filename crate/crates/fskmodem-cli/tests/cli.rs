//! Black-box tests of the `fskmodem` binary: exit codes, stream
//! separation, file pipelines, and equivalence with in-process library
//! pipelines.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fskmodem"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn signal_flags() -> Vec<String> {
    ["--fs", "1000", "--f0", "100", "--f1", "150", "--symbol-duration", "0.02"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn path_str(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_zero_bits_writes_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_str(dir.path(), "empty.bits");
    let r = run(&["gen", "--bits", "0", "--seed", "1", "--out", &out]);
    assert!(r.status.success());
    assert!(r.stdout.is_empty(), "gen must not write data to stdout");
    assert_eq!(std::fs::metadata(&out).unwrap().len(), 0);
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = path_str(dir.path(), "a.bits");
    let b = path_str(dir.path(), "b.bits");
    assert!(run(&["gen", "--bits", "512", "--seed", "9", "--out", &a]).status.success());
    assert!(run(&["gen", "--bits", "512", "--seed", "9", "--out", &b]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn missing_required_flag_exits_2_with_usage() {
    let r = run(&["gen", "--bits", "8", "--seed", "1"]);
    assert_eq!(r.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&r.stderr);
    assert!(stderr.to_lowercase().contains("usage"), "stderr: {stderr}");
}

#[test]
fn unknown_flag_exits_2() {
    let r = run(&["gen", "--bits", "8", "--seed", "1", "--out", "/tmp/x", "--frobnicate"]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn io_failure_exits_1() {
    let r = run(&["gen", "--bits", "8", "--seed", "1", "--out", "/nonexistent-dir/x.bits"]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stderr).contains("error:"));
}

#[test]
fn bad_ebn0_list_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path_str(dir.path(), "x.csv");
    let mut args = vec![
        "ber-sweep".to_string(),
        "--ebn0".into(),
        "zero,one".into(),
        "--technique".into(),
        "noncoherent".into(),
        "--bits-per-point".into(),
        "1000".into(),
        "--out".into(),
        csv,
    ];
    args.extend(signal_flags());
    let r = bin().args(&args).output().unwrap();
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn roundtrip_pipeline_recovers_bits() {
    let dir = tempfile::tempdir().unwrap();
    let bits = path_str(dir.path(), "tx.bits");
    let iq = path_str(dir.path(), "tx.cf32");
    let rx = path_str(dir.path(), "rx.bits");
    let sig = signal_flags();

    assert!(run(&["gen", "--bits", "400", "--seed", "3", "--out", &bits]).status.success());

    let mut args = vec!["mod".to_string(), "--in".into(), bits.clone(), "--out".into(), iq.clone()];
    args.extend(sig.clone());
    assert!(bin().args(&args).status().unwrap().success());

    let mut args = vec![
        "demod".to_string(),
        "--in".into(),
        iq,
        "--out".into(),
        rx.clone(),
        "--technique".into(),
        "noncoherent".into(),
        "--timing".into(),
        "auto".into(),
        "--threshold".into(),
        "mean".into(),
    ];
    args.extend(sig);
    assert!(bin().args(&args).status().unwrap().success());

    assert_eq!(std::fs::read(&bits).unwrap(), std::fs::read(&rx).unwrap());
}

#[test]
fn explicit_timing_matches_auto_on_delayed_signal() {
    let dir = tempfile::tempdir().unwrap();
    let sig = signal_flags();
    let bits = path_str(dir.path(), "tx.bits");
    let iq = path_str(dir.path(), "tx.cf32");
    let delayed = path_str(dir.path(), "delayed.cf32");

    assert!(run(&["gen", "--bits", "300", "--seed", "8", "--out", &bits]).status.success());
    let mut args = vec!["mod".to_string(), "--in".into(), bits.clone(), "--out".into(), iq.clone()];
    args.extend(sig.clone());
    assert!(bin().args(&args).status().unwrap().success());

    let mut args = vec![
        "channel".to_string(),
        "--in".into(),
        iq,
        "--out".into(),
        delayed.clone(),
        "--delay".into(),
        "7".into(),
    ];
    args.extend(sig.clone());
    assert!(bin().args(&args).status().unwrap().success());

    let demod = |timing: &str, out: &str| {
        let mut args = vec![
            "demod".to_string(),
            "--in".into(),
            delayed.clone(),
            "--out".into(),
            out.to_string(),
            "--technique".into(),
            "noncoherent".into(),
            "--timing".into(),
            timing.to_string(),
        ];
        args.extend(sig.clone());
        assert!(bin().args(&args).status().unwrap().success());
    };
    let auto_out = path_str(dir.path(), "auto.bits");
    let fixed_out = path_str(dir.path(), "fixed.bits");
    demod("auto", &auto_out);
    demod("7", &fixed_out);

    assert_eq!(std::fs::read(&auto_out).unwrap(), std::fs::read(&fixed_out).unwrap());
    assert_eq!(std::fs::read(&auto_out).unwrap(), std::fs::read(&bits).unwrap());
}

#[test]
fn fec_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let bits = path_str(dir.path(), "m.bits");
    let coded = path_str(dir.path(), "m.coded");
    let back = path_str(dir.path(), "m.back");

    assert!(run(&["gen", "--bits", "1000", "--seed", "17", "--out", &bits]).status.success());
    assert!(run(&["fec-encode", "--in", &bits, "--out", &coded]).status.success());
    let coded_len = std::fs::read_to_string(&coded).unwrap().trim_end().len();
    assert_eq!(coded_len, 2 * (1000 + 2));
    assert!(run(&["fec-decode", "--in", &coded, "--out", &back]).status.success());
    assert_eq!(std::fs::read(&bits).unwrap(), std::fs::read(&back).unwrap());
}

// A composed subcommand pipeline equals the same pipeline run in-process.
#[test]
fn cli_pipeline_matches_library_pipeline() {
    use fskmodem::channel::{apply_channel, ChannelConfig};
    use fskmodem::demod::{noncoherent_demod, NoncoherentConfig};
    use fskmodem::io::{read_iq, write_iq};
    use fskmodem::modulator::{modulate, ModulatorConfig};
    use fskmodem::rng::random_bits;
    use fskmodem::sync::{estimate_timing, slice_bits, SlicerConfig};
    use fskmodem::types::{DemodKind, FskParams};

    let dir = tempfile::tempdir().unwrap();
    let sig = signal_flags();
    let params = FskParams::new(1000.0, 100.0, 150.0, 0.02).unwrap();

    let bits_path = path_str(dir.path(), "tx.bits");
    let iq_path = path_str(dir.path(), "tx.cf32");
    let noisy_path = path_str(dir.path(), "noisy.cf32");
    let rx_path = path_str(dir.path(), "rx.bits");

    assert!(run(&["gen", "--bits", "500", "--seed", "77", "--out", &bits_path]).status.success());
    let mut args = vec!["mod".to_string(), "--in".into(), bits_path, "--out".into(), iq_path.clone()];
    args.extend(sig.clone());
    assert!(bin().args(&args).status().unwrap().success());
    let mut args = vec![
        "channel".to_string(),
        "--in".into(),
        iq_path,
        "--out".into(),
        noisy_path.clone(),
        "--ebn0".into(),
        "14".into(),
        "--seed".into(),
        "5".into(),
        "--delay".into(),
        "3".into(),
    ];
    args.extend(sig.clone());
    assert!(bin().args(&args).status().unwrap().success());
    let mut args = vec![
        "demod".to_string(),
        "--in".into(),
        noisy_path,
        "--out".into(),
        rx_path.clone(),
        "--technique".into(),
        "noncoherent".into(),
    ];
    args.extend(sig);
    assert!(bin().args(&args).status().unwrap().success());
    let cli_bits = std::fs::read_to_string(&rx_path).unwrap();

    // Same pipeline in-process, including the f32 quantization the files
    // impose.
    let tx = random_bits(500, 77);
    let iq = modulate(&tx, &ModulatorConfig::new(params)).unwrap();
    let q_path = dir.path().join("q.cf32");
    write_iq(&iq, &q_path).unwrap();
    let iq_q = read_iq(&q_path, 1000.0).unwrap();
    let rx = apply_channel(
        &iq_q,
        &ChannelConfig {
            ebn0_db: Some(14.0),
            noise_seed: 5,
            delay_samples: 3,
            ..ChannelConfig::default()
        },
        &params,
    )
    .unwrap();
    write_iq(&rx, &q_path).unwrap();
    let rx_q = read_iq(&q_path, 1000.0).unwrap();
    let est = estimate_timing(&rx_q, &params, DemodKind::Noncoherent).unwrap();
    let stats = noncoherent_demod(&rx_q, &NoncoherentConfig::new(params), est.offset_samples).unwrap();
    let lib_bits = slice_bits(&stats, &SlicerConfig::default()).unwrap();

    assert_eq!(cli_bits.trim_end(), lib_bits.to_string());
}

#[test]
fn ber_sweep_high_snr_row_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path_str(dir.path(), "sweep.csv");
    let mut args = vec![
        "ber-sweep".to_string(),
        "--ebn0".into(),
        "40".into(),
        "--technique".into(),
        "noncoherent".into(),
        "--bits-per-point".into(),
        "10000".into(),
        "--seed".into(),
        "1".into(),
        "--out".into(),
        csv.clone(),
    ];
    args.extend(signal_flags());
    let r = bin().args(&args).output().unwrap();
    assert!(r.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "ebn0_db,demod,fec,n_bits,n_errors,ber,seed");
    let row = lines.next().unwrap();
    assert!(row.starts_with("40,noncoherent,0,10000,0,0.00000e0,"), "row: {row}");
    // Summary table goes to stdout.
    let stdout = String::from_utf8_lossy(&r.stdout);
    assert!(stdout.contains("ebn0_db"), "stdout: {stdout}");
}

#[test]
fn fec_both_doubles_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv_off = path_str(dir.path(), "off.csv");
    let csv_both = path_str(dir.path(), "both.csv");
    for (fec, csv) in [("off", &csv_off), ("both", &csv_both)] {
        let mut args = vec![
            "ber-sweep".to_string(),
            "--ebn0".into(),
            "10,12".into(),
            "--technique".into(),
            "noncoherent,differential".into(),
            "--fec".into(),
            fec.to_string(),
            "--bits-per-point".into(),
            "1000".into(),
            "--out".into(),
            csv.clone(),
        ];
        args.extend(signal_flags());
        assert!(bin().args(&args).status().unwrap().success());
    }
    let rows = |p: &str| std::fs::read_to_string(p).unwrap().lines().count() - 1;
    assert_eq!(rows(&csv_off), 4);
    assert_eq!(rows(&csv_both), 8);
}

#[test]
fn negative_db_and_tone_values_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let bits = path_str(dir.path(), "tx.bits");
    let iq = path_str(dir.path(), "tx.cf32");
    let rx = path_str(dir.path(), "rx.cf32");
    assert!(run(&["gen", "--bits", "100", "--seed", "2", "--out", &bits]).status.success());
    let sig = ["--fs", "1000", "--f0", "-100", "--f1", "150", "--symbol-duration", "0.02"];
    let mut args = vec!["mod", "--in", &bits, "--out", &iq];
    args.extend(sig);
    assert!(bin().args(&args).status().unwrap().success());
    let mut args = vec!["channel", "--in", &iq, "--out", &rx, "--ebn0", "-3", "--cfo", "-5"];
    args.extend(sig);
    assert!(bin().args(&args).status().unwrap().success());
}

#[test]
fn library_error_maps_to_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let iq = path_str(dir.path(), "short.cf32");
    std::fs::write(&iq, [0u8; 8]).unwrap(); // one sample, far below a symbol
    let out = path_str(dir.path(), "out.bits");
    let mut args = vec![
        "demod".to_string(),
        "--in".into(),
        iq,
        "--out".into(),
        out,
        "--technique".into(),
        "noncoherent".into(),
    ];
    args.extend(signal_flags());
    let r = bin().args(&args).output().unwrap();
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stderr).contains("too short"));
}

#[test]
fn appendix_demo_prints_2000_bits_deterministically() {
    let a = run(&["appendix-demo"]);
    let b = run(&["appendix-demo"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let line = text.lines().next().unwrap();
    let payload = line.strip_prefix("Extracted bit string: ").expect("prefix");
    assert_eq!(payload.len(), 2000);
    assert!(payload.chars().all(|c| c == '0' || c == '1'));
}
