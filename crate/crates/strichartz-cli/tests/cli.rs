//! End-to-end checks of the binary: exit codes, output schemas, and
//! byte-level determinism of repeated runs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strichartz"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("strichartz-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn classify_extended_example() {
    let output = run(&["classify", "-n", "3", "-a", "2", "-q", "2", "-p", "4"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("region: extended"), "{text}");
    assert!(text.contains("s = -1/4"), "{text}");
    assert!(text.contains("alpha_sharp = 1/4"), "{text}");
}

#[test]
fn classify_excluded_endpoint() {
    let output = run(&["classify", "-n", "2", "-a", "2", "-q", "2", "-p", "inf"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("excluded endpoint"), "{text}");
    assert!(text.contains("(2,2,inf)"), "{text}");
}

#[test]
fn classify_json_schema() {
    let output = run(&[
        "classify", "-n", "2", "-a", "2", "-q", "2", "-p", "8", "--alpha", "1/4", "--json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["region"], "extended");
    assert_eq!(value["alpha_sharp"], "1/4");
    assert_eq!(value["alpha_sharp_value"], 0.25);
}

#[test]
fn classify_exit_codes() {
    // q < 2: domain error
    let output = run(&["classify", "-n", "3", "-a", "2", "-q", "1", "-p", "4"]);
    assert_eq!(output.status.code(), Some(3));
    // unparsable number: parse error
    let output = run(&["classify", "-n", "3", "-a", "2", "-q", "x", "-p", "4"]);
    assert_eq!(output.status.code(), Some(2));
    // missing required flag: clap parse error
    let output = run(&["classify", "-n", "3"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn classify_wave_variant() {
    let output = run(&["classify", "-n", "3", "-a", "1", "-q", "2", "-p", "5"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("region: extended"), "{text}");
    assert!(text.contains("wave"), "{text}");
}

/// A light sweep configuration: data-side quantities only, coarse scales.
const LIGHT_SWEEP: &str = "[sweep]\n\
    n = 2\n\
    a = 2\n\
    pairs = 2:8\n\
    quantities = radial omega\n\
    epsilons = 1/4 1/8 1/16 1/32\n\
    alpha = 1/4\n";

#[test]
fn knapp_sweep_schema_and_determinism() {
    let dir = temp_dir("sweep");
    let config = write_config(&dir, "sweep.ini", LIGHT_SWEEP);
    let out_a = dir.join("a");
    let out_b = dir.join("b");
    for out in [&out_a, &out_b] {
        let output = run(&[
            "knapp-sweep",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
        ]);
        assert!(
            output.status.success(),
            "{}",
            String::from_utf8_lossy(&output.stderr)
        );
    }
    let csv_a = std::fs::read(out_a.join("sweep.csv")).unwrap();
    let csv_b = std::fs::read(out_b.join("sweep.csv")).unwrap();
    assert_eq!(csv_a, csv_b, "repeated runs must be byte-identical");
    let json_a = std::fs::read(out_a.join("summary.json")).unwrap();
    let json_b = std::fs::read(out_b.join("summary.json")).unwrap();
    assert_eq!(json_a, json_b);

    // schema: header + 4 rows per quantity, fitted exponents present
    let text = String::from_utf8(csv_a).unwrap();
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("epsilon"))
        .collect();
    assert_eq!(data_rows.len(), 8, "{text}");
    for row in data_rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 6);
        let fitted: f64 = fields[4].parse().unwrap();
        assert!(fitted.is_finite());
    }
    let summary: serde_json::Value =
        serde_json::from_str(&String::from_utf8(json_a).unwrap()).unwrap();
    assert_eq!(summary["fits"].as_array().unwrap().len(), 2);

    // the radial sweep follows its predicted exponent
    let radial = summary["fits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["quantity"] == "radial")
        .unwrap();
    let fitted = radial["fitted_exponent"].as_f64().unwrap();
    assert!((fitted - 1.5).abs() < 0.1, "radial exponent {fitted}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn knapp_sweep_parallel_jobs_match_serial() {
    let dir = temp_dir("jobs");
    let config = write_config(&dir, "sweep.ini", LIGHT_SWEEP);
    let serial = dir.join("serial");
    let parallel = dir.join("parallel");
    for (out, jobs) in [(&serial, "1"), (&parallel, "3")] {
        let output = run(&[
            "knapp-sweep",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert!(output.status.success());
    }
    assert_eq!(
        std::fs::read(serial.join("sweep.csv")).unwrap(),
        std::fs::read(parallel.join("sweep.csv")).unwrap()
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn knapp_sweep_rejects_short_epsilon_list() {
    let dir = temp_dir("short");
    let config = write_config(
        &dir,
        "sweep.ini",
        "[sweep]\nn = 2\nquantities = radial\nepsilons = 1/8\n",
    );
    let output = run(&[
        "knapp-sweep",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(4));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn knapp_sweep_rejects_inadmissible_pair() {
    let dir = temp_dir("pair");
    let config = write_config(
        &dir,
        "sweep.ini",
        "[sweep]\nn = 2\npairs = 4:4\nquantities = mixed\n",
    );
    let output = run(&[
        "knapp-sweep",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr).into_owned();
    assert!(stderr.contains("classical"), "{stderr}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn knapp_sweep_rejects_unknown_config_key() {
    let dir = temp_dir("typo");
    let config = write_config(
        &dir,
        "sweep.ini",
        "[sweep]\nn = 2\nquantities = radial\nepsilonz = 1/8 1/16 1/32 1/64\n",
    );
    let output = run(&[
        "knapp-sweep",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn probe_bound_deterministic_and_rescaling_exact() {
    let dir = temp_dir("probe");
    let config = write_config(
        &dir,
        "probe.ini",
        "[probe]\nn = 3\na = 2\nq = 2\np = 4\nsamples = 3\nseed = 7\ntime_nodes = 4\nradial_nodes = 16\nmax_degree = 12\n",
    );
    let out_a = dir.join("a");
    let out_b = dir.join("b");
    for out in [&out_a, &out_b] {
        let output = run(&[
            "probe-bound",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
        ]);
        assert!(
            output.status.success(),
            "{}",
            String::from_utf8_lossy(&output.stderr)
        );
    }
    let json_a = std::fs::read(out_a.join("probe.json")).unwrap();
    assert_eq!(json_a, std::fs::read(out_b.join("probe.json")).unwrap());
    let summary: serde_json::Value =
        serde_json::from_str(&String::from_utf8(json_a).unwrap()).unwrap();
    let max_ratio = summary["max_ratio"].as_f64().unwrap();
    assert!(max_ratio.is_finite() && max_ratio > 0.0);
    for residual in summary["rescale"]["residuals"].as_array().unwrap() {
        assert!(residual.as_f64().unwrap() < 1e-6);
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn probe_bound_rejects_pair_outside_extended_range() {
    let dir = temp_dir("probe-bad");
    let config = write_config(
        &dir,
        "probe.ini",
        "[probe]\nn = 3\na = 2\nq = 4\np = 4\nsamples = 1\n",
    );
    let output = run(&[
        "probe-bound",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn snapshot_writes_slice() {
    let dir = temp_dir("snap");
    let config = write_config(
        &dir,
        "snap.ini",
        "[snapshot]\nn = 2\nepsilon = 1/8\ntime = 0.05\npoints = 64\n",
    );
    let output = run(&[
        "propagate-snapshot",
        "--config",
        config.to_str().unwrap(),
        "--out-dir",
        dir.join("out").to_str().unwrap(),
    ]);
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = std::fs::read_to_string(dir.join("out/snapshot.csv")).unwrap();
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("coordinate"))
        .collect();
    assert_eq!(rows.len(), 64);
    // the co-moving packet peaks near the slice center
    let values: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let peak = values.iter().cloned().fold(0.0f64, f64::max);
    let center = values[31].max(values[32]);
    assert!(center > 0.5 * peak, "packet not centered: {center} vs {peak}");
    let _ = std::fs::remove_dir_all(&dir);
}
