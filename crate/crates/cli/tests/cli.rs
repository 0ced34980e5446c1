use std::process::{Command, Output};

use serde_json::Value;

fn relspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relspin")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&relspin(args))).unwrap()
}

/// `(alpha, J, probability)` rows of a probs table.
fn prob_rows(csv: &str) -> Vec<(f64, String, f64)> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("alpha,J,probability"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].to_string(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn probs_at_antiparallel_qubits() {
    let rows = prob_rows(&stdout(&relspin(&["probs", "--j1", "1/2", "--j2", "1/2", "--alpha", "pi"])));
    let singlet = rows.iter().find(|r| r.1 == "0").unwrap();
    assert!((singlet.2 - 0.5).abs() < 1e-15);
}

#[test]
fn probs_at_parallel_qubits() {
    let rows = prob_rows(&stdout(&relspin(&["probs", "--j1", "1/2", "--j2", "1/2", "--alpha", "0"])));
    assert_eq!(rows.iter().find(|r| r.1 == "1").unwrap().2, 1.0);
}

#[test]
fn probs_sum_to_one_on_dense_path() {
    let rows = prob_rows(&stdout(&relspin(&["probs", "--j1", "1", "--j2", "3/2", "--alpha", "1.0"])));
    assert_eq!(rows.len(), 3);
    assert!((rows.iter().map(|r| r.2).sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn probs_default_grid() {
    let rows = prob_rows(&stdout(&relspin(&["probs", "--j1", "1/2", "--j2", "1"])));
    assert_eq!(rows.len(), 181 * 2);
    assert_eq!(rows.first().unwrap().0, 0.0);
    assert_eq!(rows.last().unwrap().0, std::f64::consts::PI);
    let v = json(&["--format", "json", "probs", "--j1", "1/2", "--j2", "1/2", "--alpha", "pi/2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn invalid_spin_exits_two_naming_the_field() {
    let out = relspin(&["probs", "--j1", "1/3", "--j2", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("j1"));
    let out = relspin(&["report", "--j1", "1/2", "--j2", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("j2"));
    let out = relspin(&["probs", "--j1", "1/2", "--j2", "1/2", "--alpha", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_values() {
    let args = ["report", "--j1", "1/2", "--j2", "1/2", "--prior", "pap", "--povm", "optimal"];
    let text = stdout(&relspin(&args));
    let positions: Vec<usize> = ["\"schema\"", "\"config\"", "\"povm\"", "\"outcomes\"", "\"I_av_bits\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "keys out of order");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["I_av_bits"].as_f64().unwrap(), 0.3112781245);
    let a = &v["outcomes"][0];
    assert_eq!(a["label"], "J=0");
    assert_eq!(a["p"].as_f64().unwrap(), 0.25);
    assert_eq!(a["I_bits"].as_f64().unwrap(), 1.0);

    let v = json(&["report", "--j1", "1/2", "--j2", "1/2", "--prior", "uniform", "--povm", "local"]);
    assert!((v["I_av_bits"].as_f64().unwrap() - 0.02702).abs() < 5e-5);
    assert_eq!(v["outcomes"][0]["posterior"]["kind"], "density");
    let v = json(&["report", "--j1", "1/2", "--j2", "1/2", "--prior", "pap", "--povm", "local"]);
    assert!((v["I_av_bits"].as_f64().unwrap() - 0.0817).abs() < 5e-5);
}

#[test]
fn report_rejects_local_povm_without_spin_half() {
    let out = relspin(&["report", "--j1", "1", "--j2", "1", "--povm", "local"]);
    assert_eq!(out.status.code(), Some(2));
}

fn curve_rows(csv: &str) -> Vec<(String, f64, String)> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("j,I_av_bits,scenario"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2].to_string())
        })
        .collect()
}

#[test]
fn curve_matches_report_and_limits() {
    let rows = curve_rows(&stdout(&relspin(&["curve", "--j-min", "1/2", "--j-max", "1/2", "--curves", "a"])));
    let report = json(&["report", "--j1", "1/2", "--j2", "1/2"]);
    assert!((rows[0].1 - report["I_av_bits"].as_f64().unwrap()).abs() < 1e-10);

    let rows = curve_rows(&stdout(&relspin(&["curve", "--j-min", "500", "--j-max", "500", "--curves", "c"])));
    assert!((rows[0].1 - 0.27865).abs() < 5e-3);
}

#[test]
fn curves_a_and_c_increase_beyond_one() {
    let rows = curve_rows(&stdout(&relspin(&["curve", "--j-min", "1", "--j-max", "20", "--j-step", "1/2"])));
    assert_eq!(rows.len(), 4 * 39);
    for letter in ["a", "c"] {
        let vals: Vec<f64> = rows.iter().filter(|r| r.2 == letter).map(|r| r.1).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]), "curve {letter}");
    }
}

#[test]
fn curve_empty_range_exits_two() {
    let out = relspin(&["curve", "--j-min", "3", "--j-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = relspin(&["curve", "--curves", "z"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ppt_thresholds() {
    let v = json(&["ppt", "--j", "1/2"]);
    assert!((v["x_star"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    let v = json(&["ppt", "--j", "1"]);
    assert!((v["x_star"].as_f64().unwrap() - 0.25).abs() < 1e-9);
    for j in ["1/2", "1", "3/2", "2", "5/2", "3"] {
        assert!(json(&["ppt", "--j", j])["abs_diff"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn ppt_beyond_dense_cap_exits_two() {
    let out = relspin(&["ppt", "--j", "5000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn simulate_agrees_with_analytic_gain() {
    let v = json(&["simulate", "--j1", "1/2", "--j2", "1/2", "--prior", "pap", "--n", "100000", "--seed", "7"]);
    let mean = v["mean_gain_bits"].as_f64().unwrap();
    let se = v["gain_std_error"].as_f64().unwrap();
    assert!((mean - 0.3113).abs() < 5.0 * se, "{mean} ± {se}");
}

#[test]
fn simulate_single_trial_and_reproducibility() {
    let v = json(&["simulate", "--j1", "1/2", "--j2", "1/2", "--n", "1"]);
    assert_eq!(v["n_trials"], 1);
    let args = ["simulate", "--j1", "1/2", "--j2", "3/2", "--prior", "uniform", "--n", "2000", "--seed", "11"];
    assert_eq!(relspin(&args).stdout, relspin(&args).stdout);
    assert_eq!(relspin(&["simulate", "--j1", "1/2", "--j2", "1/2", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("relspin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ppt.json");
    let out = relspin(&["--out", path.to_str().unwrap(), "ppt", "--j", "1"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}
