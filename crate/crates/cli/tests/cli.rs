use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ordmoment(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordmoment"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document as header-keyed maps.
fn rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().unwrap().clone();
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            headers
                .iter()
                .map(String::from)
                .zip(rec.iter().map(String::from))
                .collect()
        })
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn moment_uniform_median() {
    let o = ordmoment(&["moment", "--dist", "uniform", "--n", "9", "--i", "5", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &rows(&stdout(&o))[0];
    assert_eq!(r["method"], "quadrature");
    assert!((num(&r["value"]) - 0.5).abs() < 1e-12);
    assert_eq!(r["diverged"], "false");
}

#[test]
fn moment_oracle_two_point_maximum() {
    // |X| = 1 for both atoms, so every order statistic has unit absolute moment.
    let o = ordmoment(&[
        "moment",
        "--dist",
        "two_point",
        "--n",
        "2",
        "--i",
        "2",
        "--k",
        "1",
        "--method",
        "oracle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!((num(&rows(&stdout(&o))[0]["value"]) - 1.0).abs() < 1e-12);
}

#[test]
fn moment_heavy_tail_diverges() {
    let o = ordmoment(&["moment", "--dist", "pareto1.5", "--n", "5", "--i", "5", "--k", "2"]);
    let r = &rows(&stdout(&o))[0];
    assert_eq!(r["diverged"], "true");
    assert_eq!(r["value"], "inf");
}

#[test]
fn moment_oracle_rejects_continuous_law() {
    let o = ordmoment(&[
        "moment", "--dist", "normal", "--n", "5", "--i", "2", "--k", "1", "--method", "oracle",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn moment_rejects_bad_rank_and_unknown_law() {
    assert_eq!(
        ordmoment(&["moment", "--dist", "uniform", "--n", "5", "--i", "6", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ordmoment(&["moment", "--dist", "nosuch", "--n", "5", "--i", "1", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn moment_mc_is_reproducible_and_close() {
    let args = [
        "moment",
        "--dist",
        "exponential",
        "--n",
        "5",
        "--i",
        "5",
        "--k",
        "1",
        "--method",
        "mc",
        "--reps",
        "20000",
        "--seed",
        "4",
    ];
    let a = stdout(&ordmoment(&args));
    assert_eq!(a, stdout(&ordmoment(&args)));
    let r = &rows(&a)[0];
    let h5 = 1.0 + 0.5 + 1.0 / 3.0 + 0.25 + 0.2;
    assert!((num(&r["value"]) - h5).abs() < 5.0 * num(&r["error_bound"]));
}

#[test]
fn bound_examples() {
    let central = ordmoment(&[
        "bound", "--dist", "uniform", "--n", "9", "--i", "5", "--k", "1", "--delta", "1",
    ]);
    assert_eq!(central.status.code(), Some(0));
    let r = &rows(&stdout(&central))[0];
    assert_eq!(r["case"], "Central");
    assert_eq!(r["applicable"], "true");
    assert!((num(&r["bound"]) - 34.916_553_454_880_53).abs() < 1e-9);

    let edge = ordmoment(&[
        "bound", "--dist", "uniform", "--n", "9", "--i", "9", "--k", "1", "--delta", "1",
    ]);
    let r = &rows(&stdout(&edge))[0];
    assert_eq!(r["case"], "UpperEdge");
    assert!((num(&r["bound"]) - 17.458276727440265 * 0.5 / 0.09).abs() < 1e-9);

    let small = ordmoment(&[
        "bound", "--dist", "uniform", "--n", "3", "--i", "1", "--k", "2", "--delta", "1",
    ]);
    assert_eq!(small.status.code(), Some(0));
    let r = &rows(&stdout(&small))[0];
    assert_eq!(r["applicable"], "false");
    assert!(r["failed_constraint"].contains("n < 2ρ+1"));
}

#[test]
fn bound_rejects_malformed_input() {
    let o = ordmoment(&[
        "bound", "--dist", "uniform", "--n", "9", "--i", "5", "--k", "-1", "--delta", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_small_sweep_holds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.csv");
    let o = ordmoment(&[
        "verify",
        "--dist",
        "uniform,four_atom",
        "--n",
        "5,11",
        "--pairs",
        "1:1,2:1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let cells = rows(&fs::read_to_string(&out).unwrap());
    assert!(!cells.is_empty());
    for c in &cells {
        assert_eq!(c["holds"], "true");
        let (n, i, rho) = (num(&c["n"]), num(&c["i"]), num(&c["rho"]));
        assert!(rho <= i && i <= n - rho + 1.0);
        assert!(num(&c["margin_ratio"]) >= 1.0);
    }
    let steps = fs::read_to_string(dir.path().join("cert.csv.steps.csv")).unwrap();
    assert!(steps.starts_with("dist,name,"));
}

#[test]
fn verify_negative_control_exits_one() {
    let o = ordmoment(&[
        "verify",
        "--dist",
        "uniform",
        "--n",
        "11",
        "--pairs",
        "1:1",
        "--c-scale",
        "0.001",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(rows(&stdout(&o)).iter().any(|r| r["holds"] == "false"));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_empty_distribution_list_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    fs::write(&cfg, "distributions =\n").unwrap();
    let o = ordmoment(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reads_config_and_finite_law_file() {
    let dir = tempfile::tempdir().unwrap();
    let law = dir.path().join("coin.txt");
    fs::write(&law, "# biased coin\n0 0.3\n2 0.7\n").unwrap();
    let out = dir.path().join("cert.json");
    let cfg = dir.path().join("sweep.cfg");
    fs::write(
        &cfg,
        format!(
            "distributions = {}\nn_values = 5..6\nexponent_pairs = 1:1\nformat = json\noutput = {}\n",
            law.display(),
            out.display()
        ),
    )
    .unwrap();
    let o = ordmoment(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc["metadata"].is_object());
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 5 + 6);
    assert!(records
        .iter()
        .all(|r| r["holds"] == "true" && r["dist"] == law.display().to_string()));
    assert!(!doc["proof_steps"].as_array().unwrap().is_empty());
}

#[test]
fn verify_rejects_unnormalized_law_file() {
    let dir = tempfile::tempdir().unwrap();
    let law = dir.path().join("bad.txt");
    fs::write(&law, "0 0.3\n2 0.3\n").unwrap();
    let o = ordmoment(&["verify", "--dist", law.to_str().unwrap(), "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_report_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let p = dir.path().join(name);
        let o = ordmoment(&[
            "verify",
            "--dist",
            "normal,three_atom",
            "--n",
            "5,11",
            "--mc-reps",
            "500",
            "--seed",
            "11",
            "--threads",
            threads,
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        fs::read(&p).unwrap()
    };
    assert_eq!(run("a.csv", "1"), run("b.csv", "4"));
}

#[test]
fn proof_steps_single_point() {
    let o = ordmoment(&["proof-steps", "--rho", "1", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let steps = rows(&stdout(&o));
    let eq4 = steps
        .iter()
        .find(|r| r["name"] == "eq4" && !r["i"].is_empty() && num(&r["i"]) == 3.0)
        .expect("eq4 row at i = 3");
    assert!((num(&eq4["lhs"]) - 5.0).abs() < 1e-9);
    assert_eq!(eq4["holds"], "true");
    assert!(!eq4["printed_rhs"].is_empty());
    assert!(steps.iter().all(|r| r["holds"] == "true"));
}

#[test]
fn proof_steps_rejects_small_sample() {
    let o = ordmoment(&["proof-steps", "--rho", "5", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_moment_document() {
    let o = ordmoment(&[
        "moment", "--dist", "uniform", "--n", "3", "--i", "1", "--k", "2", "--format", "json",
    ]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["metadata"]["command"], "moment");
    // E U_{1:3}^2 = 2 / (4 * 5)
    assert!((doc["result"]["value"].as_f64().unwrap() - 0.1).abs() < 1e-12);
}
