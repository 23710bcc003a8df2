use std::path::Path;
use std::process::{Command, Output};

fn qdinfo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdinfo"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Header and data rows of a CSV file, skipping the `#` preamble.
fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn spectrum_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let o = qdinfo(&[
            "spectrum",
            "--bc",
            "neumann",
            "--n",
            "0..1",
            "--m",
            "-2..2",
            "--b-grid",
            "log:0.01:40:12",
            "--out",
            a.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        runs.push(std::fs::read(&a).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.lines().next().unwrap().starts_with("# qdinfo "));
    assert!(text.contains("# tolerances: "));
    let (header, rows) = csv_rows(&a);
    assert_eq!(header, ["bc", "n", "m", "b_bar", "e_bar", "e_bbar"]);
    assert_eq!(rows.len(), 2 * 5 * 12);
}

#[test]
fn crossing_json() {
    let o = qdinfo(&["crossings", "--n", "0", "--m", "0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v["rows"][0];
    assert!((row["b_star"].as_f64().unwrap() - 3.848).abs() < 0.01);
    assert!((row["e_bar"].as_f64().unwrap() - 0.180).abs() < 0.002);
    assert_eq!(v["meta"]["command"], "crossings");
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"bc": "dirichlet", "n": "0..2", "m": "1", "b": [2.0], "format": "json"}"#,
    )
    .unwrap();
    let o = qdinfo(&["spectrum", "--config", cfg.to_str().unwrap(), "--n", "0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["bc"], "dirichlet");
    assert_eq!(rows[0]["m"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(qdinfo(&["spectrum", "--b-grid", "log:0:1:4"]).status.code(), Some(1));
    assert_eq!(qdinfo(&["spectrum", "--n", "3..1"]).status.code(), Some(1));
    assert_eq!(qdinfo(&["spectrum", "--bc", "robin"]).status.code(), Some(1));
    assert_eq!(
        qdinfo(&["spectrum", "--config", "/nonexistent/x.json"]).status.code(),
        Some(1)
    );
    assert_eq!(qdinfo(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qdinfo(&["crossings", "--m", "1"]).status.code(), Some(1));
    let o = qdinfo(&["crossings", "--bc", "dirichlet"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n=0, m=0"));
    assert_eq!(qdinfo(&["--help"]).status.code(), Some(0));
}

#[test]
fn wavefunction_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = qdinfo(&[
        "wavefunction",
        "--n",
        "0",
        "--m",
        "0",
        "--b",
        "0",
        "--points",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["r_bar", "dirichlet_n0_m0_b0", "neumann_n0_m0_b0"]);
    for row in &rows {
        let v: f64 = row[2].parse().unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-10);
    }
    let last: f64 = rows.last().unwrap()[1].parse().unwrap();
    assert!(last.abs() < 1e-10);
}

#[test]
fn excited_columns_have_one_node() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = qdinfo(&[
        "wavefunction",
        "--bc",
        "both",
        "--n",
        "1",
        "--m",
        "-2..2",
        "--b",
        "0,1,10,40",
        "--points",
        "401",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&out);
    for (c, name) in header.iter().enumerate().skip(1) {
        if name.contains("_m-1_") || name.contains("_m0_") || name.contains("_m1_") {
            continue;
        }
        let col: Vec<f64> = rows.iter().map(|r| r[c].parse().unwrap()).collect();
        // interior samples only; Dirichlet columns vanish at the rim
        let inner: Vec<f64> = col[1..col.len() - 1]
            .iter()
            .copied()
            .filter(|v| v.abs() > 1e-12)
            .collect();
        let nodes = inner.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count();
        assert_eq!(nodes, 1, "{name}");
        assert!(inner[0] > 0.0, "{name} should start positive");
    }
}

#[test]
fn momentum_table_starts_at_zero_for_m_nonzero() {
    let o = qdinfo(&[
        "wavefunction",
        "--space",
        "momentum",
        "--bc",
        "dirichlet",
        "--m",
        "1",
        "--b",
        "3",
        "--points",
        "5",
        "--k-max",
        "8",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["k_bar"], 0.0);
    assert_eq!(v["rows"][0]["dirichlet_n0_m1_b3"], 0.0);
    assert_eq!(v["rows"][4]["k_bar"], 8.0);
}

#[test]
fn measures_table_has_null_momentum_rms_for_neumann() {
    let o = qdinfo(&["measures", "--b", "0", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["rms_k_bar"].is_number());
    assert!(rows[1]["rms_k_bar"].is_null());
    assert!((rows[1]["s_total"].as_f64().unwrap() - 5.4327).abs() < 5e-4);
}

#[test]
fn partial_validation() {
    let o = qdinfo(&["validate", "--criteria", "1,8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("PASS  1") && err.contains("PASS  8"));
    assert_eq!(qdinfo(&["validate", "--criteria", "99"]).status.code(), Some(1));
}
