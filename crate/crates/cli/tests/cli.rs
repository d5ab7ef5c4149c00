use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn schroeder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schroeder"))
        .args(args)
        .output()
        .expect("spawn schroeder")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn mm(entries: &[f64], n: usize) -> String {
    let mut s = format!("%%MatrixMarket matrix array real general\n{n} {n}\n");
    for v in entries {
        s.push_str(&format!("{v}\n"));
    }
    s
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn matrix_entry(p: &Path) -> f64 {
    let v = read_json(p);
    v["data"][0].as_f64().unwrap()
}

#[test]
fn compute_square_root() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "a.mtx", &mm(&[0.75], 1));
    let out = dir.path().join("x.json");
    let report = dir.path().join("report.json");
    let run = schroeder(&[
        "compute", "--input", s(&input), "--p", "2", "--m", "1", "--out", s(&out), "--report", s(&report),
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert!((matrix_entry(&out) - 0.8660254037844386).abs() < 1e-15);

    let r = read_json(&report);
    assert_eq!(r["termination"], "converged");
    let steps = r["steps"].as_array().unwrap();
    for key in ["k", "residual_norm", "bound_plain", "bound_sharp", "delta_norm"] {
        assert!(steps[1].get(key).is_some(), "{key}");
    }
    assert_eq!(steps[1]["bound_plain"], 0.0625);
    assert_eq!(steps[1]["bound_sharp"], 0.03125);
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("final residual"));
    assert!(stderr.contains("error bound"));
}

#[test]
fn compute_identity_takes_no_steps() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "id.json",
        r#"{"rows":2,"cols":2,"kind":"real","data":[1,0,0,1]}"#,
    );
    let report = dir.path().join("r.json");
    let run = schroeder(&["compute", "--input", s(&input), "--p", "3", "--m", "2", "--report", s(&report)]);
    assert_eq!(code(&run), 0);
    let text = stdout(&run);
    assert!(text.starts_with("%%MatrixMarket matrix array real general"));
    assert_eq!(read_json(&report)["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn compute_outside_disk() {
    let dir = TempDir::new().unwrap();
    for (a, root) in [(2.5f64, 2.5f64.sqrt()), (3.0, 3.0f64.sqrt())] {
        let input = write(&dir, "a.mtx", &mm(&[a], 1));
        let out = dir.path().join("x.json");
        let report = dir.path().join("r.json");
        let run = schroeder(&["compute", "--input", s(&input), "--out", s(&out), "--report", s(&report)]);
        assert_eq!(code(&run), 0);
        assert!((matrix_entry(&out) - root).abs() < 1e-14);
        let r = read_json(&report);
        assert!(!r["warnings"].as_array().unwrap().is_empty());
        assert!(r["steps"][0]["bound_plain"].is_null());
    }
}

#[test]
fn compute_failures() {
    let dir = TempDir::new().unwrap();
    let neg = write(&dir, "neg.mtx", &mm(&[-1.0], 1));
    assert_eq!(code(&schroeder(&["compute", "--input", s(&neg)])), 1);

    let bad = write(&dir, "bad.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n");
    assert_eq!(code(&schroeder(&["compute", "--input", s(&bad)])), 2);

    let ok = write(&dir, "ok.mtx", &mm(&[0.5], 1));
    assert_eq!(code(&schroeder(&["compute", "--input", s(&ok), "--p", "1"])), 2);
    assert_eq!(code(&schroeder(&["compute", "--input", s(&ok), "--norm", "two"])), 2);
    assert_eq!(code(&schroeder(&["compute"])), 2);
}

#[test]
fn compute_complex_input() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "z.mtx",
        "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 0.8 0.3\n",
    );
    let out = dir.path().join("x.json");
    let run = schroeder(&["compute", "--input", s(&input), "--p", "3", "--m", "2", "--out", s(&out)]);
    assert_eq!(code(&run), 0);
    let v = read_json(&out);
    assert_eq!(v["kind"], "complex");
    let (re, im) = (v["data"][0].as_f64().unwrap(), v["data"][1].as_f64().unwrap());
    // (re + i im)^3 = 0.8 + 0.3i
    let (r2, i2) = (re * re - im * im, 2.0 * re * im);
    let (r3, i3) = (r2 * re - i2 * im, r2 * im + i2 * re);
    assert!((r3 - 0.8).abs() < 1e-14 && (i3 - 0.3).abs() < 1e-14);
}

#[test]
fn series_rows() {
    let rows = |k: &str| {
        let run = schroeder(&["series", "--p", "2", "--m", "1", "--order", "3", "--k", k]);
        assert_eq!(code(&run), 0);
        stdout(&run)
    };
    let k2 = rows("2");
    assert!(k2.starts_with("k,i,numerator,denominator\n"));
    for line in ["0,0,1,1", "0,3,0,1", "1,1,-1,2", "1,2,0,1", "2,2,-1,8", "2,3,-1,16"] {
        assert!(k2.lines().any(|l| l == line), "{line}");
    }
    assert_eq!(rows("0").lines().count(), 5);
    assert_eq!(rows("2"), k2);

    let run = schroeder(&["series", "--p", "2", "--m", "1", "--order", "3", "--k", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&run)).unwrap();
    let row = &v["rows"][1]["coeffs"];
    assert_eq!(row[1]["numerator"], "-1");
    assert_eq!(row[1]["denominator"], "2");
    assert_eq!(row[3]["numerator"], "0");

    assert_eq!(code(&schroeder(&["series", "--p", "1", "--m", "1", "--order", "3", "--k", "1"])), 2);
    assert_eq!(code(&schroeder(&["series", "--p", "2", "--m", "0", "--order", "3", "--k", "1"])), 2);
    assert_eq!(code(&schroeder(&["series", "--p", "2", "--m", "1", "--order", "3", "--k", "1", "--format", "xml"])), 2);
}

#[test]
fn structure_reports() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (mm(&[1.0, 0.0, 0.0, 1.0], 2), true),
        (mm(&[1.0, -0.5, -0.5, 1.0], 2), true),
        (mm(&[2.0, 0.0, 0.0, 2.0], 2), false),
    ];
    for (i, (text, m1)) in cases.iter().enumerate() {
        let input = write(&dir, &format!("s{i}.mtx"), text);
        let run = schroeder(&["structure", "--input", s(&input)]);
        assert_eq!(code(&run), 0);
        let v: Value = serde_json::from_str(&stdout(&run)).unwrap();
        assert_eq!(v["is_M1"], *m1);
        if i == 1 {
            assert!((v["rho_estimate"].as_f64().unwrap() - 0.5).abs() < 1e-8);
        }
    }
    assert_eq!(code(&schroeder(&["structure", "--input", "/nonexistent/a.mtx"])), 2);
}

const SMALL: &str = "p_list = [2, 3]\nm_list = [1, 2]\nk_max = 3\norder = 20\nmatrix_sizes = [1, 3]\nsamples_per_cell = 2\nseed = 5\n";

#[test]
fn verify_small_campaign() {
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "c.toml", SMALL);
    let report = dir.path().join("certs.json");
    let run = schroeder(&["verify", "--config", s(&config), "--report", s(&report)]);
    assert_eq!(code(&run), 0, "{}", stdout(&run));
    assert!(stdout(&run).contains("campaign: PASS"));
    let certs = read_json(&report);
    let control: Vec<_> = certs
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["check_id"] == "pade10_control")
        .collect();
    assert_eq!(control.len(), 2);
    assert!(control.iter().all(|c| c["verdict"] == "fail" && c["witness"]["i"] == 2));

    let again = dir.path().join("again.json");
    schroeder(&["verify", "--config", s(&config), "--report", s(&again)]);
    assert_eq!(fs::read(&report).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn verify_usage_errors() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "e.json", r#"{"p_list":[],"m_list":[],"k_max":2,"order":8}"#);
    assert_eq!(code(&schroeder(&["verify", "--config", s(&empty)])), 2);
    let garbage = write(&dir, "g.toml", "p_list = [2\n");
    assert_eq!(code(&schroeder(&["verify", "--config", s(&garbage)])), 2);
    assert_eq!(code(&schroeder(&["verify", "--config", "/nonexistent.toml"])), 2);
}

#[test]
fn verify_control_without_room_fails_campaign() {
    // At order 1 the control series has no index 2, so it passes; the campaign must not.
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "c.toml", "p_list = [2]\nm_list = [1]\nk_max = 1\norder = 1\n");
    let run = schroeder(&["verify", "--config", s(&config)]);
    assert_eq!(code(&run), 3);
    assert!(stdout(&run).contains("control passed"));
}

#[test]
fn compute_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "a.mtx", &mm(&[0.9, -0.05, -0.1, 0.8], 2));
    let x_mtx = dir.path().join("x.mtx");
    let x_json = dir.path().join("x.json");
    assert_eq!(code(&schroeder(&["compute", "--input", s(&input), "--out", s(&x_mtx)])), 0);
    assert_eq!(code(&schroeder(&["compute", "--input", s(&input), "--out", s(&x_json)])), 0);
    let from_mm = schroeder(&["structure", "--input", s(&x_mtx)]);
    let from_json = schroeder(&["structure", "--input", s(&x_json)]);
    assert_eq!(stdout(&from_mm), stdout(&from_json));
    let v: Value = serde_json::from_str(&stdout(&from_json)).unwrap();
    assert_eq!(v["is_M1"], true);
}
