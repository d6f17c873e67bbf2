use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dkfield::field::on_shell_polarizations;
use dkfield::PlaneWaveField;

fn dkfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkfield"))
        .args(args)
        .env_remove("DKFIELD_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn verify_algebra_passes_with_json_report() {
    let o = dkfield(&["verify", "algebra", "--trials", "50"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["suite"], "algebra");
        for key in ["check", "max_residual", "tolerance", "pass", "elapsed_ms"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn impossible_tolerance_exits_one() {
    let o = dkfield(&[
        "verify",
        "roundtrip",
        "--trials",
        "5",
        "--tolerance",
        "1e-300",
    ]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = dkfield(&["verify", "bogus"]);
    assert_eq!(code(&o), 2);
    let msg = stderr(&o);
    assert!(
        msg.contains("possible values") && msg.contains("equivalence"),
        "{msg}"
    );
}

#[test]
fn bad_numeric_options_are_rejected() {
    assert_eq!(
        code(&dkfield(&["verify", "algebra", "--tolerance", "-1"])),
        2
    );
    assert_eq!(code(&dkfield(&["verify", "algebra", "--trials", "0"])), 2);
    assert_eq!(code(&dkfield(&["verify", "algebra", "--seed", "x"])), 2);
}

#[test]
fn verify_is_reproducible_apart_from_timing() {
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for r in v["records"].as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let args = ["verify", "lorentz", "--seed", "42", "--trials", "20"];
    assert_eq!(strip(&dkfield(&args)), strip(&dkfield(&args)));
}

#[test]
fn duality_quarter_and_generic_angles() {
    for chi in ["0.7", "1.5707963267948966", "-2.1"] {
        let o = dkfield(&["duality", "--chi", chi]);
        assert_eq!(code(&o), 0, "χ={chi}: {}", stderr(&o));
    }
}

#[test]
fn report_goes_to_file_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = dkfield(&["duality", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["command"], "duality");
}

#[test]
fn residual_missing_file() {
    let o = dkfield(&["residual", "/nonexistent/field.json", "--system", "dk"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cannot read"), "{}", stderr(&o));
}

#[test]
fn residual_malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "[\n  {\"k\": [1, 0, 0,\n");
    let o = dkfield(&["residual", &p, "--system", "dk"]);
    assert_eq!(code(&o), 2);
    let msg = stderr(&o);
    assert!(msg.contains("line") && msg.contains("column"), "{msg}");
}

#[test]
fn residual_rejects_wrong_polarization_length() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "short.json",
        r#"[{"k":[1,0,0,0],"polarization":[[1,0]]}]"#,
    );
    assert_eq!(code(&dkfield(&["residual", &p])), 2);
}

#[test]
fn empty_field_gives_zero_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "empty.json", "[]");
    for system in [
        "dk",
        "proca",
        "pseudoproca",
        "maxwell",
        "pseudomaxwell",
        "extended",
    ] {
        let o = dkfield(&["residual", &p, "--system", system, "--points", "3"]);
        assert_eq!(code(&o), 0, "{system}: {}", stderr(&o));
        let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
        assert_eq!(
            rd.headers().unwrap(),
            vec!["t", "x", "y", "z", "equation", "residual"]
        );
        let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
        assert!(!rows.is_empty());
        assert!(
            rows.iter().all(|r| r[5].parse::<f64>().unwrap() == 0.0),
            "{system}"
        );
    }
}

#[test]
fn on_shell_wave_satisfies_dk_at_its_mass_only() {
    let m = 1.3;
    let q = [0.4, -0.7, 0.2];
    let omega = (m * m + q.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let k = [omega, -q[0], -q[1], -q[2]];
    let mut field = PlaneWaveField::new();
    for pol in on_shell_polarizations(&k, m, None) {
        field.push(k, pol);
    }
    assert!(!field.is_empty());
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "wave.json",
        &serde_json::to_string(&field).unwrap(),
    );
    let on = dkfield(&["residual", &p, "--mass", "1.3", "--tolerance", "1e-10"]);
    assert_eq!(code(&on), 0, "{}", stderr(&on));
    let off = dkfield(&["residual", &p, "--mass", "0.9", "--tolerance", "1e-10"]);
    assert_eq!(code(&off), 1);
}

#[test]
fn unknown_system_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "empty.json", "[]");
    assert_eq!(
        code(&dkfield(&["residual", &p, "--system", "yang-mills"])),
        2
    );
}

const SMALL: &str = r#"{
  "grid": {"n": [8, 8, 8], "h": 0.125},
  "dt": 0.05,
  "steps": 12,
  "initial": {"type": "plane_wave", "amplitude": 1.0, "mode": 1, "axis": "z"},
  "currents": {"type": "uniform", "electric": [0.1, 0.0, 0.2], "magnetic": [0.0, 0.3, 0.0], "omega": 2.0},
  "outputs": ["energy", "gauss", "fields"],
  "snapshot_every": 6
}"#;

#[test]
fn simulate_cfl_violation_exits_before_stepping() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfl.json",
        r#"{"grid": {"n": [4, 4, 4], "h": 0.1}, "dt": 0.2, "steps": 1000000000}"#,
    );
    let o = dkfield(&["simulate", "--config", &cfg]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("CFL"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn simulate_fields_need_an_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", SMALL);
    assert_eq!(code(&dkfield(&["simulate", "--config", &cfg])), 2);
}

#[test]
fn simulate_unknown_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"grid": {"n": [4, 4, 4], "h": 0.1}, "dt": 0.01, "steps": 1, "stpes": 2}"#,
    );
    assert_eq!(code(&dkfield(&["simulate", "--config", &cfg])), 2);
}

#[test]
fn simulate_outputs_are_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", SMALL);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(
        code(&dkfield(&[
            "simulate",
            "--config",
            &cfg,
            "--out",
            a.to_str().unwrap()
        ])),
        0
    );
    let threaded = Command::new(env!("CARGO_BIN_EXE_dkfield"))
        .args(["simulate", "--config", &cfg, "--out", b.to_str().unwrap()])
        .env("DKFIELD_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&threaded), 0, "{}", stderr(&threaded));
    for f in ["diagnostics.csv", "fields.csv"] {
        let (x, y) = (fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
        assert!(!x.is_empty());
        assert_eq!(x, y, "{f} differs");
    }
    let fields = fs::read_to_string(a.join("fields.csv")).unwrap();
    assert!(fields.starts_with("step,i,j,k,Ex,Ey,Ez,Bx,By,Bz\n"));
    // snapshots at steps 0, 6, 12
    assert_eq!(fields.lines().count(), 1 + 3 * 512);
    let diag = fs::read_to_string(a.join("diagnostics.csv")).unwrap();
    assert!(diag.starts_with("step,energy,max_divE_minus_rho,max_divB_plus_rhomag\n"));
    assert_eq!(diag.lines().count(), 1 + 13);
}

#[test]
fn zero_config_gives_zero_diagnostics_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "zero.json",
        r#"{"grid": {"n": [5, 5, 5], "h": 0.2}, "dt": 0.1, "steps": 4}"#,
    );
    let o = dkfield(&["simulate", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    for r in &rows {
        for c in 1..4 {
            assert_eq!(r[c].parse::<f64>().unwrap(), 0.0);
        }
    }
}

#[test]
fn bad_thread_count_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "zero.json",
        r#"{"grid": {"n": [4, 4, 4], "h": 0.2}, "dt": 0.1, "steps": 1}"#,
    );
    let o = Command::new(env!("CARGO_BIN_EXE_dkfield"))
        .args(["simulate", "--config", &cfg])
        .env("DKFIELD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
