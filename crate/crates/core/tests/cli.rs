use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn spirallike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spirallike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn measure_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn eval_koebe_at_one_half() {
    let o = spirallike(&["eval", "--gallery", "koebe", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("z_re,z_im,f_re,f_im,log_re,log_im,dlog_re,dlog_im,arg_lambda"));
    let row = &csv_rows(&text)[0];
    assert!((row[2] - 2.0).abs() < 1e-12);
    assert!((row[6] - 3.0).abs() < 1e-12);
}

#[test]
fn eval_measure_file_json_output() {
    let m = measure_file(r#"{"atoms": [{"t": 0.0, "jump": 3.141592653589793}, {"t": 3.141592653589793, "jump": 3.141592653589793}]}"#);
    let o = spirallike(&[
        "eval",
        "--measure",
        m.path().to_str().unwrap(),
        "--lambda",
        "0.7",
        "--z",
        "0.3+0.4i",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = v.to_string();
    assert!(text.contains("0.2256716654846"), "{text}");
}

#[test]
fn negative_lambda_and_point_are_accepted() {
    let o = spirallike(&["eval", "--gallery", "g0", "--lambda", "-0.4", "--z", "-0.3-0.2i"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_reports_margin_and_writes_file() {
    let out = NamedTempFile::new().unwrap();
    let o = spirallike(&[
        "verify",
        "--gallery",
        "g0",
        "--radial",
        "16",
        "--angular",
        "64",
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out.path()).unwrap();
    assert!(text.starts_with("margin,lambda,r_max,points"));
    let margin = csv_rows(&text)[0][0];
    assert!(margin > 0.2213 && margin < 0.23);
}

#[test]
fn invalid_measure_exits_with_validation_code() {
    let m = measure_file(r#"{"atoms": [{"t": 0.0, "jump": 7.0}]}"#);
    let o = spirallike(&["eval", "--measure", m.path().to_str().unwrap(), "--z", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("total mass"));
}

#[test]
fn malformed_json_exits_with_validation_code() {
    let m = measure_file("{not json");
    let o = spirallike(&["eval", "--measure", m.path().to_str().unwrap(), "--z", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_measure_file_exits_with_validation_code() {
    let o = spirallike(&["eval", "--measure", "/nonexistent/measure.json", "--z", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn point_outside_disk_exits_with_domain_code() {
    let o = spirallike(&["eval", "--gallery", "koebe", "--z", "1.5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn hansen_constraint_violation_is_named() {
    let o = spirallike(&["eval", "--gallery", "hansen", "--alpha", "1.9", "--beta-exp", "1", "--c", "0.3", "--z", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("violated"));
}

#[test]
fn bad_decade_range_is_rejected() {
    let o = spirallike(&["growth", "--gallery", "koebe", "--r-k", "5:3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = spirallike(&["growth", "--gallery", "koebe", "--r-k", "1:20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn growth_of_koebe_has_exponent_two() {
    let o = spirallike(&["growth", "--gallery", "koebe", "--r-k", "1:6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("r,M,E,ratio"));
    for row in csv_rows(&text) {
        assert!((row[2] - 2.0).abs() < 1e-9, "{row:?}");
        assert!((row[3] - row[0]).abs() < 1e-9, "{row:?}");
    }
}

#[test]
fn growth_of_hansen_partner_flags_the_bound() {
    let o = spirallike(&[
        "growth",
        "--gallery",
        "hansen",
        "--lambda",
        "0.7853981633974483",
        "--A",
        "3.141592653589793",
        "--c",
        "0.3",
        "--r-k",
        "2:8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("O-bound fails"));
}

#[test]
fn beta_trace_matches_measure_column() {
    let m = measure_file(
        r#"{"atoms": [{"t": 0.0, "jump": 3.141592653589793}, {"t": 1.5707963267948966, "jump": 1.5707963267948966}],
            "density_knots": [{"t": 0.0, "value": 0.25}]}"#,
    );
    let o = spirallike(&["beta", "--measure", m.path().to_str().unwrap(), "--t-grid", "256", "--r-k", "4:6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("t,beta,beta_measure"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 256);
    let h = std::f64::consts::TAU / 256.0;
    for row in rows {
        let t = row[0];
        let near = [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::TAU]
            .iter()
            .any(|s| (t - s).abs() < 1.5 * h);
        if !near {
            assert!((row[1] - row[2]).abs() < 0.02, "{row:?}");
        }
    }
}

#[test]
fn qtheta_reports_c0() {
    let o = spirallike(&["qtheta", "--grid", "20000", "--samples", "32", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c0 = v["c0"].as_f64().expect("c0 field");
    assert!((c0 - 14.778).abs() < 1e-3);
}

#[test]
fn usage_error_exits_two() {
    let o = spirallike(&["eval", "--z"]);
    assert_eq!(o.status.code(), Some(2));
    let o = spirallike(&["eval", "--gallery", "koebe", "--measure", "x.json", "--z", "0"]);
    assert_eq!(o.status.code(), Some(2));
}
