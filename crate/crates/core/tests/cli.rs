use serde_json::Value;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-agm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend(args);
    let o = cli(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("valid json"))
}

#[test]
fn agm_km_matches_fd() {
    let (code, v) = json(&["agm", "km", "1", "0.8", "0.6", "0.4"]);
    assert_eq!(code, 0);
    let lhs = v["a0_over_limit"].as_f64().unwrap();
    let rhs = v["fd_squared"].as_f64().unwrap();
    assert!((lhs - rhs).abs() < 1e-10);
    assert_eq!(v["states"][0].as_array().unwrap().len(), 4);
}

#[test]
fn agm_csv_trace() {
    let o = cli(&["agm", "km", "1", "0.8", "0.6", "0.4", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("n,a,b,c,d\n0,"));
    let o = cli(&["agm", "gauss", "1", "0.5", "--format", "csv"]);
    assert!(stdout(&o).starts_with("n,a,b\n"));
}

#[test]
fn constants_kappa_line() {
    let (code, v) = json(&["constants"]);
    assert_eq!(code, 0);
    assert!((v["kappa"].as_f64().unwrap() - 0.0012454030015882094565).abs() < 1e-17);
    assert!((v["pi_over_gamma_3_4_pow4"].as_f64().unwrap() - 1.3932039296856768591842).abs() < 1e-14);
    assert!((v["theta00_i"].as_f64().unwrap() - 1.0864348112133080145753).abs() < 1e-14);
    let text = stdout(&cli(&["constants"]));
    assert!(text.lines().next().unwrap().starts_with("kappa = 1.2454030015882"));
}

#[test]
fn hypergeometric_commands() {
    let (_, v) = json(&["f21", "0.5", "0.5", "1", "0.5"]);
    // 2F1(1/2,1/2;1;1/2) = 2K(1/√2)/π
    assert!((v["value"][0].as_f64().unwrap() - 1.1803405990160962).abs() < 1e-13);
    let (_, v) = json(&["fd", "0.5", "0.5", "1", "--", "0.5"]);
    assert!((v["value"][0].as_f64().unwrap() - 1.1803405990160962).abs() < 1e-13);
    let (_, v) = json(&["fd", "0.25", "0.5", "1", "--", "0,0.5"]);
    assert!(v["value"][1].as_f64().unwrap().abs() > 0.0);
}

#[test]
fn theta_from_tau_file_and_ball() {
    let dir = std::env::temp_dir().join(format!("theta-agm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tau.txt");
    std::fs::write(&path, "0 1 0 0\n0 0 0 1\n").unwrap();
    let (code, v) = json(&["theta", "00", "00", "--tau-file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let t = v["value"][0].as_f64().unwrap();
    assert!((t - 1.0864348112133080145753f64.powi(2)).abs() < 1e-13);
    let (code, _) = json(&["theta", "0000", "0000", "--ball", "1", "0", "-1", "0", "0", "0", "0", "0"]);
    assert_eq!(code, 0);
}

#[test]
fn period_then_invert_round_trip() {
    let (code, p) = json(&["period", "0.2", "0.5", "0.8"]);
    assert_eq!(code, 0);
    assert!(p["hermitian"].as_f64().unwrap() < 0.0);
    let mut args: Vec<String> = vec!["invert".into(), "--ball".into()];
    for z in p["v"].as_array().unwrap() {
        args.push(format!("{:e}", z[0].as_f64().unwrap()));
        args.push(format!("{:e}", z[1].as_f64().unwrap()));
    }
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, x) = json(&refs);
    assert_eq!(code, 0);
    for (got, want) in x["x"].as_array().unwrap().iter().zip([0.2, 0.5, 0.8]) {
        assert!((got[0].as_f64().unwrap() - want).abs() < 1e-8);
    }
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let args = ["verify", "all", "--x", "0.2", "0.5", "0.8", "--quad", "1", "0.8", "0.6", "0.4", "--format", "json"];
    let a = cli(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let b = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().len() > 100);
}

#[test]
fn seed_changes_random_suites() {
    let a = cli(&["verify", "kernel", "--seed", "1", "--format", "json"]);
    let b = cli(&["verify", "kernel", "--seed", "2", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn perturbed_input_fails_verification() {
    // period vector of (0.2, 0.5, 0.8) with v₁ moved by 1e-3
    let (_, p) = json(&["period", "0.2", "0.5", "0.8"]);
    let mut args: Vec<String> = ["verify", "thomae", "--x", "0.2", "0.5", "0.8", "--ball"].map(String::from).to_vec();
    for (j, z) in p["v"].as_array().unwrap().iter().enumerate() {
        let re = z[0].as_f64().unwrap() + if j == 0 { 1e-3 } else { 0.0 };
        args.push(format!("{re:e}"));
        args.push(format!("{:e}", z[1].as_f64().unwrap()));
    }
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(cli(&refs).status.code(), Some(1));
    let (code, _) = json(&["verify", "table2", "--x", "0.2", "0.501", "0.8", "--ball"]
        .into_iter()
        .chain(refs[7..].iter().copied())
        .collect::<Vec<_>>());
    assert_eq!(code, 1);
}

#[test]
fn tolerance_override_applies() {
    assert_eq!(cli(&["verify", "periods", "--tol", "1e-30"]).status.code(), Some(1));
    assert_eq!(cli(&["verify", "periods", "--tol", "1e-6"]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cli(&["agm"]).status.code(), Some(2));
    assert_eq!(cli(&["period", "0.2", "x", "0.8"]).status.code(), Some(2));
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
    let o = cli(&["period", "0.5", "0.2", "0.8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("0 < x₁ ≤ x₂ ≤ x₃ < 1"));
    assert_eq!(cli(&["agm", "km", "1", "-0.5", "0.3", "0.2"]).status.code(), Some(3));
    assert_eq!(cli(&["agm", "nope", "1", "0.5"]).status.code(), Some(3));
    assert_eq!(cli(&["verify", "nope"]).status.code(), Some(3));
    assert_eq!(cli(&["invert", "--ball", "1", "0", "1", "0", "0", "0", "0", "0"]).status.code(), Some(3));
    assert_eq!(cli(&["verify", "periods", "--tol=-1"]).status.code(), Some(3));
}

#[test]
fn output_file_written() {
    let path = std::env::temp_dir().join(format!("theta-agm-out-{}.json", std::process::id()));
    let o = cli(&["constants", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["kappa"].is_number());
}
