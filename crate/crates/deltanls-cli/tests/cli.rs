//! End-to-end behavior of the binary: flag validation, exit codes, artifact
//! shapes, and byte determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_deltanls"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn json_file(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("artifact exists"))
        .expect("valid json")
}

#[test]
fn solve_doubly_critical_at_omega_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("profile.csv");
    let res = run(&[
        "solve",
        "--p",
        "6",
        "--q",
        "4",
        "--omega",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));

    let sidecar = json_file(&dir.path().join("profile.csv.json"));
    let mu_star = 3.0_f64.sqrt() * (std::f64::consts::PI / 2.0 - (3.0_f64 / 7.0).sqrt().asin());
    assert!((sidecar["mass"].as_f64().unwrap() - mu_star).abs() < 1e-10);
    assert!(sidecar["energy"].as_f64().unwrap().abs() < 1e-9);
    assert!((sidecar["t_bar"].as_f64().unwrap() - (3.0f64 / 7.0).sqrt()).abs() < 1e-12);
    assert_eq!(sidecar["schema"], 1);
    assert_eq!(sidecar["verdict"], "ThresholdFamily");

    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("x,u\n"));
    assert!(!csv.contains('\r'));
    assert_eq!(csv.lines().count(), 8002); // header + 8001 nodes
}

#[test]
fn solve_pointwise_at_mass_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d3.csv");
    let res = run(&[
        "solve",
        "--q",
        "3",
        "--mass",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let sidecar = json_file(&dir.path().join("d3.csv.json"));
    assert!((sidecar["omega"].as_f64().unwrap() - 0.25).abs() < 1e-14);
    assert!((sidecar["energy"].as_f64().unwrap() + 1.0 / 12.0).abs() < 1e-13);

    // the profile is e^{-|x|/2}: origin value 1
    let csv = std::fs::read_to_string(&out).unwrap();
    let origin_line = csv
        .lines()
        .nth(1 + (sidecar["grid"]["count"].as_u64().unwrap() as usize - 1) / 2)
        .unwrap();
    let u0: f64 = origin_line.split(',').nth(1).unwrap().parse().unwrap();
    assert!((u0 - 1.0).abs() < 1e-15);
}

#[test]
fn solve_standard_critical_family_member() {
    // p = 6 alone: every frequency carries mass sqrt(3)pi/2, the threshold
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e6.csv");
    let res = run(&["solve", "--p", "6", "--omega", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    let sidecar = json_file(&dir.path().join("e6.csv.json"));
    let m6 = 3.0_f64.sqrt() * std::f64::consts::PI / 2.0;
    assert!((sidecar["mass"].as_f64().unwrap() - m6).abs() < 1e-10);
    assert_eq!(sidecar["verdict"], "ThresholdFamily");
    assert!(sidecar["t_bar"].is_null());
}

#[test]
fn solve_refuses_subthreshold_doubly_critical_mass() {
    let res = run(&["solve", "--p", "6", "--q", "4", "--mass", "1"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("NoMinimizerZeroInfimum"));
}

#[test]
fn solve_flag_validation() {
    // exactly one of mass/omega
    assert_eq!(
        run(&["solve", "--p", "4", "--q", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["solve", "--p", "4", "--q", "3", "--mass", "1", "--omega", "1"])
            .status
            .code(),
        Some(1)
    );
    // out-of-range powers and bad values
    assert_eq!(
        run(&["solve", "--p", "7", "--omega", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["solve", "--q", "4.5", "--mass", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["solve", "--q", "3", "--mass", "-2"]).status.code(),
        Some(1)
    );
    // unknown flag is a parameter error, not clap's default exit 2
    assert_eq!(run(&["solve", "--bogus", "1"]).status.code(), Some(1));
}

#[test]
fn minimize_matches_analytic_reference() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("min.csv");
    let res = run(&[
        "minimize",
        "--p",
        "4",
        "--q",
        "3",
        "--mass",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    let sidecar = json_file(&dir.path().join("min.csv.json"));
    let omega = deltanls::analytic::omega_of_mass(4.0, 3.0, 1.0).unwrap();
    let reference = deltanls::analytic::ground_state(4.0, 3.0, omega)
        .unwrap()
        .energy();
    let e = sidecar["energy"].as_f64().unwrap();
    assert!(
        (e - reference).abs() <= 1e-4 * reference.abs(),
        "energy {e} vs analytic {reference}"
    );
    assert_eq!(sidecar["converged"], true);
}

#[test]
fn minimize_pointwise_reference_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d3.json");
    let res = run(&[
        "minimize",
        "--q",
        "3",
        "--mass",
        "2",
        "--grid-n",
        "12001",
        "--half-width",
        "60",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    let artifact = json_file(&out);
    assert!((artifact["energy"].as_f64().unwrap() + 1.0 / 12.0).abs() < 1e-4);
    assert!((artifact["multiplier_estimate"].as_f64().unwrap() - 0.25).abs() < 1e-3);
    assert_eq!(artifact["u"].as_array().unwrap().len(), 12001);
}

#[test]
fn minimize_refuses_unbounded_regime() {
    let res = run(&["minimize", "--p", "6", "--q", "3", "--mass", "2.8"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("UnboundedBelow"));
}

#[test]
fn minimize_nonconvergence_still_writes_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stall.csv");
    let res = run(&[
        "minimize",
        "--p",
        "4",
        "--q",
        "3",
        "--mass",
        "1",
        "--grid-n",
        "801",
        "--half-width",
        "42",
        "--tol",
        "1e-300",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(3));
    let sidecar = json_file(&dir.path().join("stall.csv.json"));
    assert_eq!(sidecar["converged"], false);
    assert!(out.exists());
}

#[test]
fn phase_sweep_rows_and_bounds() {
    let res = run(&[
        "phase",
        "--q",
        "4",
        "--mass-min",
        "1",
        "--mass-max",
        "3",
        "--steps",
        "21",
    ]);
    assert_eq!(res.status.code(), Some(0));
    let text = stdout(&res);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mu,verdict,infimum,critical_mass");
    assert_eq!(lines.len(), 22);
    // ascending mu
    let mus: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(mus.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(mus[0], 1.0);
    assert_eq!(mus[20], 3.0);

    assert_eq!(
        run(&["phase", "--q", "4", "--mass-min", "3", "--mass-max", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "phase",
            "--q",
            "4",
            "--mass-min",
            "1",
            "--mass-max",
            "3",
            "--steps",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn phase_doubly_subcritical_is_uniform() {
    let res = run(&[
        "phase",
        "--p",
        "4",
        "--q",
        "3",
        "--mass-min",
        "0.2",
        "--mass-max",
        "8",
        "--steps",
        "15",
    ]);
    assert_eq!(res.status.code(), Some(0));
    for line in stdout(&res).lines().skip(1) {
        assert_eq!(line.split(',').nth(1).unwrap(), "UniqueGroundState");
        assert_eq!(line.split(',').nth(3).unwrap(), ""); // no critical mass
    }
}

#[test]
fn verify_default_run_passes() {
    let res = run(&["verify"]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    let report: serde_json::Value = serde_json::from_str(&stdout(&res)).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["schema"], 1);
    assert!(report["checks"].as_array().unwrap().len() >= 20);
}

#[test]
fn artifacts_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let res = run(&[
            "solve",
            "--p",
            "5",
            "--q",
            "3.5",
            "--omega",
            "0.7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(res.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(
        std::fs::read(dir.path().join("a.csv.json")).unwrap(),
        std::fs::read(dir.path().join("b.csv.json")).unwrap()
    );
}

#[test]
fn config_file_mirrors_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"p": 4.0, "q": 3.0, "omega": 1.0, "grid_n": 101, "half_width": 20.0}"#,
    )
    .unwrap();
    let out1 = dir.path().join("one.csv");
    let res = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    let sidecar = json_file(&dir.path().join("one.csv.json"));
    assert_eq!(sidecar["omega"].as_f64().unwrap(), 1.0);
    assert_eq!(sidecar["grid"]["count"].as_u64().unwrap(), 101);

    // explicit flag overrides the config value
    let out2 = dir.path().join("two.csv");
    let res = run(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--omega",
        "2.0",
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let sidecar = json_file(&dir.path().join("two.csv.json"));
    assert_eq!(sidecar["omega"].as_f64().unwrap(), 2.0);

    // unknown keys are rejected
    std::fs::write(&cfg, r#"{"pp": 4.0}"#).unwrap();
    assert_eq!(
        run(&["solve", "--config", cfg.to_str().unwrap(), "--omega", "1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_subset_and_tightened_tolerances() {
    let res = run(&["verify", "--only", "matching"]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    let report: serde_json::Value = serde_json::from_str(&stdout(&res)).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["name"], "matching-residual");

    // tightening every tolerance by 1e-3 produces controlled failures
    let res = run(&[
        "verify",
        "--tolerance-scale",
        "1e-3",
        "--only",
        "gn-soliton",
    ]);
    assert_eq!(res.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_str(&stdout(&res)).unwrap();
    assert_eq!(report["all_passed"], false);
    assert!(report["failed"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n == "gn-soliton-slack"));
    assert!(stderr(&res).contains("gn-soliton-slack"));
}
