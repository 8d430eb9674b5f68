//! End-to-end runs of the `cmr` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cmr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmr"))
        .args(args)
        .env_remove("CMR_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_rational_case_one_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = cmr(&[
        "verify",
        "--n",
        "3",
        "--potential",
        "rational",
        "--case",
        "I",
        "--samples",
        "20",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report = read_json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["metadata"]["seed"], 7);
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
    }
    assert_eq!(report["conventions"]["poisson_sign_flip_observed"], false);
    assert_eq!(report["conventions"]["kappa"]["3"], "-2");
    assert_eq!(report["conventions"]["r_prime_global_sign"], 1);
}

#[test]
fn verify_general_case_skips_gauge_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let o = cmr(&[
        "verify",
        "--n",
        "2",
        "--case",
        "general",
        "--samples",
        "5",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = read_json(&out);
    assert_eq!(check(&report, "lax_bracket")["status"], "pass");
    for name in [
        "curvature",
        "gauge_condition",
        "phi_gauge",
        "constant_limit",
    ] {
        assert_eq!(check(&report, name)["status"], "skipped", "{name}");
    }
}

#[test]
fn verify_other_potentials_and_cases() {
    for (potential, case) in [
        ("hyperbolic", "II"),
        ("trigonometric", "I"),
        ("trigonometric", "II"),
    ] {
        let o = cmr(&[
            "verify",
            "--n",
            "3",
            "--potential",
            potential,
            "--case",
            case,
            "--samples",
            "4",
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{potential} {case}: {}",
            stdout(&o)
        );
        assert!(stdout(&o).contains("[pass] curvature"));
        assert!(stdout(&o).contains("[pass] gauge_condition"));
    }
}

#[test]
fn verify_exact_mode_uses_rational_arithmetic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.json");
    let o = cmr(&[
        "verify",
        "--n",
        "3",
        "--samples",
        "3",
        "--exact",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = read_json(&out);
    assert_eq!(report["metadata"]["arithmetic"], "exact");
    for name in ["phi_gauge", "phi_determinant", "constant_limit"] {
        let c = check(&report, name);
        assert_eq!(c["arithmetic"], "exact");
        assert_eq!(c["exact_match"], true);
    }
}

#[test]
fn verify_usage_errors_exit_two() {
    for args in [
        vec!["verify", "--n", "0"],
        vec!["verify", "--n", "11"],
        vec!["verify", "--samples", "0"],
        vec!["verify", "--potential", "elliptic"],
        vec!["verify", "--potential", "hyperbolic", "--a", "-1"],
        vec!["verify", "--tol-fd", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(cmr(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failing_tolerance_exits_one() {
    let o = cmr(&["verify", "--n", "3", "--samples", "3", "--tol-fd", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("overall: FAIL"));
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |p: &Path| {
        vec![
            "verify".to_string(),
            "--n".into(),
            "4".into(),
            "--case".into(),
            "general".into(),
            "--samples".into(),
            "6".into(),
            "--seed".into(),
            "99".into(),
            "--out".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let run = |p: &Path| {
        let args = args(p);
        cmr(&args.iter().map(String::as_str).collect::<Vec<_>>())
    };
    run(&a);
    run(&b);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn seed_flag_overrides_environment() {
    let dir = tempfile::tempdir().unwrap();
    let env_only = dir.path().join("env.json");
    let both = dir.path().join("both.json");
    let run = |extra: &[&str], out: &Path| {
        let mut args = vec![
            "verify",
            "--n",
            "2",
            "--samples",
            "2",
            "--out",
            out.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_cmr"))
            .args(&args)
            .env("CMR_SEED", "41")
            .output()
            .unwrap()
    };
    assert!(run(&[], &env_only).status.success());
    assert!(run(&["--seed", "5"], &both).status.success());
    assert_eq!(read_json(&env_only)["metadata"]["seed"], 41);
    assert_eq!(read_json(&both)["metadata"]["seed"], 5);
}

#[test]
fn simulate_reference_point_conserves() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = cmr(&[
        "simulate",
        "--n",
        "2",
        "--potential",
        "rational",
        "--q",
        "1,0",
        "--p",
        "0.3,-0.3",
        "--dt",
        "1e-3",
        "--t-final",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report = read_json(&out);
    assert_eq!(report["metadata"]["steps"], 10000);
    assert!(report["drifts"]["eigenvalues"].as_f64().unwrap() < 1e-7);
    assert!(report["drifts"]["energy"].as_f64().unwrap() < 1e-8);
}

#[test]
fn simulate_single_particle_has_no_drift() {
    let o = cmr(&["simulate", "--q", "0.5", "--p", "2", "--steps", "100"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn simulate_collision_aborts_with_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = cmr(&[
        "simulate",
        "--q",
        "0,1",
        "--p",
        "1000,-1000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("aborted at step"));
    let report = read_json(&out);
    assert_eq!(report["abort"]["pair"], serde_json::json!([1, 2]));
    assert!(report["abort"]["step"].as_u64().unwrap() >= 1);
}

#[test]
fn simulate_random_initial_data_is_seeded() {
    let a = cmr(&["simulate", "--n", "3", "--seed", "12", "--steps", "50"]);
    let b = cmr(&["simulate", "--n", "3", "--seed", "12", "--steps", "50"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simulate_rejects_inconsistent_initial_data() {
    assert_eq!(
        cmr(&["simulate", "--q", "0,1", "--p", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cmr(&["simulate", "--n", "3", "--q", "0,1"]).status.code(),
        Some(2)
    );
    assert_eq!(cmr(&["simulate", "--q", "1,1"]).status.code(), Some(2));
    assert_eq!(cmr(&["simulate", "--dt", "0"]).status.code(), Some(2));
}

#[test]
fn show_const_r_lists_index_set() {
    let o = cmr(&["show", "constR", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("|S| = 4"));
    for quad in ["(1,1,1,2)", "(1,1,2,3)", "(2,1,1,3)", "(2,2,2,3)"] {
        assert!(text.contains(quad), "{quad}");
    }
}

#[test]
fn show_phi_compares_determinant() {
    let o = cmr(&["show", "phi", "--n", "3", "--q", "1,2,4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("det phi = 6"));
    assert!(text.contains("product formula = 6"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi.json");
    let o = cmr(&[
        "show",
        "phi",
        "--q",
        "1/3,-2,0.25",
        "--exact",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = read_json(&out);
    assert_eq!(report["object"], "phi");
    assert_eq!(report["agree"], true);
    assert_eq!(report["determinant"], report["vandermonde_product"]);
    assert_eq!(cmr(&["show", "phi", "--q", "1,1"]).status.code(), Some(2));
    assert_eq!(cmr(&["show", "phi"]).status.code(), Some(2));
}

#[test]
fn show_frobenius_reports_kappa() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let o = cmr(&[
        "show",
        "frobenius",
        "--n",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kappa = -2"));
    let report = read_json(&out);
    assert_eq!(report["kappa"], "-2");
    assert_eq!(report["passed"], true);
}
