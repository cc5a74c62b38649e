use std::path::Path;

use nsc_cli::*;
use nsc_localization::Level;
use nsc_propagator::Localization;
use nsc_solver::{InitFamily, TimeStep};
use nsc_spectral::Checkpoint;

fn nsc(out: &Path, args: &[&str]) -> i32 {
    let mut all = vec!["nsc", "--out", out.to_str().unwrap()];
    all.extend_from_slice(args);
    main_with_args(all)
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(MANIFEST_FILE)).unwrap()).unwrap()
}

const RING: &str = r#"{"n":32,"box_scale":2,"kappa":0.01,"epsilon":0.05,"t_end":0.3,"dt":0.1,
    "init":{"family":"gaussian_swirl_ring","radius":1.2,"width":0.8}}"#;

#[test]
fn minimal_config_fills_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(
        dir.path(),
        "c.json",
        r#"{"n":64,"box_scale":8,"kappa":0.01,"epsilon":0.05,"t_end":10,"init":{"family":"gaussian_swirl_ring"}}"#,
    );
    let cfg = parse_config(Path::new(&path)).unwrap();
    assert_eq!(cfg.dt, TimeStep::Auto);
    assert_eq!(cfg.init.family, InitFamily::GaussianSwirlRing);
    assert!(cfg.dealias);
}

#[test]
fn config_errors_are_named() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"n":63,"box_scale":8,"kappa":0.01,"epsilon":0.05,"t_end":10,"init":{"family":"gaussian_swirl_ring"}}"#,
            "n must be even",
        ),
        (
            r#"{"n":64,"box_scale":8,"kappa":-1,"epsilon":0.05,"t_end":10,"init":{"family":"gaussian_swirl_ring"}}"#,
            "kappa in [0,1]",
        ),
        (
            r#"{"n":64,"box_scale":8,"kappa":0.01,"epsilon":0.05,"t_end":10,"init":{"family":"gaussian_swirl_ring"},"cfl":1}"#,
            "unknown field",
        ),
        (
            r#"{"n":"64","box_scale":8,"kappa":0.01,"epsilon":0.05,"t_end":10,"init":{"family":"gaussian_swirl_ring"}}"#,
            "invalid type",
        ),
    ];
    for (i, (text, want)) in cases.iter().enumerate() {
        let path = write_config(dir.path(), &format!("c{i}.json"), text);
        let err = parse_config(Path::new(&path)).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_VALIDATION);
        assert!(err.to_string().contains(want), "{err}");
        assert_eq!(nsc(dir.path(), &["simulate", "--config", &path]), EXIT_VALIDATION);
    }
    assert_eq!(nsc(dir.path(), &["simulate", "--config", "missing.json"]), EXIT_VALIDATION);
}

#[test]
fn command_line_errors_and_help() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(nsc(dir.path(), &["frobnicate"]), EXIT_VALIDATION);
    assert_eq!(nsc(dir.path(), &["sweep", "--samples", "ten"]), EXIT_VALIDATION);
    assert_eq!(nsc(dir.path(), &["--help"]), EXIT_OK);
    assert_eq!(nsc(dir.path(), &["sweep", "--threads", "0"]), EXIT_VALIDATION);
}

#[test]
fn energy_coefficient_tables() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(nsc(dir.path(), &["energy-coeffs", "--nmax", "4"]), EXIT_OK);
    let text = std::fs::read_to_string(dir.path().join("energy_coeffs.csv")).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "family,n,k,numerator,denominator,value");
    // Four families with 15 entries each for n ≤ 4.
    assert_eq!(rows.len(), 1 + 4 * 15);
    for family in ["c", "a", "a_prime", "c_prime"] {
        assert_eq!(rows.iter().filter(|r| r.starts_with(&format!("{family},"))).count(), 15);
    }
    assert!(rows.contains(&"c,1,0,3,1,3e0") && rows.contains(&"c,2,0,18,1,1.8e1"));

    let m = manifest(dir.path());
    assert_eq!(m["command"], "energy-coeffs");
    assert_eq!(m["exit_code"], 0);
    assert_eq!(m["config"]["nmax"], 4);
    let out = &m["outputs"][0];
    assert_eq!(out["sha256"], sha256_hex(text.as_bytes()));
    assert_eq!(out["bytes"], text.len());
}

#[test]
fn sha256_known_vector() {
    assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

#[test]
fn sweep_is_byte_identical_on_rerun() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert_eq!(nsc(d.path(), &["sweep", "--samples", "1000", "--seed", "7"]), EXIT_OK);
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("sweep.json")).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_eq!(manifest(a.path())["outputs"][0]["sha256"], manifest(b.path())["outputs"][0]["sha256"]);
    assert_eq!(manifest(a.path())["seed"], 7);
}

#[test]
fn simulate_then_norms_of_the_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ring.json", RING);
    assert_eq!(nsc(dir.path(), &["simulate", "--config", &cfg]), EXIT_OK);
    for f in ["time_series.csv", "energy.csv", "final.nsck"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let m = manifest(dir.path());
    assert_eq!(m["outputs"].as_array().unwrap().len(), 3);
    assert_eq!(m["config"]["dt"], 0.1);
    assert!((Checkpoint::load(dir.path().join("final.nsck")).unwrap().t - 0.3).abs() < 1e-12);

    let norms_dir = dir.path().join("norms");
    let ck = dir.path().join("final.nsck");
    assert_eq!(nsc(&norms_dir, &["norms", "--checkpoint", ck.to_str().unwrap()]), EXIT_OK);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(norms_dir.join("norms.json")).unwrap()).unwrap();
    assert_eq!(summary["fields"].as_array().unwrap().len(), 2);
    assert!(summary["axisymmetry"].as_f64().unwrap() < 1e-12);
    let b = summary["fields"][0]["b"].as_f64().unwrap();
    assert!(b > 0.0 && b <= 0.05 * 1.01, "{b}");
    assert!(norms_dir.join("b_plus.csv").exists() && norms_dir.join("x_minus.csv").exists());
    assert_eq!(nsc(&norms_dir, &["norms", "--checkpoint", "nowhere.nsck"]), EXIT_VALIDATION);
}

#[test]
fn blow_up_exits_two_and_keeps_the_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "huge.json",
        r#"{"n":32,"box_scale":2,"kappa":0,"epsilon":1e14,"t_end":200,"dt":0.5,
            "init":{"family":"gaussian_swirl_ring","radius":1.2,"width":0.8}}"#,
    );
    assert_eq!(nsc(dir.path(), &["simulate", "--config", &cfg]), EXIT_NUMERICAL);
    let cp = Checkpoint::load(dir.path().join("final.nsck")).unwrap();
    assert!(cp.components.iter().flatten().all(|c| c.re.is_finite() && c.im.is_finite()));
    let m = manifest(dir.path());
    assert_eq!(m["exit_code"], 2);
    assert!(m["outputs"].as_array().unwrap().iter().any(|o| o["path"].as_str().unwrap().ends_with("final.nsck")));
}

#[test]
fn oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(nsc(dir.path(), &["oracle"]), EXIT_OK);
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("oracle.json")).unwrap()).unwrap();
    assert!(s["probes"][0]["relative"].as_f64().unwrap() < 1e-4);
    assert!(s["orders"][0].as_f64().unwrap() >= 1.9);
    assert_eq!(nsc(dir.path(), &["oracle", "--n", "18"]), EXIT_VALIDATION);
    assert_eq!(nsc(dir.path(), &["oracle", "--dts", "0"]), EXIT_VALIDATION);

    // Same inputs, same report.
    let again = oracle_experiment(12, 0.05, 11, &[1e-3, 5e-4]).unwrap();
    assert_eq!(serde_json::to_value(&again).unwrap(), s);
}

#[test]
fn decay_targets_and_output() {
    assert_eq!(parse_target("0,0,0").unwrap(), Localization::Cell { k: 0, p: Level::At(0), q: Level::At(0) });
    assert_eq!(parse_target("1,floor,-3").unwrap(), Localization::Cell { k: 1, p: Level::Floor, q: Level::At(-3) });
    assert_eq!(parse_target("0,-1").unwrap(), Localization::Band { k: 0, p: Level::At(-1) });
    assert_eq!(parse_target("2").unwrap(), Localization::Shell { k: 2 });
    assert_eq!(parse_target("whole").unwrap(), Localization::Whole);
    for bad in ["", "0,1,0", "a,b,c", "0,0,0,0"] {
        assert!(parse_target(bad).is_err(), "{bad}");
    }
    assert_eq!(target_name(&parse_target("1,floor,-3").unwrap()), "1,floor,-3");

    let dir = tempfile::tempdir().unwrap();
    let args =
        ["decay", "--cell", "0,0,0", "--n", "32", "--box-scale", "4", "--tmin", "1", "--tmax", "10", "--points", "5"];
    assert_eq!(nsc(dir.path(), &args), EXIT_OK);
    let rows = std::fs::read_to_string(dir.path().join("decay.jsonl")).unwrap();
    assert_eq!(rows.lines().count(), 5);
    assert!(dir.path().join("decay.json").exists());
    assert_eq!(nsc(dir.path(), &["decay", "--tmin", "5", "--tmax", "1"]), EXIT_VALIDATION);
}

#[test]
fn inviscid_command() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "ring.json", RING);
    assert_eq!(nsc(dir.path(), &["inviscid", "--config", &cfg, "--kappas", "0,0.2"]), EXIT_VALIDATION);
    assert_eq!(nsc(dir.path(), &["inviscid", "--config", &cfg, "--kappas", "0"]), EXIT_VALIDATION);
    assert_eq!(nsc(dir.path(), &["inviscid", "--config", &cfg, "--kappas", "0,0.005,0.01"]), EXIT_OK);
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("convergence.json")).unwrap()).unwrap();
    assert_eq!(r["pairs"].as_array().unwrap().len(), 3);
    assert_eq!(r["gronwall_holds"], true);
    assert_eq!(manifest(dir.path())["config"]["kappas"], serde_json::json!([0.0, 0.005, 0.01]));
}
