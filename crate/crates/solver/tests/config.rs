use nsc_solver::*;

const MINIMAL: &str =
    r#"{"n":64,"box_scale":8,"kappa":0.01,"epsilon":0.05,"t_end":10,"init":{"family":"gaussian_swirl_ring"}}"#;

fn error_of(text: &str) -> String {
    SimConfig::from_json(text).unwrap_err().to_string()
}

#[test]
fn minimal_config_fills_defaults() {
    let cfg = SimConfig::from_json(MINIMAL).unwrap();
    assert_eq!(cfg.dt, TimeStep::Auto);
    assert!(cfg.dealias);
    assert_eq!(cfg.init.family, InitFamily::GaussianSwirlRing);
    assert_eq!(cfg.init.radius, 3.0);
    assert_eq!(cfg.norm_cadence, 0);
    assert_eq!(cfg.output, OutputPaths::default());
    let back = SimConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn named_errors() {
    assert!(error_of(&MINIMAL.replace("\"n\":64", "\"n\":63")).contains("n must be even"));
    assert!(error_of(&MINIMAL.replace("0.01", "-1")).contains("kappa in [0,1]"));
    assert!(error_of(&MINIMAL.replace("\"t_end\":10", "\"t_end\":10,\"colour\":1")).contains("unknown field `colour`"));
    assert!(error_of(&MINIMAL.replace("\"t_end\":10", "\"t_end\":10,\"dt\":\"fast\"")).contains("auto"));
    assert!(error_of(&MINIMAL.replace("\"t_end\":10", "\"t_end\":10,\"dt\":0.7")).contains("dt must lie"));
    assert!(error_of(&MINIMAL.replace("\"n\":64", "\"n\":\"big\"")).contains("invalid type"));
    assert!(error_of(&MINIMAL.replace("gaussian_swirl_ring", "smoke_ring")).contains("unknown variant"));
}

#[test]
fn fixed_step_and_auto_parse() {
    let cfg = SimConfig::from_json(&MINIMAL.replace("\"t_end\":10", "\"t_end\":10,\"dt\":0.1")).unwrap();
    assert_eq!(cfg.dt, TimeStep::Fixed(0.1));
    let cfg = SimConfig::from_json(&MINIMAL.replace("\"t_end\":10", "\"t_end\":10,\"dt\":\"auto\"")).unwrap();
    assert_eq!(cfg.dt, TimeStep::Auto);
}

#[test]
fn diagnostic_times_cover_dyadics_interval_and_ends() {
    let steps = diagnostic_steps(0.1, 100, 2.5);
    // 2^m for m = -3..=3 lands on steps 1.25, 2.5, 5, .., 80; the interval adds 25, 50, 75.
    for want in [0usize, 1, 3, 5, 10, 20, 25, 40, 50, 75, 80, 100] {
        assert!(steps.contains(&want), "{want} missing from {steps:?}");
    }
    assert!(steps.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(diagnostic_steps(0.1, 0, 1.0), vec![0]);
}
