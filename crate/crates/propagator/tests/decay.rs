use nsc_localization::Level;
use nsc_propagator::*;
use nsc_spectral::*;
use num_complex::Complex;

fn gaussian(g: &Grid64) -> Field {
    let mut f = Field::from_fourier_fn(g, |_, xi| {
        Complex::new((-(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) / 2.0).exp(), 0.0)
    });
    f.remove_mean();
    f
}

const CELL: Localization = Localization::Cell { k: 0, p: Level::At(0), q: Level::At(0) };

#[test]
fn bound_examples() {
    assert!((d_norm_bound(0, 0, 0, 100.0, 1.0) - 1e-3).abs() < 1e-15);
    // Early branch.
    let (p, q) = (-2, -1);
    let early = 2f64.powi(2 * p + q);
    assert_eq!(d_norm_bound(0, p, q, 1e-3, 2.0), early * 2.0);
    assert!((d_norm_bound(1, p, q, 1e-3, 1.0) - 2f64.powf(1.5 - 3.0) * early).abs() < 1e-15);
    // k = 2: 2^{3 - 6}.
    assert!((d_norm_bound(2, 0, 0, 100.0, 1.0) - 1e-3 / 8.0).abs() < 1e-15);
    assert!((d_norm_bound(-2, 0, 0, 100.0, 1.0) - 1e-3 / 8.0).abs() < 1e-15);
    assert!((whole_field_bound(0, 100.0, 0.0, 1.0) - 0.01).abs() < 1e-15);
}

#[test]
fn log_times_and_slope_fit() {
    let t = log_times(10.0, 100.0, 11);
    assert_eq!(t.len(), 11);
    assert!((t[0] - 10.0).abs() < 1e-12 && (t[10] - 100.0).abs() < 1e-12 && (t[5] - 1000f64.sqrt()).abs() < 1e-9);
    let y: Vec<f64> = t.iter().map(|v| 3.0 * v.powf(-1.5)).collect();
    assert!((fit_slope(&t, &y) + 1.5).abs() < 1e-12);
}

#[test]
fn bad_inputs_are_rejected() {
    let g = make_grid(16, 1.0).unwrap();
    let f = gaussian(&g);
    assert!(matches!(measure_decay(&f, CELL, &[2.0, 1.0], 1.0, 0.0), Err(PropagatorError::Times(_))));
    assert!(matches!(measure_decay(&f, CELL, &[], 1.0, 0.0), Err(PropagatorError::Times(_))));
    // A cell the grid never reaches.
    let far = Localization::Cell { k: 9, p: Level::At(0), q: Level::At(0) };
    assert!(matches!(measure_decay(&f, far, &[1.0, 2.0], 1.0, 0.0), Err(PropagatorError::EmptyCell(_))));
    // Every sample before the branch switch at t = 2^{2}.
    let deep = Localization::Cell { k: 0, p: Level::At(-1), q: Level::At(0) };
    assert!(matches!(
        measure_decay(&f, deep, &[1.0, 2.0, 3.0], 1.0, 0.0),
        Err(PropagatorError::FitWindow { found: 0 })
    ));
}

#[test]
fn early_regime_is_flat_and_output_is_json_lines() {
    let g = make_grid(64, 8.0).unwrap();
    let f = gaussian(&g);
    let times = log_times(0.01, 0.5, 6);
    let m = measure_decay(&f, Localization::Band { k: 0, p: Level::At(0) }, &times, 1.0, 0.0).unwrap();
    assert!(m.spread() < 2.0, "{:?}", m.sup_norms);
    assert!(m.cell().is_none());
    let m = measure_decay(&f, CELL, &times, 1.0, 0.0).unwrap_err();
    assert!(matches!(m, PropagatorError::FitWindow { .. }));

    let times = log_times(0.05, 4.0, 5);
    let m = measure_decay(&f, CELL, &times, 2.0, 0.0).unwrap();
    assert_eq!(m.fit_window, (3, 5));
    let mut buf = Vec::new();
    m.write_jsonl(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let rows: Vec<DecaySample> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows, m.samples());
    assert!(text.lines().next().unwrap().starts_with("{\"t\":"));
    assert!(rows.iter().all(|r| r.sup_norm >= 0.0 && r.bound <= 2.0));
}

#[test]
fn localized_and_whole_field_rates() {
    let g = make_grid(128, 16.0).unwrap();
    let f = gaussian(&g);
    let times = log_times(10.0, 100.0, 11);
    let cell = measure_decay(&f, CELL, &times, 1.0, 0.0).unwrap();
    assert_eq!(cell.fit_window, (0, 11));
    assert!((-1.7..=-1.3).contains(&cell.fitted_slope), "{}", cell.fitted_slope);
    let whole = measure_decay(&f, Localization::Whole, &times, 1.0, 0.0).unwrap();
    assert!((-1.2..=-0.8).contains(&whole.fitted_slope), "{}", whole.fitted_slope);
    // Summing over q brings back the equatorial directions, where the rate is t^{-1}.
    let band = measure_decay(&f, Localization::Band { k: 0, p: Level::At(0) }, &times, 1.0, 0.0).unwrap();
    assert!(band.fitted_slope > -1.2, "{}", band.fitted_slope);
}
