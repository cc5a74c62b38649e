use nsc_spectral::samples::{random_band_limited, windowed_solenoidal, WindowSpec};
use nsc_spectral::*;
use num_complex::Complex;

fn grid(n: usize, l: f64) -> Grid64 {
    make_grid(n, l).unwrap()
}

fn max_abs_diff(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn grid_frequencies_and_spacing() {
    let g = grid(8, 1.0);
    let js: Vec<i64> = (0..8).map(|i| g.wavenumber(i)).collect();
    let mut sorted = js.clone();
    sorted.sort();
    assert_eq!(sorted, vec![-4, -3, -2, -1, 0, 1, 2, 3]);
    assert_eq!(g.xi_spacing(), 1.0);

    let g = grid(64, 8.0);
    assert_eq!(g.xi_spacing(), 0.125);
    assert!((g.max_xi() - 4.0 * 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn odd_and_out_of_range_grids_are_rejected() {
    assert!(make_grid(7, 1.0f64).is_err());
    assert!(make_grid(2, 1.0f64).is_err());
    assert!(make_grid(2048, 1.0f64).is_err());
    assert!(make_grid(8, 0.0f64).is_err());
    let msg = make_grid(63, 8.0f64).unwrap_err().to_string();
    assert!(msg.contains("n must be even"), "{msg}");
}

#[test]
fn transform_roundtrip_and_parseval() {
    let g = grid(16, 1.3);
    let f = random_band_limited(&g, 5, 11);
    let samples = f.to_physical();
    let back = Field::from_physical(&g, samples.clone());
    assert!(max_abs_diff(back.coeffs(), f.coeffs()) < 1e-14);
    // Riemann sum of |f|^2 equals the Parseval expression exactly for trigonometric polynomials.
    let h3 = g.spacing().powi(3);
    let phys: f64 = samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * h3;
    assert!((phys.sqrt() - f.l2_norm()).abs() <= 1e-12 * f.l2_norm());
    assert!(f.hermitian_defect() < 1e-12);
    assert!(samples.iter().all(|v| v.im.abs() < 1e-12));
}

#[test]
fn single_precision_transform_roundtrip() {
    let g = make_grid(8, 1.0f32).unwrap();
    let f = SpectralField::from_real_fn(&g, |x| (x[0] + 2.0 * x[2]).sin());
    let back = SpectralField::from_physical(&g, f.to_physical());
    let err = back.coeffs().iter().zip(f.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0f32, f32::max);
    assert!(err < 1e-5);
}

#[test]
fn gradient_of_single_mode_and_constant() {
    let l = 2.0;
    let g = grid(16, l);
    let f = Field::from_real_fn(&g, |x| (x[2] / l).sin());
    let d = gradient(&f);
    let expect = Field::from_real_fn(&g, |x| (x[2] / l).cos() / l);
    assert!(d[0].l2_norm() < 1e-12);
    assert!(d[1].l2_norm() < 1e-12);
    assert!(d[2].sub(&expect).l2_norm() < 1e-12);

    let c = Field::from_real_fn(&g, |_| 3.0);
    for comp in gradient(&c) {
        assert!(comp.l2_norm() < 1e-12);
    }
}

// Fourth-order central differences on the physical grid.
fn fd4(values: &[Complex<f64>], g: &Grid64, axis: usize) -> Vec<Complex<f64>> {
    let n = g.n();
    let h = g.spacing();
    (0..g.len())
        .map(|idx| {
            let p = g.unravel(idx);
            let at = |s: isize| {
                let mut q = p;
                q[axis] = ((p[axis] as isize + s).rem_euclid(n as isize)) as usize;
                values[g.index(q[0], q[1], q[2])]
            };
            (at(-2) - at(-1) * 8.0 + at(1) * 8.0 - at(2)) / (12.0 * h)
        })
        .collect()
}

#[test]
fn gradient_matches_fourth_order_differences() {
    // The same trigonometric polynomial sampled on two grids: the FD error must drop ~16x.
    let mut errors = Vec::new();
    for n in [32usize, 64] {
        let g = grid(n, 1.0);
        let f = Field::from_real_fn(&g, |x| (x[0] + 2.0 * x[1]).sin() * (3.0 * x[2]).cos() + (2.0 * x[2]).sin());
        let samples = f.to_physical();
        let mut err: f64 = 0.0;
        for (axis, d) in gradient(&f).iter().enumerate() {
            err = err.max(max_abs_diff(&fd4(&samples, &g, axis), &d.to_physical()));
        }
        errors.push(err);
    }
    let ratio = errors[0] / errors[1];
    assert!(errors[1] < 2e-3, "{errors:?}");
    assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn leray_examples() {
    let l = 1.5;
    let g = grid(16, l);
    // Pure gradient is annihilated.
    let phi = Field::from_real_fn(&g, |x| -(x[0] / l).cos());
    let p = leray_project(&gradient(&phi));
    assert!(vector_l2_norm(&p) < 1e-13);
    // (sin(x2/L), 0, 0) already solenoidal.
    let u = [Field::from_real_fn(&g, |x| (x[1] / l).sin()), Field::zeros(&g), Field::zeros(&g)];
    let p = leray_project(&u);
    for a in 0..3 {
        assert!(p[a].sub(&u[a]).l2_norm() < 1e-14);
    }
}

#[test]
fn leray_is_idempotent_and_solenoidal() {
    let g = grid(16, 1.0);
    let u = [random_band_limited(&g, 7, 1), random_band_limited(&g, 7, 2), random_band_limited(&g, 7, 3)];
    let p = leray_project(&u);
    let pp = leray_project(&p);
    let scale = vector_l2_norm(&p);
    for a in 0..3 {
        assert!(pp[a].sub(&p[a]).l2_norm() <= 1e-13 * scale);
    }
    assert!(divergence_residual(&p) < 1e-14);
}

#[test]
fn coriolis_examples() {
    let g = grid(8, 1.0);
    let w = Field::from_real_fn(&g, |x| (x[0] - x[1]).cos());
    let z = Field::zeros(&g);
    let c = coriolis(&[w.clone(), z.clone(), z.clone()]);
    assert!(c[0].l2_norm() == 0.0 && c[2].l2_norm() == 0.0);
    assert!(c[1].sub(&w).l2_norm() < 1e-15);
    let c = coriolis(&[z.clone(), z.clone(), w.clone()]);
    assert!(vector_l2_norm(&c) == 0.0);

    let u = [random_band_limited(&g, 3, 4), random_band_limited(&g, 3, 5), random_band_limited(&g, 3, 6)];
    let cc = coriolis(&coriolis(&u));
    assert!(cc[0].add(&u[0]).l2_norm() < 1e-15);
    assert!(cc[1].add(&u[1]).l2_norm() < 1e-15);
    assert!(cc[2].l2_norm() == 0.0);
}

#[test]
fn windowed_solenoidal_fields_are_divergence_free() {
    let g = grid(32, 4.0);
    let u = windowed_solenoidal(&g, WindowSpec::default(), 9);
    assert!(divergence_residual(&u) < 1e-13);
}
