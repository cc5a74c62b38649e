use nsc_spectral::samples::{windowed_scalar, windowed_solenoidal, windowed_vector, WindowSpec};
use nsc_spectral::*;

// C-infinity window: 1 for r <= a, 0 for r >= b.
fn plateau(r: f64, a: f64, b: f64) -> f64 {
    let bump = |t: f64| if t <= 0.0 { 0.0 } else { (-1.0 / t).exp() };
    let s = (r - a) / (b - a);
    let (p, q) = (bump(1.0 - s), bump(s));
    p / (p + q)
}

fn rel(a: &Field, b: &Field) -> f64 {
    a.sub(b).l2_norm() / b.l2_norm().max(f64::MIN_POSITIVE)
}

#[test]
fn s_of_constant_is_minus_two() {
    let g = make_grid(16, 1.0).unwrap();
    let c = Field::from_real_fn(&g, |_| 1.5);
    let out = s_scalar(&c);
    assert!(!out.window_ok());
    assert!(rel(&out.value, &c.scale(-2.0)) < 1e-14);

    let v = [c.clone(), c.scale(2.0), c.scale(-1.0)];
    let out = s_vector(&v).value;
    for a in 0..3 {
        assert!(rel(&out[a], &v[a].scale(-1.0)) < 1e-14);
    }
}

#[test]
fn s_annihilates_degree_two_monomial_on_plateau() {
    let g = make_grid(128, 3.0).unwrap();
    let f = Field::from_real_fn(&g, |x| {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        x[0] * x[0] * plateau(r, 1.0, 6.5)
    });
    let out = s_scalar(&f);
    assert!(out.window_ok(), "{}", out.outer_mass_fraction);
    let vals = out.value.to_physical();
    let scale = f.sup_norm();
    let mut worst: f64 = 0.0;
    for (idx, v) in vals.iter().enumerate() {
        let x = g.position(idx);
        if x.iter().map(|c| c * c).sum::<f64>().sqrt() < 0.9 {
            worst = worst.max(v.norm());
        }
    }
    // Limited by how well the grid resolves the window ramp.
    assert!(worst < 1e-4 * scale, "{worst}");
}

#[test]
fn omega_of_axisymmetric_scalars_vanishes() {
    let g = make_grid(48, 3.0).unwrap();
    let f = Field::from_real_fn(&g, |x| {
        let r2 = x[0] * x[0] + x[1] * x[1];
        (1.0 + x[2]) * (-(r2 + x[2] * x[2]) / 2.0).exp()
    });
    let out = omega_scalar(&f);
    assert!(out.window_ok());
    assert!(out.value.l2_norm() < 1e-10 * f.l2_norm());

    let h = Field::from_real_fn(&g, |x| {
        let r2 = x[0] * x[0] + x[1] * x[1];
        r2 * (-(r2 + x[2] * x[2]) / 2.0).exp()
    });
    assert!(omega_scalar(&h).value.l2_norm() < 1e-10 * h.l2_norm());
}

#[test]
fn omega_product_rule() {
    // Ω(x₁w) = x₁Ωw + w Ωx₁ = x₁Ωw - x₂w.
    let g = make_grid(48, 3.0).unwrap();
    let spec = WindowSpec { sigma: 1.2, ..WindowSpec::default() };
    let w = windowed_scalar(&g, spec, 5);
    let wv = w.to_physical();
    let times = |axis: usize, vals: &[num_complex::Complex<f64>]| {
        let s: Vec<_> = vals.iter().enumerate().map(|(i, v)| v * g.position(i)[axis]).collect();
        Field::from_physical(&g, s)
    };
    let lhs = omega_scalar(&times(0, &wv)).value;
    let ow = omega_scalar(&w).value.to_physical();
    let rhs = times(0, &ow).sub(&times(1, &wv));
    assert!(rel(&lhs, &rhs) < 1e-9, "{}", rel(&lhs, &rhs));
}

#[test]
fn omega_vector_conventions() {
    let g = make_grid(32, 2.0).unwrap();
    let spec = WindowSpec { sigma: 1.2, ..WindowSpec::default() };
    let v = windowed_vector(&g, spec, 3);
    let rot: Vec<Field> = v.iter().map(|c| omega_scalar(c).value).collect();
    let id = omega_vector(&v, OmegaConvention::SubtractIdentity).value;
    for a in 0..3 {
        assert!(rel(&id[a], &rot[a].sub(&v[a])) < 1e-14);
    }
    let r = omega_vector(&v, OmegaConvention::SubtractRotation).value;
    assert!(rel(&r[0], &rot[0].add(&v[1])) < 1e-14);
    assert!(rel(&r[1], &rot[1].sub(&v[0])) < 1e-14);
    assert!(rel(&r[2], &rot[2]) < 1e-14);
}

#[test]
fn scaling_field_energy_identities() {
    let g = make_grid(48, 3.0).unwrap();
    let spec = WindowSpec { sigma: 1.5, ..WindowSpec::default() };
    let v = windowed_solenoidal(&g, spec, 17);
    let sv = s_vector(&v);
    assert!(sv.window_ok());
    let sv = sv.value;

    // ⟨Sv, Δv⟩ = (3/2)‖∇v‖².
    let lhs: f64 = vector_inner(&sv, &vector_laplacian(&v)).re;
    let grad: f64 = vector_gradient_norm(&v).powi(2);
    assert!((lhs - 1.5 * grad).abs() < 1e-6 * grad, "{lhs} vs {}", 1.5 * grad);

    // S* = -S - 5 on vectors.
    let w = windowed_vector(&g, spec, 23);
    let sw = s_vector(&w).value;
    let sum = vector_inner(&sv, &w) + vector_inner(&v, &sw);
    let target = vector_inner(&v, &w) * -5.0;
    let scale = vector_l2_norm(&v) * vector_l2_norm(&w);
    assert!((sum - target).norm() < 1e-6 * scale);
}

#[test]
fn power_tracks_worst_window() {
    let g = make_grid(32, 2.0).unwrap();
    let f = windowed_scalar(&g, WindowSpec { sigma: 1.0, ..WindowSpec::default() }, 1);
    let once = s_scalar(&f).value;
    let twice = s_scalar_power(&f, 2);
    assert!(rel(&twice.value, &s_scalar(&once).value) < 1e-14);
    assert!(twice.window_ok());
    let zero = s_scalar_power(&f, 0);
    assert!(rel(&zero.value, &f) == 0.0);
}
