use nsc_energy::*;

fn grid(t_end: f64, m: usize) -> Vec<f64> {
    (0..=m).map(|i| t_end * i as f64 / m as f64).collect()
}

#[test]
fn cumulative_integral_is_exact_on_cubics() {
    for m in [3usize, 4, 7, 10] {
        let t = grid(2.0, m);
        let f: Vec<f64> = t.iter().map(|s| s * s * s - 2.0 * s + 0.5).collect();
        let got = cumulative_integral(&t, &f).unwrap();
        for (s, v) in t.iter().zip(&got) {
            let want = s.powi(4) / 4.0 - s * s + 0.5 * s;
            assert!((v - want).abs() < 1e-13, "m = {m}, t = {s}: {v} vs {want}");
        }
    }
    assert!(cumulative_integral(&[0.0, 1.0, 3.0], &[1.0, 1.0, 1.0]).is_err());
    assert!(cumulative_integral(&[0.0, 1.0], &[1.0]).is_err());
}

fn decaying(kappa: f64, m: usize) -> EnergySeries {
    // ‖u‖² = e^{-2κλt} with ‖∇u‖² = λ‖u‖², one Fourier shell of radius √λ.
    let lambda = 3.0;
    let times = grid(4.0, m);
    let energy: Vec<f64> = times.iter().map(|t| (-2.0 * kappa * lambda * t).exp()).collect();
    let dissipation = energy.iter().map(|e| lambda * e).collect();
    EnergySeries { kappa, times, energy, dissipation, ..Default::default() }
}

#[test]
fn balance_defect_is_fourth_order_in_the_sample_spacing() {
    let coarse = energy_balance_report(&decaying(0.1, 20)).unwrap();
    let fine = energy_balance_report(&decaying(0.1, 40)).unwrap();
    let ratio = coarse.max_defect / fine.max_defect;
    assert!((10.0..24.0).contains(&ratio), "ratio {ratio}");
    assert!(fine.relative_defect < 1e-7);
    let still = energy_balance_report(&decaying(0.0, 20)).unwrap();
    assert_eq!(still.max_defect, 0.0);
}

#[test]
fn sobolev_inequality_constant() {
    let mut s = decaying(0.1, 20);
    s.order = Some(2);
    s.hm_energy = s.energy.iter().map(|e| 2.0 * e).collect();
    s.hm_dissipation = s.dissipation.iter().map(|d| 2.0 * d).collect();
    s.grad_sup = vec![0.5; s.times.len()];
    let r = energy_balance_report(&s).unwrap();
    assert_eq!(r.hm_lhs.len(), s.times.len());
    // Purely viscous: the left side stays at quadrature level, below the source.
    let c = r.hm_constant.unwrap();
    assert!(c.abs() < 1e-5, "{c}");
    s.grad_sup.pop();
    assert!(energy_balance_report(&s).is_err());
}

#[test]
fn growth_exponent_of_a_power_law() {
    let t = grid(50.0, 40);
    let y: Vec<f64> = t.iter().map(|s| 0.05 * (1.0 + s * s).sqrt().powf(0.15)).collect();
    assert!((growth_exponent(&t, &y).unwrap() - 0.15).abs() < 1e-12);
    assert!(growth_exponent(&[1.0], &[1.0]).is_err());
}
