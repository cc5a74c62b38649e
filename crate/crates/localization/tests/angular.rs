use nsc_localization::*;
use nsc_spectral::{laplacian, make_grid, Field, Grid64};
use num_complex::Complex;

#[test]
fn legendre_examples() {
    let z = 1.0 / (4.0 * std::f64::consts::PI);
    assert!((legendre_zonal(0, 0.7).unwrap() - z).abs() < 1e-16);
    assert!((legendre_zonal(1, 0.5).unwrap() - 3.0 * z * 0.5).abs() < 1e-16);
    // Explicit L_5 = (63x^5 - 70x^3 + 15x)/8.
    let x: f64 = 0.3;
    let l5 = (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0;
    assert!((legendre(5, x).unwrap() - l5).abs() < 1e-14);
    assert!((legendre_zonal(5, x).unwrap() - 11.0 * z * l5).abs() < 1e-14);
    assert!(legendre(3, 1.0 + 1e-9).is_err());
    assert!(legendre(0, f64::NAN).is_err());
}

// Axisymmetric coefficients h(|ξ|) g(Λ).
fn axisymmetric(grid: &Grid64, g: impl Fn(f64) -> f64 + Sync) -> Field {
    Field::from_fourier_fn(grid, |_, xi| {
        let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        if r == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        Complex::new((-r * r / 8.0).exp() * g(xi[2] / r), 0.0)
    })
}

fn rel(a: &Field, b: &Field) -> f64 {
    a.sub(b).l2_norm() / b.l2_norm()
}

#[test]
fn radial_fields_are_fixed_by_low_pass() {
    let g = make_grid(16, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, |_| 1.0);
    for l in 0..5 {
        let out = basis.apply_rl(&f, l, Variant::Leq).unwrap();
        assert!(rel(&out, &f) < 1e-12, "l = {l}");
    }
    assert!(basis.apply_rl(&f, 0, Variant::Exact).unwrap().l2_norm() < 1e-12 * f.l2_norm());
}

#[test]
fn first_degree_profile() {
    let g = make_grid(16, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, |mu| mu);
    assert!(rel(&basis.apply_rl(&f, 0, Variant::Exact).unwrap(), &f) < 1e-12);
    assert!(basis.apply_rl(&f, 2, Variant::Exact).unwrap().l2_norm() < 1e-12 * f.l2_norm());
    // Independent check of the degree split: μ is orthogonal to constants on a symmetric lattice sphere.
    let e = basis.degree_energies(&f).unwrap();
    let total: f64 = e.iter().sum();
    assert!((e[1] - total).abs() < 1e-12 * total);
    assert!((total.sqrt() - f.l2_norm()).abs() < 1e-12 * f.l2_norm());
}

fn profile(mu: f64) -> f64 {
    (3.0 * mu).sin() + mu.powi(4) + 0.3 * (7.0 * mu).cos()
}

#[test]
fn bands_plus_constant_part_reassemble() {
    let g = make_grid(16, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, profile);
    let mut acc = basis.degree_component(&f, 0).unwrap();
    let top = (basis.max_degree() as f64).log2().ceil() as u32 + 1;
    for l in 0..=top {
        acc = acc.add(&basis.apply_rl(&f, l, Variant::Exact).unwrap());
    }
    assert!(rel(&acc, &f) < 1e-10);
}

#[test]
fn orthogonal_partition_and_band_separation() {
    let g = make_grid(16, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, profile);
    let top = (basis.max_degree() as f64).log2().ceil() as u32 + 1;
    let bands: Vec<Field> = (0..=top).map(|l| basis.apply_rl(&f, l, Variant::Exact).unwrap()).collect();
    let e0 = basis.degree_energies(&f).unwrap()[0];
    let sum: f64 = bands.iter().map(|b| b.l2_norm().powi(2)).sum::<f64>() + e0;
    let norm = f.l2_norm().powi(2);
    assert!(sum <= 4.0 * norm && norm <= 4.0 * sum, "{sum} vs {norm}");

    for (l, band) in bands.iter().enumerate() {
        for l2 in 0..=top as usize {
            if l.abs_diff(l2) > 3 {
                let twice = basis.apply_rl(band, l2 as u32, Variant::Exact).unwrap();
                assert!(twice.l2_norm() <= 1e-12 * norm.sqrt());
            }
        }
    }
}

#[test]
fn bernstein_ratio_within_band_bounds() {
    let g = make_grid(32, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, |mu| (11.0 * mu).sin() + (5.0 * mu).cos() * mu);
    for l in 2..=4u32 {
        let band = basis.apply_rl(&f, l, Variant::Exact).unwrap();
        if band.l2_norm() < 1e-8 * f.l2_norm() {
            continue;
        }
        let ratio = basis.bernstein_ratio(&band).unwrap();
        let lo = 2f64.powi(l as i32 - 2);
        let hi = 2f64.powi(l as i32 + 2);
        assert!((lo..=hi).contains(&ratio), "l = {l}: {ratio}");
    }
}

#[test]
fn laplacian_commutes_with_angular_bands() {
    let g = make_grid(16, 1.3).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, profile);
    for l in 0..4 {
        let a = laplacian(&basis.apply_rl(&f, l, Variant::Exact).unwrap());
        let b = basis.apply_rl(&laplacian(&f), l, Variant::Exact).unwrap();
        assert!(a.sub(&b).l2_norm() <= 1e-13 * laplacian(&f).l2_norm());
    }
}

#[test]
fn switched_rule_depends_on_p_plus_l() {
    let g = make_grid(16, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, profile);
    let v = |p| Variant::Switched { p: Level::At(p), p_floor: DEFAULT_FLOOR };
    assert_eq!(basis.apply_rl(&f, 1, v(-2)).unwrap().l2_norm(), 0.0);
    let leq = basis.apply_rl(&f, 2, Variant::Leq).unwrap();
    assert!(rel(&basis.apply_rl(&f, 2, v(-2)).unwrap(), &leq) == 0.0);
    let exact = basis.apply_rl(&f, 3, Variant::Exact).unwrap();
    assert!(rel(&basis.apply_rl(&f, 3, v(-2)).unwrap(), &exact) == 0.0);
    let floor = Variant::Switched { p: P_FLOOR, p_floor: DEFAULT_FLOOR };
    assert_eq!(basis.apply_rl(&f, 3, floor).unwrap().l2_norm(), 0.0);
}

#[test]
fn non_axisymmetric_input_is_rejected() {
    let g = make_grid(8, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = Field::from_fourier_fn(&g, |_, xi| Complex::new((-(xi[0] - 0.3 * xi[1]).powi(2)).exp(), 0.0));
    match basis.apply_rl(&f, 1, Variant::Leq) {
        Err(LocalizationError::NotAxisymmetric { shell, .. }) => assert!(shell > 0),
        other => panic!("expected rejection, got {other:?}"),
    }
    assert!(basis.azimuthal_defect(&f).unwrap() > 1e-3);
    let other = make_grid(16, 1.0).unwrap();
    assert!(basis.apply_rl(&Field::zeros(&other), 0, Variant::Leq).is_err());
}

// Weighted least squares fit by normal equations: the cumulative degree
// projection up to D must equal the best polynomial fit of degree D on each sphere.
#[test]
fn degree_projections_match_least_squares_fit() {
    let g = make_grid(12, 1.0).unwrap();
    let basis = AngularBasis::new(&g);
    let f = axisymmetric(&g, profile);
    let degree = 3;
    let proj = basis.apply_degree_weights(&f, |d| if d <= degree { 1.0 } else { 0.0 }).unwrap();

    use std::collections::BTreeMap;
    let mut spheres: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for idx in 0..g.len() {
        if g.is_nyquist(idx) {
            continue;
        }
        let j = g.wavenumbers(idx);
        spheres.entry(j[0] * j[0] + j[1] * j[1] + j[2] * j[2]).or_default().push(idx);
    }
    let mut worst: f64 = 0.0;
    for (m, idxs) in spheres {
        if m == 0 {
            continue;
        }
        let mus: Vec<f64> = idxs.iter().map(|&i| g.wavenumbers(i)[2] as f64 / (m as f64).sqrt()).collect();
        let distinct = {
            let mut d: Vec<i64> = idxs.iter().map(|&i| g.wavenumbers(i)[2]).collect();
            d.sort();
            d.dedup();
            d.len()
        };
        let dim = (degree + 1).min(distinct);
        let mut a = vec![vec![0.0; dim + 1]; dim];
        for (&i, &mu) in idxs.iter().zip(&mus) {
            let y = f.coeffs()[i].re;
            for r in 0..dim {
                for c in 0..dim {
                    a[r][c] += mu.powi((r + c) as i32);
                }
                a[r][dim] += mu.powi(r as i32) * y;
            }
        }
        // Gaussian elimination with partial pivoting.
        for col in 0..dim {
            let piv = (col..dim).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
            a.swap(col, piv);
            for r in 0..dim {
                if r != col {
                    let factor = a[r][col] / a[col][col];
                    for c in col..=dim {
                        a[r][c] -= factor * a[col][c];
                    }
                }
            }
        }
        let coef: Vec<f64> = (0..dim).map(|r| a[r][dim] / a[r][r]).collect();
        for (&i, &mu) in idxs.iter().zip(&mus) {
            let fit: f64 = coef.iter().enumerate().map(|(p, c)| c * mu.powi(p as i32)).sum();
            worst = worst.max((fit - proj.coeffs()[i].re).abs());
        }
    }
    assert!(worst < 1e-9, "{worst}");
}
