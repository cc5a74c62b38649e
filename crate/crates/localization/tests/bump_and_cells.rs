use nsc_localization::*;
use nsc_spectral::samples::random_band_limited;
use nsc_spectral::{make_grid, Field};
use num_complex::Complex;
use proptest::prelude::*;

#[test]
fn bump_examples() {
    assert_eq!(psi(0.5), 1.0);
    assert_eq!(psi(-1.0), 1.0);
    assert_eq!(psi(2.0), 0.0);
    assert_eq!(varphi(1.0), 1.0);
    assert_eq!(varphi(0.25), 0.0);
    assert_eq!(varphi(0.0), 0.0);
    // Ramp value at the midpoint: exp(1 - 1/(1 - 1/4)) = exp(-1/3).
    assert!((psi(1.5) - (-1.0f64 / 3.0).exp()).abs() < 1e-15);
    assert!((psi(1.5f32) - (-1.0f32 / 3.0).exp()).abs() < 1e-6);
}

#[test]
fn bump_is_monotone_on_the_ramp() {
    let mut prev = 1.0;
    for i in 0..=1000 {
        let v = psi(1.0 + i as f64 / 1000.0);
        assert!(v <= prev && (0.0..=1.0).contains(&v));
        prev = v;
    }
}

proptest! {
    #[test]
    fn dyadic_partition_telescopes(x in 1e-6f64..1e6) {
        let s: f64 = (-40..=40).map(|k| dyadic(x, k)).sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn anisotropy_levels_sum_to_one(theta in 0.0f64..std::f64::consts::PI, r in 0.01f64..50.0) {
        let part = Partition::default();
        let xi = [r * theta.sin(), 0.0, r * theta.cos()];
        let (s, lambda) = anisotropy(xi).unwrap();
        let mut total = 0.0;
        for p in part.p_levels() {
            for q in part.q_levels() {
                let w = part.p_weight(p, s) * part.q_weight(q, lambda);
                if w > 0.0 {
                    prop_assert!(part.admissible(p, q), "{p} {q}");
                }
                total += w;
            }
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
        let via_cells: f64 = part.cells_at(xi).iter().map(|(_, w)| w).sum();
        prop_assert!((via_cells - 1.0).abs() < 1e-12);
    }
}

fn delta_at(grid: &nsc_spectral::Grid64, j: [i64; 3]) -> Field {
    Field::from_fourier_fn(grid, |jj, _| if jj == j { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) })
}

#[test]
fn vertical_axis_lands_in_the_p_floor() {
    let g = make_grid(8, 1.0).unwrap();
    let f = delta_at(&g, [0, 0, 1]);
    let cell = apply_pkpq(&f, 0, P_FLOOR, Level::At(0));
    assert!(cell.sub(&f).l2_norm() == 0.0);
    for p in -23..=0 {
        for q in Partition::default().q_levels() {
            assert_eq!(apply_pkpq(&f, 0, Level::At(p), q).l2_norm(), 0.0);
        }
    }
}

#[test]
fn equator_lands_in_the_q_floor() {
    let g = make_grid(8, 1.0).unwrap();
    let f = delta_at(&g, [1, 0, 0]);
    assert!(apply_pkp(&f, 0, Level::At(0)).sub(&f).l2_norm() == 0.0);
    for q in -23..=0 {
        assert_eq!(apply_pkpq(&f, 0, Level::At(0), Level::At(q)).l2_norm(), 0.0);
    }
    assert!(apply_pkpq(&f, 0, Level::At(0), Q_FLOOR).sub(&f).l2_norm() == 0.0);
}

#[test]
fn shells_reassemble_the_field() {
    let g = make_grid(16, 0.7).unwrap();
    let f = random_band_limited(&g, 7, 4);
    let mut acc = Field::zeros(&g);
    for k in shell_range(&g) {
        acc = acc.add(&apply_pk(&f, k));
    }
    assert!(acc.sub(&f).l2_norm() <= 1e-12 * f.l2_norm());
}

#[test]
fn cells_reassemble_the_field() {
    let g = make_grid(8, 1.0).unwrap();
    let part = Partition::default();
    let f = random_band_limited(&g, 3, 8);
    let mut acc = Field::zeros(&g);
    for c in part.cells(&g) {
        acc = acc.add(&part.apply_pkpq(&f, c.k, c.p, c.q));
    }
    assert!(acc.sub(&f).l2_norm() <= 1e-12 * f.l2_norm());
}

#[test]
fn cell_order_puts_floors_first() {
    let a = CellIndex::new(0, P_FLOOR, Level::At(0));
    let b = CellIndex::new(0, Level::At(-3), Q_FLOOR);
    let c = CellIndex::new(0, Level::At(-3), Level::At(-5));
    let d = CellIndex::new(1, P_FLOOR, Q_FLOOR);
    let mut v = vec![d, c, b, a];
    v.sort();
    assert_eq!(v, vec![a, b, c, d]);
    assert!(CellIndex::new(0, P_FLOOR, Q_FLOOR).with_l(2) > CellIndex::new(0, P_FLOOR, Q_FLOOR));
}

#[test]
fn inadmissible_pairs() {
    let part = Partition::default();
    assert!(part.admissible(Level::At(0), Level::At(0)));
    assert!(part.admissible(Level::At(-5), Level::At(0)));
    assert!(!part.admissible(Level::At(-3), Level::At(-4)));
    assert!(!part.admissible(P_FLOOR, Q_FLOOR));
}
