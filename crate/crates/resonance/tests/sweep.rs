use nsc_resonance::*;

const P: Sign = Sign::Plus;
const M: Sign = Sign::Minus;

#[test]
fn empty_sweep() {
    let r = positivity_sweep(0, 1);
    assert_eq!(r.n_samples, 0);
    assert_eq!(r.n_hypothesis_hits, 0);
    assert!(r.violations.is_empty());
    assert_eq!(r.min_ratio, 0.0);
}

#[test]
fn sweep_is_reproducible_and_serializes() {
    let a = positivity_sweep(20_000, 7);
    let b = positivity_sweep(20_000, 7);
    assert_eq!(a.to_json(), b.to_json());
    let back: SweepReport = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    for key in ["n_samples", "n_hypothesis_hits", "min_ratio", "max_ratio", "violations"] {
        assert!(a.to_json().contains(key));
    }
}

#[test]
fn positivity_holds_and_constants_settle() {
    let a = positivity_sweep(1_000_000, 42);
    let b = positivity_sweep(1_000_000, 43);
    for r in [&a, &b] {
        assert_eq!(r.n_violations, 0, "{:?}", r.violations);
        assert!(r.n_hypothesis_hits > 100);
        assert!(r.min_ratio > 0.0 && r.min_derivative_ratio > 0.0);
        // A small phase forces one horizontal share close to one.
        assert!(r.min_p_max_size > 0.5);
    }
    assert!(relative_spread(a.min_ratio, b.min_ratio) <= 0.2, "{} vs {}", a.min_ratio, b.min_ratio);
    assert!(relative_spread(a.min_derivative_ratio, b.min_derivative_ratio) <= 0.2);
}

#[test]
fn projected_samples_pin_the_constant_down() {
    let cfg = SweepConfig { project: true, ..Default::default() };
    let a = sweep_with(200_000, 42, &cfg);
    let b = sweep_with(200_000, 43, &cfg);
    assert!(a.n_hypothesis_hits > 50_000);
    assert_eq!(a.n_violations + b.n_violations, 0);
    assert!(relative_spread(a.min_ratio, b.min_ratio) < 0.05, "{} vs {}", a.min_ratio, b.min_ratio);
    // On the zero set the derivative ratio sits between 1 and √2.
    assert!(a.min_derivative_ratio >= 1.0 - 1e-9 && a.max_derivative_ratio <= 2f64.sqrt() + 1e-9);
}

#[test]
fn hand_built_resonant_sample() {
    // Λ(ξ) = Λ(ξ-η) = 1/√2 and Λ(η) = 0, so Φ = 0 for (+, -, +).
    let s = SymbolSample::new([1.0, 0.0, 1.0], [1.0, 1.0, 0.0], Signs::new(P, M, P)).unwrap();
    assert_eq!(s.phi, 0.0);
    let p_max = s.indices.iter().map(|c| c[1]).max().unwrap();
    assert!((-3..=0).contains(&p_max));
    assert!(s.sigma_norm() > 0.0);
}

#[test]
fn one_small_share_lemma_on_random_draws() {
    for lemma in [GeometryLemma::OneSmallP, GeometryLemma::OneSmallQ] {
        let r = geometry_sweep(lemma, 100_000, 3);
        assert!(r.hypothesis_hits > 10_000, "{lemma:?}");
        assert!(r.holds(), "{lemma:?}: {:?}", r.counterexamples);
        assert!(r.case_counts[0] > 0 && r.case_counts[1] > 0);
    }
}

#[test]
fn one_small_share_lemma_in_fixed_cells() {
    // Output nearly vertical, both inputs in the unit shell at 45 degrees or flatter.
    let cells = [(0, -12), (0, 0), (0, 0)];
    let r = index_geometry(GeometryLemma::OneSmallP, cells, 100_000, 11);
    assert!(r.hypothesis_hits > 0);
    assert!(r.holds(), "{:?}", r.counterexamples);
    assert_eq!(r.case_counts[1] + r.case_counts[2], 0);
}

#[test]
fn hypothesis_outside_the_cells_is_reported_empty() {
    let r = index_geometry(GeometryLemma::OneSmallP, [(0, 0), (0, 0), (0, 0)], 1000, 1);
    assert!(r.hypothesis_empty());
    assert!(r.holds());
    let r = index_geometry(GeometryLemma::TwoSmallQ, [(0, -3), (8, -20), (8, -30)], 1000, 1);
    assert!(r.hypothesis_empty());
}

#[test]
fn two_small_shares_lemma() {
    for lemma in [GeometryLemma::TwoSmallP, GeometryLemma::TwoSmallQ] {
        let r = geometry_sweep(lemma, 100_000, 5);
        assert!(r.hypothesis_hits > 5_000, "{lemma:?}");
        for clause in ["k1, k2 >= k+6", "|k1-k2| <= 2", "|k1+p1 - k2-p2| <= 4", "max(k1+p1, k2+p2) >= k+p-2"] {
            assert_eq!(r.clause(clause), 0, "{lemma:?}: {clause}");
        }
        // The last inequality is only true up to constants for the smaller of the
        // two inputs; the sweep finds rare exceptions at the -2 margin.
        let strict = r.clause("k2+p2 >= k+p-2");
        assert!(strict * 100 < r.hypothesis_hits, "{lemma:?}: {strict}");
    }
}

#[test]
fn two_small_shares_exception_by_hand() {
    // |ξ_h| ≈ 0.2 from |ζ_h| ≈ 0.16 and |η_h| ≈ 0.04, both inputs huge and nearly vertical.
    let xi = [0.2, 0.0, 0.0];
    let zeta = [0.16, 0.0, 2f64.powi(19)];
    let eta = [xi[0] - zeta[0], xi[1] - zeta[1], xi[2] - zeta[2]];
    let ix = indices(xi, eta, GeometryLemma::TwoSmallP);
    assert!(hypothesis(GeometryLemma::TwoSmallP, &ix), "{ix:?}");
    let cl = clauses(GeometryLemma::TwoSmallP, &ix);
    assert!(cl.iter().any(|(n, ok)| *n == "k2+p2 >= k+p-2" && !ok), "{ix:?}");
    assert!(cl.iter().filter(|(n, _)| *n != "k2+p2 >= k+p-2").all(|(_, ok)| *ok));
}
