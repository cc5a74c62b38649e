use nsc_localization::psi;
use nsc_resonance::*;
use proptest::prelude::*;

const P: Sign = Sign::Plus;
const M: Sign = Sign::Minus;

fn vec3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-3.0f64..3.0).prop_filter("nonzero horizontal", |v| v[0].abs() + v[1].abs() > 1e-3)
}

fn signs() -> impl Strategy<Value = Signs> {
    (0usize..8).prop_map(|i| Signs::all()[i])
}

#[test]
fn spanning_set_is_bounded_by_the_modulus() {
    let span = MultiplierSpec::spanning_set();
    assert_eq!(span.len(), 90);
    let (xi, eta) = ([0.3, -1.1, 0.8], [1.4, 0.2, -0.6]);
    let r = (0.3f64 * 0.3 + 1.1 * 1.1 + 0.8 * 0.8).sqrt();
    for m in &span {
        let v = m.eval(xi, eta, Signs::new(P, P, P)).unwrap();
        assert!(v.abs() <= r * (1.0 + 1e-15));
    }
    assert_eq!(MultiplierSpec::modulus().eval(xi, eta, Signs::new(P, P, P)).unwrap(), r);
}

#[test]
fn angle_factors_need_horizontal_parts() {
    let f = Factor::Cos(Zeta::Eta);
    assert!(f.eval([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]).is_err());
    assert!(f.eval([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]).is_err());
    assert!(Factor::Sin(Zeta::Xi).eval([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).is_err());
    // ξ_h = e1, η_h = e2: cos 0, sin 1.
    assert_eq!(f.eval([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap(), 0.0);
    assert_eq!(Factor::Sin(Zeta::Eta).eval([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap(), 1.0);
    assert_eq!(Factor::Horizontal(Zeta::Xi).eval([0.0, 0.0, 2.0], [1.0, 0.0, 0.0]).unwrap(), 0.0);
}

#[test]
fn resonant_split_examples() {
    let m = MultiplierSpec::basis(Zeta::Xi, Zeta::Eta, Factor::Cos(Zeta::Eta));
    let (res, nr) = res_nr_split(&m, 0.1).unwrap();
    // ξ = (1,0,1), η = (1,1,0): Λ(ξ) = 1/√2, Λ(ξ-η) = 1/√2, Λ(η) = 0, so Φ = 0 for (+,-,+).
    let (xi, eta) = ([1.0, 0.0, 1.0], [1.0, 1.0, 0.0]);
    let s = Signs::new(P, M, P);
    assert_eq!(phi(xi, eta, s).unwrap(), 0.0);
    assert_eq!(res.eval(xi, eta, s).unwrap(), m.eval(xi, eta, s).unwrap());
    assert_eq!(nr.eval(xi, eta, s).unwrap(), 0.0);
    // Same point, all signs +: Φ = √2 ≥ 2λ.
    let s = Signs::new(P, P, P);
    assert!(phi(xi, eta, s).unwrap() >= 0.2);
    assert_eq!(res.eval(xi, eta, s).unwrap(), 0.0);
    assert!(res_nr_split(&m, 0.0).is_err());
    assert!(res_nr_split(&res, 1.0).is_err());
}

#[test]
fn normal_form_examples() {
    let (xi, eta) = ([0.2, 0.7, -1.0], [1.5, -0.3, 0.4]);
    for s in Signs::all() {
        let d = normal_form_denominator(xi, eta, s, 0.0, 3, 1).unwrap();
        assert_eq!(d.re, 0.0);
        assert_eq!(d.im, phi(xi, eta, s).unwrap());
    }
}

#[test]
fn ignoring_viscous_terms_is_safe_when_the_phase_is_large() {
    // |Φ| ≥ 1/2 here; the real part can only add to the modulus.
    let (xi, eta) = ([0.0, 0.3, 2.0], [0.1, -0.4, -1.0]);
    let s = Signs::new(P, M, P);
    let f: f64 = phi(xi, eta, s).unwrap();
    assert!(f.abs() >= 0.5);
    for kappa in [0.0, 0.1, 0.5, 1.0] {
        for (a, b) in [(0, 0), (1, 2), (4, 0)] {
            let d = normal_form_denominator(xi, eta, s, kappa, a, b).unwrap();
            assert!(d.norm() >= f.abs());
        }
    }
}

#[test]
fn phase_cut_uses_the_radial_bump() {
    let m = MultiplierSpec::modulus();
    let (res, _) = res_nr_split(&m, 0.5).unwrap();
    let (xi, eta) = ([0.0, 0.3, 2.0], [0.1, -0.4, -1.0]);
    let s = Signs::new(P, M, P);
    let want = m.eval(xi, eta, s).unwrap() * psi(phi(xi, eta, s).unwrap() / 0.5);
    assert_eq!(res.eval(xi, eta, s).unwrap(), want);
}

proptest! {
    #[test]
    fn polarization_identity(xi in vec3(), eta in vec3(), s in signs(), kappa in 0.0f64..2.0) {
        let zeta = [xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]];
        prop_assume!(zeta.iter().map(|v| v * v).sum::<f64>() > 1e-6);
        let a = normal_form_denominator(xi, eta, s, kappa, 0, 0).unwrap();
        let b = polarized_denominator(xi, eta, s, kappa).unwrap();
        let scale = kappa * xi.iter().chain(&eta).map(|v| v * v).sum::<f64>();
        prop_assert!((a - b).norm() <= 1e-14 * scale.max(1.0));
        prop_assert_eq!(a.im, b.im);
    }

    #[test]
    fn split_parts_sum_to_the_whole(xi in vec3(), eta in vec3(), s in signs(), lam in 0.01f64..2.0, i in 0usize..90) {
        let zeta = [xi[0] - eta[0], xi[1] - eta[1], xi[2] - eta[2]];
        prop_assume!(zeta[0].abs() + zeta[1].abs() > 1e-3);
        let m = MultiplierSpec::spanning_set()[i].clone();
        let (res, nr) = res_nr_split(&m, lam).unwrap();
        let whole = m.eval(xi, eta, s).unwrap();
        let parts = res.eval(xi, eta, s).unwrap() + nr.eval(xi, eta, s).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-14 * whole.abs().max(1.0));
    }
}
