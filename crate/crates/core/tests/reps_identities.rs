use genmax::clinalg::*;
use genmax::identities::*;
use genmax::reps::*;
use proptest::prelude::*;

fn eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    (a - b).max_abs() <= tol
}

fn momentum() -> impl Strategy<Value = Momentum> {
    (-10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0)
        .prop_map(|(e_re, e_im, x, y, z)| Momentum::new(c64(e_re, e_im), [x, y, z]))
}

#[test]
fn pauli_matrices_by_hand() {
    let s1 = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
    let s2 = ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]);
    let s3 = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]);
    assert_eq!(pauli(1).unwrap(), s1);
    assert_eq!(pauli(2).unwrap(), s2);
    assert_eq!(pauli(3).unwrap(), s3);
    assert!(eq(&(&s1 * &s2), &s3.scale(I), 0.0));
    assert!(pauli(0).is_err() && pauli(4).is_err());
    let sp = sigma_dot([1.0, 2.0, 3.0]);
    assert!(eq(&(&sp * &sp), &ComplexMatrix::identity(2).scale(real(14.0)), 1e-14));
}

#[test]
fn spin1_generators_by_hand() {
    // (S^3)_{jk} = -i eps_{3jk}
    let s3 = ComplexMatrix::from_rows(&[[ZERO, -I, ZERO], [I, ZERO, ZERO], [ZERO; 3]]);
    assert_eq!(spin1(3).unwrap(), s3);
    let [a, b, c] = Spin::One.generators();
    assert!(eq(&a.commutator(&b), &c.scale(I), 1e-15));
    let v = ComplexVector::new(vec![ONE, I, ZERO]);
    let out = &s3 * &v;
    assert!((0..3).all(|i| (out[i] - v[i]).norm() < 1e-15));
    let casimir = &(&(&a * &a) + &(&b * &b)) + &(&c * &c);
    assert!(eq(&casimir, &ComplexMatrix::identity(3).scale(real(2.0)), 1e-15));
    assert!(spin1(0).is_err());
}

#[test]
fn gamma_matrices_and_projectors() {
    let g0 = gamma(0).unwrap();
    assert!(eq(&(&g0 * &g0), &ComplexMatrix::identity(4), 0.0));
    let g5 = gamma5();
    assert!(eq(&(&g5 * &g5), &ComplexMatrix::identity(4), 0.0));
    let prod = &(&(&g0 * &gamma(1).unwrap()) * &gamma(2).unwrap()) * &gamma(3).unwrap();
    assert!(eq(&prod.scale(I), &g5, 1e-15));
    let (pp, pm) = (chiral_projector(Chirality::Right), chiral_projector(Chirality::Left));
    assert!(eq(&(&pp + &pm), &ComplexMatrix::identity(4), 0.0));
    assert!((&pp * &pm).max_abs() == 0.0);
    assert!(eq(&(&pp * &pp), &pp, 0.0));
    for mu in 0..4 {
        for nu in 0..4 {
            let anti = gamma(mu).unwrap().anticommutator(&gamma(nu).unwrap());
            let want = if mu == nu { 2.0 * METRIC[mu] } else { 0.0 };
            assert!(eq(&anti, &ComplexMatrix::identity(4).scale(real(want)), 0.0));
        }
    }
    assert!(gamma(4).is_err());
}

#[test]
fn pauli_lubanski_rest_frame_and_boosted() {
    let rest = pauli_lubanski(Spin::One, &Momentum::real(2.0, [0.0; 3]));
    assert_eq!(rest.components[0].max_abs(), 0.0);
    for i in 1..=3 {
        assert!(eq(&rest.components[i], &spin1(i).unwrap().scale(real(2.0)), 1e-15));
    }
    // along z with p0 = 1: W^1 = S^1 + i S^2, W^2 = S^2 - i S^1, W^3 = S^3
    let w = pauli_lubanski(Spin::One, &Momentum::real(1.0, [0.0, 0.0, 1.0]));
    let s = Spin::One.generators();
    assert!(eq(&w.components[0], &s[2], 1e-15));
    assert!(eq(&w.components[1], &(&s[0] + &s[1].scale(I)), 1e-15));
    assert!(eq(&w.components[2], &(&s[1] - &s[0].scale(I)), 1e-15));
    assert!(eq(&w.components[3], &s[2], 1e-15));
}

#[test]
fn identity_examples() {
    assert_eq!(kg_residual(&Momentum::real(1.0, [0.0; 3])), 0.0);
    assert!(kg_residual(&Momentum::real(2.0, [0.0, 0.0, 1.0])) < 1e-15);
    assert!(gersten_residual(&Momentum::real(0.3, [0.0, 0.0, 1.0])) < 1e-15);
    assert_eq!(gersten_residual(&Momentum::real(5.0, [0.0; 3])), 0.0);
    assert!(pl_factorization_residual(Spin::One, &Momentum::real(1.0, [0.0; 3])) < 1e-15);
    assert!(pl_factorization_residual(Spin::One, &Momentum::real(5f64.sqrt(), [1.0, 0.0, 2.0])) < 1e-13);
    assert!(clifford_residual() == 0.0);
}

#[test]
fn identity_suite_passes_at_the_required_tolerance() {
    let reports = full_suite(200, 1e-12, 7).unwrap();
    assert_eq!(reports.len(), 13);
    for r in &reports {
        assert!(r.passed, "{r:?}");
        assert!(r.max_residual >= 0.0 && r.max_residual < r.tolerance);
    }
    // reproducible from the seed
    assert_eq!(reports, full_suite(200, 1e-12, 7).unwrap());
    assert!(check_kg_factorization(0, 1e-12, 1).is_err());
}

#[test]
fn failing_tolerance_is_reported() {
    let r = check_pl_casimir(Spin::One, 20, 0.0, 3).unwrap();
    assert!(!r.passed);
}

#[test]
fn chirality_commutator_examples() {
    assert_eq!(check_chirality_commutator(&Momentum::real(0.0, [0.0; 3])), 0.0);
    assert!((check_chirality_commutator(&Momentum::real(1.0, [0.0; 3])) - 4.0).abs() < 1e-14);
    assert!((check_chirality_commutator(&Momentum::real(0.0, [0.0, 0.0, 1.0])) - 4.0).abs() < 1e-14);
}

#[test]
fn lagrangian_density_examples() {
    let z = [0.0, 0.0, 1.0];
    let pm = Momentum::real(1.0, z);
    let l = gersten_lagrangian_density(&pm, &ComplexVector::new(vec![ZERO, ZERO, ONE])).unwrap();
    assert!((l - real(-1.0)).norm() < 1e-15);
    assert_eq!(gersten_lagrangian_density(&pm, &ComplexVector::zeros(3)).unwrap(), ZERO);
    // helicity -1 along z: S^3 (1, -i, 0) = -(1, -i, 0)
    let minus = ComplexVector::new(vec![real(1.0), -I, ZERO]);
    assert!(gersten_lagrangian_density(&pm, &minus).unwrap().norm() < 1e-15);
    assert!(gersten_lagrangian_density(&pm, &ComplexVector::zeros(2)).is_err());
}

proptest! {
    #[test]
    fn pauli_lubanski_is_transverse_and_has_fixed_casimir(pm in momentum()) {
        for spin in [Spin::Half, Spin::One] {
            let w = pauli_lubanski(spin, &pm);
            let d = spin.dim();
            // W.p built by hand from the components
            let mut wp = w.components[0].scale(pm.energy);
            for i in 0..3 {
                wp = &wp - &w.components[i + 1].scale(real(pm.p[i]));
            }
            let scale = 1.0 + pm.energy.norm_sqr() + pm.norm_sq();
            prop_assert!(wp.max_abs() < 1e-12 * scale);
            let mut w2 = &w.components[0] * &w.components[0];
            for i in 1..4 {
                w2 = &w2 - &(&w.components[i] * &w.components[i]);
            }
            let s = spin.value();
            let want = ComplexMatrix::identity(d).scale(-(pm.energy * pm.energy - pm.norm_sq()) * (s * (s + 1.0)));
            prop_assert!((&w2 - &want).max_abs() < 1e-12 * scale * scale.sqrt());
        }
    }

    #[test]
    fn spin1_cubic_scales_with_momentum_squared(x in -10.0f64..10.0, y in -10.0f64..10.0, z in -10.0f64..10.0) {
        let sp = spin_dot(Spin::One, [x, y, z]);
        let cube = &(&sp * &sp) * &sp;
        let p2 = x * x + y * y + z * z;
        prop_assert!((&cube - &sp.scale(real(p2))).max_abs() < 1e-12 * (1.0 + p2).powf(1.5));
    }

    #[test]
    fn chirality_commutator_is_zero_only_at_the_origin(pm in momentum()) {
        let norm = check_chirality_commutator(&pm);
        let expect = 4.0 * (pm.energy.norm_sqr() + pm.norm_sq()).sqrt();
        prop_assert!((norm - expect).abs() < 1e-12 * (1.0 + expect));
    }
}
