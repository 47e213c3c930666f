use genmax::clinalg::*;
use genmax::dispersion::*;
use genmax::reps::{chiral_projector, Chirality, Spin};
use genmax::sampling;
use genmax::Error;
use proptest::prelude::*;

fn norm2(p: [f64; 3]) -> f64 {
    p.iter().map(|x| x * x).sum()
}

fn branches(spec: &EquationSpec, p: [f64; 3]) -> Vec<Complex> {
    spectrum(spec, p).unwrap().branches
}

fn assert_branches(got: &[Complex], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g - real(*w)).norm() < tol, "{got:?} vs {want:?}");
    }
}

fn momenta(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = sampling::rng(seed);
    (0..n).map(|_| sampling::vector_in_ball(&mut rng, 10.0)).collect()
}

/// `(a, b)`: coefficients of `P-` and `P+` in the mass term.
fn chiral_masses(spec: &EquationSpec) -> (f64, f64) {
    match *spec {
        EquationSpec::DiracTwoMass { m1, m2 } => (m2 * m2 / m1, m1),
        EquationSpec::GeneralizedWeylR { m1 } => (0.0, m1),
        EquationSpec::GeneralizedWeylL { m3 } => (m3, 0.0),
        _ => unreachable!(),
    }
}

proptest! {
    #[test]
    fn determinant_factorizes_for_chiral_mass_families(
        e_re in -5.0f64..5.0, e_im in -5.0f64..5.0,
        x in -5.0f64..5.0, y in -5.0f64..5.0, z in -5.0f64..5.0,
        m1 in 0.1f64..5.0, m2 in 0.0f64..5.0,
    ) {
        let e = c64(e_re, e_im);
        let p = [x, y, z];
        for spec in [
            EquationSpec::DiracTwoMass { m1, m2 },
            EquationSpec::GeneralizedWeylR { m1 },
            EquationSpec::GeneralizedWeylL { m3: m2 },
        ] {
            let (a, b) = chiral_masses(&spec);
            let want = (e * e - norm2(p) - a * b).powi(2);
            let got = determinant(&momentum_operator(&spec, e, p).unwrap()).unwrap();
            prop_assert!((got - want).norm() < 1e-9 * (1.0 + want.norm()), "{spec:?}: {got} vs {want}");
        }
    }

    #[test]
    fn gersten_spectrum_is_plus_minus_k_twice(x in -10.0f64..10.0, y in -10.0f64..10.0, z in -10.0f64..10.0) {
        let k = norm2([x, y, z]).sqrt();
        prop_assume!(k > 1e-3);
        let b = branches(&EquationSpec::GerstenSpin1Chi, [x, y, z]);
        assert_branches(&b, &[-k, -k, k, k], 1e-9 * (1.0 + k));
    }

    #[test]
    fn mirror_families_share_spectra(x in -10.0f64..10.0, y in -10.0f64..10.0, z in -10.0f64..10.0, m in 0.0f64..10.0) {
        let r = branches(&EquationSpec::GeneralizedWeylR { m1: m }, [x, y, z]);
        let l = branches(&EquationSpec::GeneralizedWeylL { m3: m }, [x, y, z]);
        for (a, b) in r.iter().zip(&l) {
            prop_assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
        }
    }
}

#[test]
fn weyl_r_spectrum_along_z() {
    let r = spectrum(&EquationSpec::GeneralizedWeylR { m1: 1.0 }, [0.0, 0.0, 1.0]).unwrap();
    assert_branches(&r.branches, &[-1.0, -1.0, 1.0, 1.0], 1e-10);
    assert!(r.residual < 1e-8);
}

#[test]
fn two_mass_spectrum_depends_only_on_m2() {
    let p = [0.0, 0.0, 1.0];
    let b = branches(&EquationSpec::DiracTwoMass { m1: 3.0, m2: 2.0 }, p);
    let e = 5f64.sqrt();
    assert_branches(&b, &[-e, -e, e, e], 1e-10);
    let equal = branches(&EquationSpec::DiracTwoMass { m1: 1.5, m2: 1.5 }, [0.3, -0.2, 0.9]);
    let e = (0.09 + 0.04 + 0.81 + 2.25f64).sqrt();
    assert_branches(&equal, &[-e, -e, e, e], 1e-10);
    for p in momenta(10, 11) {
        let base = branches(&EquationSpec::DiracTwoMass { m1: 0.5, m2: 2.0 }, p);
        for m1 in [1.0, 2.0, 10.0] {
            let other = branches(&EquationSpec::DiracTwoMass { m1, m2: 2.0 }, p);
            for (a, b) in base.iter().zip(&other) {
                assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()));
            }
        }
    }
}

#[test]
fn masslessness_verdicts() {
    let ps = momenta(10, 5);
    assert!(is_massless(&EquationSpec::GeneralizedWeylR { m1: 5.0 }, &ps, 1e-9).unwrap());
    let dirac = EquationSpec::ChiralMassMatrix { mass: ComplexMatrix::identity(4) };
    assert!(!is_massless(&dirac, &ps, 1e-9).unwrap());
    let left = EquationSpec::ChiralMassMatrix { mass: chiral_projector(Chirality::Left).scale(real(2.0)) };
    assert!(is_massless(&left, &ps, 1e-9).unwrap());
    for p in &ps {
        let a = branches(&left, *p);
        let b = branches(&EquationSpec::GeneralizedWeylL { m3: 2.0 }, *p);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-9));
    }
    assert!(is_massless(&EquationSpec::GeneralizedWeylR { m1: 1.0 }, &[], 1e-9).is_err());
}

#[test]
fn gersten_operator_at_rest() {
    let m = momentum_operator(&EquationSpec::GerstenSpin1Chi, real(2.0), [0.0; 3]).unwrap();
    assert_eq!(m, ComplexMatrix::diag(&[real(2.0), real(2.0), real(2.0), real(-2.0)]));
}

#[test]
fn spin_s_is_not_a_pencil_but_has_solutions() {
    let spec = EquationSpec::SpinS { spin: Spin::One };
    assert!(matches!(spectrum(&spec, [0.0, 0.0, 1.0]), Err(Error::NotSquarePencil(_))));
    let ker = solution_space(&spec, real(1.0), [0.0, 0.0, 1.0]).unwrap();
    assert_eq!(ker.len(), 1);
    let s = 1.0 / 2f64.sqrt();
    let want = [real(s), c64(0.0, s), ZERO];
    assert!((0..3).all(|i| (ker[0][i] - want[i]).norm() < 1e-10), "{:?}", ker[0]);
    let half = solution_space(&EquationSpec::SpinS { spin: Spin::Half }, real(1.0), [0.0, 0.0, 1.0]).unwrap();
    assert_eq!(half.len(), 1);
    assert!((half[0][0] - ONE).norm() < 1e-10 && half[0][1].norm() < 1e-10);
    assert!(matches!(solution_space(&spec, real(2.0), [0.0, 0.0, 1.0]), Err(Error::OffShell { .. })));
}

#[test]
fn gersten_longitudinal_solution() {
    let k = 1.7;
    let ker = solution_space(&EquationSpec::GerstenSpin1Chi, real(k), [0.0, 0.0, k]).unwrap();
    let s = 1.0 / 2f64.sqrt();
    let target = ComplexVector::new(vec![ZERO, ZERO, real(s), real(s)]);
    let captured: f64 = ker.iter().map(|v| v.dot(&target).norm_sqr()).sum();
    assert!((captured - 1.0).abs() < 1e-10);
}

#[test]
fn kernel_vectors_solve_the_operator_on_shell() {
    let specs = [
        EquationSpec::DiracTwoMass { m1: 0.7, m2: 1.3 },
        EquationSpec::GeneralizedWeylR { m1: 2.0 },
        EquationSpec::GeneralizedWeylL { m3: 0.4 },
        EquationSpec::GerstenSpin1Chi,
    ];
    for spec in &specs {
        for p in momenta(5, 21) {
            for e in branches(spec, p) {
                let ker = solution_space(spec, e, p).unwrap();
                assert!(!ker.is_empty());
                let m = momentum_operator(spec, e, p).unwrap();
                for v in &ker {
                    assert!((v.norm() - 1.0).abs() < 1e-12);
                    assert!(m.try_apply(v).unwrap().max_abs() < 1e-8 * (1.0 + m.max_abs()), "{spec:?}");
                }
            }
        }
    }
}

#[test]
fn chiral_content_examples() {
    let right = ComplexVector::new(vec![ZERO, ZERO, ONE, I]);
    let c = chiral_content(&right).unwrap();
    assert_eq!((c.left_weight, c.right_weight), (0.0, 1.0));
    let mixed = ComplexVector::new(vec![ONE, ZERO, ZERO, ONE]);
    let c = chiral_content(&mixed).unwrap();
    assert!((c.left_weight - 0.5).abs() < 1e-15 && (c.right_weight - 0.5).abs() < 1e-15);
    assert!(chiral_content(&ComplexVector::zeros(4)).is_err());
    assert!(chiral_content(&ComplexVector::zeros(3)).is_err());
}

#[test]
fn chirality_is_restored_as_the_mass_parameter_vanishes() {
    let (e, p) = (real(1.0), [0.0, 0.0, 1.0]);
    let massless = solution_space(&EquationSpec::GeneralizedWeylR { m1: 0.0 }, e, p).unwrap();
    for v in &massless {
        assert!(chiral_content(v).unwrap().mixing() < 1e-12);
    }
    let mixing: Vec<f64> = [1.0, 0.1, 0.01, 0.001, 1e-4]
        .iter()
        .map(|&m1| solution_mixing(&EquationSpec::GeneralizedWeylR { m1 }, e, p).unwrap())
        .collect();
    assert!(mixing[0] > 0.0);
    assert!(mixing.windows(2).all(|w| w[1] < w[0]), "{mixing:?}");
    assert!(mixing[4] < 1e-6);
    // the kernel is two dimensional: a pure left state and a mixed one with
    // left weight (m1/2)^2 / (1 + (m1/2)^2)
    let ker = solution_space(&EquationSpec::GeneralizedWeylR { m1: 1.0 }, e, p).unwrap();
    assert_eq!(ker.len(), 2);
    let mut weights: Vec<f64> = ker.iter().map(|v| chiral_content(v).unwrap().left_weight).collect();
    weights.sort_by(f64::total_cmp);
    assert!((weights[0] - 0.2).abs() < 1e-12 && (weights[1] - 1.0).abs() < 1e-12, "{weights:?}");
    assert!((mixing[0] - 0.2).abs() < 1e-12);
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(matches!(
        spectrum(&EquationSpec::DiracTwoMass { m1: 0.0, m2: 1.0 }, [0.0; 3]),
        Err(Error::InvalidSpec(_))
    ));
    assert!(spectrum(&EquationSpec::GeneralizedWeylR { m1: -1.0 }, [0.0; 3]).is_err());
    let bad = EquationSpec::ChiralMassMatrix { mass: ComplexMatrix::identity(3) };
    assert!(spectrum(&bad, [0.0; 3]).is_err());
    assert!(spectrum(&EquationSpec::GerstenSpin1Chi, [f64::NAN, 0.0, 0.0]).is_err());
}

#[test]
fn sweep_keeps_input_order_and_csv_layout() {
    let ps = momenta(7, 2);
    let spec = EquationSpec::GeneralizedWeylR { m1: 1.0 };
    let res = sweep(&spec, &ps).unwrap();
    assert!(res.iter().zip(&ps).all(|(r, p)| r.momentum == *p));
    assert_eq!(res, ps.iter().map(|p| spectrum(&spec, *p).unwrap()).collect::<Vec<_>>());
    let mut buf = Vec::new();
    write_dispersion_csv(&mut buf, &res[..1]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kx,ky,kz,branch_index,re_E,im_E,residual");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].split(',').nth(3) == Some("0"));
}
