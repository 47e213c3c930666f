use genmax::clinalg::*;
use genmax::Error;
use proptest::prelude::*;

/// Laplace expansion along the first row.
fn cofactor_det(m: &ComplexMatrix) -> Complex {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)];
    }
    let mut acc = ZERO;
    for j in 0..n {
        let minor = ComplexMatrix::from_rows(
            &(1..n)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[(r, c)]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += m[(0, j)] * cofactor_det(&minor) * sign;
    }
    acc
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
        ComplexMatrix::from_vec(n, n, v.into_iter().map(|(a, b)| c64(a, b)).collect()).unwrap()
    })
}

fn sized_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=6).prop_flat_map(matrix)
}

fn close(a: Complex, b: Complex, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_matches_cofactor_expansion(m in sized_matrix()) {
        let lu = determinant(&m).unwrap();
        let cof = cofactor_det(&m);
        prop_assert!(close(lu, cof, 1e-10), "{lu} vs {cof}");
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=5).prop_flat_map(|n| (matrix(n), matrix(n)))) {
        let lhs = determinant(&(&a * &b)).unwrap();
        let rhs = determinant(&a).unwrap() * determinant(&b).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10));
    }

    #[test]
    fn eigenvalues_sum_to_trace_and_multiply_to_det(m in sized_matrix()) {
        let ev = eigenvalues(&m).unwrap();
        prop_assert_eq!(ev.len(), m.rows());
        let sum: Complex = ev.iter().sum();
        let prod: Complex = ev.iter().product();
        prop_assert!(close(sum, m.trace(), 1e-9));
        prop_assert!(close(prod, determinant(&m).unwrap(), 1e-8));
        for &l in &ev {
            let shifted = &m - &ComplexMatrix::identity(m.rows()).scale(l);
            let s = svd(&shifted).unwrap();
            let smin = *s.singular_values.last().unwrap();
            prop_assert!(smin <= 1e-8 * (1.0 + m.frobenius()), "sigma_min {smin}");
        }
    }

    #[test]
    fn similarity_preserves_prescribed_spectrum(
        d in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 4),
        s in matrix(4),
    ) {
        prop_assume!(condition_estimate(&s).unwrap() < 1e4);
        let mut want: Vec<Complex> = d.iter().map(|&(a, b)| c64(a, b)).collect();
        let s_inv = solve(&s, &ComplexMatrix::identity(4)).unwrap();
        let m = &(&s * &ComplexMatrix::diag(&want)) * &s_inv;
        let mut got = eigenvalues(&m).unwrap();
        let key = |z: &Complex| (z.re, z.im);
        want.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        // greedy matching tolerates near-ties in the sort key
        let mut used = [false; 4];
        for w in &want {
            let (j, dist) = got.iter().enumerate().filter(|(j, _)| !used[*j])
                .map(|(j, g)| (j, (g - w).norm())).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
            used[j] = true;
            prop_assert!(dist < 1e-7, "{w} unmatched in {got:?}");
        }
    }

    #[test]
    fn hermitian_eigen_reconstructs(m in sized_matrix()) {
        let h = &m + &m.adjoint();
        let e = hermitian_eigen(&h).unwrap();
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let v = &e.vectors;
        let recon = &(v * &ComplexMatrix::diag(&e.values.iter().map(|&x| real(x)).collect::<Vec<_>>())) * &v.adjoint();
        prop_assert!((&recon - &h).max_abs() < 1e-10 * (1.0 + h.max_abs()));
        let gram = &v.adjoint() * v;
        prop_assert!((&gram - &ComplexMatrix::identity(h.rows())).max_abs() < 1e-12);
    }

    #[test]
    fn singular_values_are_roots_of_gram_eigenvalues(m in sized_matrix()) {
        let s = svd(&m).unwrap();
        let gram = hermitian_eigen(&(&m.adjoint() * &m)).unwrap();
        let mut expect: Vec<f64> = gram.values.iter().map(|x| x.max(0.0).sqrt()).collect();
        expect.reverse();
        for (a, b) in s.singular_values.iter().zip(&expect) {
            prop_assert!((a - b).abs() < 1e-7 * (1.0 + b));
        }
        // right singular vectors satisfy |M v_i| = sigma_i
        for (i, sv) in s.singular_values.iter().enumerate() {
            let mv = m.try_apply(&s.v.column(i)).unwrap();
            prop_assert!((mv.norm() - sv).abs() < 1e-10 * (1.0 + sv));
        }
    }

    #[test]
    fn solve_inverts(a in matrix(5), b in matrix(5)) {
        prop_assume!(condition_estimate(&a).unwrap() < 1e6);
        let x = solve(&a, &b).unwrap();
        prop_assert!((&(&a * &x) - &b).max_abs() < 1e-9 * (1.0 + x.max_abs()));
    }

    #[test]
    fn null_space_of_rank_deficient_products(
        l in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 10),
        r in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 10),
    ) {
        // 5x2 times 2x5 has rank <= 2
        let left = ComplexMatrix::from_vec(5, 2, l.into_iter().map(|(a, b)| c64(a, b)).collect()).unwrap();
        let right = ComplexMatrix::from_vec(2, 5, r.into_iter().map(|(a, b)| c64(a, b)).collect()).unwrap();
        let s = svd(&right).unwrap();
        prop_assume!(s.singular_values[1] > 1e-3);
        let sl = svd(&left).unwrap();
        prop_assume!(sl.singular_values[1] > 1e-3);
        let m = &left * &right;
        let ker = null_space_default(&m).unwrap();
        prop_assert_eq!(ker.len(), 3);
        for (i, v) in ker.iter().enumerate() {
            prop_assert!(m.try_apply(v).unwrap().max_abs() < 1e-10);
            for (j, w) in ker.iter().enumerate() {
                let expect = if i == j { ONE } else { ZERO };
                prop_assert!((v.dot(w) - expect).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn determinant_examples() {
    let m = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]);
    assert!((determinant(&m).unwrap() - real(-2.0)).norm() < 1e-14);
    let singular = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]);
    assert!(determinant(&singular).unwrap().norm() < 1e-14);
    assert!(matches!(determinant(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
}

#[test]
fn eigenvalues_of_known_matrices() {
    // rotation generator: eigenvalues -1, 0, 1 of i * (x cross .)
    let sz = ComplexMatrix::from_rows(&[[ZERO, -I, ZERO], [I, ZERO, ZERO], [ZERO, ZERO, ZERO]]);
    let ev = eigenvalues(&sz).unwrap();
    for (got, want) in ev.iter().zip([-1.0, 0.0, 1.0]) {
        assert!((got - real(want)).norm() < 1e-12, "{ev:?}");
    }
    // companion matrix of (x - 1)(x - 2)(x - 3) = x^3 - 6x^2 + 11x - 6
    let companion = ComplexMatrix::from_real_rows(&[[6.0, -11.0, 6.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
    let ev = eigenvalues(&companion).unwrap();
    for (got, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
        assert!((got - real(want)).norm() < 1e-10, "{ev:?}");
    }
    // nilpotent Jordan block
    let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
    assert!(eigenvalues(&j).unwrap().iter().all(|z| z.norm() < 1e-12));
}

#[test]
fn null_space_examples() {
    let m = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]);
    let ker = null_space_default(&m).unwrap();
    assert_eq!(ker.len(), 1);
    let v = &ker[0];
    let s = 1.0 / 2f64.sqrt();
    // phase convention: first significant entry real and positive
    assert!((v[0] - real(s)).norm() < 1e-12 && (v[1] - real(-s)).norm() < 1e-12);
    assert!(null_space_default(&ComplexMatrix::identity(3)).unwrap().is_empty());
    assert_eq!(null_space_default(&ComplexMatrix::zeros(2, 4)).unwrap().len(), 4);
    assert!(null_space(&m, 0.0).is_err());
}

#[test]
fn pencil_spectrum_examples() {
    let a = ComplexMatrix::identity(2);
    let b = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
    let ev = pencil_spectrum(&a, &b).unwrap();
    assert!((ev[0] - real(-1.0)).norm() < 1e-12 && (ev[1] - real(1.0)).norm() < 1e-12);
    let singular = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
    assert!(matches!(pencil_spectrum(&singular, &b), Err(Error::SingularPencil { .. })));
}

#[test]
fn dimension_errors() {
    let a = ComplexMatrix::zeros(2, 3);
    assert!(matches!(a.try_mul(&a), Err(Error::Dimension(_))));
    assert!(a.try_apply(&ComplexVector::zeros(2)).is_err());
    assert!(ComplexMatrix::from_vec(2, 2, vec![ONE; 3]).is_err());
}
