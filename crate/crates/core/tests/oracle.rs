mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spectra_bounds::matrix::{spectral_radius_with, validate_irreducible, NonnegativeMatrix, OracleConfig};
use spectra_bounds::random::{random_positive_matrix, random_sparse_irreducible};
use spectra_bounds::IrreducibleMatrix;

const TOL: f64 = 1e-12;

fn positive_matrix(max_n: usize) -> impl Strategy<Value = IrreducibleMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0.0f64..10.0, n * n).prop_map(move |mut e| {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        e[i * n + j] += 0.01;
                    }
                }
            }
            validate_irreducible(NonnegativeMatrix::from_row_major(n, e).unwrap()).unwrap()
        })
    })
}

fn sparse_matrix() -> impl Strategy<Value = IrreducibleMatrix> {
    (any::<u64>(), 2usize..=10, 0.0f64..0.5).prop_map(|(seed, n, density)| {
        random_sparse_irreducible(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
    })
}

fn symmetric_matrix(max_n: usize) -> impl Strategy<Value = IrreducibleMatrix> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0.0f64..10.0, n * n).prop_map(move |e| {
            let m = NonnegativeMatrix::from_fn(n, |i, j| {
                let (a, b) = (i.min(j), i.max(j));
                if a == b {
                    e[a * n + b]
                } else {
                    e[a * n + b] + 0.5
                }
            })
            .unwrap();
            validate_irreducible(m).unwrap()
        })
    })
}

fn row_sum_range(m: &NonnegativeMatrix) -> (f64, f64) {
    let r = m.row_sums();
    (
        r.iter().copied().fold(f64::INFINITY, f64::min),
        r.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rho_lies_between_extreme_row_sums(m in prop_oneof![positive_matrix(12), sparse_matrix()]) {
        let est = spectral_radius_with(&m, &OracleConfig::default()).unwrap();
        let (lo, hi) = row_sum_range(&m);
        prop_assert!(est.rho >= lo - 1e-9 * (1.0 + lo), "{} < {}", est.rho, lo);
        prop_assert!(est.rho <= hi + 1e-9 * (1.0 + hi), "{} > {}", est.rho, hi);
    }

    #[test]
    fn perron_vector_satisfies_residual(m in prop_oneof![positive_matrix(12), sparse_matrix()]) {
        let est = spectral_radius_with(&m, &OracleConfig::default()).unwrap();
        let v = &est.perron_vector;
        let norm = v.iter().copied().fold(0.0, f64::max);
        prop_assert!((norm - 1.0).abs() < 1e-12);
        prop_assert!(v.iter().all(|&x| x > 0.0));
        let av = m.mul_vec(v);
        let res = av.iter().zip(v).map(|(a, x)| (a - est.rho * x).abs()).fold(0.0, f64::max);
        prop_assert!(res <= TOL, "residual {res}");
        prop_assert!(est.residual <= TOL);
    }

    #[test]
    fn rho_is_permutation_invariant(m in positive_matrix(10), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..m.dim()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = validate_irreducible(m.permuted(&perm)).unwrap();
        let a = spectral_radius_with(&m, &OracleConfig::default()).unwrap().rho;
        let b = spectral_radius_with(&p, &OracleConfig::default()).unwrap().rho;
        prop_assert!((a - b).abs() <= 10.0 * TOL * (1.0 + a), "{a} vs {b}");
    }

    #[test]
    fn rho_matches_characteristic_polynomial(m in symmetric_matrix(4)) {
        let est = spectral_radius_with(&m, &OracleConfig::default()).unwrap();
        let root = common::largest_root_by_scan(&m.to_rows());
        prop_assert!((est.rho - root).abs() <= 10.0 * TOL * (1.0 + root), "{} vs {}", est.rho, root);
    }
}

#[test]
fn seeded_positive_matrices_converge_quickly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=12 {
        let m = random_positive_matrix(&mut rng, n);
        let est = spectral_radius_with(&m, &OracleConfig::default()).unwrap();
        assert!(est.iterations < 1_000, "n = {n}: {} iterations", est.iterations);
    }
}

#[test]
fn char_poly_of_known_matrices() {
    // K_3: (x - 2)(x + 1)^2 = x^3 - 3x - 2
    let k3 = vec![vec![0., 1., 1.], vec![1., 0., 1.], vec![1., 1., 0.]];
    assert_eq!(common::char_poly(&k3), vec![1., 0., -3., -2.]);
    assert!((common::largest_root_by_scan(&k3) - 2.0).abs() < 1e-12);
    let p3 = vec![vec![0., 1., 0.], vec![1., 0., 1.], vec![0., 1., 0.]];
    assert!((common::largest_root_by_scan(&p3) - 2f64.sqrt()).abs() < 1e-12);
}
