mod common;

use common::{planted_generator, separated_poles};
use hankel_core::linalg::{
    poly_roots, sym_eig, takagi_psd, vandermonde_solve, vieta_coefficients, Matrix,
    TakagiFactorization, DEFAULT_RANK_TOL,
};
use hankel_core::product::poly_eval;
use hankel_core::rng::{gaussian_vector, seeded, uniform_in};
use hankel_core::sos::{sos_decompose, sos_eval};
use hankel_core::vandermonde::{
    avd_decompose, peel_corner, relative_residual, AvdOptions, DEFAULT_CORNER_TOL,
};
use hankel_core::{HankelMatrix, HankelTensor};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn avd_round_trip_on_planted_tensors(
        m in 3usize..=4,
        n in 4usize..=10,
        count in 1usize..=6,
        seed in any::<u64>(),
    ) {
        // odd order needs m(n-1) even
        let n = if m % 2 == 1 && n % 2 == 0 { n - 1 } else { n };
        let mut rng = seeded(seed);
        let poles = separated_poles(&mut rng, count, 0.15);
        let alphas: Vec<f64> = (0..count).map(|_| uniform_in(&mut rng, 0.5, 2.0)).collect();
        let len = m * (n - 1) + 1;
        let h = planted_generator(&poles, &alphas, 0.0, len);
        let t = HankelTensor::new(h.clone(), m, n).unwrap();
        let dec = avd_decompose(&t, &AvdOptions::default()).unwrap();
        prop_assert!(dec.alphas.iter().all(|a| *a > 0.0));
        prop_assert!(!dec.has_corner());
        prop_assert!(relative_residual(&dec, &h) <= 1e-8);
        // full rank leaves the Yule-Walker system a free entry, so the
        // planted poles are only identifiable below it
        let s = m * (n - 1) / 2 + 1;
        prop_assume!(count < s);
        prop_assert_eq!(dec.poles.len(), count);
        let mut sorted = poles.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        for (p, q) in dec.poles.iter().zip(&sorted) {
            prop_assert!((p - q).abs() <= 1e-6);
        }
    }

    #[test]
    fn sos_terms_sum_to_the_form(
        n in 2usize..=6,
        count in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let mut rng = seeded(seed);
        let poles: Vec<f64> = (0..count).map(|_| uniform_in(&mut rng, -1.5, 1.5)).collect();
        let alphas: Vec<f64> = (0..count).map(|_| uniform_in(&mut rng, 0.1, 1.0)).collect();
        let h = planted_generator(&poles, &alphas, 0.0, 4 * (n - 1) + 1);
        let t = HankelTensor::new(h, 4, n).unwrap();
        let dec = sos_decompose(&t, DEFAULT_RANK_TOL).unwrap();
        prop_assert!(dec.rank() <= count);
        let y = gaussian_vector(&mut rng, n);
        let (sum, terms) = sos_eval(&dec, &y).unwrap();
        let squares: f64 = terms.iter().map(|v| v * v).sum();
        prop_assert!((squares - sum).abs() <= 1e-12 * (1.0 + sum));
        let direct = poly_eval(&t, &y).unwrap();
        prop_assert!((sum - direct).abs() <= 1e-9 * (1.0 + direct.abs()));
    }
}

#[test]
fn lifted_psd_matrix_keeps_its_sos_rank() {
    let mut rng = seeded(21);
    for trial in 0..20 {
        let n = 5;
        let count = 1 + trial % 4;
        let poles = separated_poles(&mut rng, count, 0.2);
        let alphas: Vec<f64> = (0..count).map(|_| uniform_in(&mut rng, 0.5, 2.0)).collect();
        let h = planted_generator(&poles, &alphas, 0.0, 2 * n - 1);
        let matrix = HankelMatrix::new(h.clone()).unwrap();
        let rank = takagi_psd(&matrix, DEFAULT_RANK_TOL).unwrap().rank();
        let low = HankelTensor::new(h, 2, n).unwrap();
        let high = low.higher_order_associate(2).unwrap();
        assert_eq!(high.order(), 4);
        let dec = sos_decompose(&high, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(dec.rank(), rank);
        assert_eq!(rank, count);
    }
}

/// `[B 0; 0 0] + c e_s e_s^T` with `B` PSD of rank `r-1 < s-1`.
fn corner_instance(rng: &mut hankel_core::rng::ChaCha8Rng, s: usize, r: usize, c: f64) -> Matrix {
    let gs: Vec<Vec<f64>> = (0..r - 1).map(|_| gaussian_vector(rng, s - 1)).collect();
    Matrix::from_fn(s, s, |i, j| {
        if i == s - 1 || j == s - 1 {
            if i == j {
                c
            } else {
                0.0
            }
        } else {
            gs.iter().map(|g| g[i] * g[j]).sum()
        }
    })
}

#[test]
fn corner_peel_drops_rank_by_exactly_one() {
    let mut rng = seeded(22);
    for trial in 0..100 {
        let s = 4 + trial % 5;
        let r = 2 + trial % (s - 2);
        let c = uniform_in(&mut rng, 0.2, 3.0);
        let a = corner_instance(&mut rng, s, r, c);
        let f = TakagiFactorization::of_psd(&a, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(f.rank(), r);
        let alpha = peel_corner(&f, DEFAULT_CORNER_TOL).unwrap();
        assert!(
            (alpha - c).abs() <= 1e-9 * c,
            "trial {trial}: {alpha} vs {c}"
        );
        let mut rest = a.clone();
        rest.set(s - 1, s - 1, a.get(s - 1, s - 1) - alpha);
        let g = TakagiFactorization::of_psd(&rest, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(g.rank(), r - 1);
        assert!(g.last_unit_distance() > DEFAULT_CORNER_TOL);
    }
}

#[test]
fn corner_peel_refuses_outside_the_range() {
    let mut rng = seeded(23);
    let a = corner_instance(&mut rng, 5, 3, 0.0);
    let f = TakagiFactorization::of_psd(&a, DEFAULT_RANK_TOL).unwrap();
    assert!(peel_corner(&f, DEFAULT_CORNER_TOL).is_err());
}

#[test]
fn leading_block_of_rank_deficient_strong_matrix_is_pd() {
    let mut rng = seeded(24);
    for trial in 0..30 {
        let r = 1 + trial % 4;
        let s = r + 2 + trial % 3;
        let poles = separated_poles(&mut rng, r, 0.2);
        let alphas: Vec<f64> = (0..r).map(|_| uniform_in(&mut rng, 0.5, 2.0)).collect();
        let h = planted_generator(&poles, &alphas, 0.0, 2 * s - 1);
        let matrix = HankelMatrix::new(h).unwrap();
        let f = takagi_psd(&matrix, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(f.rank(), r);
        let lead = matrix.to_dense().leading(r);
        let eig = sym_eig(&lead).unwrap();
        assert!(eig.values[r - 1] > 0.0, "trial {trial}");
    }
}

#[test]
fn vandermonde_round_trip() {
    let mut rng = seeded(25);
    for k in 1..=10 {
        let nodes = separated_poles(&mut rng, k, 0.1);
        let b = gaussian_vector(&mut rng, k);
        let alpha = vandermonde_solve(&nodes, &b).unwrap();
        let scale = b.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        for (j, bj) in b.iter().enumerate() {
            let v: f64 = nodes
                .iter()
                .zip(&alpha)
                .map(|(x, a)| a * x.powi(j as i32))
                .sum();
            assert!((v - bj).abs() <= 1e-9 * scale, "k={k} row {j}");
        }
    }
}

#[test]
fn vieta_round_trip() {
    let mut rng = seeded(26);
    for deg in 1..=8 {
        let mut roots: Vec<Complex64> = (0..deg / 2)
            .flat_map(|_| {
                let z = Complex64::new(
                    uniform_in(&mut rng, -1.0, 1.0),
                    uniform_in(&mut rng, 0.1, 1.0),
                );
                [z, z.conj()]
            })
            .collect();
        while roots.len() < deg {
            roots.push(Complex64::new(uniform_in(&mut rng, -2.0, 2.0), 0.0));
        }
        let a = vieta_coefficients(&roots);
        let found = poly_roots(&a).unwrap();
        let back = vieta_coefficients(&found.roots);
        let scale = a.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        for (x, y) in a.iter().zip(&back) {
            assert!((x - y).abs() <= 1e-7 * scale, "deg {deg}");
        }
    }
}

#[test]
fn jacobi_reconstruction() {
    let mut rng = seeded(27);
    for n in 1..=12 {
        let g: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vector(&mut rng, n)).collect();
        let a = Matrix::from_fn(n, n, |i, j| g[i][j] + g[j][i]);
        let eig = sym_eig(&a).unwrap();
        let recon = Matrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| eig.vectors.get(i, k) * eig.values[k] * eig.vectors.get(j, k))
                .sum()
        });
        assert!(recon.sub(&a).frobenius_norm() <= 1e-12 * a.frobenius_norm());
    }
}
