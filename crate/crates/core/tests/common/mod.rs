#![allow(dead_code)]

use hankel_core::rng::{uniform_in, ChaCha8Rng};
use hankel_core::HankelTensor;

/// `h_j = sum alpha_k xi_k^j (+ corner on the last entry)`, computed directly.
pub fn planted_generator(poles: &[f64], alphas: &[f64], corner: f64, len: usize) -> Vec<f64> {
    let mut h: Vec<f64> = (0..len)
        .map(|j| {
            poles
                .iter()
                .zip(alphas)
                .map(|(p, a)| a * p.powi(j as i32))
                .sum()
        })
        .collect();
    h[len - 1] += corner;
    h
}

/// Poles in `[-1, 1]` pairwise at least `gap` apart.
pub fn separated_poles(rng: &mut ChaCha8Rng, count: usize, gap: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let p = uniform_in(rng, -1.0, 1.0);
        if out.iter().all(|q| (p - q).abs() >= gap) {
            out.push(p);
        }
    }
    out
}

pub fn random_tensor(rng: &mut ChaCha8Rng, m: usize, n: usize) -> HankelTensor {
    let h = (0..m * (n - 1) + 1)
        .map(|_| uniform_in(rng, -1.0, 1.0))
        .collect();
    HankelTensor::new(h, m, n).unwrap()
}

/// Dense sum over every index tuple.
pub fn dense_form(t: &HankelTensor, x: &[f64]) -> f64 {
    let (m, n) = (t.order(), t.dim());
    let mut idx = vec![0usize; m];
    let mut total = 0.0;
    loop {
        let mut term = t.entry(&idx);
        for &i in &idx {
            term *= x[i];
        }
        total += term;
        let mut k = 0;
        loop {
            if k == m {
                return total;
            }
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn rel(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}
