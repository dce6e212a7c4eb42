//! Tensor constructions used by `gen`, the repro scenarios and the tests.

use anyhow::{bail, Result};
use hankel_core::rng::{seeded, uniform_in, ChaCha8Rng};
use hankel_core::vandermonde::VandermondeDecomposition;
use hankel_core::HankelTensor;

use crate::io::{PlantedTruth, TensorFile};

/// `sum alpha_k v_k^{om} + alpha_inf e_n^{om}` with `v_k = [1, xi_k, ..]`.
pub fn planted(
    order: usize,
    dim: usize,
    poles: &[f64],
    alphas: &[f64],
    alpha_inf: f64,
) -> Result<TensorFile> {
    if poles.len() != alphas.len() {
        bail!("{} poles but {} coefficients", poles.len(), alphas.len());
    }
    if order == 0 || dim == 0 {
        bail!("order and dimension must be positive");
    }
    let dec = VandermondeDecomposition {
        poles: poles.to_vec(),
        alphas: alphas.to_vec(),
        alpha_inf,
        order,
        dim,
        diagnostics: Default::default(),
    };
    let t = HankelTensor::new(dec.generator(), order, dim)?;
    let mut file = TensorFile::from_tensor(&t);
    file.name = Some("planted".into());
    file.planted = Some(PlantedTruth {
        poles: poles.to_vec(),
        alphas: alphas.to_vec(),
        alpha_inf,
    });
    Ok(file)
}

/// `count` poles uniform in `[-1, 1]`, at least `gap` from each other and
/// from every entry of `avoid`.
pub fn separated_poles(rng: &mut ChaCha8Rng, count: usize, gap: f64, avoid: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let p = uniform_in(rng, -1.0, 1.0);
        if out.iter().chain(avoid).all(|q| (p - q).abs() >= gap) {
            out.push(p);
        }
    }
    out
}

/// The construction with poles `{0, xi1, xi2}`, unit weights and a unit
/// corner term.
pub fn example_three(rng: &mut ChaCha8Rng, dim: usize) -> Result<TensorFile> {
    let xi = separated_poles(rng, 2, 0.05, &[0.0]);
    planted(4, dim, &[0.0, xi[0], xi[1]], &[1.0, 1.0, 1.0], 1.0)
}

/// Planted strong tensor with `rank` separated poles and weights in `[0.5, 2]`.
pub fn random_strong(order: usize, dim: usize, rank: usize, seed: u64) -> Result<TensorFile> {
    let mut rng = seeded(seed);
    let poles = separated_poles(&mut rng, rank, 0.1, &[]);
    let alphas: Vec<f64> = (0..rank).map(|_| uniform_in(&mut rng, 0.5, 2.0)).collect();
    let mut file = planted(order, dim, &poles, &alphas, 0.0)?;
    file.name = Some("random-strong".into());
    file.seed = Some(seed);
    Ok(file)
}

/// Generator entries uniform in `[-1, 1]`.
pub fn random_uniform(order: usize, dim: usize, seed: u64) -> Result<TensorFile> {
    let mut rng = seeded(seed);
    let len = hankel_core::tensor::generator_len(order, dim);
    let h = (0..len).map(|_| uniform_in(&mut rng, -1.0, 1.0)).collect();
    let mut file = TensorFile::from_tensor(&HankelTensor::new(h, order, dim)?);
    file.name = Some("random".into());
    file.seed = Some(seed);
    Ok(file)
}

pub fn hilbert(order: usize, dim: usize) -> Result<TensorFile> {
    let mut file = TensorFile::from_tensor(&HankelTensor::hilbert(order, dim)?);
    file.name = Some("hilbert".into());
    Ok(file)
}

pub fn zero(order: usize, dim: usize) -> Result<TensorFile> {
    let mut file = TensorFile::from_tensor(&HankelTensor::zeros(order, dim)?);
    file.name = Some("zero".into());
    Ok(file)
}

/// The fourth-order, three-dimensional tensor generated by `[1,0,1,0,1,0,1,0,1]`.
pub fn example_one() -> TensorFile {
    let h = (0..9).map(|j| if j % 2 == 0 { 1.0 } else { 0.0 }).collect();
    let mut file = TensorFile::from_tensor(&HankelTensor::new(h, 4, 3).expect("valid shape"));
    file.name = Some("example-1".into());
    file
}
