//! Hankel tensors, their associated Hankel matrices and the anti-circulant
//! embedding used for fast products.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::fft::{forward_real, FftPlan};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Square Hankel tensor of order `m` and dimension `n`, stored as its
/// generating vector `h` of length `m(n-1)+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelTensor {
    order: usize,
    dim: usize,
    generator: Vec<f64>,
}

/// Length of the generating vector of an order-`m`, dimension-`n` Hankel tensor.
pub fn generator_len(order: usize, dim: usize) -> usize {
    order * (dim - 1) + 1
}

impl HankelTensor {
    pub fn new(generator: Vec<f64>, order: usize, dim: usize) -> Result<Self> {
        if order == 0 || dim == 0 {
            return Err(Error::Structure(format!(
                "order and dimension must be positive (got order {order}, dim {dim})"
            )));
        }
        let expected = generator_len(order, dim);
        if generator.len() != expected {
            return Err(Error::Dimension {
                what: "generating vector",
                expected,
                found: generator.len(),
            });
        }
        Ok(HankelTensor {
            order,
            dim,
            generator,
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        if order == 0 || dim == 0 {
            return Self::new(Vec::new(), order, dim);
        }
        Self::new(vec![0.0; generator_len(order, dim)], order, dim)
    }

    /// Hilbert tensor: `h_j = 1/(j+1)`.
    pub fn hilbert(order: usize, dim: usize) -> Result<Self> {
        if order == 0 || dim == 0 {
            return Self::new(Vec::new(), order, dim);
        }
        let h = (0..generator_len(order, dim))
            .map(|j| 1.0 / (j as f64 + 1.0))
            .collect();
        Self::new(h, order, dim)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self) -> &[f64] {
        &self.generator
    }

    pub fn into_generator(self) -> Vec<f64> {
        self.generator
    }

    /// Entry `H[i1, ..., im] = h[i1 + ... + im]`.
    ///
    /// Panics if the index has the wrong arity or is out of range.
    pub fn entry(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.order, "index arity must equal the order");
        assert!(index.iter().all(|&i| i < self.dim), "index out of range");
        self.generator[index.iter().sum::<usize>()]
    }

    pub fn scaled(&self, c: f64) -> Self {
        HankelTensor {
            order: self.order,
            dim: self.dim,
            generator: self.generator.iter().map(|v| c * v).collect(),
        }
    }

    /// The square Hankel matrix sharing this generator. Exists only when
    /// `m(n-1)` is even.
    pub fn associated_matrix(&self) -> Result<HankelMatrix> {
        let span = self.order * (self.dim - 1);
        if span % 2 != 0 {
            return Err(Error::Structure(format!(
                "no associated Hankel matrix: m(n-1) = {span} is odd"
            )));
        }
        HankelMatrix::new(self.generator.clone())
    }

    /// The order-`qm` Hankel tensor with the same generating vector, of
    /// dimension `(n-1)/q + 1`.
    pub fn higher_order_associate(&self, q: usize) -> Result<Self> {
        if q == 0 || (self.dim - 1) % q != 0 {
            return Err(Error::Structure(format!(
                "cannot lift with q = {q}: q must divide n - 1 = {}",
                self.dim - 1
            )));
        }
        Self::new(
            self.generator.clone(),
            q * self.order,
            (self.dim - 1) / q + 1,
        )
    }

    /// Anti-circulant embedding of dimension `m(n-1)+1`.
    pub fn embedding(&self) -> AntiCirculantEmbedding {
        AntiCirculantEmbedding::new(self)
    }
}

/// Square Hankel matrix `H[i][j] = g[i+j]` of size `s`, generator length `2s-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix {
    size: usize,
    generator: Vec<f64>,
}

impl HankelMatrix {
    pub fn new(generator: Vec<f64>) -> Result<Self> {
        if generator.len() % 2 == 0 {
            return Err(Error::Structure(format!(
                "a square Hankel matrix needs an odd-length generator, got {}",
                generator.len()
            )));
        }
        Ok(HankelMatrix {
            size: (generator.len() + 1) / 2,
            generator,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generator(&self) -> &[f64] {
        &self.generator
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.size && j < self.size);
        self.generator[i + j]
    }

    pub fn to_dense(&self) -> Matrix {
        Matrix::from_fn(self.size, self.size, |i, j| self.generator[i + j])
    }

    /// View as an order-2 Hankel tensor.
    pub fn as_tensor(&self) -> HankelTensor {
        HankelTensor {
            order: 2,
            dim: self.size,
            generator: self.generator.clone(),
        }
    }
}

/// An order-`m` anti-circulant tensor of dimension `N = m(n-1)+1` whose
/// compressed generating vector is the generator of a Hankel tensor. The
/// Hankel tensor is its leading `n x ... x n` block, and the FFT diagonalizes
/// it, which gives `O(mN log N)` multilinear products.
#[derive(Debug, Clone)]
pub struct AntiCirculantEmbedding {
    order: usize,
    source_dim: usize,
    compressed: Vec<f64>,
    spectral: Vec<Complex64>,
    plan: FftPlan,
}

impl AntiCirculantEmbedding {
    pub fn new(tensor: &HankelTensor) -> Self {
        let n_big = tensor.generator.len();
        let plan = FftPlan::new(n_big);
        let mut spectral: Vec<Complex64> = tensor
            .generator
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        plan.inverse(&mut spectral);
        AntiCirculantEmbedding {
            order: tensor.order,
            source_dim: tensor.dim,
            compressed: tensor.generator.clone(),
            spectral,
            plan,
        }
    }

    /// Embedding dimension `N`.
    pub fn len(&self) -> usize {
        self.compressed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.compressed.is_empty()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Diagonal of the diagonalized tensor: the inverse DFT of `h`
    /// (normalized by `1/N`).
    pub fn spectral(&self) -> &[Complex64] {
        &self.spectral
    }

    /// Entry of the full `N x ... x N` anti-circulant tensor.
    pub fn entry(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.order);
        let n = self.len();
        self.compressed[index.iter().map(|i| i % n).sum::<usize>() % n]
    }

    /// `H x1 x2 ... xm` evaluated as `spectral^T (F[x1;0] .* ... .* F[xm;0])`.
    ///
    /// The complex workspace must collapse to a real number; an imaginary
    /// part above `1e-10` relative to the summed magnitudes is reported as a
    /// numeric error rather than dropped.
    pub fn multilinear(&self, xs: &[&[f64]]) -> Result<f64> {
        if xs.len() != self.order {
            return Err(Error::Dimension {
                what: "number of vectors",
                expected: self.order,
                found: xs.len(),
            });
        }
        for x in xs {
            if x.len() != self.source_dim {
                return Err(Error::Dimension {
                    what: "vector",
                    expected: self.source_dim,
                    found: x.len(),
                });
            }
        }
        let mut prod: Vec<Complex64> = self.spectral.clone();
        let mut mags: Vec<f64> = self.spectral.iter().map(|c| c.norm()).collect();
        for x in xs {
            let fx = forward_real(&self.plan, x);
            for ((p, m), f) in prod.iter_mut().zip(mags.iter_mut()).zip(&fx) {
                *p *= f;
                *m *= f.norm();
            }
        }
        let total: Complex64 = prod.iter().sum();
        let scale: f64 = mags.iter().sum();
        check_real(total, scale)
    }
}

pub(crate) fn check_real(value: Complex64, scale: f64) -> Result<f64> {
    if value.im.abs() > 1e-10 * scale.max(f64::MIN_POSITIVE) && value.im.abs() > 1e-300 {
        return Err(Error::Numeric(format!(
            "complex residue {:e} exceeds 1e-10 relative to {:e}",
            value.im, scale
        )));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_one_entries() {
        let t = HankelTensor::new(vec![1., 0., 1., 0., 1., 0., 1., 0., 1.], 4, 3).unwrap();
        assert_eq!(t.entry(&[0, 0, 0, 0]), 1.0);
        assert_eq!(t.entry(&[0, 0, 0, 1]), 0.0);
        assert_eq!(t.entry(&[2, 2, 2, 2]), 1.0);
        assert_eq!(t.entry(&[1, 2, 0, 2]), 0.0);
    }

    #[test]
    fn zero_and_matrix_cases() {
        let z = HankelTensor::zeros(3, 2).unwrap();
        assert!(z.generator().iter().all(|&v| v == 0.0));
        let t = HankelTensor::new(vec![1., 2., 3.], 2, 2).unwrap();
        assert_eq!(t.entry(&[0, 0]), 1.0);
        assert_eq!(t.entry(&[0, 1]), 2.0);
        assert_eq!(t.entry(&[1, 0]), 2.0);
        assert_eq!(t.entry(&[1, 1]), 3.0);
    }

    #[test]
    fn length_mismatch_names_expected_length() {
        match HankelTensor::new(vec![1.0; 8], 4, 3) {
            Err(Error::Dimension {
                expected, found, ..
            }) => {
                assert_eq!((expected, found), (9, 8));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(HankelTensor::new(vec![], 0, 3).is_err());
    }

    #[test]
    fn hilbert_generators() {
        let h = HankelTensor::hilbert(4, 5).unwrap();
        assert_eq!(h.generator().len(), 17);
        assert_eq!(h.generator()[0], 1.0);
        assert_eq!(h.generator()[1], 0.5);
        assert_eq!(h.generator()[16], 1.0 / 17.0);
        assert_eq!(HankelTensor::hilbert(2, 1).unwrap().generator(), &[1.0]);
        let m = HankelTensor::hilbert(2, 2).unwrap();
        assert_eq!(m.entry(&[1, 1]), 1.0 / 3.0);
        assert_eq!(m.entry(&[0, 1]), 0.5);
    }

    #[test]
    fn associated_matrix_parity() {
        let t = HankelTensor::new(vec![1., 0., 1., 0., 1., 0., 1., 0., 1.], 4, 3).unwrap();
        let h = t.associated_matrix().unwrap();
        assert_eq!(h.size(), 5);
        assert_eq!(h.entry(0, 4), 1.0);
        assert_eq!(h.entry(1, 2), 0.0);
        let m = HankelTensor::hilbert(2, 6).unwrap();
        assert_eq!(m.associated_matrix().unwrap().size(), 6);
        assert!(matches!(
            HankelTensor::zeros(3, 2).unwrap().associated_matrix(),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn lifting_keeps_generator() {
        let t = HankelTensor::hilbert(2, 5).unwrap();
        let l = t.higher_order_associate(2).unwrap();
        assert_eq!((l.order(), l.dim()), (4, 3));
        assert_eq!(l.generator(), t.generator());
        assert_eq!(t.higher_order_associate(1).unwrap(), t);
        assert!(t.higher_order_associate(3).is_err());
        assert!(t.higher_order_associate(0).is_err());
        let ex1 = HankelTensor::new(vec![1., 0., 1., 0., 1., 0., 1., 0., 1.], 4, 3).unwrap();
        let mat = ex1.associated_matrix().unwrap().as_tensor();
        assert_eq!(mat.higher_order_associate(2).unwrap(), ex1);
    }

    #[test]
    fn hankel_is_leading_block_of_embedding() {
        let t = HankelTensor::new((0..10).map(|j| j as f64 * 0.3 - 1.0).collect(), 3, 4).unwrap();
        let e = t.embedding();
        assert_eq!(e.len(), 10);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(e.entry(&[i, j, k]), t.entry(&[i, j, k]));
                }
            }
        }
        // wraps around outside the leading block
        assert_eq!(e.entry(&[9, 9, 0]), t.generator()[8]);
    }

    #[test]
    fn spectral_diagonal_is_normalized_inverse_dft() {
        let t = HankelTensor::hilbert(2, 3).unwrap();
        let e = t.embedding();
        let n = e.len();
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &h) in t.generator().iter().enumerate() {
                let ang = 2.0 * core::f64::consts::PI * (j * k) as f64 / n as f64;
                acc += Complex64::new(libm::cos(ang), libm::sin(ang)) * h;
            }
            assert!((acc / n as f64 - e.spectral()[k]).norm() < 1e-14);
        }
    }
}
