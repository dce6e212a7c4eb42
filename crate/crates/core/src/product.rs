//! Tensor-vector products of Hankel tensors.
//!
//! Three independent routes compute `H x1 ... xm`:
//! [`tvp_naive`] sums all `n^m` entries, [`tvp_fft`] goes through the
//! anti-circulant embedding, and [`poly_eval`] uses `H x^m = h . x^{*m}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::conv::{conv_power, correlate};
use crate::linalg::Matrix;
use crate::tensor::HankelTensor;
use crate::{Error, Result};

fn check_len(t: &HankelTensor, x: &[f64]) -> Result<()> {
    if x.len() != t.dim() {
        return Err(Error::Dimension {
            what: "vector",
            expected: t.dim(),
            found: x.len(),
        });
    }
    Ok(())
}

fn check_all(t: &HankelTensor, xs: &[&[f64]]) -> Result<()> {
    if xs.len() != t.order() {
        return Err(Error::Dimension {
            what: "number of vectors",
            expected: t.order(),
            found: xs.len(),
        });
    }
    xs.iter().try_for_each(|x| check_len(t, x))
}

/// Reference `O(n^m)` multilinear product.
pub fn tvp_naive(t: &HankelTensor, xs: &[&[f64]]) -> Result<f64> {
    check_all(t, xs)?;
    let (m, n) = (t.order(), t.dim());
    let h = t.generator();
    let mut idx = vec![0usize; m];
    let mut total = 0.0;
    loop {
        let mut term = h[idx.iter().sum::<usize>()];
        for (x, &i) in xs.iter().zip(&idx) {
            term *= x[i];
        }
        total += term;
        // odometer
        let mut k = 0;
        loop {
            if k == m {
                return Ok(total);
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

/// Multilinear product through the anti-circulant embedding.
pub fn tvp_fft(t: &HankelTensor, xs: &[&[f64]]) -> Result<f64> {
    check_all(t, xs)?;
    t.embedding().multilinear(xs)
}

/// `H x^m = h . x^{*m}`.
pub fn poly_eval(t: &HankelTensor, x: &[f64]) -> Result<f64> {
    check_len(t, x)?;
    let w = conv_power(x, t.order());
    Ok(dot(t.generator(), &w))
}

/// `H x^{m-1}`, the vector with entries `sum_j h_{i+j} (x^{*(m-1)})_j`.
pub fn grad_eval(t: &HankelTensor, x: &[f64]) -> Result<Vec<f64>> {
    check_len(t, x)?;
    if t.order() < 2 {
        return Err(Error::Structure("H x^{m-1} needs order at least 2".into()));
    }
    let w = conv_power(x, t.order() - 1);
    Ok(correlate(t.generator(), &w, t.dim()))
}

/// `H x^{m-2}`, the symmetric `n x n` matrix `sum_k h_{i+j+k} (x^{*(m-2)})_k`.
/// Its product with `(m-1)` is the Jacobian of [`grad_eval`].
pub fn hess_eval(t: &HankelTensor, x: &[f64]) -> Result<Matrix> {
    check_len(t, x)?;
    if t.order() < 2 {
        return Err(Error::Structure("H x^{m-2} needs order at least 2".into()));
    }
    let n = t.dim();
    let w = conv_power(x, t.order() - 2);
    // the matrix is Hankel in (i + j); compute its 2n-1 distinct entries once
    let g = correlate(t.generator(), &w, 2 * n - 1);
    Ok(Matrix::from_fn(n, n, |i, j| g[i + j]))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
