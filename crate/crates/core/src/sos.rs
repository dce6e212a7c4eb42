//! Sum-of-squares decompositions of even-order strong Hankel tensors.
//!
//! If the associated Hankel matrix factors as `H = U diag(d) U^T` with `d > 0`,
//! then `H y^{2q} = sum_k (q_k . y^{*q})^2` with `q_k = sqrt(d_k) u_k`, and each
//! `q_k` generates the order-`q` Hankel tensor of one squared term.

use alloc::vec::Vec;

use crate::conv::conv_power;
use crate::linalg::{takagi_psd, TakagiFactorization};
use crate::product::dot;
use crate::tensor::HankelTensor;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SosDecomposition {
    /// Half order: the source tensor has order `2q`.
    pub q: usize,
    /// Dimension of the source tensor.
    pub dim: usize,
    /// Term generators, ordered by descending weight `d_k`. Each has length
    /// `q(n-1)+1`.
    pub terms: Vec<Vec<f64>>,
}

impl SosDecomposition {
    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn order(&self) -> usize {
        2 * self.q
    }

    /// The order-`q` Hankel tensor generated by term `k`.
    pub fn term_tensor(&self, k: usize) -> Result<HankelTensor> {
        HankelTensor::new(self.terms[k].clone(), self.q, self.dim)
    }

    /// Value of the sum of squares at `y`, with the individual (unsquared)
    /// term values.
    pub fn eval(&self, y: &[f64]) -> Result<(f64, Vec<f64>)> {
        if y.len() != self.dim {
            return Err(Error::Dimension {
                what: "vector",
                expected: self.dim,
                found: y.len(),
            });
        }
        let w = conv_power(y, self.q);
        let values: Vec<f64> = self.terms.iter().map(|t| dot(t, &w)).collect();
        let total = values.iter().map(|v| v * v).sum();
        Ok((total, values))
    }
}

/// Algorithm: factor the associated Hankel matrix and scale each retained
/// eigenvector by the square root of its eigenvalue.
pub fn sos_decompose(t: &HankelTensor, tol: f64) -> Result<SosDecomposition> {
    if t.order() % 2 != 0 {
        return Err(Error::Structure(alloc::format!(
            "sum-of-squares decomposition needs even order, got {}",
            t.order()
        )));
    }
    let f = takagi_psd(&t.associated_matrix()?, tol)?;
    Ok(from_factorization(&f, t.order() / 2, t.dim()))
}

pub fn from_factorization(f: &TakagiFactorization, q: usize, dim: usize) -> SosDecomposition {
    let terms = (0..f.rank())
        .map(|k| {
            let s = libm::sqrt(f.d[k]);
            f.u.column(k).into_iter().map(|v| s * v).collect()
        })
        .collect();
    SosDecomposition { q, dim, terms }
}

/// Convenience wrapper around [`SosDecomposition::eval`].
pub fn sos_eval(dec: &SosDecomposition, y: &[f64]) -> Result<(f64, Vec<f64>)> {
    dec.eval(y)
}
