use alloc::vec::Vec;

use super::{sym_eig, Matrix};
use crate::tensor::HankelMatrix;
use crate::{Error, Result};

/// Default rank tolerance, relative to the largest eigenvalue magnitude.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// `H = U diag(d) U^T` for a real PSD matrix, truncated to its numerical rank.
///
/// For real symmetric PSD input the Takagi factorization coincides with the
/// eigendecomposition restricted to the positive eigenvalues.
#[derive(Debug, Clone)]
pub struct TakagiFactorization {
    /// `s x r`, orthonormal columns.
    pub u: Matrix,
    /// Retained eigenvalues, descending, all `> tol * |H|`.
    pub d: Vec<f64>,
    /// Relative tolerance that was applied.
    pub tol: f64,
    /// Largest eigenvalue magnitude of the input.
    pub norm: f64,
}

impl TakagiFactorization {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn size(&self) -> usize {
        self.u.rows()
    }

    /// Factorizes a dense symmetric matrix, rejecting it when an eigenvalue
    /// falls below `-tol * |H|`.
    pub fn of_psd(h: &Matrix, tol: f64) -> Result<Self> {
        let eig = sym_eig(h)?;
        let norm = eig.values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
        let cutoff = tol * norm;
        if let Some(&lowest) = eig.values.last() {
            if lowest < -cutoff {
                return Err(Error::NotStrong { eigenvalue: lowest });
            }
        }
        let keep: Vec<usize> = (0..eig.values.len())
            .filter(|&k| eig.values[k] > cutoff)
            .collect();
        let s = h.rows();
        let u = Matrix::from_fn(s, keep.len(), |i, k| eig.vectors.get(i, keep[k]));
        let d = keep.iter().map(|&k| eig.values[k]).collect();
        Ok(TakagiFactorization { u, d, tol, norm })
    }

    /// `U diag(d) U^T`.
    pub fn reconstruct(&self) -> Matrix {
        let s = self.size();
        Matrix::from_fn(s, s, |i, j| {
            (0..self.rank())
                .map(|k| self.u.get(i, k) * self.d[k] * self.u.get(j, k))
                .sum()
        })
    }

    /// Distance from `e_s` (last coordinate vector) to the column space of `U`.
    pub fn last_unit_distance(&self) -> f64 {
        let s = self.size();
        if s == 0 {
            return 0.0;
        }
        // form e - U U^T e explicitly; 1 - |U(s-1, :)|^2 would put rounding
        // error under a square root
        let row = self.u.row(s - 1);
        let sq: f64 = (0..s)
            .map(|i| {
                let p: f64 = self.u.row(i).iter().zip(row).map(|(a, b)| a * b).sum();
                let r = if i == s - 1 { 1.0 - p } else { -p };
                r * r
            })
            .sum();
        libm::sqrt(sq)
    }
}

/// PSD factorization of a Hankel matrix; see [`TakagiFactorization::of_psd`].
pub fn takagi_psd(h: &HankelMatrix, tol: f64) -> Result<TakagiFactorization> {
    TakagiFactorization::of_psd(&h.to_dense(), tol)
}
