use alloc::format;
use alloc::vec::Vec;

use super::Matrix;
use crate::{Error, Result};

/// Eigendecomposition `A = V diag(values) V^T` of a symmetric matrix.
///
/// Eigenvalues are sorted in descending order; the first component of each
/// eigenvector whose magnitude exceeds `1e-10` is positive.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver.
///
/// Sweeps rotate every off-diagonal pair until all off-diagonal magnitudes are
/// at most `1e-14 * |A|_F`. Rejects input that is not symmetric to `1e-12`
/// relative.
pub fn sym_eig(a: &Matrix) -> Result<SymEigen> {
    if !a.is_square() {
        return Err(Error::Structure(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let norm = a.frobenius_norm();
    for i in 0..n {
        for j in 0..i {
            if (a.get(i, j) - a.get(j, i)).abs() > 1e-12 * norm {
                return Err(Error::Structure(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let threshold = 1e-14 * norm;
    let mut sweeps = 0;
    loop {
        let off = max_off_diagonal(&m);
        if off <= threshold || n < 2 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence {
                what: "Jacobi eigensolver",
                iterations: sweeps,
                residual: off,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq.abs() <= threshold * 1e-3 {
                    continue;
                }
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(j, j).total_cmp(&m.get(i, i)));
    let values = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vectors = Matrix::from_fn(n, n, |i, k| v.get(i, order[k]));
    for k in 0..n {
        if let Some(i) = (0..n).find(|&i| vectors.get(i, k).abs() > 1e-10) {
            if vectors.get(i, k) < 0.0 {
                for r in 0..n {
                    let val = -vectors.get(r, k);
                    vectors.set(r, k, val);
                }
            }
        }
    }
    Ok(SymEigen { values, vectors })
}

fn max_off_diagonal(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut off = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            off = off.max(m.get(i, j).abs());
        }
    }
    off
}

// Annihilates m[p][q] with a plane rotation (Rutishauser's formulas).
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let n = m.rows();
    let apq = m.get(p, q);
    let app = m.get(p, p);
    let aqq = m.get(q, q);
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let tau = s / (1.0 + c);

    m.set(p, p, app - t * apq);
    m.set(q, q, aqq + t * apq);
    m.set(p, q, 0.0);
    m.set(q, p, 0.0);
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = m.get(r, p);
        let arq = m.get(r, q);
        let new_rp = arp - s * (arq + tau * arp);
        let new_rq = arq + s * (arp - tau * arq);
        m.set(r, p, new_rp);
        m.set(p, r, new_rp);
        m.set(r, q, new_rq);
        m.set(q, r, new_rq);
    }
    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, vrp - s * (vrq + tau * vrp));
        v.set(r, q, vrq + s * (vrp - tau * vrq));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn reconstruct(e: &SymEigen) -> Matrix {
        let n = e.values.len();
        Matrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| e.vectors.get(i, k) * e.values[k] * e.vectors.get(j, k))
                .sum()
        })
    }

    /// Counts eigenvalues below `x` through the Sturm-like sign changes of the
    /// LDL^T pivots of `A - x I` (Sylvester's law of inertia), then bisects.
    fn inertia_below(a: &Matrix, x: f64) -> usize {
        let n = a.rows();
        let mut w = Matrix::from_fn(n, n, |i, j| a.get(i, j) - if i == j { x } else { 0.0 });
        let mut count = 0;
        for k in 0..n {
            let mut d = w.get(k, k);
            if d == 0.0 {
                d = 1e-300;
            }
            if d < 0.0 {
                count += 1;
            }
            for i in k + 1..n {
                let f = w.get(i, k) / d;
                for j in k + 1..n {
                    let val = w.get(i, j) - f * w.get(k, j);
                    w.set(i, j, val);
                }
            }
        }
        count
    }

    fn bisect_eigenvalues(a: &Matrix) -> Vec<f64> {
        let n = a.rows();
        let bound = a.frobenius_norm() + 1.0;
        // k-th smallest eigenvalue: smallest x with inertia_below(x) > k
        (0..n)
            .map(|k| {
                let (mut lo, mut hi) = (-bound, bound);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if inertia_below(a, mid) > k {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .rev()
            .collect()
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let e = sym_eig(&Matrix::identity(4)).unwrap();
        assert!(e.values.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn example_one_matrix_spectrum() {
        let g = [1., 0., 1., 0., 1., 0., 1., 0., 1.];
        let a = Matrix::from_fn(5, 5, |i, j| g[i + j]);
        let e = sym_eig(&a).unwrap();
        let expect = [3.0, 2.0, 0.0, 0.0, 0.0];
        for (v, x) in e.values.iter().zip(&expect) {
            assert!((v - x).abs() < 1e-13, "{:?}", e.values);
        }
    }

    #[test]
    fn random_symmetric_matches_bisection_oracle() {
        let vals = [
            0.44, -1.2, 0.37, 2.05, -0.66, 0.91, 1.13, -0.08, 0.52, -1.77, 0.3, 0.61, -0.94, 1.48,
            0.02, -0.21, 0.85, -1.36, 0.73, 0.19, -0.55,
        ];
        let mut it = vals.iter();
        let mut a = Matrix::zeros(6, 6);
        for i in 0..6 {
            for j in i..6 {
                let v = *it.next().unwrap();
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let e = sym_eig(&a).unwrap();
        let oracle = bisect_eigenvalues(&a);
        for (v, o) in e.values.iter().zip(&oracle) {
            assert!((v - o).abs() < 1e-10, "{v} vs {o}");
        }
        let rec = reconstruct(&e);
        assert!(rec.sub(&a).frobenius_norm() <= 1e-12 * a.frobenius_norm());
        let vtv = e.vectors.transpose().matmul(&e.vectors);
        assert!(vtv.sub(&Matrix::identity(6)).frobenius_norm() < 1e-12);
        let trace: f64 = (0..6).map(|i| a.get(i, i)).sum();
        let sum: f64 = e.values.iter().sum();
        assert!((trace - sum).abs() < 1e-12 * (1.0 + trace.abs()));
    }

    #[test]
    fn sign_convention() {
        let a = Matrix::from_rows(&[vec![2.0, -1.0], vec![-1.0, 2.0]]);
        let e = sym_eig(&a).unwrap();
        for k in 0..2 {
            assert!(e.vectors.get(0, k) > 0.0);
        }
    }

    #[test]
    fn rejects_nonsymmetric() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(sym_eig(&a), Err(Error::Structure(_))));
    }
}
