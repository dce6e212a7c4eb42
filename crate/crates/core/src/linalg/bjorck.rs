use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Solves `sum_k alpha_k nodes_k^j = b_j` (`j = 0..r-1`) with the Björck–Pereyra
/// progressive algorithm in `O(r^2)` operations.
pub fn vandermonde_solve(nodes: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let r = nodes.len();
    if b.len() != r {
        return Err(Error::Dimension {
            what: "right-hand side",
            expected: r,
            found: b.len(),
        });
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    let lo = nodes.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = nodes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = (hi - lo).max(lo.abs()).max(hi.abs()).max(f64::MIN_POSITIVE);
    for i in 0..r {
        for j in i + 1..r {
            if (nodes[i] - nodes[j]).abs() <= 1e-12 * spread {
                return Err(Error::Structure(format!(
                    "Vandermonde nodes {i} and {j} coincide ({})",
                    nodes[i]
                )));
            }
        }
    }
    let n = r - 1;
    let x = nodes;
    let mut z = b.to_vec();
    for k in 0..n {
        for i in (k + 1..=n).rev() {
            z[i] -= x[k] * z[i - 1];
        }
    }
    for k in (0..n).rev() {
        for i in k + 1..=n {
            z[i] /= x[i] - x[i - k - 1];
        }
        for i in k..n {
            z[i] -= z[i + 1];
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn apply(nodes: &[f64], alpha: &[f64]) -> Vec<f64> {
        (0..nodes.len())
            .map(|j| {
                nodes
                    .iter()
                    .zip(alpha)
                    .map(|(x, a)| a * libm::pow(*x, j as f64))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn hand_cases() {
        assert_eq!(vandermonde_solve(&[0.0], &[5.0]).unwrap(), vec![5.0]);
        let a = vandermonde_solve(&[0.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!((a[0]).abs() < 1e-15 && (a[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip() {
        let nodes = [0.9, -0.3, 0.45, 0.1, -0.8, 0.62];
        let alpha = [0.5, 1.2, -0.7, 2.0, 0.05, 1.0];
        let b = apply(&nodes, &alpha);
        let got = vandermonde_solve(&nodes, &b).unwrap();
        let back = apply(&nodes, &got);
        let bn = libm::sqrt(b.iter().map(|v| v * v).sum());
        let rn = libm::sqrt(back.iter().zip(&b).map(|(p, q)| (p - q) * (p - q)).sum());
        assert!(rn <= 1e-9 * bn);
    }

    #[test]
    fn coincident_nodes_rejected() {
        assert!(matches!(
            vandermonde_solve(&[0.5, 0.5], &[1.0, 1.0]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn hilbert_table_from_example_two() {
        let xi = [
            0.9841, 0.9180, 0.8067, 0.6621, 0.5000, 0.3379, 0.1933, 0.0820, 0.0159,
        ];
        let alpha = [
            0.0406, 0.0903, 0.1303, 0.1562, 0.1651, 0.1562, 0.1303, 0.0903, 0.0406,
        ];
        let b: Vec<f64> = (0..9).map(|j| 1.0 / (j as f64 + 1.0)).collect();
        let got = vandermonde_solve(&xi, &b).unwrap();
        for (g, e) in got.iter().zip(&alpha) {
            assert!((g - e).abs() < 5e-4, "{g} vs {e}");
        }
    }
}
