use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::{Error, Result};

/// Roots of `p(t) = t^r - a_{r-1} t^{r-1} - ... - a_0`.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Largest scaled residual `|p(z)| / max(1, |a|_inf) / max(1, |z|)^r`.
    pub residual: f64,
}

const MAX_ITER: usize = 1000;

/// Scaled residual accepted for every returned root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-8;

/// Ascending coefficients of the monic polynomial `t^r - sum a_j t^j`.
fn monic(a: &[f64]) -> Vec<f64> {
    let mut c: Vec<f64> = a.iter().map(|v| -v).collect();
    c.push(1.0);
    c
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

/// All roots of the monic polynomial `t^r - a_{r-1} t^{r-1} - ... - a_0` by
/// Aberth–Ehrlich simultaneous iteration.
///
/// Starting points lie on a circle whose radius is the Gershgorin bound of the
/// companion matrix (last row `a_0 .. a_{r-1}`, ones on the superdiagonal).
pub fn poly_roots(a: &[f64]) -> Result<RootSet> {
    let r = a.len();
    if r == 0 {
        return Err(Error::Structure(
            "polynomial degree must be at least 1".into(),
        ));
    }
    let c = monic(a);
    let scale = a.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    if r == 1 {
        let z = Complex64::new(a[0], 0.0);
        return Ok(RootSet {
            roots: vec![z],
            residual: 0.0,
        });
    }

    // companion Gershgorin discs: radius 1 around 0, and sum|a_j| (j < r-1)
    // around a_{r-1}
    let tail: f64 = a[..r - 1].iter().map(|v| v.abs()).sum();
    let radius = 1.0_f64.max(a[r - 1].abs() + tail);
    // Aberth converges faster from a circle sized to the roots; the Cauchy-type
    // bound 2 max |a_j|^{1/(r-j)} is never larger than needed by much
    let cauchy = (0..r)
        .map(|j| 2.0 * libm::pow(a[j].abs(), 1.0 / (r - j) as f64))
        .fold(0.0_f64, f64::max);
    let start_radius = radius.min(cauchy.max(1e-3));
    let mut z: Vec<Complex64> = (0..r)
        .map(|k| Complex64::from_polar(start_radius, 2.0 * PI * k as f64 / r as f64 + 0.4))
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0_f64;
        for k in 0..r {
            let (p, dp) = horner(&c, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let mut repulse = Complex64::new(0.0, 0.0);
            for j in 0..r {
                if j != k {
                    repulse += (z[k] - z[j]).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulse);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1e-300));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }

    // Newton polish
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zk - p / dp;
            if horner(&c, next).0.norm() < p.norm() {
                *zk = next;
            } else {
                break;
            }
        }
    }

    let residual = z
        .iter()
        .map(|&zk| {
            let zr = zk.norm().max(1.0);
            horner(&c, zk).0.norm() / scale / libm::pow(zr, r as f64)
        })
        .fold(0.0_f64, f64::max);
    if residual > ROOT_RESIDUAL_TOL {
        return Err(Error::NonConvergence {
            what: if converged {
                "root refinement"
            } else {
                "Aberth-Ehrlich iteration"
            },
            iterations: MAX_ITER,
            residual,
        });
    }
    if !z.iter().all(|v| v.is_finite()) {
        return Err(Error::Numeric(format!("non-finite root in {z:?}")));
    }
    Ok(RootSet { roots: z, residual })
}

/// Recovers `a` (in the sign convention of [`poly_roots`]) from roots by
/// expanding `prod (t - z_k)`.
pub fn vieta_coefficients(roots: &[Complex64]) -> Vec<f64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * z;
        }
        c = next;
    }
    c.pop();
    c.into_iter().map(|v| -v.re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_real(rs: &RootSet) -> Vec<f64> {
        let mut v: Vec<f64> = rs.roots.iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn square_minus_one() {
        let rs = poly_roots(&[1.0, 0.0]).unwrap();
        let v = sorted_real(&rs);
        assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
        assert!(rs.roots.iter().all(|z| z.im.abs() < 1e-14));
    }

    #[test]
    fn linear() {
        let rs = poly_roots(&[2.5]).unwrap();
        assert_eq!(rs.roots, vec![Complex64::new(2.5, 0.0)]);
    }

    #[test]
    fn planted_cubic() {
        let planted = [-0.7, 0.25, 1.9];
        let zs: Vec<Complex64> = planted.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let a = vieta_coefficients(&zs);
        // t^3 - a2 t^2 - a1 t - a0 with a2 = sum of roots
        assert!((a[2] - 1.45).abs() < 1e-15);
        let v = sorted_real(&poly_roots(&a).unwrap());
        for (g, e) in v.iter().zip(&planted) {
            assert!((g - e).abs() < 1e-9);
        }
    }

    #[test]
    fn complex_pair_and_vieta_round_trip() {
        // t^4 + 1
        let a = [-1.0, 0.0, 0.0, 0.0];
        let rs = poly_roots(&a).unwrap();
        for z in &rs.roots {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
        let back = vieta_coefficients(&rs.roots);
        for (x, y) in back.iter().zip(&a) {
            assert!((x - y).abs() < 1e-7);
        }
    }

    #[test]
    fn empty_is_rejected() {
        assert!(poly_roots(&[]).is_err());
    }
}
