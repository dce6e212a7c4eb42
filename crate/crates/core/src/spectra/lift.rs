use alloc::vec::Vec;

use crate::conv::{conv_power, correlate};
use crate::rng::{seeded, unit_vector};
use crate::{Error, Result};

/// Estimated extremes of `|y^{*q}|_m^m / |y|_{qm}^{qm}` over `y` in `R^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftBoundConstants {
    pub c1: f64,
    pub c2: f64,
    pub m: usize,
    pub q: usize,
    pub k: usize,
    /// Vectors attaining `c1` and `c2`.
    pub witness_min: Vec<f64>,
    pub witness_max: Vec<f64>,
    pub starts: usize,
    pub seed: u64,
    /// Mean ratio at the random starts, for judging the optimizer's progress.
    pub mean_start_ratio: f64,
}

/// `|y^{*q}|_m^m / |y|_{qm}^{qm}` for even `m`.
pub fn lift_ratio(y: &[f64], m: usize, q: usize) -> f64 {
    let w = conv_power(y, q);
    let num: f64 = w.iter().map(|v| libm::pow(v.abs(), m as f64)).sum();
    let den: f64 = y.iter().map(|v| libm::pow(v.abs(), (q * m) as f64)).sum();
    num / den
}

fn ratio_and_gradient(y: &[f64], m: usize, q: usize) -> (f64, Vec<f64>) {
    let k = y.len();
    let w = conv_power(y, q);
    let u = conv_power(y, q - 1);
    let num: f64 = w.iter().map(|v| libm::pow(*v, m as f64)).sum();
    let den: f64 = y.iter().map(|v| libm::pow(*v, (q * m) as f64)).sum();
    let r = num / den;
    // d num / d y_i = m q sum_l w_{i+l}^{m-1} u_l
    let wp: Vec<f64> = w.iter().map(|v| libm::pow(*v, (m - 1) as f64)).collect();
    let dn = correlate(&wp, &u, k);
    let grad = dn
        .iter()
        .zip(y)
        .map(|(d, yi)| {
            let dd = (q * m) as f64 * libm::pow(*yi, (q * m - 1) as f64);
            ((m * q) as f64 * d - r * dd) / den
        })
        .collect();
    (r, grad)
}

fn normalize(y: &mut [f64]) {
    let n = libm::sqrt(y.iter().map(|v| v * v).sum());
    y.iter_mut().for_each(|v| *v /= n);
}

/// Projected gradient with backtracking on the unit sphere; `sign = 1` for
/// ascent, `-1` for descent. The ratio is scale invariant, so the gradient is
/// already tangent to the sphere.
fn optimize(y0: &[f64], m: usize, q: usize, sign: f64) -> (f64, Vec<f64>) {
    let mut y = y0.to_vec();
    let (mut r, mut g) = ratio_and_gradient(&y, m, q);
    let mut step = 1.0;
    for _ in 0..500 {
        let gn = libm::sqrt(g.iter().map(|v| v * v).sum());
        if gn < 1e-13 {
            break;
        }
        let mut accepted = false;
        while step > 1e-14 {
            let mut cand: Vec<f64> = y.iter().zip(&g).map(|(a, b)| a + sign * step * b).collect();
            normalize(&mut cand);
            let (rc, gc) = ratio_and_gradient(&cand, m, q);
            if sign * (rc - r) >= 1e-4 * step * gn * gn {
                accepted = sign * (rc - r) > 1e-15 * r.abs();
                y = cand;
                r = rc;
                g = gc;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (r, y)
}

/// Multi-start estimate of the lift constants `c1 <= c2`.
///
/// `q = 1` and `k = 1` are exact (both constants equal one).
pub fn lift_constants(
    m: usize,
    q: usize,
    k: usize,
    starts: usize,
    seed: u64,
) -> Result<LiftBoundConstants> {
    if m == 0 || m % 2 != 0 || q == 0 || k == 0 {
        return Err(Error::Structure(alloc::format!(
            "lift constants need even m and positive q, k (got m={m}, q={q}, k={k})"
        )));
    }
    let mut e1 = alloc::vec![0.0; k];
    e1[0] = 1.0;
    if q == 1 || k == 1 {
        return Ok(LiftBoundConstants {
            c1: 1.0,
            c2: 1.0,
            m,
            q,
            k,
            witness_min: e1.clone(),
            witness_max: e1,
            starts: 0,
            seed,
            mean_start_ratio: 1.0,
        });
    }
    let mut rng = seeded(seed);
    // coordinate vectors give ratio 1; keep them as probes too
    let (mut c1, mut c2) = (lift_ratio(&e1, m, q), lift_ratio(&e1, m, q));
    let (mut wmin, mut wmax) = (e1.clone(), e1);
    let mut start_sum = 0.0;
    let starts = starts.max(1);
    for _ in 0..starts {
        let y0 = unit_vector(&mut rng, k);
        start_sum += lift_ratio(&y0, m, q);
        let (lo, ylo) = optimize(&y0, m, q, -1.0);
        if lo < c1 {
            c1 = lo;
            wmin = ylo;
        }
        let (hi, yhi) = optimize(&y0, m, q, 1.0);
        if hi > c2 {
            c2 = hi;
            wmax = yhi;
        }
    }
    // report exactly what the witnesses evaluate to
    let c1 = lift_ratio(&wmin, m, q).min(c1);
    let c2 = lift_ratio(&wmax, m, q).max(c2);
    Ok(LiftBoundConstants {
        c1,
        c2,
        m,
        q,
        k,
        witness_min: wmin,
        witness_max: wmax,
        starts,
        seed,
        mean_start_ratio: start_sum / starts as f64,
    })
}
