use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::linalg::{cholesky_solve, sym_eig, Matrix};
use crate::product::{grad_eval, hess_eval};
use crate::rng::{seeded, unit_vector};
use crate::tensor::HankelTensor;
use crate::{Error, Result};

/// Residual bound every returned eigenpair satisfies.
pub const EIG_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct HEigenPair {
    pub lambda: f64,
    /// Unit 2-norm, first component above `1e-10` in magnitude positive.
    pub x: Vec<f64>,
    /// `|H x^{m-1} - lambda x^{[m-1]}|_2`.
    pub residual: f64,
}

fn powi(x: &[f64], p: usize) -> Vec<f64> {
    x.iter().map(|v| libm::pow(*v, p as f64)).collect()
}

fn norm2(x: &[f64]) -> f64 {
    libm::sqrt(x.iter().map(|v| v * v).sum())
}

fn normalize(x: &mut [f64]) -> bool {
    let n = norm2(x);
    if !(n > 0.0) || !n.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= n);
    if let Some(first) = x.iter().copied().find(|v| v.abs() > 1e-10) {
        if first < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
    true
}

/// Least-squares eigenvalue for a fixed direction and the resulting residual.
fn rayleigh(t: &HankelTensor, x: &[f64]) -> Result<(f64, f64)> {
    let g = grad_eval(t, x)?;
    let p = powi(x, t.order() - 1);
    let pp: f64 = p.iter().map(|v| v * v).sum();
    let lambda = if pp > 0.0 {
        g.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>() / pp
    } else {
        0.0
    };
    let res = norm2(
        &g.iter()
            .zip(&p)
            .map(|(a, b)| a - lambda * b)
            .collect::<Vec<_>>(),
    );
    Ok((lambda, res))
}

/// `|H x^{m-1} - lambda x^{[m-1]}|_2` for `x` as given (not renormalized).
pub fn eigen_residual(t: &HankelTensor, lambda: f64, x: &[f64]) -> Result<f64> {
    let g = grad_eval(t, x)?;
    let p = powi(x, t.order() - 1);
    Ok(norm2(
        &g.iter()
            .zip(&p)
            .map(|(a, b)| a - lambda * b)
            .collect::<Vec<_>>(),
    ))
}

fn make_pair(t: &HankelTensor, mut x: Vec<f64>) -> Result<Option<HEigenPair>> {
    if !normalize(&mut x) {
        return Ok(None);
    }
    let (lambda, residual) = rayleigh(t, &x)?;
    Ok(Some(HEigenPair {
        lambda,
        x,
        residual,
    }))
}

/// Damped Gauss–Newton / Levenberg–Marquardt on
/// `F(x, lambda) = [H x^{m-1} - lambda x^{[m-1]}; (x.x - 1)/2]`.
fn newton_polish(t: &HankelTensor, x0: &[f64], max_iter: usize) -> Result<Option<HEigenPair>> {
    let n = t.dim();
    let m = t.order();
    let mut x = x0.to_vec();
    if !normalize(&mut x) {
        return Ok(None);
    }
    let (mut lambda, _) = rayleigh(t, &x)?;
    let system = |x: &[f64], lambda: f64| -> Result<Vec<f64>> {
        let g = grad_eval(t, x)?;
        let p = powi(x, m - 1);
        let mut f: Vec<f64> = g.iter().zip(&p).map(|(a, b)| a - lambda * b).collect();
        f.push(0.5 * (x.iter().map(|v| v * v).sum::<f64>() - 1.0));
        Ok(f)
    };
    let mut f = system(&x, lambda)?;
    let mut fnorm = norm2(&f);
    let mut mu = 1e-12;
    for _ in 0..max_iter {
        if fnorm <= 1e-14 {
            break;
        }
        let hm = hess_eval(t, &x)?;
        let dp = powi(&x, m.saturating_sub(2));
        let p = powi(&x, m - 1);
        let jac = Matrix::from_fn(n + 1, n + 1, |i, j| {
            if i < n && j < n {
                (m - 1) as f64 * (hm.get(i, j) - if i == j { lambda * dp[i] } else { 0.0 })
            } else if i < n {
                -p[i]
            } else if j < n {
                x[j]
            } else {
                0.0
            }
        });
        let jt = jac.transpose();
        let jtj = jt.matmul(&jac);
        let jtf = jt.matvec(&f);
        let scale = (0..n + 1)
            .map(|i| jtj.get(i, i))
            .fold(0.0_f64, f64::max)
            .max(1e-300);
        let mut improved = false;
        for _ in 0..30 {
            let reg = Matrix::from_fn(n + 1, n + 1, |i, j| {
                jtj.get(i, j) + if i == j { mu * scale } else { 0.0 }
            });
            let rhs: Vec<f64> = jtf.iter().map(|v| -v).collect();
            if let Ok(step) = cholesky_solve(&reg, &rhs) {
                let xn: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
                let ln = lambda + step[n];
                let fnew = system(&xn, ln)?;
                let nn = norm2(&fnew);
                if nn.is_finite() && nn < fnorm {
                    x = xn;
                    lambda = ln;
                    f = fnew;
                    fnorm = nn;
                    mu = (mu * 0.1).max(1e-15);
                    improved = true;
                    break;
                }
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    make_pair(t, x)
}

/// Which end of the spectrum the power iteration is pushed toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy)]
pub struct PowerOptions {
    /// Shift `s` in `x <- root(+-H x^{m-1} + s x^{[m-1]})`; `None` uses
    /// [`auto_shift`].
    pub shift: Option<f64>,
    pub direction: Direction,
    /// Cap on power iterations before handing over to Newton refinement.
    pub max_iter: usize,
    /// Cap on Newton refinement steps.
    pub polish_iter: usize,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions {
            shift: None,
            direction: Direction::Min,
            max_iter: 200,
            polish_iter: 60,
        }
    }
}

/// `m * sum|h_j| * n^{m-1}`, which bounds every entry of `H x^{m-1}` on the
/// unit sphere by a margin.
pub fn auto_shift(t: &HankelTensor) -> f64 {
    let s: f64 = t.generator().iter().map(|v| v.abs()).sum();
    t.order() as f64 * s * libm::pow(t.dim() as f64, (t.order() - 1) as f64)
}

/// Shifted power iteration for one H-eigenpair, followed by Newton refinement.
///
/// Each step forms `y = sigma H x^{m-1} + s x^{[m-1]}` (`sigma = -1` when
/// pushing toward the minimum), takes the componentwise `(m-1)`-th root and
/// renormalizes. For odd `m` the root is even, so the sign of each component is
/// carried over from the previous iterate.
pub fn heig_power(t: &HankelTensor, x0: &[f64], opts: &PowerOptions) -> Result<HEigenPair> {
    let m = t.order();
    if m < 2 {
        return Err(Error::Structure(
            "H-eigenpairs need order at least 2".into(),
        ));
    }
    if x0.len() != t.dim() {
        return Err(Error::Dimension {
            what: "start vector",
            expected: t.dim(),
            found: x0.len(),
        });
    }
    let shift = opts.shift.unwrap_or_else(|| auto_shift(t));
    let sigma = match opts.direction {
        Direction::Min => -1.0,
        Direction::Max => 1.0,
    };
    let root = 1.0 / (m - 1) as f64;
    let mut x = x0.to_vec();
    if !normalize(&mut x) {
        return Err(Error::Structure("start vector must be nonzero".into()));
    }
    let mut last_residual = f64::INFINITY;
    for _ in 0..opts.max_iter {
        let g = grad_eval(t, &x)?;
        let next: Vec<f64> = g
            .iter()
            .zip(&x)
            .map(|(gi, xi)| {
                let y = sigma * gi + shift * libm::pow(*xi, (m - 1) as f64);
                let r = libm::pow(y.abs(), root);
                if m % 2 == 0 {
                    r.copysign(y)
                } else {
                    r.copysign(*xi)
                }
            })
            .collect();
        x = next;
        if !normalize(&mut x) {
            break;
        }
        let (_, res) = rayleigh(t, &x)?;
        last_residual = res;
        if res < 1e-6 {
            break;
        }
    }
    match newton_polish(t, &x, opts.polish_iter)? {
        Some(pair) if pair.residual <= EIG_RESIDUAL_TOL => Ok(pair),
        Some(pair) => Err(Error::NonConvergence {
            what: "shifted power method",
            iterations: opts.max_iter,
            residual: pair.residual.min(last_residual),
        }),
        None => Err(Error::NonConvergence {
            what: "shifted power method",
            iterations: opts.max_iter,
            residual: last_residual,
        }),
    }
}

/// Outcome of a multi-start search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSummary {
    pub starts: usize,
    pub converged: usize,
    pub seed: u64,
    pub min: Option<HEigenPair>,
    pub max: Option<HEigenPair>,
}

/// Runs [`heig_power`] from `starts` random unit vectors, alternating the
/// minimum and maximum directions, and keeps the extreme converged pairs.
pub fn heig_search(
    t: &HankelTensor,
    starts: usize,
    seed: u64,
    base: &PowerOptions,
) -> Result<SearchSummary> {
    if t.order() < 2 {
        return Err(Error::Structure(
            "H-eigenpairs need order at least 2".into(),
        ));
    }
    let mut rng = seeded(seed);
    let mut summary = SearchSummary {
        starts,
        converged: 0,
        seed,
        min: None,
        max: None,
    };
    for i in 0..starts {
        let x0 = unit_vector(&mut rng, t.dim());
        let opts = PowerOptions {
            direction: if i % 2 == 0 {
                Direction::Min
            } else {
                Direction::Max
            },
            ..*base
        };
        let pair = match heig_power(t, &x0, &opts) {
            Ok(p) => p,
            Err(Error::NonConvergence { .. }) => continue,
            Err(e) => return Err(e),
        };
        summary.converged += 1;
        if summary
            .min
            .as_ref()
            .map_or(true, |p| pair.lambda < p.lambda)
        {
            summary.min = Some(pair.clone());
        }
        if summary
            .max
            .as_ref()
            .map_or(true, |p| pair.lambda > p.lambda)
        {
            summary.max = Some(pair);
        }
    }
    Ok(summary)
}

const CIRCLE_GRID: usize = 4096;
const SPHERE_POLAR: usize = 36;
const SPHERE_AZIMUTH: usize = 72;
/// More distinct pairs than this means eigenvectors form a continuum.
const CONTINUUM_THRESHOLD: usize = 64;

/// All real H-eigenpairs of a tensor of dimension at most 3, up to `x -> -x`.
///
/// Dimension 2 scans the sign of `g_0 x_1^{m-1} - g_1 x_0^{m-1}` over a dense
/// half-circle grid and refines every bracketed root; dimension 3 runs Newton
/// refinement from every point of a hemisphere grid. Results are sorted by
/// eigenvalue. A tensor whose every vector is an eigenvector (the zero tensor,
/// multiples of the identity matrix) is represented by the pairs at the
/// coordinate vectors; when eigenvectors form curves, one pair per distinct
/// eigenvalue is kept.
pub fn heig_all_small(t: &HankelTensor) -> Result<Vec<HEigenPair>> {
    let (m, n) = (t.order(), t.dim());
    if m < 2 {
        return Err(Error::Structure(
            "H-eigenpairs need order at least 2".into(),
        ));
    }
    if n > 3 || m > 8 {
        return Err(Error::Structure(format!(
            "exhaustive H-eigenpair search supports n <= 3 and m <= 8 (got m={m}, n={n})"
        )));
    }
    if n == 1 {
        let h0 = t.generator()[0];
        return Ok(vec![HEigenPair {
            lambda: h0,
            x: vec![1.0],
            residual: 0.0,
        }]);
    }
    if m == 2 {
        return matrix_pairs(t);
    }
    if t.generator().iter().all(|&v| v == 0.0) {
        return coordinate_pairs(t);
    }
    let mut pairs = if n == 2 {
        circle_scan(t)?
    } else {
        sphere_scan(t)?
    };
    pairs.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    if pairs.len() > CONTINUUM_THRESHOLD {
        // a curve of eigenvectors: keep one representative per eigenvalue
        let scale = t.generator().iter().fold(1.0_f64, |a, v| a.max(v.abs()));
        pairs.dedup_by(|b, a| (a.lambda - b.lambda).abs() <= 1e-9 * scale);
    }
    if m % 2 == 0 && pairs.is_empty() {
        return Err(Error::Numeric(
            "grid search found no H-eigenpair of an even-order tensor".into(),
        ));
    }
    Ok(pairs)
}

fn coordinate_pairs(t: &HankelTensor) -> Result<Vec<HEigenPair>> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        if let Some(p) = make_pair(t, e)? {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    Ok(out)
}

fn matrix_pairs(t: &HankelTensor) -> Result<Vec<HEigenPair>> {
    let n = t.dim();
    let mat = Matrix::from_fn(n, n, |i, j| t.generator()[i + j]);
    let eig = sym_eig(&mat)?;
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let x = eig.vectors.column(k);
        let residual = eigen_residual(t, eig.values[k], &x)?;
        out.push(HEigenPair {
            lambda: eig.values[k],
            x,
            residual,
        });
    }
    Ok(out)
}

fn push_unique(pairs: &mut Vec<HEigenPair>, p: HEigenPair) {
    if p.residual > EIG_RESIDUAL_TOL {
        return;
    }
    let dup = pairs.iter().any(|q| {
        let dx =
            p.x.iter()
                .zip(&q.x)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
        let dxn =
            p.x.iter()
                .zip(&q.x)
                .map(|(a, b)| (a + b).abs())
                .fold(0.0, f64::max);
        dx.min(dxn) < 1e-6 && (p.lambda - q.lambda).abs() <= 1e-7 * (1.0 + p.lambda.abs())
    });
    if !dup {
        pairs.push(p);
    }
}

fn circle_scan(t: &HankelTensor) -> Result<Vec<HEigenPair>> {
    let m = t.order();
    let phi = |theta: f64| -> Result<f64> {
        let x = [libm::cos(theta), libm::sin(theta)];
        let g = grad_eval(t, &x)?;
        Ok(g[0] * libm::pow(x[1], (m - 1) as f64) - g[1] * libm::pow(x[0], (m - 1) as f64))
    };
    let scale: f64 = t.generator().iter().map(|v| v.abs()).sum();
    let step = PI / CIRCLE_GRID as f64;
    let vals: Vec<f64> = (0..=CIRCLE_GRID)
        .map(|i| phi(i as f64 * step))
        .collect::<Result<_>>()?;
    if vals.iter().all(|v| v.abs() <= 1e-14 * scale) {
        return coordinate_pairs(t);
    }
    let mut pairs = Vec::new();
    let mut sign_changes = 0;
    for i in 0..CIRCLE_GRID {
        let (a, b) = (vals[i], vals[i + 1]);
        let mut candidate = None;
        if a == 0.0 {
            candidate = Some(i as f64 * step);
        } else if a * b < 0.0 {
            sign_changes += 1;
            let (mut lo, mut hi, mut flo) = (i as f64 * step, (i + 1) as f64 * step, a);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = phi(mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            candidate = Some(0.5 * (lo + hi));
        } else if i > 0 {
            // tangential roots: local minima of |phi| that nearly vanish
            let prev = vals[i - 1].abs();
            if a.abs() <= prev && a.abs() <= b.abs() && a.abs() < 1e-6 * scale {
                candidate = Some(i as f64 * step);
            }
        }
        if let Some(theta) = candidate {
            let x = vec![libm::cos(theta), libm::sin(theta)];
            let polished = newton_polish(t, &x, 20)?;
            if let Some(p) = polished {
                push_unique(&mut pairs, p);
            }
        }
    }
    if pairs.len() < sign_changes {
        return Err(Error::Numeric(format!(
            "grid resolution insufficient: {sign_changes} sign changes but {} eigenpairs",
            pairs.len()
        )));
    }
    Ok(pairs)
}

fn sphere_scan(t: &HankelTensor) -> Result<Vec<HEigenPair>> {
    let mut pairs = Vec::new();
    for i in 0..=SPHERE_POLAR {
        // upper hemisphere only: x and -x give the same eigenvalue
        let theta = 0.5 * PI * i as f64 / SPHERE_POLAR as f64;
        let ring = if i == 0 { 1 } else { SPHERE_AZIMUTH };
        for j in 0..ring {
            let phi = 2.0 * PI * j as f64 / ring as f64;
            let x = [
                libm::sin(theta) * libm::cos(phi),
                libm::sin(theta) * libm::sin(phi),
                libm::cos(theta),
            ];
            if let Some(p) = newton_polish(t, &x, 40)? {
                push_unique(&mut pairs, p);
            }
        }
    }
    Ok(pairs)
}
