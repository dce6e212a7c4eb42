//! Augmented Vandermonde decompositions of strong Hankel tensors.
//!
//! A strong Hankel tensor of associated rank `r` is a positive combination
//!
//! ```text
//! H = sum_k alpha_k v_k^{om} + alpha_inf e_n^{om},   v_k = [1, xi_k, ..., xi_k^{n-1}]
//! ```
//!
//! with at most one "infinite pole" term on the last coordinate vector. The
//! decomposition is computed on the associated Hankel matrix (same generator,
//! same poles) and reinterpreted at tensor length.
//!
//! Steps, for the PSD associated matrix `H` of size `s` and rank `r`:
//!
//! 1. Factor `H = U diag(d) U^T`.
//! 2. If `r < s` and `e_s` lies in the range of `U`, peel
//!    `alpha_inf = (sum_j U(s,j)^2 / d_j)^{-1}` off the last generator entry and
//!    continue with the rank `r-1` remainder. At most one peel is possible.
//! 3. Solve the Yule–Walker system on the leading `r x r` block (positive
//!    definite for the remainder) for the recurrence `a`. When `r = s` the last
//!    right-hand side entry is the free parameter `gamma`.
//! 4. The roots of `t^r - a_{r-1} t^{r-1} - ... - a_0` are the poles; the
//!    Vandermonde system on `h_0 .. h_{r-1}` gives the coefficients.

use alloc::format;
use alloc::vec::Vec;

use crate::linalg::{
    cholesky_solve, least_squares, poly_roots, sym_eig, takagi_psd, vandermonde_solve, Matrix,
    TakagiFactorization, DEFAULT_RANK_TOL,
};
use crate::tensor::{HankelMatrix, HankelTensor};
use crate::{Error, Result};

/// Default tolerance on `|e_s - U U^T e_s|` for detecting the infinite pole.
pub const DEFAULT_CORNER_TOL: f64 = 1e-8;

/// Imaginary parts up to this fraction of `max(1, |root|)` are projected away.
pub const REAL_ROOT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct AvdOptions {
    /// Relative rank tolerance for the factorization.
    pub tol: f64,
    /// Range-membership tolerance for the corner test.
    pub corner_tol: f64,
    /// Free Yule–Walker entry used when the associated matrix has full rank.
    /// `None` extrapolates it from a least-squares recurrence fit.
    pub gamma: Option<f64>,
}

impl Default for AvdOptions {
    fn default() -> Self {
        AvdOptions {
            tol: DEFAULT_RANK_TOL,
            corner_tol: DEFAULT_CORNER_TOL,
            gamma: None,
        }
    }
}

/// Numbers recorded while decomposing, for reports.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AvdDiagnostics {
    /// Rank of the associated matrix before any peel.
    pub rank: usize,
    /// Size of the associated matrix.
    pub matrix_size: usize,
    /// `|e_s - U U^T e_s|` for the unpeeled factorization.
    pub corner_distance: f64,
    /// 2-norm condition number of the leading Yule–Walker block.
    pub yule_walker_condition: Option<f64>,
    /// `gamma` actually used (full-rank case only).
    pub gamma: Option<f64>,
    /// Largest imaginary part projected to the real axis.
    pub max_projected_imag: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeDecomposition {
    /// Finite poles, sorted descending.
    pub poles: Vec<f64>,
    /// Positive coefficients, one per finite pole.
    pub alphas: Vec<f64>,
    /// Coefficient of `e_n^{om}`; zero when the term is absent.
    pub alpha_inf: f64,
    pub order: usize,
    pub dim: usize,
    pub diagnostics: AvdDiagnostics,
}

impl VandermondeDecomposition {
    pub fn has_corner(&self) -> bool {
        self.alpha_inf > 0.0
    }

    /// Finite poles plus one for the corner term.
    pub fn term_count(&self) -> usize {
        self.poles.len() + usize::from(self.has_corner())
    }

    /// `g_j = sum_k alpha_k xi_k^j (+ alpha_inf on the last entry)`.
    pub fn generator(&self) -> Vec<f64> {
        let len = self.order * (self.dim - 1) + 1;
        let mut g = alloc::vec![0.0; len];
        for (&xi, &alpha) in self.poles.iter().zip(&self.alphas) {
            let mut p = alpha;
            for gj in g.iter_mut() {
                *gj += p;
                p *= xi;
            }
        }
        g[len - 1] += self.alpha_inf;
        g
    }
}

/// Rebuilds the Hankel tensor from a decomposition.
pub fn reconstruct(dec: &VandermondeDecomposition) -> Result<HankelTensor> {
    HankelTensor::new(dec.generator(), dec.order, dec.dim)
}

/// `max |g - h| / max |h|` between a decomposition and a generator.
pub fn relative_residual(dec: &VandermondeDecomposition, h: &[f64]) -> f64 {
    let g = dec.generator();
    let scale = h
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    g.iter()
        .zip(h)
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
        / scale
}

/// Coefficient `alpha` for which `H - alpha e_s e_s^T` is PSD of rank `r-1`.
///
/// Requires `e_s` to lie in the range of `U` to within `corner_tol`.
pub fn peel_corner(f: &TakagiFactorization, corner_tol: f64) -> Result<f64> {
    let dist = f.last_unit_distance();
    if f.rank() == 0 || dist > corner_tol {
        return Err(Error::Structure(format!(
            "last unit vector is not in the range of the factorization (distance {dist:e})"
        )));
    }
    let s = f.size();
    let inv: f64 = (0..f.rank())
        .map(|j| {
            let u = f.u.get(s - 1, j);
            u * u / f.d[j]
        })
        .sum();
    Ok(1.0 / inv)
}

/// Augmented Vandermonde decomposition of a strong Hankel tensor.
pub fn avd_decompose(t: &HankelTensor, opts: &AvdOptions) -> Result<VandermondeDecomposition> {
    let mut dec = matrix_avd(&t.associated_matrix()?, opts)?;
    dec.order = t.order();
    dec.dim = t.dim();
    Ok(dec)
}

/// Augmented Vandermonde decomposition of a PSD Hankel matrix (order 2).
pub fn matrix_avd(h: &HankelMatrix, opts: &AvdOptions) -> Result<VandermondeDecomposition> {
    let s = h.size();
    let f = takagi_psd(h, opts.tol)?;
    let mut diagnostics = AvdDiagnostics {
        rank: f.rank(),
        matrix_size: s,
        corner_distance: f.last_unit_distance(),
        ..AvdDiagnostics::default()
    };
    let mut generator = h.generator().to_vec();
    let mut alpha_inf = 0.0;
    let mut rank = f.rank();

    // A full-rank matrix always contains e_s in its range but also has a
    // standard decomposition; the corner branch applies only when r < s.
    if rank > 0 && rank < s && diagnostics.corner_distance <= opts.corner_tol {
        alpha_inf = peel_corner(&f, opts.corner_tol)?;
        generator[2 * s - 2] -= alpha_inf;
        let peeled = takagi_psd(&HankelMatrix::new(generator.clone())?, opts.tol)?;
        if peeled.rank() + 1 != rank {
            return Err(Error::Numeric(format!(
                "corner peel left rank {} instead of {}",
                peeled.rank(),
                rank - 1
            )));
        }
        if peeled.rank() > 0 && peeled.last_unit_distance() <= opts.corner_tol {
            return Err(Error::Numeric(
                "last unit vector still in range after peeling the corner term".into(),
            ));
        }
        rank = peeled.rank();
    }

    let (poles, alphas) = if rank == 0 {
        (Vec::new(), Vec::new())
    } else {
        finite_part(&generator, s, rank, opts, &mut diagnostics)?
    };

    Ok(VandermondeDecomposition {
        poles,
        alphas,
        alpha_inf,
        order: 2,
        dim: s,
        diagnostics,
    })
}

fn finite_part(
    h: &[f64],
    s: usize,
    r: usize,
    opts: &AvdOptions,
    diag: &mut AvdDiagnostics,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let block = Matrix::from_fn(r, r, |i, j| h[i + j]);
    let rhs: Vec<f64> = if r < s {
        h[r..2 * r].to_vec()
    } else {
        let gamma = match opts.gamma {
            Some(g) => g,
            None => extrapolate_gamma(h, r)?,
        };
        diag.gamma = Some(gamma);
        let mut v = h[r..2 * r - 1].to_vec();
        v.push(gamma);
        v
    };

    let eig = sym_eig(&block)?;
    let (hi, lo) = (eig.values[0], eig.values[r - 1]);
    diag.yule_walker_condition = Some(if lo > 0.0 { hi / lo } else { f64::INFINITY });

    let a = cholesky_solve(&block, &rhs)?;
    let roots = poly_roots(&a)?;
    let mut poles = Vec::with_capacity(r);
    for z in &roots.roots {
        let limit = REAL_ROOT_TOL * z.norm().max(1.0);
        if z.im.abs() > limit {
            return Err(Error::Numeric(format!(
                "recurrence has a complex root {z} (imaginary part above {limit:e}); \
                 the rank tolerance is probably too loose"
            )));
        }
        diag.max_projected_imag = diag.max_projected_imag.max(z.im.abs());
        poles.push(z.re);
    }
    let alphas = vandermonde_solve(&poles, &h[..r])?;
    if let Some(bad) = alphas.iter().find(|&&a| a <= 0.0) {
        return Err(Error::Numeric(format!(
            "non-positive Vandermonde coefficient {bad:e}"
        )));
    }
    let mut pairs: Vec<(f64, f64)> = poles.into_iter().zip(alphas).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    Ok(pairs.into_iter().unzip())
}

/// Fits an order-`r-1` recurrence to the whole generator in the least-squares
/// sense and predicts the next entry `h_{2r-1}` with it.
fn extrapolate_gamma(h: &[f64], r: usize) -> Result<f64> {
    let p = r - 1;
    if p == 0 {
        return Ok(0.0);
    }
    let len = h.len();
    let rows = len - p;
    let m = Matrix::from_fn(rows, p, |i, j| h[i + j]);
    let y = &h[p..];
    let b = least_squares(&m, y)?;
    Ok(b.iter().zip(&h[len - p..]).map(|(c, v)| c * v).sum())
}
