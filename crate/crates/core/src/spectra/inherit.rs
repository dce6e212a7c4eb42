use alloc::format;
use alloc::vec::Vec;

use super::heig::{heig_all_small, heig_search, PowerOptions, SearchSummary};
use super::lift::{lift_constants, LiftBoundConstants};
use crate::conv::conv_power;
use crate::linalg::sym_eig;
use crate::product::poly_eval;
use crate::rng::{gaussian_vector, seeded};
use crate::tensor::HankelTensor;
use crate::{Error, Result};

/// Additive slack on every bound comparison.
pub const BOUND_SLACK: f64 = 1e-8;

/// Relative threshold below which an associated-matrix eigenvalue counts as zero.
pub const MATRIX_SIGN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Random vectors for the lifting identity.
    pub samples: usize,
    /// Multi-start count for the power search.
    pub starts: usize,
    /// Random starts for the lift-constant optimizer.
    pub lift_starts: usize,
    pub seed: u64,
    pub power: PowerOptions,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            samples: 100,
            starts: 500,
            lift_starts: 200,
            seed: 0,
            power: PowerOptions::default(),
        }
    }
}

/// Smallest and largest H-eigenvalue, when they can be computed exhaustively:
/// matrices of any size, or tensors with `n <= 3`. `None` otherwise, or when
/// no real H-eigenvalue was found.
pub fn extreme_heigs(t: &HankelTensor) -> Result<Option<(f64, f64)>> {
    if t.order() == 2 {
        let n = t.dim();
        let mat = crate::linalg::Matrix::from_fn(n, n, |i, j| t.generator()[i + j]);
        let eig = sym_eig(&mat)?;
        return Ok(Some((eig.values[n - 1], eig.values[0])));
    }
    if t.dim() > 3 || t.order() > 8 {
        return Ok(None);
    }
    let pairs = heig_all_small(t)?;
    Ok(match (pairs.first(), pairs.last()) {
        (Some(lo), Some(hi)) => Some((lo.lambda, hi.lambda)),
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub samples: usize,
    /// `|H_high y^{qm} - H_low (y^{*q})^m|`, relative to the same polynomial
    /// evaluated with `|h|` and `|y|`.
    pub max_rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    /// Which branch of the case split was used.
    pub case: &'static str,
    pub constant: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstSpectra {
    pub low_min: f64,
    pub low_max: f64,
    pub high_min: f64,
    pub high_max: f64,
    pub high_psd: bool,
    pub high_nsd: bool,
    pub constants: LiftBoundConstants,
    /// `lambda_min(high) >= c * lambda_min(low)`.
    pub min_bound: BoundCheck,
    /// `lambda_max(high) <= c * lambda_max(low)`.
    pub max_bound: BoundCheck,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstInheritanceReport {
    pub order: usize,
    pub q: usize,
    pub dim_low: usize,
    pub dim_high: usize,
    pub identity: IdentityCheck,
    /// Present when both tensors admit an exhaustive spectrum.
    pub spectra: Option<FirstSpectra>,
}

fn abs_tensor(t: &HankelTensor) -> HankelTensor {
    let h = t.generator().iter().map(|v| v.abs()).collect();
    HankelTensor::new(h, t.order(), t.dim()).expect("same shape")
}

/// Checks the lifting identity and, where spectra are computable, the
/// two-sided extremal H-eigenvalue bounds between `low` and its order-`q`
/// lift.
pub fn check_first_inheritance(
    low: &HankelTensor,
    q: usize,
    opts: &CheckOptions,
) -> Result<FirstInheritanceReport> {
    check_first_inheritance_with(low, q, opts, None)
}

/// As [`check_first_inheritance`], reusing `constants` when they were
/// computed for the same `(m, q, k)`.
pub fn check_first_inheritance_with(
    low: &HankelTensor,
    q: usize,
    opts: &CheckOptions,
    constants: Option<&LiftBoundConstants>,
) -> Result<FirstInheritanceReport> {
    let m = low.order();
    if m % 2 != 0 {
        return Err(Error::Structure(format!(
            "first inheritance needs an even order, got {m}"
        )));
    }
    let high = low.higher_order_associate(q)?;
    let k = high.dim();
    let abs_low = abs_tensor(low);
    let mut rng = seeded(opts.seed);
    let mut max_rel_error: f64 = 0.0;
    for _ in 0..opts.samples {
        let y = gaussian_vector(&mut rng, k);
        let w = conv_power(&y, q);
        let a = poly_eval(&high, &y)?;
        let b = poly_eval(low, &w)?;
        let ya: Vec<f64> = y.iter().map(|v| v.abs()).collect();
        let scale = poly_eval(&abs_low, &conv_power(&ya, q))?;
        if scale > 0.0 {
            max_rel_error = max_rel_error.max((a - b).abs() / scale);
        } else if a != b {
            max_rel_error = f64::INFINITY;
        }
    }
    let identity = IdentityCheck {
        samples: opts.samples,
        max_rel_error,
    };
    let spectra = match (extreme_heigs(low)?, extreme_heigs(&high)?) {
        (Some((low_min, low_max)), Some((high_min, high_max))) => {
            let constants = match constants {
                Some(c) if (c.m, c.q, c.k) == (m, q, k) => c.clone(),
                _ => lift_constants(m, q, k, opts.lift_starts, opts.seed)?,
            };
            let scale = 1e-10 * high.generator().iter().fold(1.0_f64, |a, v| a.max(v.abs()));
            let high_psd = high_min >= -scale;
            let high_nsd = high_max <= scale;
            let (case, c) = if high_psd {
                ("lifted PSD: c1", constants.c1)
            } else {
                ("lifted not PSD: c2", constants.c2)
            };
            let min_bound = BoundCheck {
                case,
                constant: c,
                lhs: high_min,
                rhs: c * low_min,
                holds: high_min >= c * low_min - BOUND_SLACK,
            };
            let (case, c) = if high_nsd {
                ("lifted NSD: c1", constants.c1)
            } else {
                ("lifted not NSD: c2", constants.c2)
            };
            let max_bound = BoundCheck {
                case,
                constant: c,
                lhs: high_max,
                rhs: c * low_max,
                holds: high_max <= c * low_max + BOUND_SLACK,
            };
            Some(FirstSpectra {
                low_min,
                low_max,
                high_min,
                high_max,
                high_psd,
                high_nsd,
                constants,
                min_bound,
                max_bound,
            })
        }
        _ => None,
    };
    Ok(FirstInheritanceReport {
        order: m,
        q,
        dim_low: low.dim(),
        dim_high: k,
        identity,
        spectra,
    })
}

/// What the search for negative H-eigenvalues turned up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NegativeSearch {
    /// No real H-eigenpair converged; absence is not a certificate.
    NoneFound,
    NonnegativeFound {
        min: f64,
    },
    NegativeFound {
        min: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantifiedBound {
    pub constant: f64,
    pub constants: LiftBoundConstants,
    /// Smallest H-eigenvalue found.
    pub lhs: f64,
    /// `c * lambda_min(H)`.
    pub rhs: f64,
    pub holds: bool,
    /// False when the hypotheses do not cover this instance, in which case
    /// `holds` is informational only.
    pub asserted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondInheritanceReport {
    pub order: usize,
    pub dim: usize,
    /// Eigenvalues of the associated matrix, descending.
    pub matrix_eigs: Vec<f64>,
    pub strong: bool,
    pub matrix_pd: bool,
    pub search: Option<SearchSummary>,
    /// All H-eigenvalues, ascending, when `n <= 3`.
    pub exhaustive: Option<Vec<f64>>,
    pub negative: NegativeSearch,
    pub quantified: Option<QuantifiedBound>,
}

impl SecondInheritanceReport {
    /// Strong tensors must not show a negative H-eigenvalue, and every
    /// asserted quantified bound must hold.
    pub fn passed(&self) -> bool {
        let sign_ok =
            !self.strong || !matches!(self.negative, NegativeSearch::NegativeFound { .. });
        let bound_ok = self
            .quantified
            .as_ref()
            .map_or(true, |b| !b.asserted || b.holds);
        sign_ok && bound_ok
    }
}

/// Relates the sign pattern of the associated matrix to the H-eigenvalues of
/// the tensor.
pub fn check_second_inheritance(
    t: &HankelTensor,
    opts: &CheckOptions,
) -> Result<SecondInheritanceReport> {
    let (m, n) = (t.order(), t.dim());
    if m < 2 {
        return Err(Error::Structure(
            "H-eigenpairs need order at least 2".into(),
        ));
    }
    let mat = t.associated_matrix()?;
    let eig = sym_eig(&mat.to_dense())?;
    let norm = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let mat_min = *eig.values.last().expect("nonempty");
    // rounding level of the dense eigensolver
    let strong = mat_min >= -MATRIX_SIGN_TOL * norm;
    let matrix_pd = mat_min > MATRIX_SIGN_TOL * norm;

    let exhaustive = if n <= 3 && m <= 8 {
        Some(
            heig_all_small(t)?
                .into_iter()
                .map(|p| p.lambda)
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let search = if exhaustive.is_none() {
        Some(heig_search(t, opts.starts, opts.seed, &opts.power)?)
    } else {
        None
    };
    let found_min = match (&exhaustive, &search) {
        (Some(all), _) => all.first().copied(),
        (None, Some(s)) => s.min.as_ref().map(|p| p.lambda),
        _ => None,
    };
    let negative = match found_min {
        None => NegativeSearch::NoneFound,
        Some(v) if v < -BOUND_SLACK => NegativeSearch::NegativeFound { min: v },
        Some(v) => NegativeSearch::NonnegativeFound { min: v },
    };
    let quantified = match found_min {
        Some(lhs) if strong => {
            let q = if m % 2 == 0 { m / 2 } else { (m - 1) / 2 };
            let constants = lift_constants(2, q, n, opts.lift_starts, opts.seed)?;
            let c = constants.c1;
            let rhs = c * mat_min.max(0.0);
            Some(QuantifiedBound {
                constant: c,
                constants,
                lhs,
                rhs,
                holds: lhs >= rhs - BOUND_SLACK,
                asserted: m % 2 == 0 || matrix_pd,
            })
        }
        _ => None,
    };
    Ok(SecondInheritanceReport {
        order: m,
        dim: n,
        matrix_eigs: eig.values,
        strong,
        matrix_pd,
        search,
        exhaustive,
        negative,
        quantified,
    })
}
