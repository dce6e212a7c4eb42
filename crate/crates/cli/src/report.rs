//! Serializable views of the core results, plus plain-text rendering.

use std::fmt::Write as _;

use hankel_core::linalg::TakagiFactorization;
use hankel_core::sos::SosDecomposition;
use hankel_core::spectra::{
    BoundCheck, FirstInheritanceReport, HEigenPair, LiftBoundConstants, NegativeSearch,
    QuantifiedBound, SearchSummary, SecondInheritanceReport,
};
use hankel_core::vandermonde::VandermondeDecomposition;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub method: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<EvalCrossCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalCrossCheck {
    pub naive: f64,
    pub fft: f64,
    pub conv: f64,
    /// Largest pairwise difference over `sum |h_j| |x|`-type magnitude.
    pub max_rel_diff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TakagiReport {
    pub rank: usize,
    pub d: Vec<f64>,
    /// Columns of `U`.
    pub u: Vec<Vec<f64>>,
    pub tol: f64,
}

impl From<&TakagiFactorization> for TakagiReport {
    fn from(f: &TakagiFactorization) -> Self {
        TakagiReport {
            rank: f.rank(),
            d: f.d.clone(),
            u: (0..f.rank()).map(|k| f.u.column(k)).collect(),
            tol: f.tol,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SosReport {
    pub q: usize,
    pub terms: Vec<Vec<f64>>,
    /// Each term as a polynomial in `x1..xn`; the form is the sum of squares.
    pub polynomials: Vec<String>,
}

impl From<&SosDecomposition> for SosReport {
    fn from(dec: &SosDecomposition) -> Self {
        SosReport {
            q: dec.q,
            terms: dec.terms.clone(),
            polynomials: dec
                .terms
                .iter()
                .map(|t| render_term(t, dec.q, dec.dim))
                .collect(),
        }
    }
}

fn multinomial(q: usize, exps: &[usize]) -> f64 {
    let fact = |k: usize| (1..=k).map(|v| v as f64).product::<f64>();
    fact(q) / exps.iter().map(|&e| fact(e)).product::<f64>()
}

fn fmt_coeff(c: f64) -> String {
    if (c - c.round()).abs() <= 1e-12 * c.abs().max(1.0) {
        format!("{}", c.round())
    } else {
        format!("{c:.6}")
    }
}

/// Expands `sum_j t_j (y^{*q})_j` into monomials of degree `q`.
pub fn render_term(t: &[f64], q: usize, n: usize) -> String {
    let scale = t.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let mut exps = vec![0usize; n];
    let mut parts: Vec<String> = Vec::new();
    // exponent vectors of total degree q, in lexicographically descending order
    fn walk(i: usize, left: usize, exps: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(exps.clone());
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            walk(i + 1, left - e, exps, out);
        }
    }
    let mut all = Vec::new();
    walk(0, q, &mut exps, &mut all);
    for e in all {
        let j: usize = e.iter().enumerate().map(|(i, k)| i * k).sum();
        let c = t[j] * multinomial(q, &e);
        if c.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            continue;
        }
        let mut mono = String::new();
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !mono.is_empty() {
                mono.push('*');
            }
            let _ = write!(mono, "x{}", i + 1);
            if k > 1 {
                let _ = write!(mono, "^{k}");
            }
        }
        let coeff = fmt_coeff(c.abs());
        let body = match (coeff.as_str(), mono.is_empty()) {
            ("1", false) => mono,
            (_, true) => coeff,
            (_, false) => format!("{coeff}*{mono}"),
        };
        let sign = if c < 0.0 { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if c < 0.0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign} {body}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AvdReport {
    pub poles: Vec<f64>,
    pub alphas: Vec<f64>,
    pub alpha_inf: f64,
    pub order: usize,
    pub dim: usize,
    pub residual: f64,
    pub rank: usize,
    pub matrix_size: usize,
    pub corner_distance: f64,
    pub yule_walker_condition: Option<f64>,
    pub gamma: Option<f64>,
    pub max_projected_imag: f64,
}

impl AvdReport {
    pub fn new(dec: &VandermondeDecomposition, residual: f64) -> Self {
        let d = &dec.diagnostics;
        AvdReport {
            poles: dec.poles.clone(),
            alphas: dec.alphas.clone(),
            alpha_inf: dec.alpha_inf,
            order: dec.order,
            dim: dec.dim,
            residual,
            rank: d.rank,
            matrix_size: d.matrix_size,
            corner_distance: d.corner_distance,
            yule_walker_condition: d.yule_walker_condition,
            gamma: d.gamma,
            max_projected_imag: d.max_projected_imag,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub residual: f64,
}

impl From<&HEigenPair> for PairReport {
    fn from(p: &HEigenPair) -> Self {
        PairReport {
            lambda: p.lambda,
            x: p.x.clone(),
            residual: p.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub starts: usize,
    pub converged: usize,
    pub seed: u64,
    pub min: Option<PairReport>,
    pub max: Option<PairReport>,
}

impl From<&SearchSummary> for SearchReport {
    fn from(s: &SearchSummary) -> Self {
        SearchReport {
            starts: s.starts,
            converged: s.converged,
            seed: s.seed,
            min: s.min.as_ref().map(PairReport::from),
            max: s.max.as_ref().map(PairReport::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HeigReport {
    pub search: SearchReport,
    /// Every real H-eigenpair, when the dimension allows an exhaustive scan.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all: Option<Vec<PairReport>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsReport {
    pub c1: f64,
    pub c2: f64,
    pub m: usize,
    pub q: usize,
    pub k: usize,
    pub witness_min: Vec<f64>,
    pub witness_max: Vec<f64>,
    pub starts: usize,
    pub seed: u64,
    pub mean_start_ratio: f64,
}

impl From<&LiftBoundConstants> for ConstantsReport {
    fn from(c: &LiftBoundConstants) -> Self {
        ConstantsReport {
            c1: c.c1,
            c2: c.c2,
            m: c.m,
            q: c.q,
            k: c.k,
            witness_min: c.witness_min.clone(),
            witness_max: c.witness_max.clone(),
            starts: c.starts,
            seed: c.seed,
            mean_start_ratio: c.mean_start_ratio,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub case: String,
    pub constant: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl From<&BoundCheck> for BoundReport {
    fn from(b: &BoundCheck) -> Self {
        BoundReport {
            case: b.case.into(),
            constant: b.constant,
            lhs: b.lhs,
            rhs: b.rhs,
            holds: b.holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FirstReport {
    pub property: &'static str,
    pub order: usize,
    pub q: usize,
    pub dim_low: usize,
    pub dim_high: usize,
    pub identity_samples: usize,
    pub identity_max_rel_error: f64,
    pub low_min: Option<f64>,
    pub low_max: Option<f64>,
    pub high_min: Option<f64>,
    pub high_max: Option<f64>,
    pub high_psd: Option<bool>,
    pub constants: Option<ConstantsReport>,
    pub min_bound: Option<BoundReport>,
    pub max_bound: Option<BoundReport>,
    pub passed: bool,
}

impl From<&FirstInheritanceReport> for FirstReport {
    fn from(r: &FirstInheritanceReport) -> Self {
        let s = r.spectra.as_ref();
        let passed = r.identity.max_rel_error <= 1e-12
            && s.map_or(true, |s| s.min_bound.holds && s.max_bound.holds);
        FirstReport {
            property: "first",
            order: r.order,
            q: r.q,
            dim_low: r.dim_low,
            dim_high: r.dim_high,
            identity_samples: r.identity.samples,
            identity_max_rel_error: r.identity.max_rel_error,
            low_min: s.map(|s| s.low_min),
            low_max: s.map(|s| s.low_max),
            high_min: s.map(|s| s.high_min),
            high_max: s.map(|s| s.high_max),
            high_psd: s.map(|s| s.high_psd),
            constants: s.map(|s| ConstantsReport::from(&s.constants)),
            min_bound: s.map(|s| BoundReport::from(&s.min_bound)),
            max_bound: s.map(|s| BoundReport::from(&s.max_bound)),
            passed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantifiedReport {
    pub constant: f64,
    pub constants: ConstantsReport,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub asserted: bool,
}

impl From<&QuantifiedBound> for QuantifiedReport {
    fn from(q: &QuantifiedBound) -> Self {
        QuantifiedReport {
            constant: q.constant,
            constants: ConstantsReport::from(&q.constants),
            lhs: q.lhs,
            rhs: q.rhs,
            holds: q.holds,
            asserted: q.asserted,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SecondReport {
    pub property: &'static str,
    pub order: usize,
    pub dim: usize,
    pub matrix_eigs: Vec<f64>,
    pub strong: bool,
    pub matrix_pd: bool,
    /// `none-found`, `nonnegative-found` or `negative-found`.
    pub verdict: &'static str,
    pub min_found: Option<f64>,
    pub search: Option<SearchReport>,
    pub exhaustive: Option<Vec<f64>>,
    pub quantified: Option<QuantifiedReport>,
    pub passed: bool,
}

impl From<&SecondInheritanceReport> for SecondReport {
    fn from(r: &SecondInheritanceReport) -> Self {
        let (verdict, min_found) = match r.negative {
            NegativeSearch::NoneFound => ("none-found", None),
            NegativeSearch::NonnegativeFound { min } => ("nonnegative-found", Some(min)),
            NegativeSearch::NegativeFound { min } => ("negative-found", Some(min)),
        };
        SecondReport {
            property: "second",
            order: r.order,
            dim: r.dim,
            matrix_eigs: r.matrix_eigs.clone(),
            strong: r.strong,
            matrix_pd: r.matrix_pd,
            verdict,
            min_found,
            search: r.search.as_ref().map(SearchReport::from),
            exhaustive: r.exhaustive.clone(),
            quantified: r.quantified.as_ref().map(QuantifiedReport::from),
            passed: r.passed(),
        }
    }
}

/// One line of a repro or acceptance report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn render_checks(title: &str, checks: &[Check]) -> String {
    let mut out = format!("{title}\n");
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in checks {
        let _ = writeln!(
            out,
            "  [{}] {:width$}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    out
}
