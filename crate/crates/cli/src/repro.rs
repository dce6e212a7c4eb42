//! End-to-end reproductions of the three worked examples, diffed against
//! embedded golden values.

use std::time::Instant;

use anyhow::Result;
use hankel_core::linalg::{takagi_psd, DEFAULT_RANK_TOL};
use hankel_core::product::poly_eval;
use hankel_core::rng::{gaussian_vector, seeded};
use hankel_core::sos::{from_factorization, sos_eval};
use hankel_core::vandermonde::{avd_decompose, relative_residual, AvdOptions};
use serde::Serialize;

use crate::generate;
use crate::report::{render_checks, Check};

/// Poles of the fourth-order, five-dimensional Hilbert tensor at
/// `gamma = 1/18`, to four decimals.
pub const HILBERT_POLES: [f64; 9] = [
    0.9841, 0.9180, 0.8067, 0.6621, 0.5000, 0.3379, 0.1933, 0.0820, 0.0159,
];
pub const HILBERT_ALPHAS: [f64; 9] = [
    0.0406, 0.0903, 0.1303, 0.1562, 0.1651, 0.1562, 0.1303, 0.0903, 0.0406,
];
/// Table precision.
pub const TABLE_TOL: f64 = 5e-4;
/// Mean relative pole error reported for 10000 trials of the third example.
pub const REFERENCE_MEAN_ERROR: f64 = 4.7895e-12;
/// Rank tolerance for the Hilbert reproduction: the 9x9 Hilbert matrix has
/// `lambda_min / lambda_max` near `2e-12`.
pub const HILBERT_RANK_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Serialize)]
pub struct ReproReport {
    pub example: u8,
    pub passed: bool,
    pub elapsed_seconds: f64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<TrialStats>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialStats {
    pub trials: usize,
    pub seed: u64,
    pub dim: usize,
    pub mean_relative_error: f64,
    pub max_relative_error: f64,
    pub reference_mean_error: f64,
    pub corner_detected: usize,
    pub alpha_inf_min: f64,
    pub alpha_inf_max: f64,
    pub failures: Vec<String>,
}

impl ReproReport {
    fn finish(example: u8, start: Instant, checks: Vec<Check>, trials: Option<TrialStats>) -> Self {
        ReproReport {
            example,
            passed: checks.iter().all(|c| c.passed),
            elapsed_seconds: start.elapsed().as_secs_f64(),
            checks,
            trials,
        }
    }

    pub fn render(&self) -> String {
        let mut out = render_checks(
            &format!(
                "example {}: {} ({:.3} s)",
                self.example,
                if self.passed { "pass" } else { "FAIL" },
                self.elapsed_seconds
            ),
            &self.checks,
        );
        if let Some(t) = &self.trials {
            out.push_str(&format!(
                "  mean relative pole error {:.4e} over {} trials (reference {:.4e} over 10000)\n",
                t.mean_relative_error, t.trials, t.reference_mean_error
            ));
        }
        out
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Takagi factorization and SOS decomposition of the first example.
pub fn example_one(seed: u64) -> Result<ReproReport> {
    let start = Instant::now();
    let t = generate::example_one().tensor()?;
    let mut checks = Vec::new();
    let f = takagi_psd(&t.associated_matrix()?, DEFAULT_RANK_TOL)?;
    checks.push(Check::new(
        "rank",
        f.rank() == 2,
        format!("r = {}", f.rank()),
    ));
    let d_ok = f.rank() == 2 && close(f.d[0], 3.0, 1e-12) && close(f.d[1], 2.0, 1e-12);
    checks.push(Check::new("weights", d_ok, format!("d = {:?}", f.d)));

    let (a, b) = (1.0 / 3f64.sqrt(), 1.0 / 2f64.sqrt());
    let u_expect = [[a, 0.0, a, 0.0, a], [0.0, b, 0.0, b, 0.0]];
    let u_ok = f.rank() == 2
        && (0..2).all(|k| {
            let col = f.u.column(k);
            let plus = col
                .iter()
                .zip(&u_expect[k])
                .all(|(x, y)| close(*x, *y, 1e-12));
            let minus = col
                .iter()
                .zip(&u_expect[k])
                .all(|(x, y)| close(*x, -*y, 1e-12));
            plus || minus
        });
    checks.push(Check::new("vectors", u_ok, "columns of U up to sign"));

    let dec = from_factorization(&f, 2, 3);
    let golden = [[1.0, 0.0, 1.0, 0.0, 1.0], [0.0, 1.0, 0.0, 1.0, 0.0]];
    let matches =
        |term: &Vec<f64>, g: &[f64; 5]| term.iter().zip(g).all(|(x, y)| close(x.abs(), *y, 1e-12));
    let terms_ok = dec.rank() == 2
        && ((matches(&dec.terms[0], &golden[0]) && matches(&dec.terms[1], &golden[1]))
            || (matches(&dec.terms[0], &golden[1]) && matches(&dec.terms[1], &golden[0])));
    checks.push(Check::new(
        "sos terms",
        terms_ok,
        format!("{:?}", dec.terms),
    ));

    let mut rng = seeded(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let y = gaussian_vector(&mut rng, 3);
        let (s, _) = sos_eval(&dec, &y)?;
        let p = poly_eval(&t, &y)?;
        worst = worst.max((s - p).abs() / p.abs().max(f64::MIN_POSITIVE));
    }
    checks.push(Check::new(
        "sos_eval = poly_eval",
        worst <= 1e-10,
        format!("max relative difference {worst:.3e} on 100 vectors"),
    ));
    let at_ones = poly_eval(&t, &[1.0, 1.0, 1.0])?;
    checks.push(Check::new(
        "value at ones",
        close(at_ones, 41.0, 1e-12),
        format!("{at_ones}"),
    ));
    let elapsed = start.elapsed().as_secs_f64();
    checks.push(Check::new(
        "runtime",
        elapsed < 1.0,
        format!("{elapsed:.3} s < 1 s"),
    ));
    Ok(ReproReport::finish(1, start, checks, None))
}

/// Augmented Vandermonde decomposition of the Hilbert tensor with
/// `gamma = 1/18`.
pub fn example_two() -> Result<ReproReport> {
    let start = Instant::now();
    let t = generate::hilbert(4, 5)?.tensor()?;
    let opts = AvdOptions {
        tol: HILBERT_RANK_TOL,
        gamma: Some(1.0 / 18.0),
        ..AvdOptions::default()
    };
    let dec = avd_decompose(&t, &opts)?;
    let mut checks = Vec::new();
    checks.push(Check::new(
        "term count",
        dec.poles.len() == 9,
        format!("{} poles", dec.poles.len()),
    ));
    let pole_err = dec
        .poles
        .iter()
        .zip(&HILBERT_POLES)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let alpha_err = dec
        .alphas
        .iter()
        .zip(&HILBERT_ALPHAS)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let counted = dec.poles.len() == 9;
    checks.push(Check::new(
        "poles",
        counted && pole_err <= TABLE_TOL,
        format!("max |xi - table| = {pole_err:.2e}"),
    ));
    checks.push(Check::new(
        "coefficients",
        counted && alpha_err <= TABLE_TOL,
        format!("max |alpha - table| = {alpha_err:.2e}"),
    ));
    checks.push(Check::new(
        "positive",
        dec.alphas.iter().all(|a| *a > 0.0),
        "all alpha_k > 0",
    ));
    checks.push(Check::new(
        "no corner term",
        !dec.has_corner(),
        format!("alpha_inf = {}", dec.alpha_inf),
    ));
    let res = relative_residual(&dec, t.generator());
    checks.push(Check::new(
        "reconstruction",
        res <= 1e-8,
        format!("relative residual {res:.2e}"),
    ));
    let elapsed = start.elapsed().as_secs_f64();
    checks.push(Check::new(
        "runtime",
        elapsed < 1.0,
        format!("{elapsed:.3} s < 1 s"),
    ));
    Ok(ReproReport::finish(2, start, checks, None))
}

/// Random planted tensors with poles `{0, xi1, xi2}` and a corner term.
pub fn example_three(trials: usize, seed: u64) -> Result<ReproReport> {
    const DIM: usize = 10;
    let start = Instant::now();
    let mut rng = seeded(seed);
    let mut stats = TrialStats {
        trials,
        seed,
        dim: DIM,
        mean_relative_error: 0.0,
        max_relative_error: 0.0,
        reference_mean_error: REFERENCE_MEAN_ERROR,
        corner_detected: 0,
        alpha_inf_min: f64::INFINITY,
        alpha_inf_max: f64::NEG_INFINITY,
        failures: Vec::new(),
    };
    let mut total = 0.0;
    let mut alpha_inf_ok = true;
    for trial in 0..trials {
        let file = generate::example_three(&mut rng, DIM)?;
        let truth = file.planted.clone().expect("planted");
        let dec = match avd_decompose(&file.tensor()?, &AvdOptions::default()) {
            Ok(d) => d,
            Err(e) => {
                stats.failures.push(format!("trial {trial}: {e}"));
                total += 1.0;
                continue;
            }
        };
        if dec.has_corner() {
            stats.corner_detected += 1;
        }
        stats.alpha_inf_min = stats.alpha_inf_min.min(dec.alpha_inf);
        stats.alpha_inf_max = stats.alpha_inf_max.max(dec.alpha_inf);
        alpha_inf_ok &= (dec.alpha_inf - 1.0).abs() <= 1e-6;
        let mut err = 0.0;
        for xi in &truth.poles[1..] {
            let nearest = dec
                .poles
                .iter()
                .map(|p| (p - xi).abs())
                .fold(f64::INFINITY, f64::min);
            err += nearest / xi.abs();
        }
        let err = err / 2.0;
        total += err;
        stats.max_relative_error = stats.max_relative_error.max(err);
    }
    stats.mean_relative_error = if trials > 0 {
        total / trials as f64
    } else {
        0.0
    };
    let mut checks = vec![
        Check::new(
            "decompositions",
            stats.failures.is_empty(),
            format!("{} of {trials} failed", stats.failures.len()),
        ),
        Check::new(
            "mean pole error",
            stats.mean_relative_error <= 1e-8,
            format!(
                "{:.3e} <= 1e-8 (max {:.3e})",
                stats.mean_relative_error, stats.max_relative_error
            ),
        ),
        Check::new(
            "corner detected",
            stats.corner_detected == trials,
            format!("{} of {trials}", stats.corner_detected),
        ),
        Check::new(
            "corner weight",
            alpha_inf_ok && stats.failures.is_empty(),
            format!(
                "alpha_inf in [{:.9}, {:.9}]",
                stats.alpha_inf_min, stats.alpha_inf_max
            ),
        ),
    ];
    let elapsed = start.elapsed().as_secs_f64();
    checks.push(Check::new(
        "runtime",
        elapsed < 30.0,
        format!("{elapsed:.3} s < 30 s"),
    ));
    Ok(ReproReport::finish(3, start, checks, Some(stats)))
}
