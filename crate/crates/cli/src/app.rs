use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hankel_core::linalg::DEFAULT_RANK_TOL;
use hankel_core::product::{poly_eval, tvp_fft, tvp_naive};
use hankel_core::sos::sos_decompose;
use hankel_core::spectra::{
    check_first_inheritance, check_second_inheritance, heig_all_small, heig_search, CheckOptions,
    PowerOptions,
};
use hankel_core::vandermonde::{avd_decompose, relative_residual, AvdOptions};
use hankel_core::HankelTensor;

use crate::generate;
use crate::io::{to_json, TensorFile};
use crate::report::{
    AvdReport, EvalCrossCheck, EvalReport, FirstReport, HeigReport, PairReport, SearchReport,
    SecondReport, SosReport,
};
use crate::repro;

#[derive(Debug, Parser)]
#[command(
    name = "hankel",
    version,
    about = "Hankel tensor products, decompositions and H-eigenvalue checks"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    #[arg(long, env = "HANKEL_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a tensor file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output path; stdout when omitted.
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Evaluate the form H x^m.
    Eval {
        file: PathBuf,
        /// Comma-separated vector.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Method::Fft)]
        method: Method,
        /// Also run the other two methods and report their agreement.
        #[arg(long)]
        verify: bool,
    },
    /// Sum-of-squares decomposition of an even-order strong Hankel tensor.
    Sos {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        tol: f64,
    },
    /// Augmented Vandermonde decomposition of a strong Hankel tensor.
    Avd {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        tol: f64,
        /// Free Yule-Walker entry for full-rank input.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
    },
    /// Multi-start search for extreme H-eigenvalues.
    Heig {
        file: PathBuf,
        #[arg(long, default_value_t = 500)]
        starts: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Check an inheritance property on a tensor.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Order multiplier for the first property.
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 500)]
        starts: usize,
        /// Random starts for the lift-constant optimizer.
        #[arg(long, default_value_t = 200)]
        lift_starts: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Reproduce one of the worked examples.
    Repro {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        example: u8,
        /// Trials for the third example.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// h_j = 1/(j+1).
    Hilbert { order: usize, dim: usize },
    /// All-zero generator.
    Zero { order: usize, dim: usize },
    /// sum alpha_k v_k^{om} + alpha_inf e_n^{om}.
    Planted {
        order: usize,
        dim: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        poles: Vec<f64>,
        /// Defaults to all ones.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = 0.0)]
        alpha_inf: f64,
    },
    /// The third example: poles {0, xi1, xi2} drawn from the seed, unit corner.
    ExampleThree {
        #[arg(long, default_value_t = 10)]
        dim: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Planted strong tensor with random separated poles.
    RandomStrong {
        order: usize,
        dim: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Uniform random generator in [-1, 1].
    Random {
        order: usize,
        dim: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Validate and rewrite an existing file.
    FromFile { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Naive,
    Fft,
    Conv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    First,
    Second,
}

/// What a command printed and how the process should exit.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn emit<T: serde::Serialize>(
    json: bool,
    value: &T,
    text: impl FnOnce(&T) -> String,
) -> Result<String> {
    if json {
        to_json(value)
    } else {
        Ok(text(value))
    }
}

fn load(path: &PathBuf) -> Result<HankelTensor> {
    TensorFile::read(path)?.tensor()
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.10}")).collect();
    format!("[{}]", parts.join(", "))
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let json = cli.json;
    match cli.command {
        Command::Gen { kind, out } => {
            let file = match kind {
                GenKind::Hilbert { order, dim } => generate::hilbert(order, dim)?,
                GenKind::Zero { order, dim } => generate::zero(order, dim)?,
                GenKind::Planted {
                    order,
                    dim,
                    poles,
                    alphas,
                    alpha_inf,
                } => {
                    let alphas = if alphas.is_empty() {
                        vec![1.0; poles.len()]
                    } else {
                        alphas
                    };
                    generate::planted(order, dim, &poles, &alphas, alpha_inf)?
                }
                GenKind::ExampleThree { dim, seed } => {
                    let mut rng = hankel_core::rng::seeded(seed.seed);
                    let mut f = generate::example_three(&mut rng, dim)?;
                    f.seed = Some(seed.seed);
                    f
                }
                GenKind::RandomStrong {
                    order,
                    dim,
                    rank,
                    seed,
                } => generate::random_strong(order, dim, rank, seed.seed)?,
                GenKind::Random { order, dim, seed } => {
                    generate::random_uniform(order, dim, seed.seed)?
                }
                GenKind::FromFile { path } => TensorFile::read(&path)?,
            };
            match out {
                Some(path) => {
                    file.write(&path)?;
                    Ok(Outcome::ok(format!("wrote {}", path.display())))
                }
                None => Ok(Outcome::ok(to_json(&file)?)),
            }
        }
        Command::Eval {
            file,
            x,
            method,
            verify,
        } => {
            let t = load(&file)?;
            let xs: Vec<&[f64]> = vec![&x; t.order()];
            let naive = || tvp_naive(&t, &xs);
            let fft = || tvp_fft(&t, &xs);
            let conv = || poly_eval(&t, &x);
            let value = match method {
                Method::Naive => naive()?,
                Method::Fft => fft()?,
                Method::Conv => conv()?,
            };
            let cross = if verify {
                let (a, b, c) = (naive()?, fft()?, conv()?);
                let habs: Vec<f64> = t.generator().iter().map(|v| v.abs()).collect();
                let xabs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
                let scale = poly_eval(&HankelTensor::new(habs, t.order(), t.dim())?, &xabs)?;
                let diff = (a - b).abs().max((a - c).abs()).max((b - c).abs());
                Some(EvalCrossCheck {
                    naive: a,
                    fft: b,
                    conv: c,
                    max_rel_diff: if scale > 0.0 { diff / scale } else { diff },
                })
            } else {
                None
            };
            let report = EvalReport {
                method: format!("{method:?}").to_lowercase(),
                value,
                verify: cross,
            };
            Ok(Outcome::ok(emit(json, &report, |r| {
                let mut s = format!("{}", r.value);
                if let Some(v) = &r.verify {
                    s.push_str(&format!(
                        "\nnaive {}  fft {}  conv {}  max relative difference {:.2e}",
                        v.naive, v.fft, v.conv, v.max_rel_diff
                    ));
                }
                s
            })?))
        }
        Command::Sos { file, tol } => {
            let t = load(&file)?;
            let dec = sos_decompose(&t, tol)?;
            let report = SosReport::from(&dec);
            Ok(Outcome::ok(emit(json, &report, |r| {
                let mut s = format!("{} squares of degree-{} forms\n", r.terms.len(), r.q);
                for (term, poly) in r.terms.iter().zip(&r.polynomials) {
                    s.push_str(&format!("  ({poly})^2    generator {}\n", fmt_vec(term)));
                }
                s.trim_end().to_string()
            })?))
        }
        Command::Avd { file, tol, gamma } => {
            let t = load(&file)?;
            let opts = AvdOptions {
                tol,
                gamma,
                ..AvdOptions::default()
            };
            let dec = avd_decompose(&t, &opts)?;
            let report = AvdReport::new(&dec, relative_residual(&dec, t.generator()));
            Ok(Outcome::ok(emit(json, &report, |r| {
                let mut s = format!("{:>4}  {:>14}  {:>14}\n", "k", "xi_k", "alpha_k");
                for (k, (p, a)) in r.poles.iter().zip(&r.alphas).enumerate() {
                    s.push_str(&format!("{:>4}  {:>14.10}  {:>14.10}\n", k + 1, p, a));
                }
                if r.alpha_inf > 0.0 {
                    s.push_str(&format!(
                        "{:>4}  {:>14}  {:>14.10}\n",
                        "inf", "-", r.alpha_inf
                    ));
                }
                s.push_str(&format!(
                    "relative residual {:.3e}, rank {} of {}",
                    r.residual, r.rank, r.matrix_size
                ));
                s
            })?))
        }
        Command::Heig { file, starts, seed } => {
            let t = load(&file)?;
            let search = heig_search(&t, starts, seed.seed, &PowerOptions::default())?;
            let all = if t.dim() <= 3 && t.order() <= 8 {
                Some(
                    heig_all_small(&t)?
                        .iter()
                        .map(PairReport::from)
                        .collect::<Vec<_>>(),
                )
            } else {
                None
            };
            let report = HeigReport {
                search: SearchReport::from(&search),
                all,
            };
            Ok(Outcome::ok(emit(json, &report, |r| {
                let s = &r.search;
                let mut out = format!(
                    "{} of {} starts converged (seed {})\n",
                    s.converged, s.starts, s.seed
                );
                if let Some(p) = &s.min {
                    out.push_str(&format!(
                        "min lambda {:.12}  x {}\n",
                        p.lambda,
                        fmt_vec(&p.x)
                    ));
                }
                if let Some(p) = &s.max {
                    out.push_str(&format!(
                        "max lambda {:.12}  x {}\n",
                        p.lambda,
                        fmt_vec(&p.x)
                    ));
                }
                if let Some(all) = &r.all {
                    out.push_str(&format!("all {} H-eigenpairs:\n", all.len()));
                    for p in all {
                        out.push_str(&format!("  {:>18.12}  {}\n", p.lambda, fmt_vec(&p.x)));
                    }
                }
                out.trim_end().to_string()
            })?))
        }
        Command::Verify {
            file,
            property,
            q,
            starts,
            lift_starts,
            seed,
        } => {
            let t = load(&file)?;
            let opts = CheckOptions {
                starts,
                lift_starts,
                seed: seed.seed,
                ..CheckOptions::default()
            };
            let (text, passed) = match property {
                Property::First => {
                    let r = FirstReport::from(&check_first_inheritance(&t, q, &opts)?);
                    (emit(json, &r, render_first)?, r.passed)
                }
                Property::Second => {
                    let r = SecondReport::from(&check_second_inheritance(&t, &opts)?);
                    (emit(json, &r, render_second)?, r.passed)
                }
            };
            Ok(Outcome {
                text,
                code: if passed { 0 } else { 1 },
            })
        }
        Command::Repro {
            example,
            trials,
            seed,
        } => {
            let r = match example {
                1 => repro::example_one(seed.seed)?,
                2 => repro::example_two()?,
                3 => repro::example_three(trials, seed.seed)?,
                _ => bail!("no example {example}"),
            };
            let text = emit(json, &r, |r| r.render().trim_end().to_string())?;
            Ok(Outcome {
                text,
                code: if r.passed { 0 } else { 1 },
            })
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or("-".into(), |x| format!("{x:.10}"))
}

fn render_first(r: &FirstReport) -> String {
    let mut s = format!(
        "order {} dim {} lifted by q={} to order {} dim {}\n",
        r.order,
        r.dim_low,
        r.q,
        r.order * r.q,
        r.dim_high
    );
    s.push_str(&format!(
        "identity: max relative error {:.2e} on {} vectors\n",
        r.identity_max_rel_error, r.identity_samples
    ));
    if let Some(c) = &r.constants {
        s.push_str(&format!(
            "lambda_min low {}  high {}\n",
            opt(r.low_min),
            opt(r.high_min)
        ));
        s.push_str(&format!(
            "lambda_max low {}  high {}\n",
            opt(r.low_max),
            opt(r.high_max)
        ));
        s.push_str(&format!("c1 {:.10}  c2 {:.10}\n", c.c1, c.c2));
        for (name, b) in [("min", &r.min_bound), ("max", &r.max_bound)] {
            if let Some(b) = b {
                s.push_str(&format!(
                    "{name} bound ({}): {:.10} vs {:.10}  {}\n",
                    b.case,
                    b.lhs,
                    b.rhs,
                    if b.holds { "holds" } else { "VIOLATED" }
                ));
            }
        }
    } else {
        s.push_str("spectra not computed (dimension too large for an exhaustive scan)\n");
    }
    s.push_str(if r.passed { "pass" } else { "FAIL" });
    s
}

fn render_second(r: &SecondReport) -> String {
    let mut s = format!("order {} dim {}\n", r.order, r.dim);
    s.push_str(&format!(
        "associated matrix eigenvalues {} ({})\n",
        fmt_vec(&r.matrix_eigs),
        if r.matrix_pd {
            "positive definite"
        } else if r.strong {
            "positive semidefinite"
        } else {
            "indefinite or negative"
        }
    ));
    if let Some(all) = &r.exhaustive {
        s.push_str(&format!(
            "exhaustive: {} H-eigenvalues {}\n",
            all.len(),
            fmt_vec(all)
        ));
    }
    if let Some(search) = &r.search {
        s.push_str(&format!(
            "search: {} of {} starts converged\n",
            search.converged, search.starts
        ));
    }
    s.push_str(&format!(
        "verdict: {} (min {})\n",
        r.verdict,
        opt(r.min_found)
    ));
    if let Some(q) = &r.quantified {
        s.push_str(&format!(
            "quantified bound: {:.10} >= c * lambda_min(H) = {:.10} with c = {:.10}: {}{}\n",
            q.lhs,
            q.rhs,
            q.constant,
            if q.holds { "holds" } else { "violated" },
            if q.asserted { "" } else { " (not asserted)" }
        ));
    }
    s.push_str(if r.passed { "pass" } else { "FAIL" });
    s
}
