//! Discrete convolution and convolution powers.
//!
//! `x^{*q}` is the coefficient vector of `p_x(t)^q`; the convolution identity
//! `H x^m = h . x^{*m}` reduces every Hankel product to one of these.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::fft::{forward_real, FftPlan};

/// Output length above which convolutions switch from direct summation to FFT.
pub const FFT_CROSSOVER: usize = 64;

/// `w_k = sum_j u_j v_{k-j}`, of length `len(u) + len(v) - 1`.
/// Empty when either input is empty.
pub fn convolve(u: &[f64], v: &[f64]) -> Vec<f64> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    if u.len() + v.len() > FFT_CROSSOVER {
        convolve_fft(u, v)
    } else {
        convolve_direct(u, v)
    }
}

pub fn convolve_direct(u: &[f64], v: &[f64]) -> Vec<f64> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let mut w = vec![0.0; u.len() + v.len() - 1];
    for (i, &a) in u.iter().enumerate() {
        for (j, &b) in v.iter().enumerate() {
            w[i + j] += a * b;
        }
    }
    w
}

pub fn convolve_fft(u: &[f64], v: &[f64]) -> Vec<f64> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let len = u.len() + v.len() - 1;
    let plan = FftPlan::new(len);
    let mut fu = forward_real(&plan, u);
    let fv = forward_real(&plan, v);
    for (a, b) in fu.iter_mut().zip(&fv) {
        *a *= b;
    }
    plan.inverse(&mut fu);
    fu.into_iter().map(|c| c.re).collect()
}

/// `x * x * ... * x` (`q` factors), length `q(len(x)-1)+1`; `q = 0` gives `[1]`.
pub fn conv_power(x: &[f64], q: usize) -> Vec<f64> {
    if q == 0 {
        return vec![1.0];
    }
    if x.is_empty() {
        return Vec::new();
    }
    let len = q * (x.len() - 1) + 1;
    if len > FFT_CROSSOVER {
        // one transform of the final length, then a pointwise power
        let plan = FftPlan::new(len);
        let mut fx = forward_real(&plan, x);
        for c in fx.iter_mut() {
            *c = pow_complex(*c, q);
        }
        plan.inverse(&mut fx);
        fx.into_iter().map(|c| c.re).collect()
    } else {
        let mut acc = x.to_vec();
        for _ in 1..q {
            acc = convolve_direct(&acc, x);
        }
        acc
    }
}

fn pow_complex(mut base: Complex64, mut exp: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// `c_i = sum_j h_{i+j} w_j` for `i < out_len`; requires
/// `h.len() >= out_len + w.len() - 1`.
pub fn correlate(h: &[f64], w: &[f64], out_len: usize) -> Vec<f64> {
    assert!(h.len() + 1 >= out_len + w.len());
    if w.is_empty() {
        return vec![0.0; out_len];
    }
    let rev: Vec<f64> = w.iter().rev().copied().collect();
    let full = convolve(&rev, &h[..out_len + w.len() - 1]);
    full[w.len() - 1..w.len() - 1 + out_len].to_vec()
}
