//! Complex DFT of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 transform. Every other length
//! goes through Bluestein's chirp-z reformulation, which rewrites the DFT as a
//! circular convolution of power-of-two length `>= 2N - 1`.
//!
//! Conventions: `forward` computes `X_k = sum_j x_j exp(-2 pi i jk / N)` and
//! `inverse` computes `x_j = (1/N) sum_k X_k exp(+2 pi i jk / N)`, so the pair
//! round-trips exactly in exact arithmetic.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

#[derive(Debug, Clone)]
enum Algorithm {
    Trivial,
    Radix2 {
        // exp(-2 pi i k / n) for k < n/2
        twiddles: Vec<Complex64>,
        bitrev: Vec<usize>,
    },
    Bluestein {
        inner: Box<FftPlan>,
        // exp(-pi i k^2 / n) for k < n
        chirp: Vec<Complex64>,
        // forward transform of the conjugate chirp, wrapped to length inner.len()
        kernel: Vec<Complex64>,
    },
}

/// Precomputed transform of a fixed length.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    algorithm: Algorithm,
}

fn unit(angle: f64) -> Complex64 {
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        assert!(len > 0, "FFT length must be positive");
        let algorithm = if len == 1 {
            Algorithm::Trivial
        } else if len.is_power_of_two() {
            let bits = len.trailing_zeros();
            let twiddles = (0..len / 2)
                .map(|k| unit(-2.0 * PI * k as f64 / len as f64))
                .collect();
            let bitrev = (0..len)
                .map(|i| i.reverse_bits() >> (usize::BITS - bits))
                .collect();
            Algorithm::Radix2 { twiddles, bitrev }
        } else {
            let m = (2 * len - 1).next_power_of_two();
            let inner = FftPlan::new(m);
            // k^2 mod 2n keeps the chirp argument small.
            let two_n = 2 * len as u64;
            let chirp: Vec<Complex64> = (0..len as u64)
                .map(|k| unit(-PI * ((k * k) % two_n) as f64 / len as f64))
                .collect();
            let mut kernel = vec![Complex64::new(0.0, 0.0); m];
            kernel[0] = chirp[0].conj();
            for k in 1..len {
                kernel[k] = chirp[k].conj();
                kernel[m - k] = chirp[k].conj();
            }
            inner.forward(&mut kernel);
            Algorithm::Bluestein {
                inner: Box::new(inner),
                chirp,
                kernel,
            }
        };
        FftPlan { len, algorithm }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place forward transform. Panics if `buf.len() != self.len()`.
    pub fn forward(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len, "buffer length does not match plan");
        match &self.algorithm {
            Algorithm::Trivial => {}
            Algorithm::Radix2 { twiddles, bitrev } => radix2(buf, twiddles, bitrev),
            Algorithm::Bluestein {
                inner,
                chirp,
                kernel,
            } => {
                let m = inner.len();
                let mut work = vec![Complex64::new(0.0, 0.0); m];
                for (w, (x, c)) in work.iter_mut().zip(buf.iter().zip(chirp)) {
                    *w = x * c;
                }
                inner.forward(&mut work);
                for (w, k) in work.iter_mut().zip(kernel) {
                    *w *= k;
                }
                inner.inverse(&mut work);
                for (x, (w, c)) in buf.iter_mut().zip(work.iter().zip(chirp)) {
                    *x = w * c;
                }
            }
        }
    }

    /// In-place inverse transform, including the `1/N` scaling.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        // conj(F conj(x)) / N
        for x in buf.iter_mut() {
            *x = x.conj();
        }
        self.forward(buf);
        let scale = 1.0 / self.len as f64;
        for x in buf.iter_mut() {
            *x = x.conj() * scale;
        }
    }
}

fn radix2(buf: &mut [Complex64], twiddles: &[Complex64], bitrev: &[usize]) {
    let n = buf.len();
    for (i, &j) in bitrev.iter().enumerate() {
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut half = 1;
    while half < n {
        let stride = n / (2 * half);
        for start in (0..n).step_by(2 * half) {
            for k in 0..half {
                let t = twiddles[k * stride] * buf[start + k + half];
                let u = buf[start + k];
                buf[start + k] = u + t;
                buf[start + k + half] = u - t;
            }
        }
        half *= 2;
    }
}

/// Forward transform of a real vector zero-padded to `len`.
pub fn forward_real(plan: &FftPlan, x: &[f64]) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); plan.len()];
    for (b, &v) in buf.iter_mut().zip(x) {
        b.re = v;
    }
    plan.forward(&mut buf);
    buf
}
