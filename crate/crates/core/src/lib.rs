//! Structured kernels for Hankel tensors.
//!
//! A Hankel tensor of order `m` and dimension `n` is stored only through its
//! generating vector `h` of length `m(n-1)+1`; the entry at `(i1, ..., im)` is
//! `h[i1 + ... + im]`. Everything in this crate works from that vector:
//!
//! * [`product`] evaluates multilinear forms either through the anti-circulant
//!   FFT embedding or through the convolution identity `H x^m = h . x^{*m}`.
//! * [`sos`] turns a strong Hankel tensor of even order into an explicit sum of
//!   squares using a factorization of its associated Hankel matrix.
//! * [`vandermonde`] computes augmented Vandermonde decompositions with positive
//!   coefficients, peeling the "infinite pole" `e_n` when present.
//! * [`spectra`] finds H-eigenpairs and checks the inheritance bounds that link
//!   a Hankel tensor to its lower-order relatives and its associated matrix.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod conv;
mod error;
pub mod fft;
pub mod linalg;
pub mod product;
pub mod rng;
pub mod sos;
pub mod spectra;
pub mod tensor;
pub mod vandermonde;

pub use error::{Error, Result};
pub use tensor::{AntiCirculantEmbedding, HankelMatrix, HankelTensor};
