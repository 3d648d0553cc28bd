//! Numerical engine for Bessel-Gauss quantum vortex states in the two-mode
//! optical field-strength representation.
//!
//! * [`specfun`]: integer-order `J_q`, scaled `I_q` and zeros of `J_q`.
//! * [`states`]: radial grids, the Bessel-Gauss and modified Bessel-Gauss
//!   (perfect vortex) families, overlaps, densities and radial noise.
//! * [`propagator`]: the harmonic propagation kernel, the fast chirped
//!   Hankel propagation path, a brute-force double-quadrature oracle, Fourier
//!   planes and fidelity scans.
//! * [`lens`]: equal two-mode squeezing and the squeeze-plus-Fourier-plane
//!   "effective lens".
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
extern crate alloc;

pub mod error;
pub mod lens;
pub mod propagator;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
