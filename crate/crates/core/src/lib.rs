//! Lossless positive-real rational matrix functions.
//!
//! An `m x m` real rational matrix function `F` is *positive real odd* when
//! `Re F(z) >= 0` on the open right half-plane, `F` is real on the real
//! axis and `F(-conj(z))^* = -F(z)`. Such functions admit three equivalent
//! descriptions, all supported here:
//!
//! * the Foster partial-fraction form `zQ + R + sum (zQ_j + R_j) / (z^2 + w_j^2)`,
//! * a state-space realization `zM + D + B^T (zI - A)^{-1} B` with `M >= 0`
//!   and `A`, `D` skew-symmetric,
//! * a descriptor realization `D + C^T (zE - A)^{-1} B`, in particular the
//!   Weierstrass form.
//!
//! The crate converts between them, computes minimal realizations of the
//! pointwise inverse `F(z)^{-1}` and reports pole/zero locations together
//! with the eigenvalue interlacing bounds that relate them.
//!
//! The crate is `no_std` and only needs an allocator.
#![no_std]
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod invert;
pub mod matlin;
pub mod pro;
pub mod realize;
pub mod sample;
pub mod spectra;
pub mod svd;

pub use error::{Error, Result};
pub use matlin::{ComplexMatrix, RealMatrix, Tolerance};
pub use pro::{
    DescriptorRealization, FosterForm, FosterTerm, StateSpaceRealization, TransferFunction,
    ValidationReport, Violation,
};
