//! Numerical and symbolic toolkit for the twisted (Moyal) product and the
//! twisted convolution on the phase plane.
//!
//! Three cross-validating backends compute the same product:
//!
//! - [`stargrid`] — direct quadrature on a uniform periodic grid,
//! - [`seqspace`] — matrix multiplication of coefficient matrices in the
//!   twisted Hermite basis,
//! - [`symbolic`] — exact finite star-product expansions for polynomials and
//!   polynomial-times-Gaussian elements.
//!
//! Conventions throughout (they are load-bearing): Planck constant hbar = 2,
//! phase-space measure du = (2*pi)^-1 dq dp, bilinear pairing <f,g> = ∫ f g du,
//! sesquilinear pairing <f|g> = (1/2) ∫ conj(f) g du. Under these choices
//! f_0 = 2 exp(-(q^2+p^2)/2) is a unit vector, an idempotent for the twisted
//! product, and a fixed point of all three Fourier transforms.

pub mod basis;
pub mod phasegrid;
pub mod seqspace;
pub mod specfun;
pub mod stargrid;
pub mod symbolic;
pub mod verify;

use thiserror::Error;

/// Errors shared across the toolkit's modules.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("grid size must be an even power of two, got {0}")]
    BadGridSize(usize),
    #[error("grid extent must be positive and finite, got {0}")]
    BadGridExtent(f64),
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("translation ({0}, {1}) is not aligned with grid nodes")]
    OffGridShift(f64, f64),
    #[error("coefficient matrices have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("basis-change indices must satisfy m + n = k + l")]
    IndexMismatch,
    #[error("Jacobi parameters out of the finite-sum domain (m+alpha = {0}, m+beta = {1})")]
    JacobiDomain(i64, i64),
    #[error("G_{{s,t}} product needs t + q >= 0, got t = {0}, q = {1}")]
    WeightPrecondition(f64, f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Operand(String),
}

pub type Result<T> = std::result::Result<T, Error>;
