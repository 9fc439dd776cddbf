//! Exact star-product algebra: polynomials under the finite Moyal expansion,
//! polynomial-times-Gaussian elements under the ladder rules, and the
//! distribution-times-function formulas for 1, delta and polynomials.

mod dist;
mod gauss;
mod parse;
mod poly;
mod ring;

pub use dist::{dist_star, dist_star_with_order, Distribution, Side, DEFAULT_DIST_ORDER};
pub use gauss::{
    from_unnormalized_coeffs, gauss_star, hermite_operator, to_unnormalized_coeffs,
    twisted_hermite, twisted_hermite_ln_norm, twisted_hermite_unnormalized, weyl_left, weyl_right,
    AaPoly, GaussPoly,
};
pub use parse::{parse_operand, parse_poly, Operand};
pub use poly::{derivative_hat, moyal_bracket, poisson_bracket, poly_star, MultiIndex, PolyQP};
pub use ring::Qr2;
