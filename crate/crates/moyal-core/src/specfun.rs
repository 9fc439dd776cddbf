//! Special functions behind the twisted Hermite basis: associated Laguerre
//! polynomials, Hermite functions with the hbar = 2 normalization, Jacobi
//! polynomials at the origin, and log-factorial ratios.
//!
//! Everything here is a pure total function of its value arguments.

use crate::{Error, Result};

/// Associated Laguerre polynomial L_n^k(x) for k >= 0, by the three-term
/// recurrence in n (stable upward for x >= 0).
///
/// L_n^0 is the ordinary Laguerre polynomial L_n.
pub fn laguerre(n: usize, k: usize, x: f64) -> f64 {
    let kf = k as f64;
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0; // L_0^k
    let mut cur = 1.0 + kf - x; // L_1^k
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + kf + 1.0 - x) * cur - (jf + kf) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// ln(n!) - ln(m!), accumulated in log space so that sqrt(n!/m!) factors can
/// be formed without overflow.
pub fn log_factorial_ratio(m: usize, n: usize) -> f64 {
    if n >= m {
        ((m + 1)..=n).map(|i| (i as f64).ln()).sum()
    } else {
        -((n + 1)..=m).map(|i| (i as f64).ln()).sum::<f64>()
    }
}

/// ln(n!).
pub fn ln_factorial(n: usize) -> f64 {
    log_factorial_ratio(0, n)
}

/// Hermite function h_k(x) = (2^(k-1) k!)^(-1/2) H_k(x) exp(-x^2/2).
///
/// The normalization is the one matching the hbar = 2 measure conventions:
/// h_0(0) = sqrt(2), and ∫ h_j h_k (2*pi)^(-1/2) dx = sqrt(2) delta_jk.
/// Evaluated by the scaled recurrence, so no intermediate overflows.
pub fn hermite_fn(k: usize, x: f64) -> f64 {
    // h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}
    let mut cur = std::f64::consts::SQRT_2 * (-0.5 * x * x).exp();
    if k == 0 {
        return cur;
    }
    let mut prev = 0.0;
    for j in 0..k {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial P_m^(alpha,beta) evaluated at 0, via the terminating
/// hypergeometric sum with exact integer binomials:
///
/// P_m^(alpha,beta)(0) = 2^-m sum_s (-1)^s C(m+alpha, m-s) C(m+beta, s).
///
/// alpha, beta may be negative integers as long as m+alpha >= 0 and
/// m+beta >= 0 (the basis-change parameters alpha = l-m, beta = k-m always
/// satisfy this); other cases are a domain error.
pub fn jacobi_at_zero(m: usize, alpha: i64, beta: i64) -> Result<f64> {
    let a = m as i64 + alpha;
    let b = m as i64 + beta;
    if a < 0 || b < 0 {
        return Err(Error::JacobiDomain(a, b));
    }
    let (a, b) = (a as u64, b as u64);
    let mut sum = 0.0;
    for s in 0..=m as u64 {
        let term = binomial(a, m as u64 - s) * binomial(b, s);
        sum += if s % 2 == 0 { term } else { -term };
    }
    Ok(sum * 0.5f64.powi(m as i32))
}

/// Binomial coefficient C(n, k) as an f64, exact while the value fits the
/// 53-bit mantissa (all n <= 56; the basis-change formulas use n <= 20).
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
        // keep the intermediate small; the division is always exact here
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num as f64 / den as f64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
