//! Polynomial-times-Gaussian elements g(a, abar) f_0 and their exact star
//! calculus via the ladder rules
//!
//!   a * (g f_0) = (dg/dabar) f_0,        (g f_0) * a    = (2 a g - dg/dabar) f_0,
//!   abar * (g f_0) = (2 abar g - dg/da) f_0,  (g f_0) * abar = (dg/da) f_0.
//!
//! The unnormalized twisted Hermite family F_mn = abar^m * f_0 * a^n has
//! integer coefficients, the ladder relations act by integer scalars
//! (a * F_mn = 2m F_{m-1,n}, F_mn * abar = 2n F_{m,n-1}), and products close
//! as F_mn * F_kl = delta_nk 2^n n! F_ml — so everything in this module is
//! exact as long as those integers fit the f64 mantissa (indices up to ~12).

use super::poly::PolyQP;
use super::ring::Qr2;
use crate::specfun::{binomial, ln_factorial};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Polynomial in (abar, a); keys are (abar-degree, a-degree).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AaPoly {
    terms: BTreeMap<(u32, u32), Qr2>,
}

impl AaPoly {
    pub fn zero() -> AaPoly {
        AaPoly::default()
    }

    pub fn one() -> AaPoly {
        AaPoly::from_term(0, 0, Qr2::ONE)
    }

    pub fn from_term(abar_deg: u32, a_deg: u32, coeff: Qr2) -> AaPoly {
        let mut t = BTreeMap::new();
        if !coeff.is_zero() {
            t.insert((abar_deg, a_deg), coeff);
        }
        AaPoly { terms: t }
    }

    fn add_term(&mut self, j: u32, i: u32, c: Qr2) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((j, i)).or_insert(Qr2::ZERO);
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&(j, i));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(j, i)| j + i).max().unwrap_or(0)
    }

    /// Substitute q = (a + abar)/sqrt(2), p = -i (a - abar)/sqrt(2) into a
    /// (q, p)-polynomial; exact in the coefficient ring.
    pub fn from_polyqp(poly: &PolyQP) -> AaPoly {
        let mut out = AaPoly::zero();
        for (&(i, j), &c) in poly.terms() {
            // (q^i p^j) -> ((a+abar) s)^i ((a-abar)(-i) s)^j, s = sqrt(2)/2
            let base = c * Qr2::sqrt2_pow(-((i + j) as i32));
            let base = base.mul_i_pow(3 * j); // (-i)^j = i^(3j)
            for u in 0..=i {
                for v in 0..=j {
                    let sign = if (j - v) % 2 == 0 { 1.0 } else { -1.0 };
                    let w = base
                        .scale_f64(binomial(i as u64, u as u64) * binomial(j as u64, v as u64))
                        .scale_f64(sign);
                    out.add_term((i - u) + (j - v), u + v, w);
                }
            }
        }
        out
    }
}

/// Element g(a, abar) * f_0 of the span of the twisted Hermite basis.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GaussPoly {
    terms: BTreeMap<(u32, u32), Qr2>,
}

impl GaussPoly {
    pub fn zero() -> GaussPoly {
        GaussPoly::default()
    }

    /// The Gaussian idempotent f_0 = 2 exp(-H) itself (g = 1).
    pub fn f0() -> GaussPoly {
        GaussPoly::from_term(0, 0, Qr2::ONE)
    }

    pub fn from_term(abar_deg: u32, a_deg: u32, coeff: Qr2) -> GaussPoly {
        let mut t = BTreeMap::new();
        if !coeff.is_zero() {
            t.insert((abar_deg, a_deg), coeff);
        }
        GaussPoly { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Qr2)> {
        self.terms.iter()
    }

    fn add_term(&mut self, j: u32, i: u32, c: Qr2) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((j, i)).or_insert(Qr2::ZERO);
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&(j, i));
        }
    }

    pub fn add(&self, other: &GaussPoly) -> GaussPoly {
        let mut out = self.clone();
        for (&(j, i), &c) in &other.terms {
            out.add_term(j, i, c);
        }
        out
    }

    pub fn sub(&self, other: &GaussPoly) -> GaussPoly {
        let mut out = self.clone();
        for (&(j, i), &c) in &other.terms {
            out.add_term(j, i, -c);
        }
        out
    }

    pub fn scale(&self, s: Qr2) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (&(j, i), &c) in &self.terms {
            out.add_term(j, i, c * s);
        }
        out
    }

    pub fn scale_f64(&self, s: f64) -> GaussPoly {
        self.scale(Qr2::from_f64(s))
    }

    /// Conjugation: f_0 is real, a and abar swap.
    pub fn conj(&self) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (&(j, i), &c) in &self.terms {
            out.add_term(i, j, c.conj());
        }
        out
    }

    pub fn mul_by_aapoly(&self, poly: &AaPoly) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (&(j1, i1), &c1) in &self.terms {
            for (&(j2, i2), &c2) in &poly.terms {
                out.add_term(j1 + j2, i1 + i2, c1 * c2);
            }
        }
        out
    }

    /// dg/dabar in the polynomial-coefficient sense.
    fn dg_dabar(&self) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (&(j, i), &c) in &self.terms {
            if j > 0 {
                out.add_term(j - 1, i, c.scale_f64(j as f64));
            }
        }
        out
    }

    fn dg_da(&self) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (&(j, i), &c) in &self.terms {
            if i > 0 {
                out.add_term(j, i - 1, c.scale_f64(i as f64));
            }
        }
        out
    }

    fn mul_abar(&self) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (&(j, i), &c) in &self.terms {
            out.add_term(j + 1, i, c);
        }
        out
    }

    fn mul_a(&self) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (&(j, i), &c) in &self.terms {
            out.add_term(j, i + 1, c);
        }
        out
    }

    /// a * (g f_0) = (dg/dabar) f_0.
    pub fn star_a_left(&self) -> GaussPoly {
        self.dg_dabar()
    }

    /// abar * (g f_0) = (2 abar g - dg/da) f_0.
    pub fn star_abar_left(&self) -> GaussPoly {
        self.mul_abar().scale_f64(2.0).sub(&self.dg_da())
    }

    /// (g f_0) * a = (2 a g - dg/dabar) f_0.
    pub fn star_a_right(&self) -> GaussPoly {
        self.mul_a().scale_f64(2.0).sub(&self.dg_dabar())
    }

    /// (g f_0) * abar = (dg/da) f_0.
    pub fn star_abar_right(&self) -> GaussPoly {
        self.dg_da()
    }

    /// True derivative d/da of g f_0 (the Gaussian contributes -abar f_0).
    pub fn d_a(&self) -> GaussPoly {
        self.dg_da().sub(&self.mul_abar())
    }

    pub fn d_abar(&self) -> GaussPoly {
        self.dg_dabar().sub(&self.mul_a())
    }

    /// d/dq = (d/da + d/dabar) / sqrt(2).
    pub fn d_q(&self) -> GaussPoly {
        self.d_a().add(&self.d_abar()).scale(Qr2::sqrt2_pow(-1))
    }

    /// d/dp = -i (d/dabar - d/da) / sqrt(2).
    pub fn d_p(&self) -> GaussPoly {
        self.d_abar()
            .sub(&self.d_a())
            .scale(Qr2::sqrt2_pow(-1).mul_i_pow(3))
    }

    /// Pointwise value at (q, p): g(a, abar) * 2 exp(-(q^2+p^2)/2).
    pub fn eval(&self, q: f64, p: f64) -> Complex64 {
        let a = Complex64::new(q, p) / std::f64::consts::SQRT_2;
        let abar = a.conj();
        let mut g = Complex64::new(0.0, 0.0);
        for (&(j, i), &c) in &self.terms {
            g += c.to_complex() * abar.powu(j) * a.powu(i);
        }
        g * 2.0 * (-0.5 * (q * q + p * p)).exp()
    }
}

/// Unnormalized twisted Hermite element F_mn = abar^m * f_0 * a^n
/// (integer coefficients; F_mn = sqrt(2^(m+n) m! n!) f_mn).
pub fn twisted_hermite_unnormalized(m: usize, n: usize) -> GaussPoly {
    let mut x = GaussPoly::f0();
    for _ in 0..m {
        x = x.star_abar_left();
    }
    for _ in 0..n {
        x = x.star_a_right();
    }
    x
}

/// ln of the normalization 1/sqrt(2^(m+n) m! n!) relating f_mn to F_mn.
pub fn twisted_hermite_ln_norm(m: usize, n: usize) -> f64 {
    -0.5 * ((m + n) as f64 * std::f64::consts::LN_2 + ln_factorial(m) + ln_factorial(n))
}

/// Normalized basis element f_mn as a GaussPoly (scale applied in f64).
pub fn twisted_hermite(m: usize, n: usize) -> GaussPoly {
    twisted_hermite_unnormalized(m, n).scale_f64(twisted_hermite_ln_norm(m, n).exp())
}

/// Coefficients y with x = sum y_mn F_mn, by back-substitution down the
/// total degree (the change of basis is triangular with leading entry
/// 2^(m+n), so all divisions are exact powers of two).
pub fn to_unnormalized_coeffs(x: &GaussPoly) -> Vec<Vec<Qr2>> {
    let deg = x
        .terms
        .keys()
        .map(|&(j, i)| j.max(i))
        .max()
        .unwrap_or(0) as usize;
    let size = deg + 1;
    let mut coeffs = vec![vec![Qr2::ZERO; size]; size];
    let mut rest = x.clone();
    // peel off the highest-degree monomial each round; reduction only ever
    // introduces strictly lower-degree terms
    loop {
        let top = rest
            .terms
            .iter()
            .max_by_key(|(&(j, i), _)| j + i)
            .map(|(&k, &c)| (k, c));
        let Some(((j, i), c)) = top else { break };
        let y = c.div_f64(2f64.powi((j + i) as i32));
        coeffs[j as usize][i as usize] = y;
        rest = rest.sub(&twisted_hermite_unnormalized(j as usize, i as usize).scale(y));
    }
    coeffs
}

/// Rebuild a GaussPoly from unnormalized F-basis coefficients.
pub fn from_unnormalized_coeffs(coeffs: &[Vec<Qr2>]) -> GaussPoly {
    let mut out = GaussPoly::zero();
    for (m, row) in coeffs.iter().enumerate() {
        for (n, &y) in row.iter().enumerate() {
            if !y.is_zero() {
                out = out.add(&twisted_hermite_unnormalized(m, n).scale(y));
            }
        }
    }
    out
}

/// Left star product P(q,p) * x by the finite Moyal expansion; exact.
pub fn weyl_left(poly: &PolyQP, x: &GaussPoly) -> GaussPoly {
    if poly.is_zero() || x.is_zero() {
        return GaussPoly::zero();
    }
    let cap = poly.total_degree();
    let dl = poly_derivative_table(poly, cap);
    // hatted derivatives of x: d_p^a1 (-d_q)^a2
    let mut out = GaussPoly::zero();
    let mut dx_p = x.clone();
    for a1 in 0..=cap {
        let mut dx = dx_p.clone();
        for a2 in 0..=cap - a1 {
            let dp = &dl[a1 as usize][a2 as usize];
            if !dp.is_zero() {
                let fact = fact_f64(a1) * fact_f64(a2);
                let term = dx.mul_by_aapoly(&AaPoly::from_polyqp(dp));
                let s = Qr2::ONE.mul_i_pow(a1 + a2).div_f64(fact);
                out = out.add(&term.scale(s));
            }
            dx = dx.d_q().scale_f64(-1.0);
        }
        dx_p = dx_p.d_p();
    }
    out
}

/// Right star product x * P(q,p): derivatives swap roles, the polynomial
/// takes the hatted ones.
pub fn weyl_right(poly: &PolyQP, x: &GaussPoly) -> GaussPoly {
    if poly.is_zero() || x.is_zero() {
        return GaussPoly::zero();
    }
    let cap = poly.total_degree();
    let dl = poly_derivative_table(poly, cap);
    let mut out = GaussPoly::zero();
    let mut dx_q = x.clone();
    for a1 in 0..=cap {
        let mut dx = dx_q.clone();
        for a2 in 0..=cap - a1 {
            // d_hat^alpha P = (-1)^a2 d_q^a2 d_p^a1 P
            let dp = &dl[a2 as usize][a1 as usize];
            if !dp.is_zero() {
                let fact = fact_f64(a1) * fact_f64(a2);
                let sign = if a2 % 2 == 0 { 1.0 } else { -1.0 };
                let term = dx.mul_by_aapoly(&AaPoly::from_polyqp(dp));
                let s = Qr2::ONE.mul_i_pow(a1 + a2).div_f64(fact).scale_f64(sign);
                out = out.add(&term.scale(s));
            }
            dx = dx.d_p();
        }
        dx_q = dx_q.d_q();
    }
    out
}

/// Hermite operator B = u^2 - Laplacian acting on g f_0; equals
/// H * x + x * H and has eigenvalue 2(m+n+1) on f_mn.
pub fn hermite_operator(x: &GaussPoly) -> GaussPoly {
    let u2 = AaPoly::from_polyqp(&PolyQP::h().scale(Qr2::from_f64(2.0)));
    let lap = x.d_q().d_q().add(&x.d_p().d_p());
    x.mul_by_aapoly(&u2).sub(&lap)
}

/// Star product of two Gaussian-polynomial elements through the matrix-unit
/// structure: expand in F_mn, contract with the integer scale 2^n n!, expand
/// back.
pub fn gauss_star(x: &GaussPoly, y: &GaussPoly) -> GaussPoly {
    if x.is_zero() || y.is_zero() {
        return GaussPoly::zero();
    }
    let cx = to_unnormalized_coeffs(x);
    let cy = to_unnormalized_coeffs(y);
    let rows = cx.len();
    let inner = cx[0].len().min(cy.len());
    let cols = cy.first().map_or(0, |r| r.len());
    let mut cz = vec![vec![Qr2::ZERO; cols]; rows];
    for m in 0..rows {
        for k in 0..inner {
            let xmk = cx[m][k];
            if xmk.is_zero() {
                continue;
            }
            let scale = 2f64.powi(k as i32) * fact_f64(k as u32);
            for l in 0..cols {
                let ykl = cy[k][l];
                if !ykl.is_zero() {
                    cz[m][l] = cz[m][l] + (xmk * ykl).scale_f64(scale);
                }
            }
        }
    }
    from_unnormalized_coeffs(&cz)
}

fn fact_f64(n: u32) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn poly_derivative_table(poly: &PolyQP, cap: u32) -> Vec<Vec<PolyQP>> {
    let n = cap as usize + 1;
    let mut table = vec![vec![PolyQP::zero(); n]; n];
    table[0][0] = poly.clone();
    for i in 0..n {
        if i > 0 {
            table[i][0] = table[i - 1][0].diff_q();
        }
        for j in 1..n - i {
            table[i][j] = table[i][j - 1].diff_p();
        }
    }
    table
}
