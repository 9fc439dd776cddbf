//! Polynomials in (q, p) and the finite Moyal expansion of their twisted
//! product.
//!
//! For polynomial factors the star-product series terminates at
//! |alpha| = min(deg P, deg Q); with integer-friendly coefficients every
//! identity here is exact in floating point (the divisions by alpha! land on
//! representable values).

use super::ring::Qr2;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Derivative multi-index (alpha_1, alpha_2) for the 2-dimensional phase
/// plane; the hatted convention is d_hat^alpha = (d_p)^alpha1 (-d_q)^alpha2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiIndex(pub u32, pub u32);

impl MultiIndex {
    pub fn order(&self) -> u32 {
        self.0 + self.1
    }
}

/// Complex polynomial in (q, p), keyed by (q-degree, p-degree).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PolyQP {
    terms: BTreeMap<(u32, u32), Qr2>,
}

impl PolyQP {
    pub fn zero() -> PolyQP {
        PolyQP::default()
    }

    pub fn constant(c: Complex64) -> PolyQP {
        PolyQP::from_term(0, 0, Qr2::from_complex(c))
    }

    pub fn one() -> PolyQP {
        PolyQP::constant(Complex64::new(1.0, 0.0))
    }

    pub fn q() -> PolyQP {
        PolyQP::from_term(1, 0, Qr2::ONE)
    }

    pub fn p() -> PolyQP {
        PolyQP::from_term(0, 1, Qr2::ONE)
    }

    /// Oscillator Hamiltonian H = (q^2 + p^2)/2.
    pub fn h() -> PolyQP {
        let half = Qr2::from_f64(0.5);
        let mut t = BTreeMap::new();
        t.insert((2, 0), half);
        t.insert((0, 2), half);
        PolyQP { terms: t }
    }

    /// Lowering symbol a = (q + ip)/sqrt(2).
    pub fn a() -> PolyQP {
        let s = Qr2::sqrt2_pow(-1);
        let mut t = BTreeMap::new();
        t.insert((1, 0), s);
        t.insert((0, 1), s.mul_i_pow(1));
        PolyQP { terms: t }
    }

    /// Raising symbol abar = (q - ip)/sqrt(2).
    pub fn abar() -> PolyQP {
        let s = Qr2::sqrt2_pow(-1);
        let mut t = BTreeMap::new();
        t.insert((1, 0), s);
        t.insert((0, 1), s.mul_i_pow(3));
        PolyQP { terms: t }
    }

    pub fn from_term(qdeg: u32, pdeg: u32, coeff: Qr2) -> PolyQP {
        let mut t = BTreeMap::new();
        if !coeff.is_zero() {
            t.insert((qdeg, pdeg), coeff);
        }
        PolyQP { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Qr2)> {
        self.terms.iter()
    }

    pub fn coeff(&self, qdeg: u32, pdeg: u32) -> Qr2 {
        self.terms.get(&(qdeg, pdeg)).copied().unwrap_or(Qr2::ZERO)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, qdeg: u32, pdeg: u32, coeff: Qr2) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((qdeg, pdeg)).or_insert(Qr2::ZERO);
        *entry = *entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&(qdeg, pdeg));
        }
    }

    pub fn add(&self, other: &PolyQP) -> PolyQP {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &PolyQP) -> PolyQP {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyQP {
        PolyQP {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyQP) -> PolyQP {
        let mut out = PolyQP::zero();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: Qr2) -> PolyQP {
        if s.is_zero() {
            return PolyQP::zero();
        }
        let mut out = PolyQP::zero();
        for (&(i, j), &c) in &self.terms {
            out.add_term(i, j, c * s);
        }
        out
    }

    pub fn pow(&self, n: u32) -> PolyQP {
        let mut out = PolyQP::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Complex conjugate: conjugate coefficients (q, p are real symbols).
    pub fn conj(&self) -> PolyQP {
        PolyQP {
            terms: self.terms.iter().map(|(&k, c)| (k, c.conj())).collect(),
        }
    }

    pub fn diff_q(&self) -> PolyQP {
        let mut out = PolyQP::zero();
        for (&(i, j), &c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c.scale_f64(i as f64));
            }
        }
        out
    }

    pub fn diff_p(&self) -> PolyQP {
        let mut out = PolyQP::zero();
        for (&(i, j), &c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c.scale_f64(j as f64));
            }
        }
        out
    }

    pub fn eval(&self, q: f64, p: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (&(i, j), &c) in &self.terms {
            sum += c.to_complex() * q.powi(i as i32) * p.powi(j as i32);
        }
        sum
    }
}

/// d_hat^alpha P = (d_p)^alpha1 (-d_q)^alpha2 P.
pub fn derivative_hat(poly: &PolyQP, alpha: MultiIndex) -> PolyQP {
    let mut out = poly.clone();
    for _ in 0..alpha.0 {
        out = out.diff_p();
    }
    for _ in 0..alpha.1 {
        out = out.diff_q().neg();
    }
    out
}

/// Table of plain derivatives d_q^i d_p^j P for i + j <= cap.
fn derivative_table(poly: &PolyQP, cap: u32) -> Vec<Vec<PolyQP>> {
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

fn factorial(n: u32) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Twisted product of polynomials by the finite expansion
/// P * Q = sum_alpha (i^|alpha| / alpha!) (d^alpha P)(d_hat^alpha Q),
/// truncated at |alpha| = min(deg P, deg Q); higher terms vanish identically
/// (debug-asserted rather than assumed).
pub fn poly_star(lhs: &PolyQP, rhs: &PolyQP) -> PolyQP {
    if lhs.is_zero() || rhs.is_zero() {
        return PolyQP::zero();
    }
    let cap = lhs.total_degree().min(rhs.total_degree());
    let dl = derivative_table(lhs, cap + 1);
    let dr = derivative_table(rhs, cap + 1);
    let mut out = PolyQP::zero();
    for a1 in 0..=cap {
        for a2 in 0..=cap - a1 {
            let term = star_term(&dl, &dr, a1, a2);
            out = out.add(&term);
        }
    }
    #[cfg(debug_assertions)]
    for a1 in 0..=cap + 1 {
        let a2 = cap + 1 - a1;
        debug_assert!(
            star_term(&dl, &dr, a1, a2).is_zero(),
            "order cap {} too small at alpha = ({}, {})",
            cap,
            a1,
            a2
        );
    }
    out
}

/// One expansion term (i^|alpha| / alpha!) (d^alpha P)(d_hat^alpha Q), with
/// d_hat^alpha Q = (-1)^alpha2 d_q^alpha2 d_p^alpha1 Q read off the plain
/// derivative table.
fn star_term(dl: &[Vec<PolyQP>], dr: &[Vec<PolyQP>], a1: u32, a2: u32) -> PolyQP {
    let dp = &dl[a1 as usize][a2 as usize];
    let dq_hat = &dr[a2 as usize][a1 as usize];
    if dp.is_zero() || dq_hat.is_zero() {
        return PolyQP::zero();
    }
    let mut term = dp.mul(dq_hat);
    let fact = factorial(a1) * factorial(a2);
    let sign = if a2 % 2 == 0 { 1.0 } else { -1.0 };
    term = PolyQP {
        terms: term
            .terms
            .iter()
            .map(|(&k, &c)| (k, c.mul_i_pow(a1 + a2).div_f64(fact).scale_f64(sign)))
            .collect(),
    };
    term
}

/// Star commutator P * Q - Q * P via the odd-order series
/// 2i sum_r sum_{|alpha| = 2r+1} ((-1)^r / alpha!) (d^alpha P)(d_hat^alpha Q).
pub fn moyal_bracket(lhs: &PolyQP, rhs: &PolyQP) -> PolyQP {
    if lhs.is_zero() || rhs.is_zero() {
        return PolyQP::zero();
    }
    let cap = lhs.total_degree().min(rhs.total_degree());
    let dl = derivative_table(lhs, cap + 1);
    let dr = derivative_table(rhs, cap + 1);
    let mut out = PolyQP::zero();
    let mut order = 1u32;
    let mut r = 0u32;
    while order <= cap {
        for a1 in 0..=order {
            let a2 = order - a1;
            let dp = &dl[a1 as usize][a2 as usize];
            let dq_hat = &dr[a2 as usize][a1 as usize];
            if dp.is_zero() || dq_hat.is_zero() {
                continue;
            }
            let fact = factorial(a1) * factorial(a2);
            // (-1)^r from the series, (-1)^a2 from the hatted derivative
            let sign = if (r + a2) % 2 == 0 { 1.0 } else { -1.0 };
            let term = dp.mul(dq_hat);
            for (&(i, j), &c) in &term.terms {
                out.add_term(i, j, c.div_f64(fact).scale_f64(2.0 * sign).mul_i_pow(1));
            }
        }
        order += 2;
        r += 1;
    }
    out
}

/// Classical Poisson bracket d_q P d_p Q - d_p P d_q Q.
pub fn poisson_bracket(lhs: &PolyQP, rhs: &PolyQP) -> PolyQP {
    lhs.diff_q()
        .mul(&rhs.diff_p())
        .sub(&lhs.diff_p().mul(&rhs.diff_q()))
}

impl fmt::Display for PolyQP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        let mut first = true;
        for &&(i, j) in &keys {
            let c = self.terms[&(i, j)].to_complex();
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut parts = Vec::new();
                    if i == 1 {
                        parts.push("q".to_string());
                    } else if i > 1 {
                        parts.push(format!("q^{i}"));
                    }
                    if j == 1 {
                        parts.push("p".to_string());
                    } else if j > 1 {
                        parts.push(format!("p^{j}"));
                    }
                    parts.join("*")
                }
            };
            let (lead, body) = format_complex_coeff(c, &mono, first);
            write!(f, "{lead}{body}")?;
            first = false;
        }
        Ok(())
    }
}

fn format_complex_coeff(c: Complex64, mono: &str, first: bool) -> (String, String) {
    // pick a sign to hoist out of the term for "a - b" style printing
    let (sign, c) = if c.re < 0.0 || (c.re == 0.0 && c.im < 0.0) {
        ("-", -c)
    } else {
        ("+", c)
    };
    let lead = if first {
        if sign == "-" {
            "-".to_string()
        } else {
            String::new()
        }
    } else {
        format!(" {sign} ")
    };
    let num = if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    };
    let body = if mono.is_empty() {
        num
    } else if c == Complex64::new(1.0, 0.0) {
        mono.to_string()
    } else {
        format!("{num}*{mono}")
    };
    (lead, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weyl_rule_on_generators() {
        let qp_plus_i = PolyQP::q()
            .mul(&PolyQP::p())
            .add(&PolyQP::constant(c(0.0, 1.0)));
        assert_eq!(poly_star(&PolyQP::q(), &PolyQP::p()), qp_plus_i);
        let qp_minus_i = PolyQP::q()
            .mul(&PolyQP::p())
            .sub(&PolyQP::constant(c(0.0, 1.0)));
        assert_eq!(poly_star(&PolyQP::p(), &PolyQP::q()), qp_minus_i);
    }

    #[test]
    fn canonical_commutation_relation_is_exact() {
        let a = PolyQP::a();
        let abar = PolyQP::abar();
        let h = PolyQP::h();
        assert_eq!(poly_star(&abar, &a), h.sub(&PolyQP::one()));
        assert_eq!(poly_star(&a, &abar), h.add(&PolyQP::one()));
        let comm = poly_star(&a, &abar).sub(&poly_star(&abar, &a));
        assert_eq!(comm, PolyQP::constant(c(2.0, 0.0)));
    }

    #[test]
    fn h_star_h() {
        let h = PolyQP::h();
        let expect = h.mul(&h).sub(&PolyQP::one());
        assert_eq!(poly_star(&h, &h), expect);
    }

    #[test]
    fn star_powers_of_a_collapse() {
        let a = PolyQP::a();
        let mut acc = a.clone();
        for n in 2..=5u32 {
            acc = poly_star(&a, &acc);
            assert_eq!(acc, a.pow(n), "a^{n}");
        }
    }

    #[test]
    fn moyal_bracket_matches_star_commutator_exactly() {
        let polys = sample_polys();
        for lhs in &polys {
            for rhs in &polys {
                let direct = moyal_bracket(lhs, rhs);
                let comm = poly_star(lhs, rhs).sub(&poly_star(rhs, lhs));
                assert_eq!(direct, comm);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let two_i = PolyQP::constant(c(0.0, 2.0));
        assert_eq!(moyal_bracket(&PolyQP::q(), &PolyQP::p()), two_i);
        let q2 = PolyQP::q().pow(2);
        let p2 = PolyQP::p().pow(2);
        let expect = PolyQP::q().mul(&PolyQP::p()).scale(Qr2::from_complex(c(0.0, 8.0)));
        assert_eq!(moyal_bracket(&q2, &p2), expect);
        let h = PolyQP::h();
        assert!(moyal_bracket(&h, &h).is_zero());
    }

    #[test]
    fn poisson_examples() {
        assert_eq!(poisson_bracket(&PolyQP::q(), &PolyQP::p()), PolyQP::one());
        let expect = PolyQP::q().mul(&PolyQP::p()).scale(Qr2::from_f64(4.0));
        assert_eq!(poisson_bracket(&PolyQP::q().pow(2), &PolyQP::p().pow(2)), expect);
        assert_eq!(
            poisson_bracket(&PolyQP::h(), &PolyQP::q()),
            PolyQP::p().neg()
        );
    }

    #[test]
    fn bracket_is_2i_poisson_for_quadratics() {
        let gens = [
            PolyQP::one(),
            PolyQP::q(),
            PolyQP::p(),
            PolyQP::q().pow(2),
            PolyQP::q().mul(&PolyQP::p()),
            PolyQP::p().pow(2),
        ];
        let two_i = Qr2::from_complex(c(0.0, 2.0));
        for lhs in &gens {
            for rhs in &gens {
                let expect = poisson_bracket(lhs, rhs).scale(two_i);
                assert_eq!(moyal_bracket(lhs, rhs), expect);
            }
        }
    }

    #[test]
    fn derivative_hat_convention() {
        assert!(derivative_hat(&PolyQP::q(), MultiIndex(1, 0)).is_zero());
        let p2 = PolyQP::p().pow(2);
        assert_eq!(
            derivative_hat(&p2, MultiIndex(1, 0)),
            PolyQP::p().scale(Qr2::from_f64(2.0))
        );
        assert_eq!(
            derivative_hat(&PolyQP::q(), MultiIndex(0, 1)),
            PolyQP::constant(c(-1.0, 0.0))
        );
    }

    #[test]
    fn leibniz_rules_exact() {
        let polys = sample_polys();
        for lhs in &polys {
            for rhs in &polys {
                let prod = poly_star(lhs, rhs);
                // d_q(P*Q) = d_q P * Q + P * d_q Q
                let want = poly_star(&lhs.diff_q(), rhs).add(&poly_star(lhs, &rhs.diff_q()));
                assert_eq!(prod.diff_q(), want);
                // mu_1 (P*Q) = P * mu_1 Q + i d_hat_1 P * Q, with mu_1 = q, d_hat_1 = d_p
                let mu = PolyQP::q().mul(&prod);
                let i_unit = Qr2::from_complex(c(0.0, 1.0));
                let want = poly_star(lhs, &PolyQP::q().mul(rhs))
                    .add(&poly_star(&lhs.diff_p().scale(i_unit), rhs));
                assert_eq!(mu, want);
                // mu_1 (P*Q) = mu_1 P * Q - i P * d_hat_1 Q
                let want2 = poly_star(&PolyQP::q().mul(lhs), rhs)
                    .sub(&poly_star(lhs, &rhs.diff_p().scale(i_unit)));
                assert_eq!(mu, want2);
            }
        }
    }

    #[test]
    fn involution_rule_exact() {
        let polys = sample_polys();
        for lhs in &polys {
            for rhs in &polys {
                let left = poly_star(lhs, rhs).conj();
                let right = poly_star(&rhs.conj(), &lhs.conj());
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn associativity_exact_on_integer_polynomials() {
        let polys = sample_polys();
        for x in &polys {
            for y in &polys {
                for z in &polys {
                    let lhs = poly_star(&poly_star(x, y), z);
                    let rhs = poly_star(x, &poly_star(y, z));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    /// Small-integer test polynomials of degree <= 4.
    fn sample_polys() -> Vec<PolyQP> {
        let q = PolyQP::q();
        let p = PolyQP::p();
        vec![
            q.pow(2).add(&p.scale(Qr2::from_f64(3.0))),
            q.mul(&p).sub(&PolyQP::constant(c(0.0, 2.0))),
            q.pow(3).add(&p.pow(4)).sub(&q.mul(&p.pow(2)).scale(Qr2::from_f64(2.0))),
            PolyQP::h(),
            q.pow(2).mul(&p.pow(2)).add(&PolyQP::one()),
        ]
    }

    #[test]
    fn display_matches_cli_examples() {
        let out = poly_star(&PolyQP::q(), &PolyQP::p());
        assert_eq!(out.to_string(), "q*p + 1i");
    }
}
