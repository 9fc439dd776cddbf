//! Coefficient ring C[sqrt(2)]: values x + y*sqrt(2) with complex x, y kept
//! separate so the 1/sqrt(2) factors of a = (q+ip)/sqrt(2) pair up exactly.
//!
//! With dyadic-rational components every ring operation below is exact in
//! f64, which is what makes identities like a*abar - abar*a = 2 hold bit-for-
//! bit instead of to round-off.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Element x + y*sqrt(2) of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Qr2 {
    /// Rational (sqrt(2)-free) part.
    pub plain: Complex64,
    /// Coefficient of sqrt(2).
    pub root2: Complex64,
}

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Qr2 {
    pub const ZERO: Qr2 = Qr2 {
        plain: C_ZERO,
        root2: C_ZERO,
    };
    pub const ONE: Qr2 = Qr2 {
        plain: Complex64::new(1.0, 0.0),
        root2: C_ZERO,
    };

    pub fn from_complex(c: Complex64) -> Qr2 {
        Qr2 {
            plain: c,
            root2: C_ZERO,
        }
    }

    pub fn from_f64(x: f64) -> Qr2 {
        Qr2::from_complex(Complex64::new(x, 0.0))
    }

    /// (sqrt(2))^k for any integer k, as an exact ring element.
    pub fn sqrt2_pow(k: i32) -> Qr2 {
        if k % 2 == 0 {
            Qr2 {
                plain: Complex64::new(2f64.powi(k / 2), 0.0),
                root2: C_ZERO,
            }
        } else {
            // sqrt(2)^k = 2^((k-1)/2) * sqrt(2); div_euclid keeps this right
            // for negative odd k (e.g. k = -1 -> sqrt(2)/2).
            Qr2 {
                plain: C_ZERO,
                root2: Complex64::new(2f64.powi(k.div_euclid(2)), 0.0),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plain == C_ZERO && self.root2 == C_ZERO
    }

    pub fn conj(&self) -> Qr2 {
        Qr2 {
            plain: self.plain.conj(),
            root2: self.root2.conj(),
        }
    }

    /// Multiply by i^k (exact: component swaps and sign flips only).
    pub fn mul_i_pow(&self, k: u32) -> Qr2 {
        let mut v = *self;
        for _ in 0..(k % 4) {
            v = Qr2 {
                plain: mul_i(v.plain),
                root2: mul_i(v.root2),
            };
        }
        v
    }

    /// Divide both components by an f64 (exact whenever the quotients are
    /// representable, e.g. integer coefficients divisible by a factorial).
    pub fn div_f64(&self, d: f64) -> Qr2 {
        Qr2 {
            plain: self.plain / d,
            root2: self.root2 / d,
        }
    }

    pub fn scale_f64(&self, s: f64) -> Qr2 {
        Qr2 {
            plain: self.plain * s,
            root2: self.root2 * s,
        }
    }

    /// Collapse to an ordinary complex number (one rounding per component).
    pub fn to_complex(&self) -> Complex64 {
        self.plain + self.root2 * std::f64::consts::SQRT_2
    }
}

fn mul_i(c: Complex64) -> Complex64 {
    Complex64::new(-c.im, c.re)
}

impl Add for Qr2 {
    type Output = Qr2;
    fn add(self, rhs: Qr2) -> Qr2 {
        Qr2 {
            plain: self.plain + rhs.plain,
            root2: self.root2 + rhs.root2,
        }
    }
}

impl Sub for Qr2 {
    type Output = Qr2;
    fn sub(self, rhs: Qr2) -> Qr2 {
        Qr2 {
            plain: self.plain - rhs.plain,
            root2: self.root2 - rhs.root2,
        }
    }
}

impl Neg for Qr2 {
    type Output = Qr2;
    fn neg(self) -> Qr2 {
        Qr2 {
            plain: -self.plain,
            root2: -self.root2,
        }
    }
}

impl Mul for Qr2 {
    type Output = Qr2;
    fn mul(self, rhs: Qr2) -> Qr2 {
        // (x1 + y1 r)(x2 + y2 r) = x1 x2 + 2 y1 y2 + (x1 y2 + y1 x2) r
        Qr2 {
            plain: self.plain * rhs.plain + 2.0 * self.root2 * rhs.root2,
            root2: self.plain * rhs.root2 + self.root2 * rhs.plain,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two_exactly() {
        let r = Qr2::sqrt2_pow(1);
        let two = r * r;
        assert_eq!(two, Qr2::from_f64(2.0));
        let inv = Qr2::sqrt2_pow(-1);
        assert_eq!(inv * inv, Qr2::from_f64(0.5));
        assert_eq!(r * inv, Qr2::ONE);
        assert_eq!(Qr2::sqrt2_pow(3), Qr2::sqrt2_pow(1) * Qr2::from_f64(2.0));
    }

    #[test]
    fn i_powers_cycle() {
        let x = Qr2 {
            plain: Complex64::new(1.0, 2.0),
            root2: Complex64::new(-3.0, 0.5),
        };
        assert_eq!(x.mul_i_pow(4), x);
        assert_eq!(x.mul_i_pow(2), -x);
    }

    #[test]
    fn to_complex_collapses() {
        let x = Qr2 {
            plain: Complex64::new(1.0, 0.0),
            root2: Complex64::new(1.0, 0.0),
        };
        let v = x.to_complex();
        assert!((v.re - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-15);
    }
}
