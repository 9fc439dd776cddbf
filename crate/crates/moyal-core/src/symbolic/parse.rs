//! Expression grammar for polynomial literals and CLI operands.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := number ['i'] | 'i' | 'q' | 'p' | 'H' | 'a' | 'abar'
//!         | 'f' '[' uint ',' uint ']' | 'gauss' '(' number ')' | '(' expr ')'
//! ```
//!
//! `H`, `a`, `abar` expand to (q^2+p^2)/2, (q+ip)/sqrt(2), (q-ip)/sqrt(2).
//! `f[m,n]` names a twisted Hermite basis element and `gauss(s)` the envelope
//! exp(-u^2/(2 s^2)); both are operand-level atoms, not polynomials.

use super::poly::PolyQP;
use super::ring::Qr2;
use crate::{Error, Result};
use num_complex::Complex64;

/// Parsed operand for the CLI backends.
#[derive(Clone, Debug, PartialEq)]
pub enum Operand {
    /// Bare basis element f[m,n].
    Basis(usize, usize),
    /// Pure polynomial in (q, p).
    Poly(PolyQP),
    /// Polynomial times exp(-u^2 * inv_width2 / 2); `gauss(1)` gives
    /// inv_width2 = 1, i.e. f_0 / 2.
    WindowedPoly { poly: PolyQP, inv_width2: f64 },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = input.chars().collect();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos];
        match ch {
            c if c.is_whitespace() => pos += 1,
            '+' => {
                toks.push(Tok::Plus);
                pos += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                pos += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                pos += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                pos += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                pos += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                pos += 1;
            }
            '[' => {
                toks.push(Tok::LBracket);
                pos += 1;
            }
            ']' => {
                toks.push(Tok::RBracket);
                pos += 1;
            }
            ',' => {
                toks.push(Tok::Comma);
                pos += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_digit()
                        || bytes[pos] == '.'
                        || bytes[pos] == 'e'
                        || bytes[pos] == 'E'
                        || ((bytes[pos] == '+' || bytes[pos] == '-')
                            && pos > start
                            && (bytes[pos - 1] == 'e' || bytes[pos - 1] == 'E')))
                {
                    pos += 1;
                }
                let text: String = bytes[start..pos].iter().collect();
                let val: f64 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number literal `{text}`")))?;
                toks.push(Tok::Num(val));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == '_')
                {
                    pos += 1;
                }
                toks.push(Tok::Ident(bytes[start..pos].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

/// Value carried through evaluation: polynomial plus an optional Gaussian
/// envelope (tracked by 1/s^2 so products of envelopes just add), or a bare
/// basis atom which tolerates no arithmetic.
#[derive(Clone, Debug)]
enum Value {
    Windowed { poly: PolyQP, inv_width2: f64 },
    Basis(usize, usize),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        match self.next() {
            Some(ref t) if t == tok => Ok(()),
            other => Err(Error::Parse(format!("expected {what}, got {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = neg_value(acc)?;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    acc = add_values(acc, rhs)?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = neg_value(self.term()?)?;
                    acc = add_values(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            let rhs = self.factor()?;
            acc = mul_values(acc, rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let n = match self.next() {
                Some(Tok::Num(v)) if v.fract() == 0.0 && v >= 0.0 && v <= 64.0 => v as u32,
                other => {
                    return Err(Error::Parse(format!(
                        "exponent must be a small nonnegative integer, got {other:?}"
                    )))
                }
            };
            let Value::Windowed { poly, inv_width2 } = base else {
                return Err(Error::Parse("basis elements cannot be exponentiated".into()));
            };
            return Ok(Value::Windowed {
                poly: poly.pow(n),
                inv_width2: inv_width2 * n as f64,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value> {
        match self.next() {
            Some(Tok::Num(v)) => {
                // a number immediately followed by `i` is an imaginary literal
                if matches!(self.peek(), Some(Tok::Ident(s)) if s == "i") {
                    self.next();
                    Ok(poly_value(PolyQP::constant(Complex64::new(0.0, v))))
                } else {
                    Ok(poly_value(PolyQP::constant(Complex64::new(v, 0.0))))
                }
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(poly_value(PolyQP::constant(Complex64::new(0.0, 1.0)))),
                "q" => Ok(poly_value(PolyQP::q())),
                "p" => Ok(poly_value(PolyQP::p())),
                "H" => Ok(poly_value(PolyQP::h())),
                "a" => Ok(poly_value(PolyQP::a())),
                "abar" => Ok(poly_value(PolyQP::abar())),
                "f" => {
                    self.expect(&Tok::LBracket, "`[` after f")?;
                    let m = self.uint()?;
                    self.expect(&Tok::Comma, "`,` in f[m,n]")?;
                    let n = self.uint()?;
                    self.expect(&Tok::RBracket, "`]` closing f[m,n]")?;
                    Ok(Value::Basis(m, n))
                }
                "gauss" => {
                    self.expect(&Tok::LParen, "`(` after gauss")?;
                    let s = match self.next() {
                        Some(Tok::Num(v)) if v > 0.0 => v,
                        other => {
                            return Err(Error::Parse(format!(
                                "gauss(s) needs a positive width, got {other:?}"
                            )))
                        }
                    };
                    self.expect(&Tok::RParen, "`)` closing gauss(s)")?;
                    Ok(Value::Windowed {
                        poly: PolyQP::one(),
                        inv_width2: 1.0 / (s * s),
                    })
                }
                other => Err(Error::Parse(format!("unknown symbol `{other}`"))),
            },
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn uint(&mut self) -> Result<usize> {
        match self.next() {
            Some(Tok::Num(v)) if v.fract() == 0.0 && v >= 0.0 => Ok(v as usize),
            other => Err(Error::Parse(format!(
                "expected a nonnegative integer, got {other:?}"
            ))),
        }
    }
}

fn poly_value(poly: PolyQP) -> Value {
    Value::Windowed {
        poly,
        inv_width2: 0.0,
    }
}

fn neg_value(v: Value) -> Result<Value> {
    match v {
        Value::Windowed { poly, inv_width2 } => Ok(Value::Windowed {
            poly: poly.neg(),
            inv_width2,
        }),
        Value::Basis(..) => Err(Error::Parse(
            "basis elements do not combine arithmetically".into(),
        )),
    }
}

fn add_values(lhs: Value, rhs: Value) -> Result<Value> {
    match (lhs, rhs) {
        (
            Value::Windowed {
                poly: p1,
                inv_width2: w1,
            },
            Value::Windowed {
                poly: p2,
                inv_width2: w2,
            },
        ) => {
            if w1 != w2 {
                return Err(Error::Parse(
                    "cannot add terms with different Gaussian envelopes".into(),
                ));
            }
            Ok(Value::Windowed {
                poly: p1.add(&p2),
                inv_width2: w1,
            })
        }
        _ => Err(Error::Parse(
            "basis elements do not combine arithmetically".into(),
        )),
    }
}

fn mul_values(lhs: Value, rhs: Value) -> Result<Value> {
    match (lhs, rhs) {
        (
            Value::Windowed {
                poly: p1,
                inv_width2: w1,
            },
            Value::Windowed {
                poly: p2,
                inv_width2: w2,
            },
        ) => Ok(Value::Windowed {
            poly: p1.mul(&p2),
            inv_width2: w1 + w2,
        }),
        _ => Err(Error::Parse(
            "basis elements do not combine arithmetically".into(),
        )),
    }
}

/// Parse a pure polynomial literal such as `3*q^2*p - 2i*H + a*abar`.
pub fn parse_poly(input: &str) -> Result<PolyQP> {
    match parse_operand(input)? {
        Operand::Poly(p) => Ok(p),
        _ => Err(Error::Parse(
            "expected a pure polynomial expression".into(),
        )),
    }
}

/// Parse a CLI operand: a polynomial, poly * gauss(s), or a bare f[m,n].
pub fn parse_operand(input: &str) -> Result<Operand> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { toks, pos: 0 };
    let value = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            parser.pos
        )));
    }
    Ok(match value {
        Value::Basis(m, n) => Operand::Basis(m, n),
        Value::Windowed { poly, inv_width2 } => {
            if inv_width2 == 0.0 {
                Operand::Poly(poly)
            } else {
                Operand::WindowedPoly { poly, inv_width2 }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_literals() {
        let p = parse_poly("3*q^2*p - 2i*H + a*abar").unwrap();
        let expect = PolyQP::q()
            .pow(2)
            .mul(&PolyQP::p())
            .scale(Qr2::from_f64(3.0))
            .sub(&PolyQP::h().scale(Qr2::from_complex(Complex64::new(0.0, 2.0))))
            .add(&PolyQP::a().mul(&PolyQP::abar()));
        assert_eq!(p, expect);
    }

    #[test]
    fn a_abar_expand_exactly() {
        // a*abar as a pointwise polynomial is H
        let p = parse_poly("a*abar").unwrap();
        assert_eq!(p, PolyQP::h());
    }

    #[test]
    fn operand_forms() {
        assert_eq!(parse_operand("f[2,3]").unwrap(), Operand::Basis(2, 3));
        match parse_operand("(q^2+1)*gauss(1)").unwrap() {
            Operand::WindowedPoly { poly, inv_width2 } => {
                assert_eq!(inv_width2, 1.0);
                assert_eq!(poly, PolyQP::q().pow(2).add(&PolyQP::one()));
            }
            other => panic!("unexpected operand {other:?}"),
        }
        // two gaussians combine widths
        match parse_operand("gauss(1)*gauss(1)").unwrap() {
            Operand::WindowedPoly { inv_width2, .. } => assert_eq!(inv_width2, 2.0),
            other => panic!("unexpected operand {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_operand("f[1,2] + q").is_err());
        assert!(parse_operand("q + p*gauss(1)").is_err());
        assert!(parse_operand("3 $ 4").is_err());
        assert!(parse_operand("").is_err());
        assert!(parse_operand("q +").is_err());
        assert!(parse_poly("f[0,0]").is_err());
    }

    #[test]
    fn unary_minus_and_parens() {
        let p = parse_poly("-(q - p)^2").unwrap();
        let expect = PolyQP::q().sub(&PolyQP::p()).pow(2).neg();
        assert_eq!(p, expect);
    }
}
