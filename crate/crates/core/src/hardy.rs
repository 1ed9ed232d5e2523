//! Growth comparison for single-variable terms
//! `c * n^p * (log n)^l * base^(n^d)`.
//!
//! Within this fragment two terms compare lexicographically on
//! `(d, base, p, l)`, so any finite sum collapses to its largest term.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniTerm {
    coeff: Rational,
    poly: Rational,
    log: Rational,
    base: Rational,
    arg: Rational,
}

impl UniTerm {
    /// Normalizes so that a constant exponential factor (`d = 0` or `base = 1`)
    /// is folded into the coefficient.
    pub fn new(
        coeff: Rational,
        poly: Rational,
        log: Rational,
        base: Rational,
        arg: Rational,
    ) -> Result<Self> {
        if !coeff.is_positive() {
            return Err(Error::Domain(format!(
                "coefficient {coeff} is not positive"
            )));
        }
        if base < Rational::one() {
            return Err(Error::Domain(format!("exponential base {base} is below 1")));
        }
        if arg.is_negative() {
            return Err(Error::Domain(format!(
                "exponential argument power {arg} is negative"
            )));
        }
        let (coeff, base, arg) = if arg.is_zero() {
            (coeff * base, Rational::one(), Rational::zero())
        } else if base.is_one() {
            (coeff, Rational::one(), Rational::zero())
        } else {
            (coeff, base, arg)
        };
        Ok(UniTerm {
            coeff,
            poly,
            log,
            base,
            arg,
        })
    }

    pub fn poly(p: Rational) -> Self {
        UniTerm::new(
            Rational::one(),
            p,
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        )
        .expect("valid")
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }
    pub fn poly_exp(&self) -> &Rational {
        &self.poly
    }
    pub fn log_exp(&self) -> &Rational {
        &self.log
    }
    pub fn exp_base(&self) -> &Rational {
        &self.base
    }
    pub fn exp_arg_exp(&self) -> &Rational {
        &self.arg
    }

    /// Asymptotic order, ignoring coefficients.
    pub fn compare(&self, other: &UniTerm) -> Ordering {
        self.arg
            .cmp(&other.arg)
            .then_with(|| self.base.cmp(&other.base))
            .then_with(|| self.poly.cmp(&other.poly))
            .then_with(|| self.log.cmp(&other.log))
    }

    /// Natural log of the term at `n` (n > e so that `log log n` is defined).
    pub fn ln_at(&self, n: f64) -> f64 {
        let ln_n = n.ln();
        let mut v = to_f64(&self.coeff).ln() + to_f64(&self.poly) * ln_n;
        if !self.log.is_zero() {
            v += to_f64(&self.log) * ln_n.ln();
        }
        if !self.arg.is_zero() {
            v += n.powf(to_f64(&self.arg)) * to_f64(&self.base).ln();
        }
        v
    }
}

fn fmt_exp(e: &Rational) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for UniTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let trivial = self.poly.is_zero() && self.log.is_zero() && self.arg.is_zero();
        if !self.coeff.is_one() || trivial {
            parts.push(self.coeff.to_string());
        }
        if !self.poly.is_zero() {
            parts.push(if self.poly.is_one() {
                "n".to_string()
            } else {
                format!("n^{}", fmt_exp(&self.poly))
            });
        }
        if !self.log.is_zero() {
            parts.push(if self.log.is_one() {
                "log(n)".to_string()
            } else {
                format!("log(n)^{}", fmt_exp(&self.log))
            });
        }
        if !self.arg.is_zero() {
            let base = if self.base.is_integer() {
                self.base.to_string()
            } else {
                format!("({})", self.base)
            };
            parts.push(if self.arg.is_one() {
                format!("{base}^n")
            } else {
                format!("{base}^(n^{})", fmt_exp(&self.arg))
            });
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// The single term `G` with `sum = Theta(G)`; coefficients of tied terms add up.
pub fn reduce_single(sum: &[UniTerm]) -> Result<UniTerm> {
    let first = sum.first().ok_or(Error::EmptySum)?;
    let mut best = first.clone();
    for t in &sum[1..] {
        match t.compare(&best) {
            Ordering::Greater => best = t.clone(),
            Ordering::Equal => best.coeff += &t.coeff,
            Ordering::Less => {}
        }
    }
    Ok(best)
}

/// Parses `4*n^3 + log(n)^5 + 2^(n^2)` style sums.
pub fn parse_uni_sum(text: &str) -> Result<Vec<UniTerm>> {
    let mut p = UniParser {
        s: text.as_bytes(),
        i: 0,
    };
    let mut terms = vec![p.product()?];
    loop {
        p.ws();
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.i += 1;
                terms.push(p.product()?);
            }
            Some(c) => return Err(p.err(format!("unexpected `{}`", c as char))),
        }
    }
    Ok(terms)
}

struct UniParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl UniParser<'_> {
    fn ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.i,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{lit}`")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        if self.peek() == Some(b'-') {
            self.i += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let parsed = std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok());
        match parsed {
            Some(n) => Ok(n),
            None => {
                self.i = start;
                Err(self.err("expected integer"))
            }
        }
    }

    /// `int` or `(int/int)` or `(int)`.
    fn exponent(&mut self) -> Result<Rational> {
        if self.eat("(") {
            let n = self.integer()?;
            let d = if self.eat("/") {
                self.integer()?
            } else {
                BigInt::one()
            };
            self.expect(")")?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(self.integer()?))
        }
    }

    fn product(&mut self) -> Result<UniTerm> {
        let mut coeff = Rational::one();
        let mut poly = Rational::zero();
        let mut log = Rational::zero();
        let mut base = Rational::one();
        let mut arg: Option<Rational> = None;
        loop {
            self.ws();
            let pos = self.i;
            if self.eat("log(n)") {
                log += if self.eat("^") {
                    self.exponent()?
                } else {
                    Rational::one()
                };
            } else if self.peek() == Some(b'n') {
                self.i += 1;
                poly += if self.eat("^") {
                    self.exponent()?
                } else {
                    Rational::one()
                };
            } else if self
                .peek()
                .is_some_and(|c| c.is_ascii_digit() || c == b'(' || c == b'-')
            {
                let value = if self.eat("(") {
                    let n = self.integer()?;
                    let d = if self.eat("/") {
                        self.integer()?
                    } else {
                        BigInt::one()
                    };
                    self.expect(")")?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Rational::new(n, d)
                } else {
                    let n = self.integer()?;
                    if self.eat("/") {
                        let d = self.integer()?;
                        if d.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        Rational::new(n, d)
                    } else {
                        Rational::from_integer(n)
                    }
                };
                if self.eat("^") {
                    // base^n or base^(n^d)
                    let d = if self.eat("(") {
                        self.expect("n")?;
                        let d = if self.eat("^") {
                            self.exponent()?
                        } else {
                            Rational::one()
                        };
                        self.expect(")")?;
                        d
                    } else {
                        self.expect("n")?;
                        Rational::one()
                    };
                    if value < Rational::one() {
                        return Err(Error::Domain(format!(
                            "exponential base {value} is below 1"
                        )));
                    }
                    match &arg {
                        Some(prev) if prev != &d => {
                            return Err(Error::Syntax {
                                pos,
                                msg: "exponentials with different arguments in one product".into(),
                            })
                        }
                        _ => {}
                    }
                    base *= value;
                    arg = Some(d);
                } else {
                    if !value.is_positive() {
                        return Err(Error::NonPositiveCoefficient { pos });
                    }
                    coeff *= value;
                }
            } else {
                return Err(match self.peek() {
                    Some(c) if c.is_ascii_alphabetic() => {
                        let start = self.i;
                        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                            self.i += 1;
                        }
                        Error::UnknownVariable {
                            pos: start,
                            name: String::from_utf8_lossy(&self.s[start..self.i]).into_owned(),
                        }
                    }
                    Some(c) => self.err(format!("unexpected `{}`", c as char)),
                    None => self.err("unexpected end of input"),
                });
            }
            if !self.eat("*") {
                break;
            }
        }
        UniTerm::new(coeff, poly, log, base, arg.unwrap_or_else(Rational::zero))
    }
}
