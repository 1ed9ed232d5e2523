//! Monomial terms `c * x^a * y^b` and canonical sums of them.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One monomial `coeff * x^a * y^b` with positive coefficient and nonnegative exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    coeff: Rational,
    a: Rational,
    b: Rational,
}

impl Term {
    pub fn new(coeff: Rational, a: Rational, b: Rational) -> Result<Self> {
        if !coeff.is_positive() {
            return Err(Error::Domain(format!(
                "coefficient {coeff} is not positive"
            )));
        }
        if a.is_negative() || b.is_negative() {
            return Err(Error::Domain(format!(
                "exponent pair ({a}, {b}) has a negative entry"
            )));
        }
        Ok(Term { coeff, a, b })
    }

    /// A unit-coefficient monomial `x^a * y^b`.
    pub fn monomial(a: Rational, b: Rational) -> Result<Self> {
        Term::new(Rational::one(), a, b)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    /// Exponent of `x`.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Exponent of `y`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn exponents(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coeff.is_one() || (self.a.is_zero() && self.b.is_zero()) {
            parts.push(self.coeff.to_string());
        }
        for (var, exp) in [("x", &self.a), ("y", &self.b)] {
            if exp.is_zero() {
                continue;
            }
            if exp.is_one() {
                parts.push(var.to_string());
            } else if exp.is_integer() {
                parts.push(format!("{var}^{exp}"));
            } else {
                parts.push(format!("{var}^({exp})"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A sum of terms in canonical form: duplicates merged, sorted by `(a, b)` ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TermSum {
    terms: Vec<Term>,
}

impl TermSum {
    pub fn new(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        terms.sort_by(|s, t| (&s.a, &s.b).cmp(&(&t.a, &t.b)));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.a == t.a && last.b == t.b => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        TermSum { terms: merged }
    }

    /// Unit-coefficient sum over the given exponent pairs.
    pub fn from_exponents<'a>(pairs: impl IntoIterator<Item = &'a (Rational, Rational)>) -> Self {
        TermSum::new(pairs.into_iter().map(|(a, b)| Term {
            coeff: Rational::one(),
            a: a.clone(),
            b: b.clone(),
        }))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, i: usize) -> Result<&Term> {
        self.terms.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.terms.len(),
        })
    }

    /// Canonical text form; `parse_sum(print_sum(s)) == s`.
    pub fn print(&self) -> String {
        self.to_string()
    }

    /// Evaluates the sum at `(x, y)` with `precision` bits of mantissa.
    ///
    /// Each power is computed with 96 guard bits and rounded once, so its
    /// relative error stays below `2^(1 - precision)`.
    pub fn eval(&self, x: &Rational, y: &Rational, precision: usize) -> Result<BigFloat> {
        if x < &Rational::one() || y < &Rational::one() {
            return Err(Error::Domain(format!(
                "valuation ({x}, {y}) outside x, y >= 1"
            )));
        }
        if precision < 53 {
            return Err(Error::Domain(format!(
                "precision {precision} below 53 bits"
            )));
        }
        let wp = precision + 96;
        let rm = RoundingMode::ToEven;
        let mut cc = Consts::new().map_err(|e| Error::Domain(format!("{e:?}")))?;
        let xf = to_bigfloat(x, wp, &mut cc);
        let yf = to_bigfloat(y, wp, &mut cc);
        let mut total = BigFloat::from_word(0, wp);
        for t in &self.terms {
            let mut v = to_bigfloat(&t.coeff, wp, &mut cc);
            v = v.mul(&power(&xf, &t.a, wp, &mut cc), wp, rm);
            v = v.mul(&power(&yf, &t.b, wp, &mut cc), wp, rm);
            total = total.add(&v, wp, rm);
        }
        let mut out = total;
        out.set_precision(precision, rm)
            .map_err(|e| Error::Domain(format!("{e:?}")))?;
        Ok(out)
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for TermSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sum(s)
    }
}

pub(crate) fn to_bigfloat(r: &Rational, p: usize, cc: &mut Consts) -> BigFloat {
    let rm = RoundingMode::ToEven;
    let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, rm, cc);
    let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, rm, cc);
    n.div(&d, p, rm)
}

fn power(base: &BigFloat, exp: &Rational, p: usize, cc: &mut Consts) -> BigFloat {
    let rm = RoundingMode::ToEven;
    if exp.is_zero() {
        return BigFloat::from_word(1, p);
    }
    if exp.is_integer() {
        if let Some(n) = exp.to_integer().to_usize() {
            return base.powi(n, p, rm);
        }
    }
    base.pow(&to_bigfloat(exp, p, cc), p, rm, cc)
}

/// Parses a sum-of-monomials expression such as `x^2 + 2*x*y + y^(3/2)`.
///
/// The bare expression `0` denotes the empty sum.
pub fn parse_sum(text: &str) -> Result<TermSum> {
    if text.trim() == "0" {
        return Ok(TermSum::default());
    }
    let mut p = Parser::new(text);
    let mut terms = vec![p.product()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some('+') => {
                p.bump();
                terms.push(p.product()?);
            }
            Some(c) => return Err(p.syntax(format!("unexpected `{c}`"))),
        }
    }
    Ok(TermSum::new(terms))
}

pub fn print_sum(s: &TermSum) -> String {
    s.print()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            idx: 0,
            len: src.len(),
            _src: src,
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.idx += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.idx += 1;
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.syntax(format!("expected `{want}`, found end of input"))),
        }
    }

    /// Optionally signed decimal integer.
    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.idx;
        if self.peek() == Some('-') {
            self.bump();
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let s: String = self.chars[start..self.idx]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        if s.is_empty() || s == "-" {
            self.idx = start;
            return Err(self.syntax("expected integer"));
        }
        Ok(s.parse().expect("digits"))
    }

    fn product(&mut self) -> Result<Term> {
        let mut coeff = Rational::one();
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        loop {
            self.factor(&mut coeff, &mut a, &mut b)?;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(Term { coeff, a, b })
    }

    fn factor(&mut self, coeff: &mut Rational, a: &mut Rational, b: &mut Rational) -> Result<()> {
        self.skip_ws();
        let pos = self.pos();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => {
                let n = self.integer()?;
                self.skip_ws();
                let value = if self.peek() == Some('/') {
                    self.bump();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                if !value.is_positive() {
                    return Err(Error::NonPositiveCoefficient { pos });
                }
                *coeff *= value;
                Ok(())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.idx;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.bump();
                }
                let name: String = self.chars[start..self.idx]
                    .iter()
                    .map(|&(_, c)| c)
                    .collect();
                let slot = match name.as_str() {
                    "x" => a,
                    "y" => b,
                    _ => return Err(Error::UnknownVariable { pos, name }),
                };
                self.skip_ws();
                let exp = if self.peek() == Some('^') {
                    self.bump();
                    self.exponent()?
                } else {
                    Rational::one()
                };
                *slot += exp;
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("unexpected `{c}`"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        self.skip_ws();
        let pos = self.pos();
        let value = if self.peek() == Some('(') {
            self.bump();
            let n = self.integer()?;
            self.skip_ws();
            let d = if self.peek() == Some('/') {
                self.bump();
                self.integer()?
            } else {
                BigInt::one()
            };
            self.expect(')')?;
            if d.is_zero() {
                return Err(Error::Syntax {
                    pos,
                    msg: "zero denominator".into(),
                });
            }
            Rational::new(n, d)
        } else {
            Rational::from_integer(self.integer()?)
        };
        if value.is_negative() {
            return Err(Error::NegativeExponent { pos });
        }
        Ok(value)
    }
}
