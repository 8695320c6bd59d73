//! Plain-text grammar for polynomial and radical literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 't' | 'R1' | 'R2' | '(' expr ')'
//! ```
//!
//! The printer emits a canonical form (highest degree first, radical groups
//! in the order `1, R1, R2, R1*R2`) so that `parse(print(e)) == e` and
//! printing a parsed canonical string reproduces it byte for byte.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::RationalPolynomial;
use super::radical::{Monomial, RadicalExpression};
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    R1,
    R2,
    Caret,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn err(column: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { column, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("digits")), col));
                continue;
            }
            't' => out.push((Tok::T, col)),
            'R' => match chars.get(i + 1) {
                Some('1') => {
                    out.push((Tok::R1, col));
                    i += 1;
                }
                Some('2') => {
                    out.push((Tok::R2, col));
                    i += 1;
                }
                _ => return Err(err(col, "expected R1 or R2")),
            },
            '^' => out.push((Tok::Caret, col)),
            '*' => out.push((Tok::Star, col)),
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<RadicalExpression, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RadicalExpression, AlgebraError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RadicalExpression, AlgebraError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RadicalExpression, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        match self.toks.get(self.pos) {
            Some((Tok::Int(k), _)) => {
                let k: u32 = k
                    .try_into()
                    .ok()
                    .filter(|k| *k <= 256)
                    .ok_or_else(|| err(col, "exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(k))
            }
            _ => Err(err(col, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RadicalExpression, AlgebraError> {
        let col = self.col();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return Err(err(col, "unexpected end of input"));
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Int(n) => RationalPolynomial::constant(BigRational::from_integer(n)).into(),
            Tok::T => RationalPolynomial::t().into(),
            Tok::R1 => RadicalExpression::r1(),
            Tok::R2 => RadicalExpression::r2(),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(err(self.col(), "expected `)`"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(err(col, "expected a number, `t`, `R1`, `R2` or `(`")),
        })
    }
}

/// Parses a radical expression literal.
pub fn parse_radical(src: &str) -> Result<RadicalExpression, AlgebraError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(err(1, "empty expression"));
    }
    let mut parser = Parser { toks, pos: 0, end_col: src.chars().count() + 1 };
    let e = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(err(parser.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a literal that must be free of radicals.
pub fn parse_polynomial(src: &str) -> Result<RationalPolynomial, AlgebraError> {
    let e = parse_radical(src)?;
    e.as_polynomial()
        .cloned()
        .ok_or_else(|| err(1, "radicals are not allowed here"))
}

fn int_text(c: &BigRational) -> Result<String, AlgebraError> {
    if c.is_integer() {
        Ok(c.to_integer().to_string())
    } else {
        Err(AlgebraError::NonIntegerCoefficient(c.to_string()))
    }
}

fn power_text(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{k}"),
    }
}

/// Signed pieces `(negative, body)` of one polynomial, highest degree first.
fn pieces(
    p: &RationalPolynomial,
    suffix: &str,
    num: &dyn Fn(&BigRational) -> Result<String, AlgebraError>,
) -> Result<Vec<(bool, String)>, AlgebraError> {
    let mut out = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let mut factors = Vec::new();
        if !mag.is_one() || (k == 0 && suffix.is_empty()) {
            factors.push(num(&mag)?);
        }
        if k > 0 {
            factors.push(power_text(k));
        }
        if !suffix.is_empty() {
            factors.push(suffix.to_string());
        }
        out.push((c.is_negative(), factors.join("*")));
    }
    Ok(out)
}

fn join(pieces: Vec<(bool, String)>) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in pieces.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        s.push_str(&body);
    }
    s
}

fn radical_pieces(
    e: &RadicalExpression,
    num: &dyn Fn(&BigRational) -> Result<String, AlgebraError>,
) -> Result<Vec<(bool, String)>, AlgebraError> {
    let mut out = pieces(e.part(Monomial::ONE), "", num)?;
    for m in [Monomial::R1, Monomial::R2, Monomial::R1R2] {
        let q = e.part(m);
        if q.is_zero() {
            continue;
        }
        let inner = pieces(q, m.name(), num)?;
        if inner.len() == 1 {
            out.extend(inner);
        } else {
            let body = join(pieces(q, "", num)?);
            out.push((false, format!("{}*({body})", m.name())));
        }
    }
    Ok(out)
}

/// Canonical text of a polynomial with integer coefficients.
pub fn polynomial_to_text(p: &RationalPolynomial) -> Result<String, AlgebraError> {
    Ok(join(pieces(p, "", &int_text)?))
}

/// Canonical text of a radical expression with integer coefficients.
pub fn radical_to_text(e: &RadicalExpression) -> Result<String, AlgebraError> {
    Ok(join(radical_pieces(e, &int_text)?))
}

pub(crate) fn format_terms(p: &RationalPolynomial, num: impl Fn(&BigRational) -> String) -> String {
    let f = |c: &BigRational| Ok(num(c));
    join(pieces(p, "", &f).expect("infallible formatter"))
}

pub(crate) fn format_radical(e: &RadicalExpression, num: impl Fn(&BigRational) -> String) -> String {
    let f = |c: &BigRational| Ok(num(c));
    join(radical_pieces(e, &f).expect("infallible formatter"))
}
