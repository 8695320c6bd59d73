//! Polynomials in `t` extended by the radicals `R1 = sqrt(2t^4 + 2)` and
//! `R2 = sqrt(2t^2 + 2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::RationalPolynomial;

/// One of the four radical monomials `1, R1, R2, R1*R2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub r1: bool,
    pub r2: bool,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { r1: false, r2: false };
    pub const R1: Monomial = Monomial { r1: true, r2: false };
    pub const R2: Monomial = Monomial { r1: false, r2: true };
    pub const R1R2: Monomial = Monomial { r1: true, r2: true };
    pub const ALL: [Monomial; 4] = [Monomial::ONE, Monomial::R1, Monomial::R2, Monomial::R1R2];

    fn index(self) -> usize {
        self.r1 as usize | (self.r2 as usize) << 1
    }

    pub fn name(self) -> &'static str {
        match (self.r1, self.r2) {
            (false, false) => "1",
            (true, false) => "R1",
            (false, true) => "R2",
            (true, true) => "R1*R2",
        }
    }
}

/// `2t^4 + 2`, the square of `R1`.
pub fn r1_squared() -> RationalPolynomial {
    RationalPolynomial::from_ints(&[2, 0, 0, 0, 2])
}

/// `2t^2 + 2`, the square of `R2`.
pub fn r2_squared() -> RationalPolynomial {
    RationalPolynomial::from_ints(&[2, 0, 2])
}

/// `sum P_m(t) * m` over the four radical monomials `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalExpression {
    parts: [RationalPolynomial; 4],
}

impl RadicalExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: RationalPolynomial) -> Self {
        Self::term(p, Monomial::ONE)
    }

    /// `p * m`.
    pub fn term(p: RationalPolynomial, m: Monomial) -> Self {
        let mut out = Self::zero();
        out.parts[m.index()] = p;
        out
    }

    pub fn r1() -> Self {
        Self::term(RationalPolynomial::one(), Monomial::R1)
    }

    pub fn r2() -> Self {
        Self::term(RationalPolynomial::one(), Monomial::R2)
    }

    pub fn part(&self, m: Monomial) -> &RationalPolynomial {
        &self.parts[m.index()]
    }

    pub fn set_part(&mut self, m: Monomial, p: RationalPolynomial) {
        self.parts[m.index()] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    /// The polynomial value if no radical monomial is present.
    pub fn as_polynomial(&self) -> Option<&RationalPolynomial> {
        if self.radical_monomial_count() == 0 {
            Some(self.part(Monomial::ONE))
        } else {
            None
        }
    }

    /// Monomials with a nonzero coefficient polynomial.
    pub fn support(&self) -> Vec<Monomial> {
        Monomial::ALL
            .into_iter()
            .filter(|m| !self.part(*m).is_zero())
            .collect()
    }

    /// Number of distinct monomials other than `1` that are present.
    pub fn radical_monomial_count(&self) -> usize {
        self.support().into_iter().filter(|m| *m != Monomial::ONE).count()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { parts: self.parts.clone().map(|p| p.scale(c)) }
    }

    pub fn mul_poly(&self, q: &RationalPolynomial) -> Self {
        Self { parts: self.parts.clone().map(|p| &p * q) }
    }

    /// Highest degree among the coefficient polynomials.
    pub fn max_degree(&self) -> Option<usize> {
        self.parts.iter().filter_map(|p| p.degree()).max()
    }

    /// True if every coefficient polynomial has nonnegative coefficients and
    /// the expression is nonzero, which makes it strictly positive on `t > 0`.
    pub fn manifestly_positive(&self) -> bool {
        !self.is_zero()
            && self
                .parts
                .iter()
                .all(|p| p.coeffs().iter().all(|c| !c.is_negative()))
    }

    /// True if every coefficient of every part is an integer.
    pub fn is_integral(&self) -> bool {
        self.parts.iter().all(|p| p.is_integral())
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let r1 = (2.0 * t.powi(4) + 2.0).sqrt();
        let r2 = (2.0 * t * t + 2.0).sqrt();
        self.part(Monomial::ONE).eval_f64(t)
            + r1 * self.part(Monomial::R1).eval_f64(t)
            + r2 * self.part(Monomial::R2).eval_f64(t)
            + r1 * r2 * self.part(Monomial::R1R2).eval_f64(t)
    }

    /// Exact value at `t = 1`, where `R1 = R2 = 2`.
    pub fn eval_at_one(&self) -> BigRational {
        let one = BigRational::from_integer(1.into());
        let two = BigRational::from_integer(2.into());
        Monomial::ALL.into_iter().fold(BigRational::zero(), |acc, m| {
            let w = match (m.r1, m.r2) {
                (false, false) => one.clone(),
                (true, true) => &two * &two,
                _ => two.clone(),
            };
            acc + self.part(m).eval(&one) * w
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::from_poly(RationalPolynomial::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl From<RationalPolynomial> for RadicalExpression {
    fn from(p: RationalPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RadicalExpression {
    type Output = RadicalExpression;
    fn add(self, rhs: Self) -> RadicalExpression {
        let mut out = self.clone();
        for (o, r) in out.parts.iter_mut().zip(&rhs.parts) {
            *o = &*o + r;
        }
        out
    }
}

impl Sub for &RadicalExpression {
    type Output = RadicalExpression;
    fn sub(self, rhs: Self) -> RadicalExpression {
        let mut out = self.clone();
        for (o, r) in out.parts.iter_mut().zip(&rhs.parts) {
            *o = &*o - r;
        }
        out
    }
}

impl Neg for &RadicalExpression {
    type Output = RadicalExpression;
    fn neg(self) -> RadicalExpression {
        RadicalExpression { parts: self.parts.clone().map(|p| -&p) }
    }
}

impl Mul for &RadicalExpression {
    type Output = RadicalExpression;
    fn mul(self, rhs: Self) -> RadicalExpression {
        let r1sq = r1_squared();
        let r2sq = r2_squared();
        let mut out = RadicalExpression::zero();
        for a in Monomial::ALL {
            let pa = self.part(a);
            if pa.is_zero() {
                continue;
            }
            for b in Monomial::ALL {
                let pb = rhs.part(b);
                if pb.is_zero() {
                    continue;
                }
                let mut prod = pa * pb;
                if a.r1 && b.r1 {
                    prod = &prod * &r1sq;
                }
                if a.r2 && b.r2 {
                    prod = &prod * &r2sq;
                }
                let m = Monomial { r1: a.r1 ^ b.r1, r2: a.r2 ^ b.r2 };
                out.parts[m.index()] = &out.parts[m.index()] + &prod;
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RadicalExpression {
            type Output = RadicalExpression;
            fn $m(self, rhs: Self) -> RadicalExpression {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RadicalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_radical(self, |c| c.to_string()))
    }
}
