//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Polynomial in `t` with coefficients stored lowest degree first.
///
/// The highest stored coefficient is always nonzero; the zero polynomial has
/// no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r` and `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn divide_exact(&self, d: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            let (degree, value) = first_nonzero(&r);
            Err(AlgebraError::NotDivisible { degree, remainder: value })
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        self.scale(&(BigRational::one() / lead))
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (BigRational, Self) {
        if self.is_zero() {
            return (BigRational::zero(), Self::zero());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = Self::new(
            ints.iter()
                .map(|c| BigRational::from_integer(c / &g))
                .collect(),
        );
        (BigRational::new(g, den_lcm), prim)
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True iff the polynomial is nonzero and every coefficient is `>= 0`.
    /// Such a polynomial is strictly positive for `t > 0`.
    pub fn nonneg_coeffs(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn negative_coeff_count(&self) -> usize {
        self.coeffs.iter().filter(|c| c.is_negative()).count()
    }

    /// Multiplicity of the root `t = 0`.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `t^k`; errors unless the low `k` coefficients vanish.
    pub fn deflate_zero(&self, k: usize) -> Result<Self, AlgebraError> {
        if let Some((j, c)) = self.coeffs.iter().take(k).enumerate().find(|(_, c)| !c.is_zero()) {
            return Err(AlgebraError::NotDivisible { degree: j, remainder: c.clone() });
        }
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Keeps only the terms whose coefficient satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&BigRational) -> bool) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| if keep(c) { c.clone() } else { BigRational::zero() })
                .collect(),
        )
    }
}

fn first_nonzero(p: &RationalPolynomial) -> (usize, BigRational) {
    p.coeffs
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .unwrap_or((0, BigRational::zero()))
}

/// `(t - 1)^k`.
pub fn unit_root_power(k: u32) -> RationalPolynomial {
    RationalPolynomial::from_ints(&[-1, 1]).pow(k)
}

/// Exact quotient `p / (t - 1)^k`.
pub fn factor_unit_root(p: &RationalPolynomial, k: u32) -> Result<RationalPolynomial, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::InvalidArgument("k must be at least 1".into()));
    }
    // synthetic division by (t - 1), k times
    let mut cur = p.clone();
    for _ in 0..k {
        let n = cur.coeffs.len();
        if n == 0 {
            return Ok(cur);
        }
        let mut q = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for j in (1..n).rev() {
            carry += &cur.coeffs[j];
            q[j - 1] = carry.clone();
        }
        let rem = carry + &cur.coeffs[0];
        if !rem.is_zero() {
            return Err(AlgebraError::NotDivisible { degree: 0, remainder: rem });
        }
        cur = RationalPolynomial::new(q);
    }
    Ok(cur)
}

/// True iff `p` is nonzero with all coefficients `>= 0`.
pub fn nonneg_coeffs(p: &RationalPolynomial) -> bool {
    p.nonneg_coeffs()
}

/// Least common multiple normalized as `content * primitive`, where the
/// content is the integer lcm of the two contents.
pub fn lcm(a: &RationalPolynomial, b: &RationalPolynomial) -> RationalPolynomial {
    let (ca, pa) = a.primitive_part();
    let (cb, pb) = b.primitive_part();
    let g = pa.gcd(&pb);
    let prod = &pa * &pb;
    let l = prod.divide_exact(&g).expect("gcd divides the product");
    let (_, prim) = l.primitive_part();
    let content = ca.numer().abs().lcm(&cb.numer().abs());
    prim.scale(&BigRational::from_integer(content))
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPolynomial {
            type Output = RationalPolynomial;
            fn $m(self, rhs: Self) -> RationalPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalPolynomial {
    /// Human-readable form, highest degree first. Non-integer coefficients
    /// print as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_terms(self, |c| c.to_string()))
    }
}
