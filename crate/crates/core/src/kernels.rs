//! Two-variable means, divergence kernels and their rational-weighted sums.
//!
//! Every kernel here is symmetric and positively homogeneous of degree 1, so
//! evaluation always reduces to `hi * f(lo / hi)` with `lo <= hi`. That keeps
//! the two argument orders bitwise identical and avoids overflow for extreme
//! ratios.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("arguments must be positive and finite, got ({a}, {b})")]
    Domain { a: f64, b: f64 },
    #[error("parameters must be finite, got ({r}, {s})")]
    Parameter { r: f64, s: f64 },
    #[error("ratio must be positive and finite, got {0}")]
    Ratio(f64),
    #[error("unknown kernel `{0}`")]
    UnknownKernel(String),
}

/// A pair of positive finite reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair {
    a: f64,
    b: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self, KernelError> {
        if a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0 {
            Ok(Self { a, b })
        } else {
            Err(KernelError::Domain { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a }
    }

    /// Returns `(hi, q)` with `hi = max(a, b)` and `q = min(a, b) / hi` in `(0, 1]`.
    fn scaled(&self) -> (f64, f64) {
        let (lo, hi) = if self.a <= self.b { (self.a, self.b) } else { (self.b, self.a) };
        (hi, lo / hi)
    }
}

/// The named means of the refinement chain `P1 <= P2 <= ... <= P6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedMean {
    P1,
    P2,
    P3,
    H,
    P4,
    G,
    N1,
    N3,
    N2,
    A,
    P5,
    S,
    P6,
}

impl NamedMean {
    pub const ALL: [NamedMean; 13] = [
        NamedMean::P1,
        NamedMean::P2,
        NamedMean::P3,
        NamedMean::H,
        NamedMean::P4,
        NamedMean::G,
        NamedMean::N1,
        NamedMean::N3,
        NamedMean::N2,
        NamedMean::A,
        NamedMean::P5,
        NamedMean::S,
        NamedMean::P6,
    ];

    /// Gini parameters `(r, s)` with `E_{r,s}` equal to this mean. `N2` and
    /// `N3` are not Gini means.
    pub fn gini_params(self) -> Option<(f64, f64)> {
        use NamedMean::*;
        Some(match self {
            P1 => (-3.0, -2.0),
            P2 => (-2.0, -1.0),
            P3 => (-1.5, -0.5),
            H => (-1.0, 0.0),
            P4 => (-0.5, 0.0),
            G => (-0.5, 0.5),
            N1 => (0.0, 0.5),
            A => (0.0, 1.0),
            P5 => (0.5, 1.0),
            S => (0.0, 2.0),
            P6 => (1.0, 2.0),
            N2 | N3 => return None,
        })
    }

    pub fn name(self) -> &'static str {
        use NamedMean::*;
        match self {
            P1 => "P1",
            P2 => "P2",
            P3 => "P3",
            H => "H",
            P4 => "P4",
            G => "G",
            N1 => "N1",
            N3 => "N3",
            N2 => "N2",
            A => "A",
            P5 => "P5",
            S => "S",
            P6 => "P6",
        }
    }

    /// Closed-form ratio profile `f(x) = M(x, 1)`.
    pub fn profile(self, x: f64) -> f64 {
        use NamedMean::*;
        let rx = x.sqrt();
        match self {
            P1 => x * (x * x + 1.0) / (x * x * x + 1.0),
            P2 => x * (x + 1.0) / (x * x + 1.0),
            P3 => x * (rx + 1.0) / (x * rx + 1.0),
            H => 2.0 * x / (1.0 + x),
            P4 => 4.0 * x / ((rx + 1.0) * (rx + 1.0)),
            G => rx,
            N1 => {
                let h = (rx + 1.0) / 2.0;
                h * h
            }
            N3 => (x + rx + 1.0) / 3.0,
            N2 => (rx + 1.0) / 2.0 * ((x + 1.0) / 2.0).sqrt(),
            A => (x + 1.0) / 2.0,
            P5 => {
                let h = (x + 1.0) / (rx + 1.0);
                h * h
            }
            S => ((x * x + 1.0) / 2.0).sqrt(),
            P6 => (x * x + 1.0) / (x + 1.0),
        }
    }
}

/// Per-coordinate summands of the distribution divergences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivKernel {
    /// Jensen-Shannon summand.
    I,
    /// J-divergence summand `(a-b) ln(a/b)`.
    J,
    /// Arithmetic-geometric mean divergence summand.
    T,
    /// Triangular discrimination summand `(a-b)^2/(a+b)`.
    Delta,
    /// Hellinger summand `(sqrt a - sqrt b)^2 / 2`.
    Hellinger,
}

impl DivKernel {
    pub const ALL: [DivKernel; 5] = [
        DivKernel::I,
        DivKernel::J,
        DivKernel::T,
        DivKernel::Delta,
        DivKernel::Hellinger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DivKernel::I => "I",
            DivKernel::J => "J",
            DivKernel::T => "T",
            DivKernel::Delta => "Delta",
            DivKernel::Hellinger => "Hellinger",
        }
    }

    /// Value at `(x, 1)`. Exactly zero at `x == 1`.
    pub fn profile(self, x: f64) -> f64 {
        match self {
            DivKernel::I => {
                let d = (x - 1.0) / (x + 1.0);
                0.5 * (x * d.ln_1p() + (-d).ln_1p())
            }
            DivKernel::J => {
                if x == 1.0 {
                    0.0
                } else {
                    (x - 1.0) * x.ln()
                }
            }
            DivKernel::T => {
                let rx = x.sqrt();
                let gap = (rx - 1.0) * (rx - 1.0) / (2.0 * rx);
                (x + 1.0) / 2.0 * gap.ln_1p()
            }
            DivKernel::Delta => (x - 1.0) * (x - 1.0) / (x + 1.0),
            DivKernel::Hellinger => {
                let d = x.sqrt() - 1.0;
                d * d / 2.0
            }
        }
    }
}

/// Tagged identifier of a degree-1 homogeneous symmetric binary function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    Named(NamedMean),
    Gini { r: f64, s: f64 },
    Power { r: f64 },
    Lehmer { r: f64 },
    Div(DivKernel),
}

impl KernelKind {
    pub fn is_mean(&self) -> bool {
        !matches!(self, KernelKind::Div(_))
    }

    /// `1` for means (they equal `a` on the diagonal), `0` for divergence kernels.
    pub fn diagonal_value(&self) -> f64 {
        if self.is_mean() {
            1.0
        } else {
            0.0
        }
    }

    /// Value of the kernel at `(x, 1)`.
    pub fn ratio_profile(&self, x: f64) -> Result<f64, KernelError> {
        if !(x.is_finite() && x > 0.0) {
            return Err(KernelError::Ratio(x));
        }
        eval_kernel(self, PositivePair { a: x, b: 1.0 })
    }

    fn check_params(&self) -> Result<(), KernelError> {
        let (r, s) = match *self {
            KernelKind::Gini { r, s } => (r, s),
            KernelKind::Power { r } | KernelKind::Lehmer { r } => (r, 0.0),
            _ => return Ok(()),
        };
        if r.is_finite() && s.is_finite() {
            Ok(())
        } else {
            Err(KernelError::Parameter { r, s })
        }
    }
}

impl From<NamedMean> for KernelKind {
    fn from(m: NamedMean) -> Self {
        KernelKind::Named(m)
    }
}

impl From<DivKernel> for KernelKind {
    fn from(d: DivKernel) -> Self {
        KernelKind::Div(d)
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelKind::Named(m) => f.write_str(m.name()),
            KernelKind::Gini { r, s } => write!(f, "gini:{r},{s}"),
            KernelKind::Power { r } => write!(f, "power:{r}"),
            KernelKind::Lehmer { r } => write!(f, "lehmer:{r}"),
            KernelKind::Div(d) => f.write_str(d.name()),
        }
    }
}

impl FromStr for KernelKind {
    type Err = KernelError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || KernelError::UnknownKernel(text.to_string());
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad());
        if let Some(rest) = text.strip_prefix("gini:") {
            let (r, s) = rest.split_once(',').ok_or_else(bad)?;
            return Ok(KernelKind::Gini { r: num(r)?, s: num(s)? });
        }
        if let Some(rest) = text.strip_prefix("power:") {
            return Ok(KernelKind::Power { r: num(rest)? });
        }
        if let Some(rest) = text.strip_prefix("lehmer:") {
            return Ok(KernelKind::Lehmer { r: num(rest)? });
        }
        if let Some(m) = NamedMean::ALL.iter().find(|m| m.name() == text) {
            return Ok(KernelKind::Named(*m));
        }
        match text {
            "I" => Ok(DivKernel::I.into()),
            "J" => Ok(DivKernel::J.into()),
            "T" => Ok(DivKernel::T.into()),
            "Delta" => Ok(DivKernel::Delta.into()),
            "Hellinger" | "h" => Ok(DivKernel::Hellinger.into()),
            _ => Err(bad()),
        }
    }
}

/// `ln(1 + q^r)` for `q` in `(0, 1]`, stable for large `|r|`.
fn log1p_pow(q: f64, r: f64) -> f64 {
    if r == 0.0 {
        return std::f64::consts::LN_2;
    }
    let e = r * q.ln();
    if e <= 0.0 {
        e.exp().ln_1p()
    } else {
        e + (-e).exp().ln_1p()
    }
}

/// Gini mean `E_{r,s}(1, q)` for `q` in `(0, 1]`.
fn gini_unit(r: f64, s: f64, q: f64) -> f64 {
    if r < 0.0 && s < 0.0 && r != s {
        // both logs are near r ln q and s ln q; take ln q out before subtracting
        q * ((log1p_pow(q, -r) - log1p_pow(q, -s)) / (r - s)).exp()
    } else if r != s {
        ((log1p_pow(q, r) - log1p_pow(q, s)) / (r - s)).exp()
    } else if r != 0.0 {
        // weight of the smaller argument: q^r / (1 + q^r)
        let e = r * q.ln();
        let w = if e <= 0.0 {
            let p = e.exp();
            p / (1.0 + p)
        } else {
            1.0 / (1.0 + (-e).exp())
        };
        (w * q.ln()).exp()
    } else {
        q.sqrt()
    }
}

/// Gini mean of order `r` and `s`.
pub fn gini_mean(r: f64, s: f64, pair: PositivePair) -> Result<f64, KernelError> {
    KernelKind::Gini { r, s }.check_params()?;
    let (hi, q) = pair.scaled();
    Ok(clamp_internal(hi * gini_unit(r, s, q), pair))
}

/// Power mean of order `r`; `r = 0` is the geometric mean.
pub fn power_mean(r: f64, pair: PositivePair) -> Result<f64, KernelError> {
    KernelKind::Power { r }.check_params()?;
    let (hi, q) = pair.scaled();
    let unit = if r == 0.0 {
        q.sqrt()
    } else {
        ((log1p_pow(q, r) - std::f64::consts::LN_2) / r).exp()
    };
    Ok(clamp_internal(hi * unit, pair))
}

/// Lehmer mean `(a^r + b^r) / (a^(r-1) + b^(r-1))`.
pub fn lehmer_mean(r: f64, pair: PositivePair) -> Result<f64, KernelError> {
    KernelKind::Lehmer { r }.check_params()?;
    let (hi, q) = pair.scaled();
    let unit = if r <= 0.0 {
        q * (log1p_pow(q, -r) - log1p_pow(q, 1.0 - r)).exp()
    } else {
        (log1p_pow(q, r) - log1p_pow(q, r - 1.0)).exp()
    };
    Ok(clamp_internal(hi * unit, pair))
}

// Rounding in exp/ln can push a mean one ulp outside [lo, hi]. Clamp to
// the arguments themselves, since `hi * q` can itself round below `lo`.
fn clamp_internal(v: f64, pair: PositivePair) -> f64 {
    v.clamp(pair.a.min(pair.b), pair.a.max(pair.b))
}

/// Evaluates any kernel at a positive pair.
pub fn eval_kernel(kind: &KernelKind, pair: PositivePair) -> Result<f64, KernelError> {
    kind.check_params()?;
    let (hi, q) = pair.scaled();
    Ok(match *kind {
        KernelKind::Named(m) => clamp_internal(hi * m.profile(q), pair),
        KernelKind::Gini { r, s } => return gini_mean(r, s, pair),
        KernelKind::Power { r } => return power_mean(r, pair),
        KernelKind::Lehmer { r } => return lehmer_mean(r, pair),
        KernelKind::Div(d) => hi * d.profile(q),
    })
}

/// Value of `kind` at `(x, 1)`.
pub fn ratio_profile(kind: &KernelKind, x: f64) -> Result<f64, KernelError> {
    kind.ratio_profile(x)
}

/// One weighted kernel inside a [`Combination`].
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: BigRational,
    pub kind: KernelKind,
}

/// A rational-weighted sum of kernels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Combination {
    pub terms: Vec<Term>,
}

impl Combination {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style append; zero coefficients are dropped.
    pub fn with(mut self, coeff: BigRational, kind: impl Into<KernelKind>) -> Self {
        self.push(coeff, kind.into());
        self
    }

    pub fn push(&mut self, coeff: BigRational, kind: KernelKind) {
        if !coeff.is_zero() {
            self.terms.push(Term { coeff, kind });
        }
    }

    /// The difference `t - p`.
    pub fn difference(t: impl Into<KernelKind>, p: impl Into<KernelKind>) -> Self {
        Self::new().with(int(1), t).with(int(-1), p)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_mean_only(&self) -> bool {
        self.terms.iter().all(|t| t.kind.is_mean())
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        let mut out = Self::new();
        for t in &self.terms {
            out.push(&t.coeff * factor, t.kind);
        }
        out
    }

    /// `self + other`, merging equal kinds and dropping cancelled terms.
    pub fn plus(&self, other: &Combination) -> Self {
        let mut out = self.clone();
        for t in &other.terms {
            match out.terms.iter_mut().find(|u| u.kind == t.kind) {
                Some(u) => u.coeff = &u.coeff + &t.coeff,
                None => out.terms.push(t.clone()),
            }
        }
        out.terms.retain(|t| !t.coeff.is_zero());
        out
    }

    pub fn minus(&self, other: &Combination) -> Self {
        self.plus(&other.scaled(&int(-1)))
    }

    /// Floating-point coefficients paired with their kernels.
    pub fn float_terms(&self) -> Vec<(f64, KernelKind)> {
        self.terms
            .iter()
            .map(|t| (t.coeff.to_f64().unwrap_or(f64::NAN), t.kind))
            .collect()
    }

    /// Sum of coefficients weighted by each kernel's diagonal value.
    pub fn diagonal_weight(&self) -> BigRational {
        self.terms
            .iter()
            .filter(|t| t.kind.is_mean())
            .fold(BigRational::zero(), |acc, t| acc + &t.coeff)
    }
}

/// Exact integer as a `BigRational`.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact fraction `n / d` as a `BigRational`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `sum c_i K_i(pair)`.
pub fn eval_combination(combo: &Combination, pair: PositivePair) -> Result<f64, KernelError> {
    eval_float_terms(&combo.float_terms(), pair)
}

pub(crate) fn eval_float_terms(
    terms: &[(f64, KernelKind)],
    pair: PositivePair,
) -> Result<f64, KernelError> {
    let mut values = Vec::with_capacity(terms.len());
    for (c, kind) in terms {
        values.push(c * eval_kernel(kind, pair)?);
    }
    Ok(compensated_sum(values))
}
