//! Exact positivity certificates for mean-only statements.
//!
//! A certificate is a short proof script. The checker keeps one current
//! expression `E(t)` whose nonnegativity on `t > 0` implies the statement,
//! starting from the numerator produced by [`expand_combination`] (the
//! denominator has nonnegative coefficients). Each step replaces `E` by an
//! expression whose nonnegativity implies that of `E`:
//!
//! * `split_square`: `S - T = c * E` with `c > 0` and `S > 0` witnessed,
//!   continue with `S^2 - T^2`.
//! * `unit_root_factor`: `E = c * (t - 1)^k * C` with `c > 0` and `k` even,
//!   continue with `C`.
//! * `divide_positive`: `E = F * C` with `F` nonzero with nonnegative
//!   coefficients, continue with `C`.
//! * `deflate_zero`: `E = t^k * C`, continue with `C`.
//!
//! and the script ends with a terminal witness: `nonneg_coeffs`, or
//! `sturm_no_positive_roots` together with `positive_at_one`.
//!
//! Every identity is checked exactly, with the positive constants `c` and the
//! certificate's `scale` stated in the file. The first expression is the
//! numerator divided by `scale`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    expand_combination, factor_unit_root, parse_radical, radical_to_text, square_compare,
    sturm_count, AlgebraError, Interval, Monomial, RadicalExpression, RationalPolynomial,
};
use crate::registry::{self, parse_rational, rational_text, Statement};

/// One positive factor of the squared side of a `split_square`.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Nonzero with nonnegative coefficients in every radical part.
    Nonneg(RadicalExpression),
    /// A polynomial with no root on `t > 0` and a positive value at `t = 1`.
    Sturm(RationalPolynomial),
}

impl Witness {
    fn expr(&self) -> RadicalExpression {
        match self {
            Witness::Nonneg(e) => e.clone(),
            Witness::Sturm(p) => p.clone().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Expand,
    SplitSquare { factor: BigRational, s: RadicalExpression, t: RadicalExpression, witness: Vec<Witness> },
    UnitRootFactor { k: u32, factor: BigRational, cofactor: RadicalExpression },
    DividePositive { factor: RationalPolynomial },
    DeflateZero { k: usize },
    SturmNoPositiveRoots,
    PositiveAtOne { value: Option<BigRational> },
    NonnegCoeffs,
}

impl Step {
    pub fn name(&self) -> &'static str {
        match self {
            Step::Expand => "expand",
            Step::SplitSquare { .. } => "split_square",
            Step::UnitRootFactor { .. } => "unit_root_factor",
            Step::DividePositive { .. } => "divide_positive",
            Step::DeflateZero { .. } => "deflate_zero",
            Step::SturmNoPositiveRoots => "sturm_no_positive_roots",
            Step::PositiveAtOne { .. } => "positive_at_one",
            Step::NonnegCoeffs => "nonneg_coeffs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub statement_id: String,
    /// Positive prefactor relating the expanded numerator to the first
    /// expression the script works with.
    pub scale: BigRational,
    pub notes: String,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FailReason {
    #[error("statement `{0}` is not in the registry")]
    UnknownStatement(String),
    #[error("certificate is for `{cert}` but was checked against `{stmt}`")]
    StatementMismatch { cert: String, stmt: String },
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("the first step must be `expand` and appear once")]
    ExpandMisplaced,
    #[error("expression identity does not hold")]
    IdentityMismatch,
    #[error("stated factor {0} is not positive")]
    NonPositiveFactor(BigRational),
    #[error("not divisible: {0}")]
    NotDivisible(AlgebraError),
    #[error("squaring made no progress")]
    NoProgress,
    #[error("positivity witness rejected: {0}")]
    WitnessRejected(String),
    #[error("unit root power must be even and positive, got {0}")]
    OddUnitRootPower(u32),
    #[error("{count} root(s) on t > 0")]
    RootsFound { count: usize },
    #[error("value at t = 1 is {0}, not positive")]
    NonPositiveAtOne(BigRational),
    #[error("value at t = 1 is {found}, certificate states {expected}")]
    ValueMismatch { expected: BigRational, found: BigRational },
    #[error("step needs a radical-free expression")]
    NotPolynomial,
    #[error("not all coefficients are nonnegative")]
    NegativeCoefficient,
    #[error("script ends without a terminal positivity witness")]
    Incomplete,
    #[error(transparent)]
    Algebra(AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Proved,
    Failed { step_index: usize, reason: String },
}

/// What a step produced: the degree of the new current expression and any
/// notable exact values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub step_index: usize,
    pub op: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertResult {
    pub statement_id: String,
    pub verdict: Verdict,
    pub trace: Vec<TraceEntry>,
}

impl CertResult {
    pub fn proved(&self) -> bool {
        self.verdict == Verdict::Proved
    }
}

impl fmt::Display for CertResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Proved => write!(f, "{}: Proved", self.statement_id),
            Verdict::Failed { step_index, reason } => {
                write!(f, "{}: Failed at step {step_index}: {reason}", self.statement_id)
            }
        }
    }
}

fn map_parts(
    e: &RadicalExpression,
    f: impl Fn(&RationalPolynomial) -> Result<RationalPolynomial, AlgebraError>,
) -> Result<RadicalExpression, AlgebraError> {
    let mut out = RadicalExpression::zero();
    for m in Monomial::ALL {
        let p = e.part(m);
        if !p.is_zero() {
            out.set_part(m, f(p)?);
        }
    }
    Ok(out)
}

fn degree_text(e: &RadicalExpression) -> String {
    let monos: Vec<&str> = e.support().into_iter().map(Monomial::name).collect();
    match e.max_degree() {
        Some(d) => format!("degree {d}, monomials [{}]", monos.join(", ")),
        None => "zero".to_string(),
    }
}

fn check_witness(w: &Witness) -> Result<(), FailReason> {
    match w {
        Witness::Nonneg(e) if e.manifestly_positive() => Ok(()),
        Witness::Nonneg(_) => Err(FailReason::WitnessRejected("factor has a negative coefficient".into())),
        Witness::Sturm(p) => {
            if p.is_zero() {
                return Err(FailReason::WitnessRejected("zero factor".into()));
            }
            let report = sturm_count(p, &Interval::positive()).map_err(FailReason::Algebra)?;
            if report.root_count > 0 {
                return Err(FailReason::WitnessRejected(format!("factor has {} positive root(s)", report.root_count)));
            }
            if !p.eval(&BigRational::one()).is_positive() {
                return Err(FailReason::WitnessRejected("factor is not positive at t = 1".into()));
            }
            Ok(())
        }
    }
}

struct Checker {
    cur: RadicalExpression,
    no_roots: bool,
    positive_at_one: bool,
    done: bool,
}

impl Checker {
    fn replace(&mut self, next: RadicalExpression) {
        self.cur = next;
        self.no_roots = false;
        self.positive_at_one = false;
        self.done = false;
    }

    fn polynomial(&self) -> Result<&RationalPolynomial, FailReason> {
        self.cur.as_polynomial().ok_or(FailReason::NotPolynomial)
    }

    fn step(&mut self, step: &Step) -> Result<String, FailReason> {
        match step {
            Step::Expand => Err(FailReason::ExpandMisplaced),
            Step::SplitSquare { factor, s, t, witness } => {
                if !factor.is_positive() {
                    return Err(FailReason::NonPositiveFactor(factor.clone()));
                }
                if s - t != self.cur.scale(factor) {
                    return Err(FailReason::IdentityMismatch);
                }
                if witness.is_empty() {
                    return Err(FailReason::WitnessRejected("empty witness".into()));
                }
                let mut product = RadicalExpression::from(RationalPolynomial::one());
                for w in witness {
                    check_witness(w)?;
                    product = &product * &w.expr();
                }
                if &product != s {
                    return Err(FailReason::WitnessRejected("factors do not multiply to S".into()));
                }
                let next = square_compare(s, t).map_err(|e| match e {
                    AlgebraError::NoProgress => FailReason::NoProgress,
                    other => FailReason::Algebra(other),
                })?;
                self.replace(next);
                Ok(format!("S - T = {factor} * E; S^2 - T^2 has {}", degree_text(&self.cur)))
            }
            Step::UnitRootFactor { k, factor, cofactor } => {
                if *k == 0 || k % 2 == 1 {
                    return Err(FailReason::OddUnitRootPower(*k));
                }
                if !factor.is_positive() {
                    return Err(FailReason::NonPositiveFactor(factor.clone()));
                }
                let quotient =
                    map_parts(&self.cur, |p| factor_unit_root(p, *k)).map_err(FailReason::NotDivisible)?;
                if quotient != cofactor.scale(factor) {
                    return Err(FailReason::IdentityMismatch);
                }
                self.replace(cofactor.clone());
                Ok(format!(
                    "E = {factor} * (t - 1)^{k} * C; C has {}, C(1) = {}",
                    degree_text(&self.cur),
                    self.cur.eval_at_one()
                ))
            }
            Step::DividePositive { factor } => {
                if !factor.nonneg_coeffs() {
                    return Err(FailReason::WitnessRejected("divisor has a negative coefficient".into()));
                }
                let next = map_parts(&self.cur, |p| p.divide_exact(factor)).map_err(FailReason::NotDivisible)?;
                self.replace(next);
                Ok(format!("divided by a positive factor; {}", degree_text(&self.cur)))
            }
            Step::DeflateZero { k } => {
                let next = map_parts(&self.cur, |p| p.deflate_zero(*k)).map_err(FailReason::NotDivisible)?;
                self.replace(next);
                Ok(format!("divided by t^{k}; {}", degree_text(&self.cur)))
            }
            Step::SturmNoPositiveRoots => {
                let p = self.polynomial()?;
                let report = sturm_count(p, &Interval::positive()).map_err(FailReason::Algebra)?;
                if report.root_count > 0 {
                    return Err(FailReason::RootsFound { count: report.root_count });
                }
                let degree = p.degree().unwrap_or(0);
                self.no_roots = true;
                self.done = self.positive_at_one;
                Ok(format!("0 roots on (0, +inf) for degree {degree}"))
            }
            Step::PositiveAtOne { value } => {
                let v = self.polynomial()?.eval(&BigRational::one());
                if !v.is_positive() {
                    return Err(FailReason::NonPositiveAtOne(v));
                }
                if let Some(expected) = value {
                    if expected != &v {
                        return Err(FailReason::ValueMismatch { expected: expected.clone(), found: v });
                    }
                }
                self.positive_at_one = true;
                self.done = self.no_roots;
                Ok(format!("E(1) = {v}"))
            }
            Step::NonnegCoeffs => {
                if !self.cur.manifestly_positive() {
                    return Err(FailReason::NegativeCoefficient);
                }
                self.done = true;
                Ok(format!("all coefficients nonnegative; {}", degree_text(&self.cur)))
            }
        }
    }
}

fn failed(id: &str, step_index: usize, reason: FailReason, trace: Vec<TraceEntry>) -> CertResult {
    CertResult {
        statement_id: id.to_string(),
        verdict: Verdict::Failed { step_index, reason: reason.to_string() },
        trace,
    }
}

/// Replays `cert` against `stmt` with exact arithmetic.
pub fn check_certificate(cert: &Certificate, stmt: &Statement) -> CertResult {
    let id = cert.statement_id.as_str();
    let mut trace = Vec::new();
    if cert.statement_id != stmt.id {
        let reason = FailReason::StatementMismatch { cert: cert.statement_id.clone(), stmt: stmt.id.clone() };
        return failed(id, 0, reason, trace);
    }
    if !cert.scale.is_positive() {
        return failed(id, 0, FailReason::NonPositiveScale, trace);
    }
    if cert.steps.first() != Some(&Step::Expand) {
        return failed(id, 0, FailReason::ExpandMisplaced, trace);
    }
    let (num, den) = match expand_combination(stmt.combination()) {
        Ok(v) => v,
        Err(e) => return failed(id, 0, FailReason::Algebra(e), trace),
    };
    if !den.nonneg_coeffs() {
        return failed(id, 0, FailReason::WitnessRejected("denominator has a negative coefficient".into()), trace);
    }
    let mut checker = Checker {
        cur: num.scale(&(BigRational::one() / &cert.scale)),
        no_roots: false,
        positive_at_one: false,
        done: false,
    };
    trace.push(TraceEntry {
        step_index: 0,
        op: "expand".into(),
        detail: format!("numerator {}; denominator degree {}", degree_text(&checker.cur), den.degree().unwrap_or(0)),
    });
    for (i, step) in cert.steps.iter().enumerate().skip(1) {
        match checker.step(step) {
            Ok(detail) => trace.push(TraceEntry { step_index: i, op: step.name().into(), detail }),
            Err(reason) => return failed(id, i, reason, trace),
        }
    }
    if !checker.done {
        return failed(id, cert.steps.len().saturating_sub(1), FailReason::Incomplete, trace);
    }
    CertResult { statement_id: id.to_string(), verdict: Verdict::Proved, trace }
}

/// Checks a certificate against the registry statement it names.
pub fn check_registered(cert: &Certificate) -> CertResult {
    match registry::get(&cert.statement_id) {
        Some(stmt) => check_certificate(cert, stmt),
        None => failed(&cert.statement_id, 0, FailReason::UnknownStatement(cert.statement_id.clone()), Vec::new()),
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Debug, Error)]
pub enum CertFormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("coefficient {0} has no text form; certificates use integer coefficients")]
    Unprintable(String),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum WitnessRecord {
    Nonneg { expr: String },
    Sturm { expr: String },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum StepRecord {
    Expand,
    SplitSquare {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        factor: Option<String>,
        s: String,
        t: String,
        witness: Vec<WitnessRecord>,
    },
    UnitRootFactor {
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        factor: Option<String>,
        cofactor: String,
    },
    DividePositive { factor: String },
    DeflateZero { k: usize },
    SturmNoPositiveRoots,
    PositiveAtOne {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<String>,
    },
    NonnegCoeffs,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateRecord {
    statement_id: String,
    scale: String,
    #[serde(default)]
    notes: String,
    steps: Vec<StepRecord>,
}

fn text(e: &RadicalExpression) -> Result<String, CertFormatError> {
    radical_to_text(e).map_err(|err| CertFormatError::Unprintable(err.to_string()))
}

fn rational_payload(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        rational_text(r)
    }
}

/// A step factor; 1 is left implicit.
fn factor_payload(r: &BigRational) -> Option<String> {
    (!r.is_one()).then(|| rational_payload(r))
}

impl Certificate {
    /// Canonical JSON text, newline-terminated.
    pub fn to_json(&self) -> Result<String, CertFormatError> {
        let mut steps = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            steps.push(match step {
                Step::Expand => StepRecord::Expand,
                Step::SplitSquare { factor, s, t, witness } => StepRecord::SplitSquare {
                    factor: factor_payload(factor),
                    s: text(s)?,
                    t: text(t)?,
                    witness: witness
                        .iter()
                        .map(|w| {
                            Ok(match w {
                                Witness::Nonneg(e) => WitnessRecord::Nonneg { expr: text(e)? },
                                Witness::Sturm(p) => WitnessRecord::Sturm { expr: text(&p.clone().into())? },
                            })
                        })
                        .collect::<Result<_, CertFormatError>>()?,
                },
                Step::UnitRootFactor { k, factor, cofactor } => StepRecord::UnitRootFactor {
                    k: *k,
                    factor: factor_payload(factor),
                    cofactor: text(cofactor)?,
                },
                Step::DividePositive { factor } => StepRecord::DividePositive { factor: text(&factor.clone().into())? },
                Step::DeflateZero { k } => StepRecord::DeflateZero { k: *k },
                Step::SturmNoPositiveRoots => StepRecord::SturmNoPositiveRoots,
                Step::PositiveAtOne { value } => StepRecord::PositiveAtOne { value: value.as_ref().map(rational_payload) },
                Step::NonnegCoeffs => StepRecord::NonnegCoeffs,
            });
        }
        let record = CertificateRecord {
            statement_id: self.statement_id.clone(),
            scale: rational_text(&self.scale),
            notes: self.notes.clone(),
            steps,
        };
        let mut out = serde_json::to_string_pretty(&record).expect("certificate serializes");
        out.push('\n');
        Ok(out)
    }

    /// Parses a certificate. Errors carry the line and column of the
    /// offending JSON token or expression character.
    pub fn from_json(src: &str) -> Result<Self, CertFormatError> {
        let record: CertificateRecord = serde_json::from_str(src).map_err(|e| CertFormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let locate = |payload: &str, column: usize, message: String| {
            // position of the payload string inside the document
            let quoted = format!("\"{payload}\"");
            let offset = src.find(&quoted).map(|o| o + 1).unwrap_or(0);
            let before = &src[..offset];
            let line = before.matches('\n').count() + 1;
            let line_start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
            CertFormatError::Syntax { line, column: offset - line_start + column, message }
        };
        let expr = |payload: &str| {
            parse_radical(payload).map_err(|e| match e {
                AlgebraError::Parse { column, message } => locate(payload, column, message),
                other => locate(payload, 1, other.to_string()),
            })
        };
        let poly = |payload: &str| {
            let e = expr(payload)?;
            e.as_polynomial()
                .cloned()
                .ok_or_else(|| locate(payload, 1, "expected a polynomial without radicals".into()))
        };
        let rational = |payload: &str| {
            parse_rational(payload).ok_or_else(|| locate(payload, 1, format!("invalid rational `{payload}`")))
        };
        let factor = |payload: &Option<String>| match payload {
            Some(p) => rational(p),
            None => Ok(BigRational::one()),
        };
        let mut steps = Vec::with_capacity(record.steps.len());
        for step in &record.steps {
            steps.push(match step {
                StepRecord::Expand => Step::Expand,
                StepRecord::SplitSquare { factor: c, s, t, witness } => Step::SplitSquare {
                    factor: factor(c)?,
                    s: expr(s)?,
                    t: expr(t)?,
                    witness: witness
                        .iter()
                        .map(|w| match w {
                            WitnessRecord::Nonneg { expr: e } => expr(e).map(Witness::Nonneg),
                            WitnessRecord::Sturm { expr: e } => poly(e).map(Witness::Sturm),
                        })
                        .collect::<Result<_, _>>()?,
                },
                StepRecord::UnitRootFactor { k, factor: c, cofactor } => {
                    Step::UnitRootFactor { k: *k, factor: factor(c)?, cofactor: expr(cofactor)? }
                }
                StepRecord::DividePositive { factor } => Step::DividePositive { factor: poly(factor)? },
                StepRecord::DeflateZero { k } => Step::DeflateZero { k: *k },
                StepRecord::SturmNoPositiveRoots => Step::SturmNoPositiveRoots,
                StepRecord::PositiveAtOne { value } => Step::PositiveAtOne {
                    value: value.as_deref().map(rational).transpose()?,
                },
                StepRecord::NonnegCoeffs => Step::NonnegCoeffs,
            });
        }
        Ok(Certificate {
            statement_id: record.statement_id.clone(),
            scale: rational(&record.scale)?,
            notes: record.notes,
            steps,
        })
    }

    /// The last polynomial payload of the script: the final cofactor, or the
    /// last squared side when no cofactor is given.
    pub fn final_payload_mut(&mut self) -> Option<&mut RadicalExpression> {
        self.steps.iter_mut().rev().find_map(|s| match s {
            Step::UnitRootFactor { cofactor, .. } => Some(cofactor),
            Step::SplitSquare { s, .. } => Some(s),
            _ => None,
        })
    }
}

/// Built-in certificate files, one per mean-only proof part.
pub const BUILTIN_SOURCES: [(&str, &str); 43] = [
    ("thm21.p01", include_str!("../certificates/thm21.p01.json")),
    ("thm21.p02", include_str!("../certificates/thm21.p02.json")),
    ("thm21.p03", include_str!("../certificates/thm21.p03.json")),
    ("thm21.p04", include_str!("../certificates/thm21.p04.json")),
    ("thm21.p05", include_str!("../certificates/thm21.p05.json")),
    ("thm21.p06", include_str!("../certificates/thm21.p06.json")),
    ("thm21.p07", include_str!("../certificates/thm21.p07.json")),
    ("thm21.p08", include_str!("../certificates/thm21.p08.json")),
    ("thm21.p09", include_str!("../certificates/thm21.p09.json")),
    ("thm21.p10", include_str!("../certificates/thm21.p10.json")),
    ("thm21.p11", include_str!("../certificates/thm21.p11.json")),
    ("thm21.p12", include_str!("../certificates/thm21.p12.json")),
    ("thm21.p13", include_str!("../certificates/thm21.p13.json")),
    ("thm21.p14", include_str!("../certificates/thm21.p14.json")),
    ("thm21.p15", include_str!("../certificates/thm21.p15.json")),
    ("thm21.p16", include_str!("../certificates/thm21.p16.json")),
    ("thm21.p17", include_str!("../certificates/thm21.p17.json")),
    ("thm21.p18", include_str!("../certificates/thm21.p18.json")),
    ("thm21.p19", include_str!("../certificates/thm21.p19.json")),
    ("thm21.p20", include_str!("../certificates/thm21.p20.json")),
    ("thm21.p21", include_str!("../certificates/thm21.p21.json")),
    ("thm21.p22", include_str!("../certificates/thm21.p22.json")),
    ("thm21.p23", include_str!("../certificates/thm21.p23.json")),
    ("thm21.p24", include_str!("../certificates/thm21.p24.json")),
    ("thm21.p25", include_str!("../certificates/thm21.p25.json")),
    ("thm21.p26", include_str!("../certificates/thm21.p26.json")),
    ("thm21.p27", include_str!("../certificates/thm21.p27.json")),
    ("thm21.p28", include_str!("../certificates/thm21.p28.json")),
    ("thm21.p29", include_str!("../certificates/thm21.p29.json")),
    ("thm21.p30", include_str!("../certificates/thm21.p30.json")),
    ("thm21.p31", include_str!("../certificates/thm21.p31.json")),
    ("thm21.p32", include_str!("../certificates/thm21.p32.json")),
    ("thm21.p33", include_str!("../certificates/thm21.p33.json")),
    ("thm21.p34", include_str!("../certificates/thm21.p34.json")),
    ("thm21.p35", include_str!("../certificates/thm21.p35.json")),
    ("thm21.p36", include_str!("../certificates/thm21.p36.json")),
    ("thm21.p37", include_str!("../certificates/thm21.p37.json")),
    ("thm21.p38", include_str!("../certificates/thm21.p38.json")),
    ("thm21.p39", include_str!("../certificates/thm21.p39.json")),
    ("thm21.p40", include_str!("../certificates/thm21.p40.json")),
    ("thm21.p41", include_str!("../certificates/thm21.p41.json")),
    ("thm21.p42", include_str!("../certificates/thm21.p42.json")),
    ("thm31.4", include_str!("../certificates/thm31.4.json")),
];

/// Parses every built-in certificate.
pub fn builtin_certificates() -> Vec<Certificate> {
    BUILTIN_SOURCES
        .iter()
        .map(|(name, src)| {
            Certificate::from_json(src).unwrap_or_else(|e| panic!("built-in certificate {name}: {e}"))
        })
        .collect()
}

/// Checks every built-in certificate against the registry.
pub fn check_builtin() -> Vec<CertResult> {
    builtin_certificates().iter().map(check_registered).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::kernels::{Combination, NamedMean};
    use crate::registry::{Claim, Level};

    fn builtin(id: &str) -> Certificate {
        builtin_certificates().into_iter().find(|c| c.statement_id == id).unwrap()
    }

    #[test]
    fn builtin_set_is_complete_and_proves() {
        let certs = builtin_certificates();
        assert_eq!(certs.len(), 43);
        for cert in &certs {
            let result = check_registered(cert);
            assert!(result.proved(), "{result}");
        }
    }

    #[test]
    fn files_round_trip_bit_exactly() {
        for (name, src) in BUILTIN_SOURCES {
            let cert = Certificate::from_json(src).unwrap();
            assert_eq!(cert.to_json().unwrap(), src, "{name}");
        }
    }

    #[test]
    fn part_four_trace_shows_the_landmark_value() {
        let result = check_registered(&builtin("thm21.p04"));
        assert!(result.proved());
        assert!(result.trace.iter().any(|e| e.detail.contains("135168000")));
    }

    #[test]
    fn tampering_with_the_final_cofactor_fails() {
        for id in ["thm21.p04", "thm21.p20", "thm31.4"] {
            let cert = builtin(id);
            let mut tampered = cert.clone();
            let payload = tampered.final_payload_mut().unwrap();
            let mut p = payload.part(Monomial::ONE).coeffs().to_vec();
            p[0] += BigRational::one();
            payload.set_part(Monomial::ONE, RationalPolynomial::new(p));
            let result = check_registered(&tampered);
            assert!(matches!(result.verdict, Verdict::Failed { .. }), "{id}");
        }
    }

    #[test]
    fn constant_cofactors_and_factors_are_checked() {
        // a positive constant cofactor would still prove the claim, but the
        // file must state the exact one
        let cert = builtin("thm21.p11");
        let mut tampered = cert.clone();
        *tampered.final_payload_mut().unwrap() = parse_radical("2").unwrap();
        assert!(!check_registered(&tampered).proved());

        let mut tampered = cert.clone();
        for step in &mut tampered.steps {
            if let Step::UnitRootFactor { factor, .. } | Step::SplitSquare { factor, .. } = step {
                *factor = -factor.clone();
            }
        }
        let result = check_registered(&tampered);
        assert!(matches!(result.verdict, Verdict::Failed { .. }), "{result}");
    }

    #[test]
    fn scale_is_checked() {
        for id in ["thm21.p01", "thm21.p22"] {
            let mut cert = builtin(id);
            cert.scale *= BigRational::new(7.into(), 3.into());
            assert!(!check_registered(&cert).proved(), "{id}");
        }
        let mut cert = builtin("thm21.p01");
        cert.scale = -cert.scale;
        let result = check_registered(&cert);
        assert_eq!(result.verdict, Verdict::Failed { step_index: 0, reason: FailReason::NonPositiveScale.to_string() });
    }

    #[test]
    fn hand_written_part_twenty() {
        // one squaring, then (t - 1)^4 times the printed cofactor
        let src = builtin("thm21.p20");
        assert!(matches!(src.steps[1], Step::SplitSquare { .. }));
        let Step::UnitRootFactor { k, cofactor, .. } = &src.steps[2] else { panic!("{:?}", src.steps[2]) };
        assert_eq!(*k, 4);
        assert_eq!(cofactor, &parse_radical("t^4 + 2*t^3 + 4*t^2 + 2*t + 1").unwrap());
    }

    #[test]
    fn reversed_statement_is_rejected() {
        let stmt = Statement {
            id: "ga".into(),
            claim: Claim::Nonneg(Combination::difference(NamedMean::G, NamedMean::A)),
            level: Level::Kernel,
            source: "test".into(),
        };
        let cert = Certificate {
            statement_id: "ga".into(),
            scale: BigRational::one(),
            notes: String::new(),
            steps: vec![
                Step::Expand,
                Step::UnitRootFactor { k: 2, factor: BigRational::one(), cofactor: parse_radical("-1").unwrap() },
                Step::NonnegCoeffs,
            ],
        };
        // G - A = -(t - 1)^2 / 2: the factoring is right, the witness is not
        let result = check_certificate(&cert, &stmt);
        assert_eq!(
            result.verdict,
            Verdict::Failed { step_index: 2, reason: FailReason::NegativeCoefficient.to_string() }
        );
        let mut cert = cert;
        cert.steps[1] = Step::UnitRootFactor { k: 2, factor: BigRational::one(), cofactor: parse_radical("1").unwrap() };
        assert_eq!(
            check_certificate(&cert, &stmt).verdict,
            Verdict::Failed { step_index: 1, reason: FailReason::IdentityMismatch.to_string() }
        );
    }

    #[test]
    fn a_minus_g_needs_a_terminal_witness() {
        let stmt = Statement {
            id: "ag".into(),
            claim: Claim::Nonneg(Combination::difference(NamedMean::A, NamedMean::G)),
            level: Level::Kernel,
            source: "test".into(),
        };
        let mut cert = Certificate {
            statement_id: "ag".into(),
            scale: BigRational::new(1.into(), 2.into()),
            notes: String::new(),
            steps: vec![
                Step::Expand,
                Step::UnitRootFactor { k: 2, factor: BigRational::from_integer(2.into()), cofactor: parse_radical("1").unwrap() },
            ],
        };
        assert_eq!(
            check_certificate(&cert, &stmt).verdict,
            Verdict::Failed { step_index: 1, reason: FailReason::Incomplete.to_string() }
        );
        cert.steps.push(Step::NonnegCoeffs);
        assert!(check_certificate(&cert, &stmt).proved());
        cert.steps[1] = Step::UnitRootFactor { k: 1, factor: BigRational::one(), cofactor: parse_radical("t - 1").unwrap() };
        assert!(!check_certificate(&cert, &stmt).proved());
    }

    #[test]
    fn witnesses_are_checked() {
        let good = Witness::Sturm(parse_polynomial("t^2 - t + 1").unwrap());
        assert!(check_witness(&good).is_ok());
        let bad = Witness::Sturm(parse_polynomial("t^2 - 3*t + 1").unwrap());
        assert!(check_witness(&bad).is_err());
        assert!(check_witness(&Witness::Nonneg(parse_radical("R1*t - 1").unwrap())).is_err());
        assert!(check_witness(&Witness::Nonneg(parse_radical("R1*t + R2").unwrap())).is_ok());
    }

    #[test]
    fn parse_errors_report_line_and_column() {
        let src = "{\n  \"statement_id\": \"x\",\n  \"scale\": \"1/1\",\n  \"steps\": [\n    {\"op\": \"unit_root_factor\", \"k\": 2, \"cofactor\": \"t^2 + $\"}\n  ]\n}\n";
        match Certificate::from_json(src) {
            Err(CertFormatError::Syntax { line, column, .. }) => {
                assert_eq!(line, 5);
                let text_line = src.lines().nth(4).unwrap();
                assert_eq!(&text_line[column - 1..column], "$");
            }
            other => panic!("{other:?}"),
        }
        match Certificate::from_json("{\n  \"statement_id\": 3\n}") {
            Err(CertFormatError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
