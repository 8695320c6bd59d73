//! Numeric verification of registry statements.
//!
//! Kernel-level claims are reduced to the ratio profile `g(x) = C(x, 1)` and
//! minimized over `x >= 1` on a log grid with golden-section refinement. The
//! range `(0, 1)` needs no probes: `g(1/x) = g(x)/x`, and the tolerance
//! `tol * (1 + x)` transforms the same way, so the check on `[1, x_max]`
//! covers both halves. Distribution-level claims are sampled.
//!
//! A gap counts as negative only below `-(tol + rounding) * (1 + x)`, where
//! `rounding = ROUNDING_ULPS * eps * sum |c_i|` bounds the float error of the
//! evaluation: every kernel at `(a, b)` is accurate to `O(eps * (a + b))`.
//! Without it, gaps with high-order contact at `x = 1` read as slightly
//! negative over a neighbourhood of width about `1e-4`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::distributions::{combination_divergence, Distribution, DistributionError};
use crate::kernels::{eval_float_terms, KernelError, KernelKind, PositivePair};
use crate::registry::{all_statements, Level, Statement};

pub const DEFAULT_SEED: u64 = 0x005e_ed0f_912a;

/// Error allowance per unit of coefficient mass, in units of `f64::EPSILON`.
pub const ROUNDING_ULPS: f64 = 64.0;

/// `ROUNDING_ULPS * eps * sum |c_i|` for a combination's float terms.
fn rounding_rel(terms: &[(f64, KernelKind)]) -> f64 {
    ROUNDING_ULPS * f64::EPSILON * terms.iter().map(|(c, _)| c.abs()).sum::<f64>()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub grid_points: usize,
    pub x_max: f64,
    pub refine_iters: usize,
    pub tol_rel: f64,
    pub distribution_samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid_points: 4096,
            x_max: 1e12,
            refine_iters: 80,
            tol_rel: 1e-10,
            distribution_samples: 1000,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("grid_points must be at least 16, got {0}")]
    GridTooSmall(usize),
    #[error("x_max must be a finite number above 1, got {0}")]
    BadRange(f64),
    #[error("tol_rel must be positive, got {0}")]
    BadTolerance(f64),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.grid_points < 16 {
            return Err(VerifyError::GridTooSmall(self.grid_points));
        }
        if !(self.x_max.is_finite() && self.x_max > 1.0) {
            return Err(VerifyError::BadRange(self.x_max));
        }
        if self.tol_rel.is_nan() || self.tol_rel <= 0.0 {
            return Err(VerifyError::BadTolerance(self.tol_rel));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Pass,
    Fail { witness_x: f64, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub statement_id: String,
    pub verdict: Verdict,
    /// Kernel level: `g(argmin_x)`. Distribution level: the worst sampled sum.
    pub min_value: f64,
    /// Kernel level: the ratio where `g(x) / (1 + x)` is smallest.
    /// Distribution level: the largest ratio `p_i / q_i` in the worst sample.
    pub argmin_x: f64,
    pub samples_used: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Ratio profile of a statement; the terms are converted to floats once.
struct Profile {
    terms: Vec<(f64, KernelKind)>,
}

impl Profile {
    fn of(stmt: &Statement) -> Self {
        Self { terms: stmt.combination().float_terms() }
    }

    fn at(&self, x: f64) -> Result<f64, KernelError> {
        eval_float_terms(&self.terms, PositivePair::new(x, 1.0)?)
    }

    /// `g(e^u) / (1 + e^u)`, the quantity compared against `-tol`.
    fn normalized(&self, u: f64) -> Result<f64, KernelError> {
        let x = u.exp();
        Ok(self.at(x)? / (1.0 + x))
    }
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`. Returns the
/// best `(u, f(u))` seen.
fn golden_section(
    f: impl Fn(f64) -> Result<f64, KernelError>,
    mut lo: f64,
    mut hi: f64,
    iters: usize,
    width: f64,
) -> Result<(f64, f64), KernelError> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for _ in 0..iters {
        if hi - lo <= width * (1.0 + lo.abs()) {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d)?;
        }
        for cand in [(c, fc), (d, fd)] {
            if cand.1 < best.1 {
                best = cand;
            }
        }
    }
    Ok(best)
}

/// Minimum of the normalized gap over `x >= 1`: returns `(g(x*), x*, probes)`
/// where `x*` minimizes `g(x) / (1 + x)`.
fn search(profile: &Profile, cfg: &VerifyConfig) -> Result<(f64, f64, usize), KernelError> {
    let n = cfg.grid_points;
    let umax = cfg.x_max.ln();
    let grid: Vec<f64> = (0..n).map(|i| umax * i as f64 / (n - 1) as f64).collect();
    let mut values = Vec::with_capacity(n);
    for &u in &grid {
        values.push(profile.normalized(u)?);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let mut best = (grid[order[0]], values[order[0]]);
    let mut probes = n;
    for &i in order.iter().take(3) {
        let lo = grid[i.saturating_sub(1)];
        let hi = grid[(i + 1).min(n - 1)];
        let (u, v) = golden_section(|u| profile.normalized(u), lo, hi, cfg.refine_iters, 1e-12)?;
        probes += cfg.refine_iters + 2;
        if v < best.1 {
            best = (u, v);
        }
    }
    let x = best.0.exp();
    Ok((best.1 * (1.0 + x), x, probes))
}

/// Global minimum of a kernel-level gap, as `(min_value, argmin_x)`.
///
/// The minimum is taken for `g(x) / (1 + x)`; the returned value is `g` at
/// that point.
pub fn min_gap(stmt: &Statement, cfg: &VerifyConfig) -> Result<(f64, f64), VerifyError> {
    cfg.validate()?;
    let (v, x, _) = search(&Profile::of(stmt), cfg)?;
    Ok((v, x))
}

fn statement_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a over the id keeps streams independent of evaluation order
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

fn verify_kernel(stmt: &Statement, cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let profile = Profile::of(stmt);
    let (min_value, argmin_x, probes) = search(&profile, cfg)?;
    let rel = cfg.tol_rel + rounding_rel(&profile.terms);
    let threshold = rel * (1.0 + argmin_x);
    let mut verdict = if min_value < -threshold {
        Verdict::Fail { witness_x: argmin_x, value: min_value }
    } else {
        Verdict::Pass
    };
    if stmt.claim.is_identity() {
        // an identity must also not exceed the tolerance from above
        let neg = Profile { terms: profile.terms.iter().map(|(c, k)| (-c, *k)).collect() };
        let (v, x, _) = search(&neg, cfg)?;
        if verdict == Verdict::Pass && v < -rel * (1.0 + x) {
            verdict = Verdict::Fail { witness_x: x, value: -v };
        }
    }
    Ok(VerifyReport {
        statement_id: stmt.id.clone(),
        verdict,
        min_value,
        argmin_x,
        samples_used: probes,
    })
}

fn verify_distribution(stmt: &Statement, cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(statement_seed(cfg.seed, &stmt.id));
    let combo = stmt.combination();
    let identity = stmt.claim.is_identity();
    // sum_i (p_i + q_i) = 2 plays the role of 1 + x
    let threshold = cfg.tol_rel + 2.0 * rounding_rel(&combo.float_terms());
    // (deviation used for the verdict, raw value, ratio)
    let mut worst: Option<(f64, f64, f64)> = None;
    for _ in 0..cfg.distribution_samples {
        let n = rng.gen_range(2..=10);
        let p = Distribution::random(&mut rng, n);
        let q = Distribution::random(&mut rng, n);
        let value = combination_divergence(combo, &p, &q)?;
        let score = if identity { -value.abs() } else { value };
        if worst.is_none_or(|w| score < w.0) {
            let ratio = p
                .probs()
                .iter()
                .zip(q.probs())
                .map(|(a, b)| a / b)
                .fold(0.0f64, f64::max);
            worst = Some((score, value, ratio));
        }
    }
    let (score, min_value, argmin_x) = worst.unwrap_or((0.0, 0.0, 1.0));
    let verdict = if score < -threshold {
        Verdict::Fail { witness_x: argmin_x, value: min_value }
    } else {
        Verdict::Pass
    };
    Ok(VerifyReport {
        statement_id: stmt.id.clone(),
        verdict,
        min_value,
        argmin_x,
        samples_used: cfg.distribution_samples,
    })
}

/// Verifies one statement at its own level.
pub fn verify(stmt: &Statement, cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    cfg.validate()?;
    match stmt.level {
        Level::Kernel => verify_kernel(stmt, cfg),
        Level::Distribution => verify_distribution(stmt, cfg),
    }
}

/// Verifies a list of statements in parallel; reports are sorted by id.
/// Evaluation errors count as failures at `x = NaN`.
pub fn verify_statements(statements: &[Statement], cfg: &VerifyConfig) -> Vec<VerifyReport> {
    let mut reports: Vec<VerifyReport> = statements
        .par_iter()
        .map(|s| {
            verify(s, cfg).unwrap_or_else(|_| VerifyReport {
                statement_id: s.id.clone(),
                verdict: Verdict::Fail { witness_x: f64::NAN, value: f64::NAN },
                min_value: f64::NAN,
                argmin_x: f64::NAN,
                samples_used: 0,
            })
        })
        .collect();
    reports.sort_by(|a, b| a.statement_id.cmp(&b.statement_id));
    reports
}

/// One report per registry statement, in id order.
pub fn verify_all(cfg: &VerifyConfig) -> Vec<VerifyReport> {
    verify_statements(all_statements(), cfg)
}
