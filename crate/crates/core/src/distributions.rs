//! Discrete probability distributions and the divergences built from
//! per-coordinate kernels.

use rand::Rng;
use thiserror::Error;

use crate::kernels::{
    compensated_sum, eval_kernel, Combination, DivKernel, KernelError, KernelKind, PositivePair,
};

/// Allowed deviation of `sum(p)` from 1.
pub const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistributionError {
    #[error("entry {index} is {value}, probabilities must be positive and finite")]
    NonPositiveEntry { index: usize, value: f64 },
    #[error("probabilities must sum to 1, off by {deviation:e}")]
    SumNotOne { deviation: f64 },
    #[error("a distribution needs at least two entries, got {0}")]
    TooShort(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// A point in the open probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Draws a random distribution with `n` entries. Entries are bounded away
    /// from zero so kernels stay well conditioned.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(1e-3..1.0)).collect();
        let total = compensated_sum(raw.iter().copied());
        let mut probs: Vec<f64> = raw.iter().map(|v| v / total).collect();
        // push the rounding residue into the largest entry
        let residue = 1.0 - compensated_sum(probs.iter().copied());
        let (imax, _) = probs
            .iter()
            .enumerate()
            .fold((0, 0.0), |best, (i, &p)| if p > best.1 { (i, p) } else { best });
        probs[imax] += residue;
        Self { probs }
    }
}

/// Checks membership in the open simplex.
pub fn validate(probs: &[f64]) -> Result<Distribution, DistributionError> {
    if probs.len() < 2 {
        return Err(DistributionError::TooShort(probs.len()));
    }
    for (index, &value) in probs.iter().enumerate() {
        if !(value.is_finite() && value > 0.0) {
            return Err(DistributionError::NonPositiveEntry { index, value });
        }
    }
    let deviation = compensated_sum(probs.iter().copied()) - 1.0;
    if deviation.abs() > SUM_TOLERANCE {
        return Err(DistributionError::SumNotOne { deviation });
    }
    Ok(Distribution { probs: probs.to_vec() })
}

fn check_lengths(p: &Distribution, q: &Distribution) -> Result<(), DistributionError> {
    if p.len() != q.len() {
        Err(DistributionError::LengthMismatch(p.len(), q.len()))
    } else {
        Ok(())
    }
}

/// `sum_i K(p_i, q_i)` for a single kernel.
pub fn divergence(
    kind: &KernelKind,
    p: &Distribution,
    q: &Distribution,
) -> Result<f64, DistributionError> {
    check_lengths(p, q)?;
    let mut terms = Vec::with_capacity(p.len());
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        terms.push(eval_kernel(kind, PositivePair::new(a, b)?)?);
    }
    Ok(compensated_sum(terms))
}

/// `sum_i C(p_i, q_i)` for a weighted combination, accumulated term by term.
pub fn combination_divergence(
    combo: &Combination,
    p: &Distribution,
    q: &Distribution,
) -> Result<f64, DistributionError> {
    check_lengths(p, q)?;
    let weights = combo.float_terms();
    let mut terms = Vec::with_capacity(p.len() * weights.len());
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        let pair = PositivePair::new(a, b)?;
        for (c, kind) in &weights {
            terms.push(c * eval_kernel(kind, pair)?);
        }
    }
    Ok(compensated_sum(terms))
}

/// Residual `J - 4(I + T)`, which vanishes identically.
pub fn check_identity_17(p: &Distribution, q: &Distribution) -> Result<f64, DistributionError> {
    let combo = Combination::new()
        .with(crate::kernels::int(1), DivKernel::J)
        .with(crate::kernels::int(-4), DivKernel::I)
        .with(crate::kernels::int(-4), DivKernel::T);
    combination_divergence(&combo, p, q)
}
