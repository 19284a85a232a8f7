//! Finite probability distributions and the stable α-power log-sum.
//!
//! Zero-probability events are kept in the vector but skipped by every sum,
//! so appending an impossible event never changes an entropy value.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::{compensated_sum, NeumaierSum};

/// Absolute tolerance on `Σ p_i = 1` accepted at construction.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A probability vector over `W ≥ 1` events.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution {
    pub(crate) probs: Vec<f64>,
}

impl Distribution {
    /// Validates `probs` without touching it: entries must be finite and
    /// non-negative and sum to one within [`NORMALIZATION_TOLERANCE`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_renormalize(probs, false)
    }

    /// Like [`Distribution::new`], but when `renormalize` is set the entries are
    /// divided by their sum instead of being rejected for not summing to one.
    pub fn with_renormalize(mut probs: Vec<f64>, renormalize: bool) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid("distribution must have at least one event"));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::invalid(format!(
                "probability at index {i} is {p}; entries must be finite and non-negative"
            )));
        }
        let total = compensated_sum(probs.iter().copied());
        if renormalize {
            if total <= 0.0 {
                return Err(Error::invalid("weights sum to zero"));
            }
            probs.iter_mut().for_each(|p| *p /= total);
        } else if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::invalid(format!(
                "probabilities sum to {total}, not 1 (tolerance {NORMALIZATION_TOLERANCE:e})"
            )));
        }
        Ok(Self { probs })
    }

    /// The microcanonical distribution `p_i = 1/W`.
    pub fn uniform(w: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::invalid("uniform distribution needs W >= 1"));
        }
        Ok(Self {
            probs: vec![1.0 / w as f64; w],
        })
    }

    /// The certainty distribution `[1.0]`.
    pub fn certain() -> Self {
        Self { probs: vec![1.0] }
    }

    /// Truncated power law `P(s) = A / s^a` for `s = 1..=s_max`.
    pub fn powerlaw(a: f64, s_max: usize) -> Result<Self> {
        if s_max == 0 {
            return Err(Error::invalid("power law needs s_max >= 1"));
        }
        if !a.is_finite() || a < 0.0 {
            return Err(Error::invalid(format!("power-law exponent must be >= 0, got {a}")));
        }
        // Weights relative to s = 1 never underflow the leading term.
        let weights: Vec<f64> = (1..=s_max).map(|s| (-a * (s as f64).ln()).exp()).collect();
        let norm = compensated_sum(weights.iter().copied());
        Ok(Self {
            probs: weights.into_iter().map(|w| w / norm).collect(),
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.probs
    }

    /// Number of events `W` (including zero-probability ones).
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false; a distribution has at least one event.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Number of events with non-zero probability.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    /// Cartesian product of two independent systems, row-major
    /// (index of `self` outer, index of `other` inner).
    pub fn product(&self, other: &Distribution) -> Distribution {
        let mut probs = Vec::with_capacity(self.len() * other.len());
        for &pa in &self.probs {
            probs.extend(other.probs.iter().map(|&pb| pa * pb));
        }
        Distribution { probs }
    }

    /// Appends one event of probability zero.
    pub fn append_zero_event(&self) -> Distribution {
        let mut probs = self.probs.clone();
        probs.push(0.0);
        Distribution { probs }
    }

    /// Non-zero entries in storage order.
    pub(crate) fn support(&self) -> impl Iterator<Item = f64> + Clone + '_ {
        self.probs.iter().copied().filter(|&p| p > 0.0)
    }

    /// Shannon entropy `Σ p ln(1/p)` in nats.
    pub(crate) fn shannon(&self) -> f64 {
        -compensated_sum(self.support().map(|p| p * p.ln()))
    }
}

/// `ln Σ p_i^α` together with the order it was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaLogSum {
    pub alpha: f64,
    pub value: f64,
}

impl AlphaLogSum {
    /// Rényi entropy `value / (1 − α)`; infinite when `α = 1`.
    pub fn renyi(&self) -> f64 {
        self.value / (1.0 - self.alpha)
    }
}

/// Computes `ln Σ_{p_i > 0} p_i^α` as a max-shifted log-sum-exp of `α ln p_i`.
pub fn alpha_log_sum(p: &Distribution, alpha: f64) -> Result<AlphaLogSum> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::invalid(format!("alpha must be positive and finite, got {alpha}")));
    }
    Ok(AlphaLogSum {
        alpha,
        value: log_sum_pow(p.support(), alpha),
    })
}

/// Max-shifted `ln Σ exp(α ln p)` over strictly positive `p`.
pub(crate) fn log_sum_pow<I>(support: I, alpha: f64) -> f64
where
    I: Iterator<Item = f64> + Clone,
{
    let shift = support
        .clone()
        .map(|p| alpha * p.ln())
        .fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut acc = NeumaierSum::new();
    for p in support {
        acc.add((alpha * p.ln() - shift).exp());
    }
    shift + acc.total().ln()
}
