//! Interdependence of two subsystems measured against the composition law:
//! `Δ(AB) = φ(S(A), S(B)) − S(AB)`, which vanishes when `AB` is the
//! independent product of its marginals.

use serde::Serialize;

use crate::entropy::EntropySpec;
use crate::error::{Error, Result};
use crate::prob::Distribution;
use crate::sum::compensated_sum;

/// A joint distribution over `W_A · W_B` states, row-major in `(a, b)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointSystem {
    joint: Distribution,
    w_a: usize,
    w_b: usize,
}

impl JointSystem {
    pub fn new(joint: Distribution, w_a: usize, w_b: usize) -> Result<Self> {
        if w_a == 0 || w_b == 0 {
            return Err(Error::invalid("subsystem sizes must be positive"));
        }
        if joint.len() != w_a * w_b {
            return Err(Error::invalid(format!(
                "joint has {} states, expected {w_a} x {w_b}",
                joint.len()
            )));
        }
        Ok(Self { joint, w_a, w_b })
    }

    /// Builds a system from a `W_A × W_B` matrix of probabilities.
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let w_a = rows.len();
        let w_b = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != w_b) {
            return Err(Error::invalid("joint matrix rows have unequal lengths"));
        }
        let flat = rows.iter().flatten().copied().collect();
        Self::new(Distribution::new(flat)?, w_a, w_b)
    }

    /// The independent system `A × B`.
    pub fn independent(a: &Distribution, b: &Distribution) -> Self {
        Self {
            joint: a.product(b),
            w_a: a.len(),
            w_b: b.len(),
        }
    }

    pub fn joint(&self) -> &Distribution {
        &self.joint
    }

    pub fn w_a(&self) -> usize {
        self.w_a
    }

    pub fn w_b(&self) -> usize {
        self.w_b
    }

    /// The same system with the roles of `A` and `B` exchanged.
    pub fn transposed(&self) -> Self {
        let p = self.joint.probs();
        let probs = (0..self.w_b)
            .flat_map(|b| (0..self.w_a).map(move |a| p[a * self.w_b + b]))
            .collect();
        Self {
            joint: Distribution { probs },
            w_a: self.w_b,
            w_b: self.w_a,
        }
    }
}

/// Row and column sums of the joint distribution.
pub fn marginals(sys: &JointSystem) -> (Distribution, Distribution) {
    let p = sys.joint.probs();
    let a = (0..sys.w_a)
        .map(|i| compensated_sum(p[i * sys.w_b..(i + 1) * sys.w_b].iter().copied()))
        .collect();
    let b = (0..sys.w_b)
        .map(|j| compensated_sum((0..sys.w_a).map(|i| p[i * sys.w_b + j])))
        .collect();
    (Distribution { probs: a }, Distribution { probs: b })
}

/// The entropy terms entering `Δ(AB)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaTerms {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    /// `φ(S(A), S(B))`, the entropy of `A × B`.
    pub s_product: f64,
    pub delta: f64,
}

/// All terms of `Δ(AB)`; `spec` must carry a composition law.
pub fn delta_terms(spec: &EntropySpec, sys: &JointSystem) -> Result<DeltaTerms> {
    let law = spec.group_law()?;
    let (a, b) = marginals(sys);
    let s_a = spec.evaluate(&a)?;
    let s_b = spec.evaluate(&b)?;
    let s_ab = spec.evaluate(&sys.joint)?;
    let s_product = law.compose(s_a, s_b)?;
    Ok(DeltaTerms {
        s_a,
        s_b,
        s_ab,
        s_product,
        delta: s_product - s_ab,
    })
}

/// `Δ(AB) = φ(S(A), S(B)) − S(AB)`.
pub fn delta(spec: &EntropySpec, sys: &JointSystem) -> Result<f64> {
    delta_terms(spec, sys).map(|t| t.delta)
}
