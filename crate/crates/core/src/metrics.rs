//! KL divergence and the equivalence verdict built on it.
//!
//! `kl_divergence(p, q)` is D(p ∥ q) in nats with `p` the candidate and `q`
//! the reference. A reference probability of zero where the candidate has
//! mass is replaced by ε = 1/(10·shots), after which the reference is
//! renormalized and the result flagged as smoothed.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::codegen::DEFAULT_SHOTS;
use crate::sim::Distribution;

pub const DEFAULT_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KlResult {
    pub value: f64,
    pub smoothed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("bitstring lengths differ: candidate {candidate}, reference {reference}")]
    LengthMismatch { candidate: usize, reference: usize },
    #[error("threshold must be positive")]
    NonPositiveThreshold,
}

/// ε uses the candidate's shot count, then the reference's, then the default.
fn epsilon(p: &Distribution, q: &Distribution) -> f64 {
    let shots = p.shots.or(q.shots).unwrap_or(DEFAULT_SHOTS).max(1);
    1.0 / (10.0 * shots as f64)
}

pub fn kl_divergence(p: &Distribution, q: &Distribution) -> Result<KlResult, MetricError> {
    if let (Some(a), Some(b)) = (p.width(), q.width()) {
        if a != b {
            return Err(MetricError::LengthMismatch {
                candidate: a,
                reference: b,
            });
        }
    }
    let keys: BTreeSet<&String> = p.probs.keys().chain(q.probs.keys()).collect();
    let p_total: f64 = p.probs.values().sum();
    let needs_smoothing = keys.iter().any(|k| p.get(k) > 0.0 && q.get(k) <= 0.0);
    let eps = epsilon(p, q);
    let q_of = |k: &str| {
        let v = q.get(k);
        if needs_smoothing && v <= 0.0 && p.get(k) > 0.0 {
            eps
        } else {
            v
        }
    };
    let q_total: f64 = keys.iter().map(|k| q_of(k)).sum();
    let mut value = 0.0;
    for k in &keys {
        let pk = p.get(k) / p_total;
        if pk > 0.0 {
            value += pk * (pk / (q_of(k) / q_total)).ln();
        }
    }
    Ok(KlResult {
        // Rounding can leave a tiny negative sum for identical inputs.
        value: value.max(0.0),
        smoothed: needs_smoothing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub kl: f64,
    pub threshold: f64,
    pub pass: bool,
    pub smoothed: bool,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("verdict serializes");
        s.push('\n');
        s
    }
}

pub fn equivalence_verdict(
    reference: &Distribution,
    candidate: &Distribution,
    threshold: f64,
) -> Result<Verdict, MetricError> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(MetricError::NonPositiveThreshold);
    }
    let kl = kl_divergence(candidate, reference)?;
    Ok(Verdict {
        kl: kl.value,
        threshold,
        pass: kl.value < threshold,
        smoothed: kl.smoothed,
    })
}
