use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{check_nonnegative, LinkMetrics, ModelError, Result};

/// Candidate interfaces plus the fixed processing delay added to each RTT.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionContext {
    pub candidates: Vec<LinkMetrics>,
    /// Milliseconds.
    pub processing_delay: f64,
}

impl SelectionContext {
    pub fn new(candidates: Vec<LinkMetrics>, processing_delay: f64) -> Self {
        Self {
            candidates,
            processing_delay,
        }
    }

    /// Builds a context from bare RTTs (loss 0, capacity 0). Mostly useful in
    /// tests and the `eval` command.
    pub fn from_rtts(rtts: &[f64], processing_delay: f64) -> Self {
        Self::new(
            rtts.iter().map(|&rtt| LinkMetrics::new(rtt, 0.0, 0.0)).collect(),
            processing_delay,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.candidates.is_empty() {
            return Err(ModelError::NoCandidates);
        }
        check_nonnegative("processing_delay", self.processing_delay)?;
        for (index, link) in self.candidates.iter().enumerate() {
            link.validate()?;
            if effective_latency(link, self.processing_delay) <= 0.0 {
                return Err(ModelError::ZeroEffectiveLatency { index });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    /// Highest selection weight wins; ties go to the lowest index.
    #[default]
    Deterministic,
    /// Sample an index from the selection distribution.
    Stochastic,
}

/// RTT plus processing delay, in milliseconds.
pub fn effective_latency(link: &LinkMetrics, processing_delay: f64) -> f64 {
    link.rtt + processing_delay
}

/// Inverse-latency weights normalized to a probability vector.
pub fn selection_distribution(ctx: &SelectionContext) -> Result<Vec<f64>> {
    ctx.validate()?;
    let inverse: Vec<f64> = ctx
        .candidates
        .iter()
        .map(|link| effective_latency(link, ctx.processing_delay).recip())
        .collect();
    let total: f64 = inverse.iter().sum();
    Ok(inverse.into_iter().map(|w| w / total).collect())
}

/// Picks a candidate index. Stochastic mode draws one uniform variate from
/// `rng` and inverts the cumulative distribution.
pub fn select_interface<R: Rng + ?Sized>(
    ctx: &SelectionContext,
    mode: SelectionMode,
    rng: Option<&mut R>,
) -> Result<usize> {
    let dist = selection_distribution(ctx)?;
    match mode {
        SelectionMode::Deterministic => {
            let mut best = 0;
            for (i, &p) in dist.iter().enumerate().skip(1) {
                if p > dist[best] {
                    best = i;
                }
            }
            Ok(best)
        }
        SelectionMode::Stochastic => {
            let rng = rng.ok_or(ModelError::MissingRandomness)?;
            let u: f64 = rng.random();
            let mut cumulative = 0.0;
            for (i, &p) in dist.iter().enumerate() {
                cumulative += p;
                if u < cumulative {
                    return Ok(i);
                }
            }
            // u landed in the rounding gap just below 1.0
            Ok(dist.len() - 1)
        }
    }
}
