//! Per-slot adaptive transcoding controller.
//!
//! Each call picks an interface, classifies the chosen link, derives encoder
//! settings and GOP size from the classification, and predicts the latency
//! and deliverable bitrate of the result. The controller holds no state
//! between calls.

use serde::{Deserialize, Serialize};

use crate::models::{
    self, buffering_latency, combined_loss, effective_bitrate, effective_latency,
    fec_effective_loss, net_bitrate, optimal_gop, raw_bitrate, CompressionParams,
    CorrectionParams, GopParams, LinkMetrics, ModelError, SelectionContext, SelectionMode,
    VideoProfile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NetworkCondition {
    Optimal,
    Congested,
}

impl NetworkCondition {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Optimal => "Optimal",
            Self::Congested => "Congested",
        }
    }
}

impl std::fmt::Display for NetworkCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for NetworkCondition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Optimal" => Ok(Self::Optimal),
            "Congested" => Ok(Self::Congested),
            other => Err(format!("unknown network condition {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QualityTier {
    HighQuality,
    LowLatency,
}

impl QualityTier {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::HighQuality => "high_quality",
            Self::LowLatency => "low_latency",
        }
    }
}

impl std::fmt::Display for QualityTier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for QualityTier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "high_quality" => Ok(Self::HighQuality),
            "low_latency" => Ok(Self::LowLatency),
            other => Err(format!("unknown quality tier {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncoderSettings {
    pub quality_tier: QualityTier,
    /// Bits/second.
    pub target_bitrate: f64,
    pub gop_size: u32,
}

fn default_congestion_factor() -> f64 {
    0.6
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerThresholds {
    pub max_loss_optimal: f64,
    /// Milliseconds.
    pub max_rtt_optimal: f64,
    /// Bits/second.
    pub high_quality_bitrate: f64,
    /// Bits/second.
    pub low_latency_bitrate: f64,
    /// Multiplier applied to `t_max` before recomputing the GOP under
    /// congestion.
    #[serde(default = "default_congestion_factor")]
    pub congestion_tmax_factor: f64,
}

impl Default for ControllerThresholds {
    fn default() -> Self {
        Self {
            max_loss_optimal: 0.02,
            max_rtt_optimal: 50.0,
            high_quality_bitrate: 15e6,
            low_latency_bitrate: 10e6,
            congestion_tmax_factor: default_congestion_factor(),
        }
    }
}

impl ControllerThresholds {
    pub fn validate(&self) -> models::Result<()> {
        let out_of_range = |field, value, expected| {
            Err(ModelError::OutOfRange {
                field,
                value,
                expected,
            })
        };
        if !(0.0..=1.0).contains(&self.max_loss_optimal) {
            return out_of_range("max_loss_optimal", self.max_loss_optimal, "[0, 1]");
        }
        if !(self.max_rtt_optimal > 0.0) {
            return out_of_range("max_rtt_optimal", self.max_rtt_optimal, "> 0");
        }
        if !(self.low_latency_bitrate > 0.0) {
            return out_of_range("low_latency_bitrate", self.low_latency_bitrate, "> 0");
        }
        if !(self.high_quality_bitrate >= self.low_latency_bitrate) {
            return out_of_range(
                "high_quality_bitrate",
                self.high_quality_bitrate,
                ">= low_latency_bitrate",
            );
        }
        if !(self.congestion_tmax_factor > 0.0 && self.congestion_tmax_factor <= 1.0) {
            return out_of_range("congestion_tmax_factor", self.congestion_tmax_factor, "(0, 1]");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlDecision {
    pub condition: NetworkCondition,
    pub settings: EncoderSettings,
    pub chosen_interface: usize,
    /// Loss left on the chosen link after FEC and NACK.
    pub combined_loss: f64,
    /// Milliseconds.
    pub predicted_latency: f64,
    /// Bits/second.
    pub predicted_net_bitrate: f64,
}

/// Everything the controller needs besides the live link measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlInputs<'a> {
    pub video: &'a VideoProfile,
    pub compression: &'a CompressionParams,
    pub correction: &'a CorrectionParams,
    pub gop: &'a GopParams,
    pub thresholds: &'a ControllerThresholds,
}

/// Optimal iff both loss and RTT are within their thresholds.
pub fn classify_condition(link: &LinkMetrics, thresholds: &ControllerThresholds) -> NetworkCondition {
    if link.loss <= thresholds.max_loss_optimal && link.rtt <= thresholds.max_rtt_optimal {
        NetworkCondition::Optimal
    } else {
        NetworkCondition::Congested
    }
}

pub fn settings_for(
    condition: NetworkCondition,
    gop: &GopParams,
    thresholds: &ControllerThresholds,
) -> EncoderSettings {
    match condition {
        NetworkCondition::Optimal => EncoderSettings {
            quality_tier: QualityTier::HighQuality,
            target_bitrate: thresholds.high_quality_bitrate,
            gop_size: optimal_gop(gop),
        },
        NetworkCondition::Congested => {
            let tightened = GopParams {
                t_max: gop.t_max * thresholds.congestion_tmax_factor,
                ..*gop
            };
            EncoderSettings {
                quality_tier: QualityTier::LowLatency,
                target_bitrate: thresholds.low_latency_bitrate,
                gop_size: optimal_gop(&tightened),
            }
        }
    }
}

/// Bitrate the encoder can push through `link` at `target_bitrate`: the
/// compressed stream (capped at the target) after overhead and retransmission
/// losses, further capped by the link's loss-adjusted capacity.
///
/// Returns `(deliverable bitrate, combined loss)`.
pub fn deliverable_bitrate(
    link: &LinkMetrics,
    target_bitrate: f64,
    inputs: &ControlInputs<'_>,
) -> models::Result<(f64, f64)> {
    let encoded = effective_bitrate(raw_bitrate(inputs.video), inputs.compression)?
        .min(target_bitrate);
    let net = net_bitrate(encoded, inputs.compression)?;
    let residual = combined_loss(fec_effective_loss(link.loss, inputs.correction)?, inputs.correction)?;
    Ok((net.min(link.capacity * (1.0 - residual)), residual))
}

fn decide(
    ctx: &SelectionContext,
    chosen_interface: usize,
    condition: NetworkCondition,
    settings: EncoderSettings,
    inputs: &ControlInputs<'_>,
) -> models::Result<ControlDecision> {
    let link = &ctx.candidates[chosen_interface];
    let (predicted_net_bitrate, residual) =
        deliverable_bitrate(link, settings.target_bitrate, inputs)?;
    let predicted_latency = buffering_latency(settings.gop_size, inputs.gop)
        + effective_latency(link, ctx.processing_delay);
    Ok(ControlDecision {
        condition,
        settings,
        chosen_interface,
        combined_loss: residual,
        predicted_latency,
        predicted_net_bitrate,
    })
}

/// One adaptive control step: select, measure, adjust GOP, emit.
pub fn control_step(ctx: &SelectionContext, inputs: &ControlInputs<'_>) -> models::Result<ControlDecision> {
    inputs.video.validate()?;
    inputs.gop.validate()?;
    inputs.thresholds.validate()?;
    let chosen = models::select_interface::<rand_chacha::ChaCha8Rng>(
        ctx,
        SelectionMode::Deterministic,
        None,
    )?;
    let condition = classify_condition(&ctx.candidates[chosen], inputs.thresholds);
    let settings = settings_for(condition, inputs.gop, inputs.thresholds);
    decide(ctx, chosen, condition, settings, inputs)
}

/// Non-adaptive comparator: always interface 0, high-quality tier, GOP at
/// `g_max`. The condition is still classified on interface 0 for reporting.
pub fn static_step(ctx: &SelectionContext, inputs: &ControlInputs<'_>) -> models::Result<ControlDecision> {
    ctx.validate()?;
    inputs.video.validate()?;
    inputs.gop.validate()?;
    inputs.thresholds.validate()?;
    let condition = classify_condition(&ctx.candidates[0], inputs.thresholds);
    let settings = EncoderSettings {
        quality_tier: QualityTier::HighQuality,
        target_bitrate: inputs.thresholds.high_quality_bitrate,
        gop_size: inputs.gop.g_max,
    };
    decide(ctx, 0, condition, settings, inputs)
}
