//! Closed-form streaming models.
//!
//! Every function here is pure: no I/O, no shared state, safe to call from
//! any thread. Units are canonical throughout: bits/second for rates,
//! milliseconds for times, fractions in `[0, 1]` for percentages.

mod bitrate;
mod correction;
mod gop;
mod reliability;
mod selection;

pub use bitrate::{effective_bitrate, net_bitrate, raw_bitrate};
pub use correction::{combined_loss, fec_effective_loss};
pub use gop::{buffering_latency, optimal_gop};
pub use reliability::connectivity_probability;
pub use selection::{
    effective_latency, select_interface, selection_distribution, SelectionContext, SelectionMode,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{field} = {value} is outside its valid range ({expected})")]
    OutOfRange {
        field: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("interface selection needs at least one candidate")]
    NoCandidates,
    #[error("candidate {index} has zero effective latency")]
    ZeroEffectiveLatency { index: usize },
    #[error("stochastic selection requires a seeded randomness source")]
    MissingRandomness,
}

pub(crate) fn check_fraction(field: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ModelError::OutOfRange {
            field,
            value,
            expected: "[0, 1]",
        })
    }
}

pub(crate) fn check_nonnegative(field: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::OutOfRange {
            field,
            value,
            expected: ">= 0",
        })
    }
}

/// Raw (uncompressed) video geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VideoProfile {
    pub width: u32,
    pub height: u32,
    /// Frames per second.
    pub frame_rate: u32,
    /// Bits per pixel.
    pub color_depth: u32,
}

impl VideoProfile {
    pub const fn new(width: u32, height: u32, frame_rate: u32, color_depth: u32) -> Self {
        Self {
            width,
            height,
            frame_rate,
            color_depth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("width", self.width),
            ("height", self.height),
            ("frame_rate", self.frame_rate),
            ("color_depth", self.color_depth),
        ] {
            if value == 0 {
                return Err(ModelError::OutOfRange {
                    field,
                    value: 0.0,
                    expected: "> 0",
                });
            }
        }
        Ok(())
    }
}

/// Encoder compression and transport overheads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompressionParams {
    /// Compression factor, at least 1.
    pub eta: f64,
    /// Network overhead fraction.
    pub overhead: f64,
    /// Retransmission loss fraction.
    pub retransmission_loss: f64,
}

impl CompressionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta >= 1.0 && self.eta.is_finite()) {
            return Err(ModelError::OutOfRange {
                field: "eta",
                value: self.eta,
                expected: ">= 1",
            });
        }
        check_fraction("overhead", self.overhead)?;
        check_fraction("retransmission_loss", self.retransmission_loss)
    }
}

/// Measured state of one network interface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkMetrics {
    /// Round-trip time in milliseconds.
    pub rtt: f64,
    /// Packet loss fraction.
    pub loss: f64,
    /// Capacity in bits/second.
    pub capacity: f64,
}

impl LinkMetrics {
    pub const fn new(rtt: f64, loss: f64, capacity: f64) -> Self {
        Self {
            rtt,
            loss,
            capacity,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_nonnegative("rtt", self.rtt)?;
        check_fraction("loss", self.loss)?;
        check_nonnegative("capacity", self.capacity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityParams {
    /// Loss sensitivity of the connectivity model.
    pub alpha: f64,
}

impl Default for ReliabilityParams {
    fn default() -> Self {
        Self { alpha: 10.0 }
    }
}

impl ReliabilityParams {
    pub fn validate(&self) -> Result<()> {
        check_nonnegative("alpha", self.alpha)
    }
}

/// Hybrid FEC + NACK settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionParams {
    /// FEC redundancy factor.
    pub gamma: f64,
    /// NACK retransmission efficiency.
    pub beta: f64,
    /// Retransmission requests per transmitted packet.
    pub nack_rate: f64,
}

impl CorrectionParams {
    pub fn validate(&self) -> Result<()> {
        check_nonnegative("gamma", self.gamma)?;
        check_nonnegative("beta", self.beta)?;
        check_fraction("nack_rate", self.nack_rate)
    }
}

/// Latency budget and GOP bounds used by the GOP optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GopParams {
    /// Maximum tolerable latency (ms).
    pub t_max: f64,
    /// Fixed buffering delay (ms).
    pub t_buffer: f64,
    /// Frames per second.
    pub frame_rate: f64,
    pub g_min: u32,
    pub g_max: u32,
}

impl GopParams {
    pub fn validate(&self) -> Result<()> {
        if self.g_min == 0 {
            return Err(ModelError::OutOfRange {
                field: "g_min",
                value: 0.0,
                expected: "> 0",
            });
        }
        if self.g_min > self.g_max {
            return Err(ModelError::OutOfRange {
                field: "g_max",
                value: self.g_max as f64,
                expected: ">= g_min",
            });
        }
        if !(self.frame_rate > 0.0 && self.frame_rate.is_finite()) {
            return Err(ModelError::OutOfRange {
                field: "frame_rate",
                value: self.frame_rate,
                expected: "> 0",
            });
        }
        check_nonnegative("t_buffer", self.t_buffer)?;
        check_nonnegative("t_max", self.t_max)
    }

    /// Frame interval in milliseconds.
    pub fn frame_interval_ms(&self) -> f64 {
        1000.0 / self.frame_rate
    }
}
