use serde::{Deserialize, Serialize};

use crate::controller::ControllerThresholds;
use crate::models::{
    CompressionParams, CorrectionParams, GopParams, LinkMetrics, ReliabilityParams, VideoProfile,
};
use crate::scenario::{CostModel, District, OffloadConfig, SocialProfile};

/// One validation failure, located by its dotted field path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigIssue {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Reference metadata about the modeled city. Not consumed by the engine.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Infrastructure {
    pub area_km2: f64,
    pub total_towers: u32,
    pub largest_operator_towers: u32,
    #[serde(default)]
    pub operators: Vec<String>,
    pub download_mbps: f64,
    pub upload_mbps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterfaceSpec {
    pub name: String,
    pub base: LinkMetrics,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrafficMix {
    pub video: f64,
    pub audio: f64,
    pub text: f64,
}

/// Contiguous slot range `[start_slot, end_slot)` of degraded service,
/// applied to every interface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CongestionWindow {
    pub start_slot: u32,
    pub end_slot: u32,
    /// Fractional capacity loss.
    pub speed_drop: f64,
    pub rtt_spike_ms: f64,
    /// Additive loss fraction.
    pub loss_add: f64,
}

impl CongestionWindow {
    pub fn contains(&self, slot: u32) -> bool {
        (self.start_slot..self.end_slot).contains(&slot)
    }
}

/// Per-slot jitter. RTT and capacity are scaled by a factor drawn uniformly
/// from `[1 - jitter, 1 + jitter]`; loss is offset by a value drawn uniformly
/// from `[-loss_jitter, loss_jitter]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub jitter: f64,
    pub loss_jitter: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self {
            jitter: 0.05,
            loss_jitter: 0.002,
        }
    }
}

impl NoiseModel {
    pub const NONE: Self = Self {
        jitter: 0.0,
        loss_jitter: 0.0,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RecordingConfig {
    pub enabled: bool,
    /// Where the frame journal goes when recording is enabled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub slots: u32,
    pub seed: u64,
    #[serde(default)]
    pub infrastructure: Infrastructure,
    pub districts: Vec<District>,
    pub social: SocialProfile,
    pub interfaces: Vec<InterfaceSpec>,
    /// Milliseconds added to every RTT during interface selection.
    pub processing_delay_ms: f64,
    pub traffic_mix: TrafficMix,
    #[serde(default)]
    pub congestion_windows: Vec<CongestionWindow>,
    #[serde(default)]
    pub noise: NoiseModel,
    pub offload: OffloadConfig,
    pub cost: CostModel,
    pub video: VideoProfile,
    pub compression: CompressionParams,
    pub correction: CorrectionParams,
    pub gop: GopParams,
    #[serde(default)]
    pub thresholds: ControllerThresholds,
    #[serde(default)]
    pub reliability: ReliabilityParams,
    #[serde(default)]
    pub recording: RecordingConfig,
}

struct Issues(Vec<ConfigIssue>);

impl Issues {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(ConfigIssue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn check<E: std::fmt::Display>(&mut self, prefix: &str, result: Result<(), E>) {
        if let Err(e) = result {
            self.push(prefix, e.to_string());
        }
    }
}

impl ScenarioConfig {
    /// Checks every invariant; returns all violations rather than the first.
    pub fn validate(&self) -> Result<(), Vec<ConfigIssue>> {
        let mut issues = Issues(Vec::new());

        if self.slots == 0 {
            issues.push("slots", "must be at least 1");
        }
        for (i, d) in self.districts.iter().enumerate() {
            issues.check(&format!("districts[{i}]"), d.validate());
        }
        issues.check("social", self.social.validate());
        if self.interfaces.is_empty() {
            issues.push("interfaces", "at least one interface is required");
        }
        for (i, iface) in self.interfaces.iter().enumerate() {
            issues.check(&format!("interfaces[{i}].base"), iface.base.validate());
            if iface.base.rtt + self.processing_delay_ms <= 0.0 {
                issues.push(
                    format!("interfaces[{i}].base.rtt"),
                    "effective latency (rtt + processing_delay_ms) must be positive",
                );
            }
        }
        if !(self.processing_delay_ms >= 0.0) {
            issues.push("processing_delay_ms", "must be >= 0");
        }

        let mix = self.traffic_mix;
        for (field, v) in [("video", mix.video), ("audio", mix.audio), ("text", mix.text)] {
            if !(0.0..=1.0).contains(&v) {
                issues.push(format!("traffic_mix.{field}"), "must be in [0, 1]");
            }
        }
        let total = mix.video + mix.audio + mix.text;
        if (total - 1.0).abs() > 1e-9 {
            issues.push("traffic_mix", format!("fractions sum to {total}, expected 1"));
        }

        for (i, w) in self.congestion_windows.iter().enumerate() {
            let path = format!("congestion_windows[{i}]");
            if w.start_slot >= w.end_slot {
                issues.push(format!("{path}.end_slot"), "must be greater than start_slot");
            }
            if w.end_slot > self.slots {
                issues.push(format!("{path}.end_slot"), format!("must not exceed slots ({})", self.slots));
            }
            if !(0.0..=1.0).contains(&w.speed_drop) {
                issues.push(format!("{path}.speed_drop"), "must be in [0, 1]");
            }
            if !(w.rtt_spike_ms >= 0.0) {
                issues.push(format!("{path}.rtt_spike_ms"), "must be >= 0");
            }
            if !(0.0..=1.0).contains(&w.loss_add) {
                issues.push(format!("{path}.loss_add"), "must be in [0, 1]");
            }
        }

        if !(0.0..1.0).contains(&self.noise.jitter) {
            issues.push("noise.jitter", "must be in [0, 1)");
        }
        if !(0.0..=1.0).contains(&self.noise.loss_jitter) {
            issues.push("noise.loss_jitter", "must be in [0, 1]");
        }

        issues.check("offload", self.offload.validate());
        issues.check("cost", self.cost.validate());
        issues.check("video", self.video.validate());
        issues.check("compression", self.compression.validate());
        issues.check("correction", self.correction.validate());
        issues.check("gop", self.gop.validate());
        if self.gop.frame_rate != f64::from(self.video.frame_rate) {
            issues.push("gop.frame_rate", "must equal video.frame_rate");
        }
        issues.check("thresholds", self.thresholds.validate());
        issues.check("reliability", self.reliability.validate());
        if self.recording.enabled && self.recording.path.is_none() {
            issues.push("recording.path", "required when recording is enabled");
        }

        if issues.0.is_empty() {
            Ok(())
        } else {
            Err(issues.0)
        }
    }

    /// The Dhaka 2025 reference scenario.
    pub fn dhaka_default() -> Self {
        let download = 42.57e6;
        Self {
            name: "dhaka-2025".into(),
            slots: 1000,
            seed: 2025,
            infrastructure: Infrastructure {
                area_km2: 306.0,
                total_towers: 1000,
                largest_operator_towers: 350,
                operators: ["Grameenphone", "Banglalink", "Robi", "Teletalk"]
                    .map(String::from)
                    .to_vec(),
                download_mbps: 42.57,
                upload_mbps: 16.27,
            },
            districts: vec![District {
                name: "Dhanmondi".into(),
                density: 75_000.0,
                area: 5.0,
                towers: 40,
            }],
            social: SocialProfile {
                population: 21_000_000.0,
                penetration: 0.9,
                platforms_per_user: 4.0,
            },
            interfaces: vec![
                InterfaceSpec {
                    name: "primary-4g".into(),
                    base: LinkMetrics::new(20.0, 0.01, download),
                },
                InterfaceSpec {
                    name: "secondary-4g".into(),
                    base: LinkMetrics::new(70.0, 0.01, download),
                },
            ],
            processing_delay_ms: 5.0,
            traffic_mix: TrafficMix {
                video: 0.55,
                audio: 0.30,
                text: 0.15,
            },
            congestion_windows: vec![
                CongestionWindow {
                    start_slot: 250,
                    end_slot: 280,
                    speed_drop: 0.40,
                    rtt_spike_ms: 60.0,
                    loss_add: 0.03,
                },
                CongestionWindow {
                    start_slot: 700,
                    end_slot: 760,
                    speed_drop: 0.40,
                    rtt_spike_ms: 60.0,
                    loss_add: 0.03,
                },
            ],
            noise: NoiseModel::default(),
            offload: OffloadConfig {
                ap_count: 50,
                avg_offload_mb: 70.0,
                generated_mb: 5000.0,
            },
            cost: CostModel {
                unit_cost: 2.5,
                handled_fraction: 0.9,
                reduction: 0.15,
            },
            video: VideoProfile::new(1920, 1080, 30, 24),
            compression: CompressionParams {
                eta: 150.0,
                overhead: 0.10,
                retransmission_loss: 0.05,
            },
            correction: CorrectionParams {
                gamma: 2.0,
                beta: 0.5,
                nack_rate: 0.04,
            },
            gop: GopParams {
                t_max: 2200.0,
                t_buffer: 200.0,
                frame_rate: 30.0,
                g_min: 5,
                g_max: 60,
            },
            thresholds: ControllerThresholds::default(),
            reliability: ReliabilityParams::default(),
            recording: RecordingConfig::default(),
        }
    }
}
