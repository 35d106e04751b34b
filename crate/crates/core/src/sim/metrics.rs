use serde::{Deserialize, Serialize};

use super::config::ScenarioConfig;
use super::journal::SlotRecord;
use crate::controller::NetworkCondition;
use crate::models::connectivity_probability;
use crate::scenario::{baseline_cost, display_cost, reduced_cost};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConditionBreakdown {
    pub optimal: u32,
    pub congested: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TrafficBreakdown {
    pub video_mb: f64,
    pub audio_mb: f64,
    pub text_mb: f64,
}

/// Adaptive controller versus the static comparator on the same trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub baseline_mean_latency_ms: f64,
    pub baseline_mean_throughput_mbps: f64,
    /// Static minus adaptive; positive means the adaptive run was faster.
    pub latency_delta_ms: f64,
    /// `(adaptive - static) / static` mean throughput.
    pub throughput_gain_fraction: f64,
}

impl Comparison {
    pub fn between(adaptive: &MetricsReport, baseline: &MetricsReport) -> Self {
        let gain = if baseline.mean_throughput_mbps > 0.0 {
            (adaptive.mean_throughput_mbps - baseline.mean_throughput_mbps)
                / baseline.mean_throughput_mbps
        } else {
            0.0
        };
        Self {
            baseline_mean_latency_ms: baseline.mean_latency_ms,
            baseline_mean_throughput_mbps: baseline.mean_throughput_mbps,
            latency_delta_ms: baseline.mean_latency_ms - adaptive.mean_latency_ms,
            throughput_gain_fraction: gain,
        }
    }
}

/// Run summary. Costs are per-slot means; volumes are run totals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub slots: u32,
    /// Zero when nothing was generated.
    pub offload_ratio: f64,
    pub total_generated_mb: f64,
    pub total_offloaded_mb: f64,
    pub total_carried_mb: f64,
    pub baseline_cost_units: f64,
    pub reduced_cost_units: f64,
    pub reduced_cost_display: f64,
    /// Sum of per-slot carried-volume cost.
    pub total_cost_units: f64,
    pub mean_latency_ms: f64,
    /// Nearest-rank 95th percentile.
    pub p95_latency_ms: f64,
    pub mean_throughput_mbps: f64,
    pub mean_connectivity: f64,
    pub condition_breakdown: ConditionBreakdown,
    pub traffic_breakdown: TrafficBreakdown,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

/// Nearest-rank percentile of an unsorted sample, `q` in `(0, 1]`.
pub fn nearest_rank(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

impl MetricsReport {
    pub fn from_journal(journal: &[SlotRecord], config: &ScenarioConfig) -> Self {
        let n = journal.len().max(1) as f64;
        let mut generated = 0.0;
        let mut offloaded = 0.0;
        let mut carried = 0.0;
        let mut baseline = 0.0;
        let mut cost = 0.0;
        let mut latency = 0.0;
        let mut throughput = 0.0;
        let mut connectivity = 0.0;
        let mut breakdown = ConditionBreakdown::default();
        for r in journal {
            generated += r.generated_mb;
            offloaded += r.offloaded_mb;
            carried += r.carried_mb;
            baseline += baseline_cost(r.generated_mb, &config.cost);
            cost += r.cost_units;
            latency += r.latency_ms;
            throughput += r.net_bitrate_bps;
            // journal losses are validated fractions, so this cannot fail
            connectivity += connectivity_probability(r.loss, &config.reliability).unwrap_or(0.0);
            match r.condition {
                NetworkCondition::Optimal => breakdown.optimal += 1,
                NetworkCondition::Congested => breakdown.congested += 1,
            }
        }
        let latencies: Vec<f64> = journal.iter().map(|r| r.latency_ms).collect();
        let baseline_mean = baseline / n;
        let reduced = reduced_cost(baseline_mean, &config.cost);
        let mix = config.traffic_mix;
        Self {
            slots: journal.len() as u32,
            offload_ratio: if generated > 0.0 {
                (offloaded / generated).clamp(0.0, 1.0)
            } else {
                0.0
            },
            total_generated_mb: generated,
            total_offloaded_mb: offloaded,
            total_carried_mb: carried,
            baseline_cost_units: baseline_mean,
            reduced_cost_units: reduced,
            reduced_cost_display: display_cost(reduced),
            total_cost_units: cost,
            mean_latency_ms: latency / n,
            p95_latency_ms: nearest_rank(&latencies, 0.95),
            mean_throughput_mbps: throughput / n / 1e6,
            mean_connectivity: connectivity / n,
            condition_breakdown: breakdown,
            traffic_breakdown: TrafficBreakdown {
                video_mb: generated * mix.video,
                audio_mb: generated * mix.audio,
                text_mb: generated * mix.text,
            },
            comparison: None,
        }
    }
}
