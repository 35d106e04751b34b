//! Time-slotted simulation engine.
//!
//! A run walks slots `0..slots` in order. Each slot is one second of
//! constant network conditions and one controller decision.

mod config;
mod engine;
mod journal;
mod metrics;
mod rng;
mod trace;

pub use config::{
    ConfigIssue, CongestionWindow, Infrastructure, InterfaceSpec, NoiseModel, RecordingConfig,
    ScenarioConfig, TrafficMix,
};
pub use engine::{
    compare_baseline, compare_baseline_recorded, run, run_recorded, run_with, step_slot, step_slot_with, ComparisonOutput,
    Policy, RunOutput,
};
pub use journal::{
    frames_for, read_frame_journal, record_frames, FrameJournalEntry, FrameSink, JournalFooter,
    JsonLinesSink, MemorySink, SlotRecord,
};
pub use metrics::{nearest_rank, Comparison, ConditionBreakdown, MetricsReport, TrafficBreakdown};
pub use rng::TraceRng;
pub use trace::{generate_trace, Trace};

use thiserror::Error;

use crate::models::ModelError;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario: {}", join_issues(.0))]
    InvalidConfig(Vec<ConfigIssue>),
    #[error("slot {slot}: {source}")]
    Slot {
        slot: u32,
        #[source]
        source: ModelError,
    },
    #[error("slot {slot}: trace row has {found} interfaces, expected {expected}")]
    TraceShape {
        slot: u32,
        expected: usize,
        found: usize,
    },
    #[error("frame journal write failed: {0}")]
    JournalIo(#[source] std::io::Error),
}

fn join_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
