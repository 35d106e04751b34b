use super::config::ScenarioConfig;
use super::journal::{record_frames, FrameSink, JournalFooter, SlotRecord};
use super::metrics::{Comparison, MetricsReport};
use super::trace::{generate_trace, Trace};
use super::SimError;
use crate::controller::{control_step, static_step, ControlDecision, ControlInputs};
use crate::models::{LinkMetrics, SelectionContext};
use crate::scenario::{baseline_cost, offloaded_volume};

/// Which controller drives the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    #[default]
    Adaptive,
    /// Fixed interface 0, high-quality tier, GOP at `g_max`.
    Static,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub journal: Vec<SlotRecord>,
    pub report: MetricsReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonOutput {
    pub adaptive: Vec<SlotRecord>,
    pub baseline: Vec<SlotRecord>,
    /// Adaptive report with `comparison` filled in.
    pub report: MetricsReport,
    pub baseline_report: MetricsReport,
}

fn inputs(config: &ScenarioConfig) -> ControlInputs<'_> {
    ControlInputs {
        video: &config.video,
        compression: &config.compression,
        correction: &config.correction,
        gop: &config.gop,
        thresholds: &config.thresholds,
    }
}

/// Rounds a volume to whole KiB. On this grid, and below 2^40 MB,
/// `offloaded + carried == generated` holds exactly in f64.
fn kib_grid(mb: f64) -> f64 {
    (mb * 1024.0).round() / 1024.0
}

/// Runs one slot under `policy`.
pub fn step_slot_with(
    slot_index: u32,
    row: &[LinkMetrics],
    config: &ScenarioConfig,
    policy: Policy,
) -> Result<SlotRecord, SimError> {
    if row.len() != config.interfaces.len() {
        return Err(SimError::TraceShape {
            slot: slot_index,
            expected: config.interfaces.len(),
            found: row.len(),
        });
    }
    let ctx = SelectionContext::new(row.to_vec(), config.processing_delay_ms);
    let decide = match policy {
        Policy::Adaptive => control_step,
        Policy::Static => static_step,
    };
    let decision: ControlDecision = decide(&ctx, &inputs(config))
        .map_err(|source| SimError::Slot {
            slot: slot_index,
            source,
        })?;
    let link = row[decision.chosen_interface];
    let generated = kib_grid(config.offload.generated_mb);
    let offloaded = kib_grid(offloaded_volume(&config.offload)).min(generated);
    let carried = generated - offloaded;
    Ok(SlotRecord {
        slot_index,
        interface_chosen: decision.chosen_interface,
        condition: decision.condition,
        rtt_ms: link.rtt,
        loss: link.loss,
        l_combined: decision.combined_loss,
        gop_size: decision.settings.gop_size,
        quality_tier: decision.settings.quality_tier,
        net_bitrate_bps: decision.predicted_net_bitrate,
        latency_ms: decision.predicted_latency,
        generated_mb: generated,
        offloaded_mb: offloaded,
        carried_mb: carried,
        cost_units: baseline_cost(carried, &config.cost),
    })
}

/// Runs one slot under the adaptive controller.
pub fn step_slot(slot_index: u32, row: &[LinkMetrics], config: &ScenarioConfig) -> Result<SlotRecord, SimError> {
    step_slot_with(slot_index, row, config, Policy::Adaptive)
}

fn run_trace(
    config: &ScenarioConfig,
    trace: &Trace,
    policy: Policy,
    mut sink: Option<&mut dyn FrameSink>,
) -> Result<Vec<SlotRecord>, SimError> {
    let mut footer = JournalFooter::default();
    let mut journal = Vec::with_capacity(trace.rows.len());
    for (slot, row) in trace.rows.iter().enumerate() {
        let record = step_slot_with(slot as u32, row, config, policy)?;
        if let Some(sink) = sink.as_deref_mut() {
            record_frames(&record, config, sink, &mut footer).map_err(SimError::JournalIo)?;
        }
        journal.push(record);
    }
    if let Some(sink) = sink {
        if config.recording.enabled {
            sink.finalize(&footer).map_err(SimError::JournalIo)?;
        }
    }
    Ok(journal)
}

/// Runs the adaptive controller over the scenario's trace.
pub fn run(config: &ScenarioConfig) -> Result<RunOutput, SimError> {
    run_with(config, Policy::Adaptive, None)
}

/// Like [`run`], recording frames into `sink` when the config enables
/// recording.
pub fn run_recorded(config: &ScenarioConfig, sink: &mut dyn FrameSink) -> Result<RunOutput, SimError> {
    run_with(config, Policy::Adaptive, Some(sink))
}

pub fn run_with(
    config: &ScenarioConfig,
    policy: Policy,
    sink: Option<&mut dyn FrameSink>,
) -> Result<RunOutput, SimError> {
    let trace = generate_trace(config)?;
    let journal = run_trace(config, &trace, policy, sink)?;
    let report = MetricsReport::from_journal(&journal, config);
    Ok(RunOutput { journal, report })
}

/// Runs adaptive and static controllers on one shared trace.
pub fn compare_baseline(config: &ScenarioConfig) -> Result<ComparisonOutput, SimError> {
    compare_with(config, None)
}

/// Like [`compare_baseline`]; only the adaptive run is recorded.
pub fn compare_baseline_recorded(
    config: &ScenarioConfig,
    sink: &mut dyn FrameSink,
) -> Result<ComparisonOutput, SimError> {
    compare_with(config, Some(sink))
}

fn compare_with(config: &ScenarioConfig, sink: Option<&mut dyn FrameSink>) -> Result<ComparisonOutput, SimError> {
    let trace = generate_trace(config)?;
    let adaptive = run_trace(config, &trace, Policy::Adaptive, sink)?;
    let baseline = run_trace(config, &trace, Policy::Static, None)?;
    let mut report = MetricsReport::from_journal(&adaptive, config);
    let baseline_report = MetricsReport::from_journal(&baseline, config);
    report.comparison = Some(Comparison::between(&report, &baseline_report));
    Ok(ComparisonOutput {
        adaptive,
        baseline,
        report,
        baseline_report,
    })
}
