//! Slot journal rows and the frame recording sink.
//!
//! The frame journal is newline-delimited JSON. Each frame line carries, in
//! this order: `slot_index`, `frame_index`, `timestamp_ms`,
//! `encoded_size_bits`, `quality_tier`, `gop_position`. The last line is a
//! footer `{"footer":{"total_frames":..,"total_bits":..,"total_bytes":..}}`.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use super::config::ScenarioConfig;
use crate::controller::{NetworkCondition, QualityTier};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotRecord {
    pub slot_index: u32,
    pub interface_chosen: usize,
    pub condition: NetworkCondition,
    pub rtt_ms: f64,
    pub loss: f64,
    pub l_combined: f64,
    pub gop_size: u32,
    pub quality_tier: QualityTier,
    pub net_bitrate_bps: f64,
    pub latency_ms: f64,
    pub generated_mb: f64,
    pub offloaded_mb: f64,
    pub carried_mb: f64,
    pub cost_units: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJournalEntry {
    pub slot_index: u32,
    pub frame_index: u32,
    pub timestamp_ms: f64,
    pub encoded_size_bits: f64,
    pub quality_tier: QualityTier,
    pub gop_position: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct JournalFooter {
    pub total_frames: u64,
    pub total_bits: f64,
    pub total_bytes: f64,
}

impl JournalFooter {
    fn add(&mut self, entry: &FrameJournalEntry) {
        self.total_frames += 1;
        self.total_bits += entry.encoded_size_bits;
        self.total_bytes = self.total_bits / 8.0;
    }
}

/// Destination for recorded frames.
pub trait FrameSink {
    fn write_frame(&mut self, entry: &FrameJournalEntry) -> io::Result<()>;
    fn finalize(&mut self, footer: &JournalFooter) -> io::Result<()>;
}

/// Collects frames in memory.
#[derive(Debug, Default)]
pub struct MemorySink {
    pub frames: Vec<FrameJournalEntry>,
    pub footer: Option<JournalFooter>,
}

impl FrameSink for MemorySink {
    fn write_frame(&mut self, entry: &FrameJournalEntry) -> io::Result<()> {
        self.frames.push(entry.clone());
        Ok(())
    }

    fn finalize(&mut self, footer: &JournalFooter) -> io::Result<()> {
        self.footer = Some(*footer);
        Ok(())
    }
}

/// Writes the newline-delimited journal format to any writer.
pub struct JsonLinesSink<W: Write> {
    writer: W,
}

impl<W: Write> JsonLinesSink<W> {
    pub fn new(writer: W) -> Self {
        Self { writer }
    }

    pub fn into_inner(self) -> W {
        self.writer
    }
}

#[derive(Serialize, Deserialize)]
struct FooterLine {
    footer: JournalFooter,
}

impl<W: Write> FrameSink for JsonLinesSink<W> {
    fn write_frame(&mut self, entry: &FrameJournalEntry) -> io::Result<()> {
        serde_json::to_writer(&mut self.writer, entry)?;
        self.writer.write_all(b"\n")
    }

    fn finalize(&mut self, footer: &JournalFooter) -> io::Result<()> {
        serde_json::to_writer(&mut self.writer, &FooterLine { footer: *footer })?;
        self.writer.write_all(b"\n")?;
        self.writer.flush()
    }
}

/// Parses a journal written by [`JsonLinesSink`].
pub fn read_frame_journal<R: BufRead>(
    reader: R,
) -> io::Result<(Vec<FrameJournalEntry>, Option<JournalFooter>)> {
    let mut frames = Vec::new();
    let mut footer = None;
    for line in reader.lines() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        if footer.is_some() {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "data after footer"));
        }
        if line.starts_with("{\"footer\"") {
            let parsed: FooterLine = serde_json::from_str(&line)?;
            footer = Some(parsed.footer);
        } else {
            frames.push(serde_json::from_str(&line)?);
        }
    }
    Ok((frames, footer))
}

/// The frames one slot produces: `frame_rate` equal-sized frames that sum to
/// the slot's net bit volume. GOP positions restart at each slot, since the
/// encoder is reconfigured at slot boundaries.
pub fn frames_for(record: &SlotRecord, config: &ScenarioConfig) -> Vec<FrameJournalEntry> {
    if !config.recording.enabled {
        return Vec::new();
    }
    let fps = config.video.frame_rate;
    let size = record.net_bitrate_bps / f64::from(fps);
    let gop = record.gop_size.max(1);
    (0..fps)
        .map(|frame_index| FrameJournalEntry {
            slot_index: record.slot_index,
            frame_index,
            timestamp_ms: f64::from(record.slot_index) * 1000.0
                + f64::from(frame_index) * 1000.0 / f64::from(fps),
            encoded_size_bits: size,
            quality_tier: record.quality_tier,
            gop_position: frame_index % gop,
        })
        .collect()
}

/// Streams one slot's frames into `sink`, tracking totals in `footer`.
/// Returns the number of frames written.
pub fn record_frames(
    record: &SlotRecord,
    config: &ScenarioConfig,
    sink: &mut dyn FrameSink,
    footer: &mut JournalFooter,
) -> io::Result<usize> {
    let frames = frames_for(record, config);
    for entry in &frames {
        sink.write_frame(entry)?;
        footer.add(entry);
    }
    Ok(frames.len())
}
