//! Report emission in table, csv and structured (JSON) formats.
//!
//! CSV layout: a header row, one row per slot in the fixed column order
//! below, then summary lines of the form `#summary,<key>,<exact>,<display>`.
//! Summary lines start with `#` so plain CSV readers can skip them as
//! comments.

use std::io::{self, Write};

use adaptstream_core::controller::{NetworkCondition, QualityTier};
use adaptstream_core::scenario::{active_connections, district_population, persons_per_tower};
use adaptstream_core::sim::{MetricsReport, ScenarioConfig, SlotRecord};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::render::{cost, fraction, mbps, ms};

pub const CSV_COLUMNS: [&str; 14] = [
    "slot",
    "interface",
    "condition",
    "rtt_ms",
    "loss",
    "l_combined",
    "gop",
    "quality",
    "net_bitrate_mbps",
    "latency_ms",
    "generated_mb",
    "offloaded_mb",
    "carried_mb",
    "cost_units",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Structured,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Table => "txt",
            Format::Csv => "csv",
            Format::Structured => "json",
        }
    }
}

/// One finished run, plus the static comparator when one was run.
#[derive(Debug, Clone, Copy)]
pub struct RunView<'a> {
    pub config: &'a ScenarioConfig,
    pub journal: &'a [SlotRecord],
    pub report: &'a MetricsReport,
    pub baseline: Option<(&'a [SlotRecord], &'a MetricsReport)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistrictSummary {
    pub name: String,
    pub population: f64,
    /// Absent when the district has no towers.
    pub persons_per_tower: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Demography {
    pub districts: Vec<DistrictSummary>,
    pub active_connections: f64,
}

impl Demography {
    pub fn of(config: &ScenarioConfig) -> Self {
        Self {
            districts: config
                .districts
                .iter()
                .map(|d| {
                    let population = district_population(d);
                    DistrictSummary {
                        name: d.name.clone(),
                        population,
                        persons_per_tower: persons_per_tower(population, d.towers).ok(),
                    }
                })
                .collect(),
            active_connections: active_connections(&config.social),
        }
    }
}

/// The structured output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuredReport {
    pub scenario: String,
    pub seed: u64,
    pub demography: Demography,
    pub report: MetricsReport,
    pub journal: Vec<SlotRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_report: Option<MetricsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_journal: Option<Vec<SlotRecord>>,
}

/// `(key, exact, display)` summary entries shared by the table and csv
/// formats.
pub fn summary_entries(report: &MetricsReport) -> Vec<(&'static str, f64, String)> {
    let mut rows = vec![
        ("slots", f64::from(report.slots), report.slots.to_string()),
        ("offload_ratio", report.offload_ratio, fraction(report.offload_ratio)),
        (
            "total_generated_mb",
            report.total_generated_mb,
            format!("{:.0}", report.total_generated_mb),
        ),
        (
            "total_offloaded_mb",
            report.total_offloaded_mb,
            format!("{:.0}", report.total_offloaded_mb),
        ),
        (
            "total_carried_mb",
            report.total_carried_mb,
            format!("{:.0}", report.total_carried_mb),
        ),
        ("baseline_cost_units", report.baseline_cost_units, cost(report.baseline_cost_units)),
        ("reduced_cost_units", report.reduced_cost_units, cost(report.reduced_cost_units)),
        ("total_cost_units", report.total_cost_units, cost(report.total_cost_units)),
        ("mean_latency_ms", report.mean_latency_ms, ms(report.mean_latency_ms)),
        ("p95_latency_ms", report.p95_latency_ms, ms(report.p95_latency_ms)),
        (
            "mean_throughput_mbps",
            report.mean_throughput_mbps,
            mbps(report.mean_throughput_mbps * 1e6),
        ),
        ("mean_connectivity", report.mean_connectivity, fraction(report.mean_connectivity)),
        (
            "optimal_slots",
            f64::from(report.condition_breakdown.optimal),
            report.condition_breakdown.optimal.to_string(),
        ),
        (
            "congested_slots",
            f64::from(report.condition_breakdown.congested),
            report.condition_breakdown.congested.to_string(),
        ),
    ];
    if let Some(c) = report.comparison {
        rows.extend([
            (
                "baseline_mean_latency_ms",
                c.baseline_mean_latency_ms,
                ms(c.baseline_mean_latency_ms),
            ),
            (
                "baseline_mean_throughput_mbps",
                c.baseline_mean_throughput_mbps,
                mbps(c.baseline_mean_throughput_mbps * 1e6),
            ),
            ("latency_delta_ms", c.latency_delta_ms, ms(c.latency_delta_ms)),
            (
                "throughput_gain_fraction",
                c.throughput_gain_fraction,
                fraction(c.throughput_gain_fraction),
            ),
        ]);
    }
    rows
}

pub fn write_table(view: &RunView<'_>, w: &mut dyn Write) -> io::Result<()> {
    let cfg = view.config;
    writeln!(w, "scenario  {} (seed {}, {} slots)", cfg.name, cfg.seed, cfg.slots)?;
    writeln!(w)?;
    let demography = Demography::of(cfg);
    for d in &demography.districts {
        let per_tower = d
            .persons_per_tower
            .map_or_else(|| "n/a".to_owned(), |p| format!("{p:.0}"));
        writeln!(
            w,
            "district  {:<16} population {:>12.0}  persons/tower {per_tower}",
            d.name, d.population
        )?;
    }
    writeln!(w, "active connections  {:.0}", demography.active_connections)?;
    writeln!(w)?;
    for (key, exact, display) in summary_entries(view.report) {
        if key.ends_with("cost_units") && display != exact.to_string() {
            writeln!(w, "{key:<30} {display} (exact {exact})")?;
        } else {
            writeln!(w, "{key:<30} {display}")?;
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn write_csv(view: &RunView<'_>, w: &mut dyn Write) -> io::Result<()> {
    {
        let mut out = csv::Writer::from_writer(&mut *w);
        out.write_record(CSV_COLUMNS).map_err(csv_err)?;
        for r in view.journal {
            out.write_record([
                r.slot_index.to_string(),
                r.interface_chosen.to_string(),
                r.condition.to_string(),
                r.rtt_ms.to_string(),
                r.loss.to_string(),
                r.l_combined.to_string(),
                r.gop_size.to_string(),
                r.quality_tier.to_string(),
                (r.net_bitrate_bps / 1e6).to_string(),
                r.latency_ms.to_string(),
                r.generated_mb.to_string(),
                r.offloaded_mb.to_string(),
                r.carried_mb.to_string(),
                r.cost_units.to_string(),
            ])
            .map_err(csv_err)?;
        }
        out.flush()?;
    }
    for (key, exact, display) in summary_entries(view.report) {
        writeln!(w, "#summary,{key},{exact},{display}")?;
    }
    Ok(())
}

pub fn structured(view: &RunView<'_>) -> StructuredReport {
    StructuredReport {
        scenario: view.config.name.clone(),
        seed: view.config.seed,
        demography: Demography::of(view.config),
        report: view.report.clone(),
        journal: view.journal.to_vec(),
        baseline_report: view.baseline.map(|(_, r)| r.clone()),
        baseline_journal: view.baseline.map(|(j, _)| j.to_vec()),
    }
}

pub fn write_structured(view: &RunView<'_>, w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, &structured(view))?;
    writeln!(w)
}

pub fn write_report(view: &RunView<'_>, format: Format, w: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Table => write_table(view, w),
        Format::Csv => write_csv(view, w),
        Format::Structured => write_structured(view, w),
    }
}

#[derive(Debug, Error)]
pub enum CsvParseError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("bad value in row {row}, column {column}: {message}")]
    Value {
        row: usize,
        column: &'static str,
        message: String,
    },
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
}

/// Parsed csv output: slot journal and summary `(key, exact)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub journal: Vec<SlotRecord>,
    pub summary: Vec<(String, f64)>,
}

impl ParsedCsv {
    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }
}

fn field<T: std::str::FromStr>(
    record: &csv::StringRecord,
    row: usize,
    index: usize,
) -> Result<T, CsvParseError>
where
    T::Err: std::fmt::Display,
{
    record
        .get(index)
        .ok_or_else(|| "missing".to_owned())
        .and_then(|s| s.parse::<T>().map_err(|e| e.to_string()))
        .map_err(|message| CsvParseError::Value {
            row,
            column: CSV_COLUMNS[index],
            message,
        })
}

pub fn parse_csv(text: &str) -> Result<ParsedCsv, CsvParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_COLUMNS {
        return Err(CsvParseError::Header(header));
    }
    let mut journal = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        journal.push(SlotRecord {
            slot_index: field(&record, row, 0)?,
            interface_chosen: field(&record, row, 1)?,
            condition: field::<NetworkCondition>(&record, row, 2)?,
            rtt_ms: field(&record, row, 3)?,
            loss: field(&record, row, 4)?,
            l_combined: field(&record, row, 5)?,
            gop_size: field(&record, row, 6)?,
            quality_tier: field::<QualityTier>(&record, row, 7)?,
            net_bitrate_bps: field::<f64>(&record, row, 8)? * 1e6,
            latency_ms: field(&record, row, 9)?,
            generated_mb: field(&record, row, 10)?,
            offloaded_mb: field(&record, row, 11)?,
            carried_mb: field(&record, row, 12)?,
            cost_units: field(&record, row, 13)?,
        });
    }
    let summary = text
        .lines()
        .filter_map(|line| line.strip_prefix("#summary,"))
        .filter_map(|rest| {
            let mut parts = rest.splitn(3, ',');
            let key = parts.next()?.to_owned();
            let exact = parts.next()?.parse().ok()?;
            Some((key, exact))
        })
        .collect();
    Ok(ParsedCsv { journal, summary })
}
