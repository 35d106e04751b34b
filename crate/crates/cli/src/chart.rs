//! Static SVG charts: latency and throughput over slots, offload summary.

use std::fmt;
use std::path::{Path, PathBuf};

use adaptstream_core::sim::{MetricsReport, SlotRecord};
use plotters::prelude::*;

pub const LATENCY_FILE: &str = "latency.svg";
pub const THROUGHPUT_FILE: &str = "throughput.svg";
pub const OFFLOAD_FILE: &str = "offload.svg";

const SIZE: (u32, u32) = (960, 480);

#[derive(Debug)]
pub struct ChartError(String);

impl fmt::Display for ChartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chart rendering failed: {}", self.0)
    }
}

impl std::error::Error for ChartError {}

fn err<E: fmt::Display>(e: E) -> ChartError {
    ChartError(e.to_string())
}

struct Series<'a> {
    label: &'a str,
    color: RGBColor,
    points: Vec<(f64, f64)>,
}

fn line_chart(path: &Path, title: &str, y_label: &str, series: &[Series<'_>]) -> Result<(), ChartError> {
    let x_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0))
        .fold(1.0_f64, f64::max);
    let y_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold(0.0_f64, f64::max);
    let y_top = if y_max > 0.0 { y_max * 1.1 } else { 1.0 };

    let root = SVGBackend::new(path, SIZE).into_drawing_area();
    root.fill(&WHITE).map_err(err)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 22))
        .margin(16)
        .x_label_area_size(40)
        .y_label_area_size(60)
        .build_cartesian_2d(0.0..x_max, 0.0..y_top)
        .map_err(err)?;
    chart
        .configure_mesh()
        .x_desc("slot")
        .y_desc(y_label)
        .draw()
        .map_err(err)?;
    for s in series {
        let color = s.color;
        chart
            .draw_series(LineSeries::new(s.points.iter().copied(), color))
            .map_err(err)?
            .label(s.label)
            .legend(move |(x, y)| PathElement::new([(x, y), (x + 20, y)], color));
    }
    if series.len() > 1 {
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(err)?;
    }
    root.present().map_err(err)
}

fn offload_chart(path: &Path, report: &MetricsReport) -> Result<(), ChartError> {
    let bars = [
        ("offloaded", report.total_offloaded_mb, GREEN),
        ("carried", report.total_carried_mb, RED),
    ];
    let top = report.total_generated_mb.max(1.0) * 1.1;
    let root = SVGBackend::new(path, SIZE).into_drawing_area();
    root.fill(&WHITE).map_err(err)?;
    let title = format!("offload ratio {:.4}", report.offload_ratio);
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 22))
        .margin(16)
        .x_label_area_size(40)
        .y_label_area_size(80)
        .build_cartesian_2d(0.0..2.0, 0.0..top)
        .map_err(err)?;
    chart
        .configure_mesh()
        .disable_x_mesh()
        .x_labels(2)
        .x_label_formatter(&|x: &f64| {
            bars.get(x.floor() as usize)
                .map_or_else(String::new, |b| b.0.to_owned())
        })
        .y_desc("volume (MB)")
        .draw()
        .map_err(err)?;
    chart
        .draw_series(bars.iter().enumerate().map(|(i, &(_, v, color))| {
            let x = i as f64;
            Rectangle::new([(x + 0.2, 0.0), (x + 0.8, v)], color.filled())
        }))
        .map_err(err)?;
    root.present().map_err(err)
}

/// Writes the three chart files into `dir`, creating it if needed.
pub fn render_charts(
    dir: &Path,
    journal: &[SlotRecord],
    report: &MetricsReport,
    baseline: Option<&[SlotRecord]>,
) -> Result<Vec<PathBuf>, ChartError> {
    std::fs::create_dir_all(dir).map_err(err)?;
    let points = |j: &[SlotRecord], f: fn(&SlotRecord) -> f64| -> Vec<(f64, f64)> {
        j.iter().map(|r| (f64::from(r.slot_index), f(r))).collect()
    };
    let latency = |r: &SlotRecord| r.latency_ms;
    let throughput = |r: &SlotRecord| r.net_bitrate_bps / 1e6;

    let mut latency_series = vec![Series {
        label: "adaptive",
        color: BLUE,
        points: points(journal, latency),
    }];
    let mut throughput_series = vec![Series {
        label: "adaptive",
        color: BLUE,
        points: points(journal, throughput),
    }];
    if let Some(b) = baseline {
        latency_series.push(Series {
            label: "static",
            color: RED,
            points: points(b, latency),
        });
        throughput_series.push(Series {
            label: "static",
            color: RED,
            points: points(b, throughput),
        });
    }

    let latency_path = dir.join(LATENCY_FILE);
    let throughput_path = dir.join(THROUGHPUT_FILE);
    let offload_path = dir.join(OFFLOAD_FILE);
    line_chart(&latency_path, "latency per slot", "latency (ms)", &latency_series)?;
    line_chart(&throughput_path, "throughput per slot", "net bitrate (Mbps)", &throughput_series)?;
    offload_chart(&offload_path, report)?;
    Ok(vec![latency_path, throughput_path, offload_path])
}
