//! Demography, infrastructure, offload and cost arithmetic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("degenerate infrastructure: no towers to share the population")]
    NoTowers,
    #[error("offload ratio undefined: no traffic generated")]
    NoGeneratedTraffic,
    #[error("{field} = {value} is outside its valid range ({expected})")]
    OutOfRange {
        field: &'static str,
        value: f64,
        expected: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

fn fraction(field: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ScenarioError::OutOfRange {
            field,
            value,
            expected: "[0, 1]",
        })
    }
}

fn nonnegative(field: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ScenarioError::OutOfRange {
            field,
            value,
            expected: ">= 0",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct District {
    pub name: String,
    /// Persons per km².
    pub density: f64,
    /// km².
    pub area: f64,
    pub towers: u32,
}

impl District {
    pub fn validate(&self) -> Result<()> {
        nonnegative("density", self.density)?;
        if !(self.area > 0.0 && self.area.is_finite()) {
            return Err(ScenarioError::OutOfRange {
                field: "area",
                value: self.area,
                expected: "> 0",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SocialProfile {
    pub population: f64,
    pub penetration: f64,
    pub platforms_per_user: f64,
}

impl SocialProfile {
    pub fn validate(&self) -> Result<()> {
        nonnegative("population", self.population)?;
        fraction("penetration", self.penetration)?;
        nonnegative("platforms_per_user", self.platforms_per_user)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    /// Cost units per MB.
    pub unit_cost: f64,
    /// Fraction of the generated volume the operator bills for.
    pub handled_fraction: f64,
    /// Fractional saving applied to the baseline.
    pub reduction: f64,
}

impl CostModel {
    pub fn validate(&self) -> Result<()> {
        nonnegative("unit_cost", self.unit_cost)?;
        fraction("handled_fraction", self.handled_fraction)?;
        fraction("reduction", self.reduction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffloadConfig {
    pub ap_count: u32,
    /// MB offloaded per access point per slot.
    pub avg_offload_mb: f64,
    /// MB generated per slot.
    pub generated_mb: f64,
}

impl OffloadConfig {
    pub fn validate(&self) -> Result<()> {
        nonnegative("avg_offload_mb", self.avg_offload_mb)?;
        nonnegative("generated_mb", self.generated_mb)
    }
}

pub fn district_population(d: &District) -> f64 {
    d.density * d.area
}

pub fn persons_per_tower(population: f64, towers: u32) -> Result<f64> {
    if towers == 0 {
        return Err(ScenarioError::NoTowers);
    }
    Ok(population / f64::from(towers))
}

pub fn active_connections(s: &SocialProfile) -> f64 {
    s.penetration * s.population * s.platforms_per_user
}

pub fn baseline_cost(volume_mb: f64, c: &CostModel) -> f64 {
    c.handled_fraction * volume_mb * c.unit_cost
}

/// Exact reduced cost. Use [`display_cost`] for the rounded figure.
pub fn reduced_cost(baseline: f64, c: &CostModel) -> f64 {
    baseline * (1.0 - c.reduction)
}

/// Half-up rounding to whole cost units (9562.5 → 9563).
pub fn display_cost(cost: f64) -> f64 {
    (cost + 0.5).floor()
}

/// Volume moved onto access points, capped at what was generated.
pub fn offloaded_volume(o: &OffloadConfig) -> f64 {
    (f64::from(o.ap_count) * o.avg_offload_mb).min(o.generated_mb)
}

pub fn offload_ratio(offloaded: f64, generated: f64) -> Result<f64> {
    if !(generated > 0.0) {
        return Err(ScenarioError::NoGeneratedTraffic);
    }
    Ok((offloaded / generated).clamp(0.0, 1.0))
}
