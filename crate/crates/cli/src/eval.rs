//! `eval` subcommands: one closed-form operation per subcommand.
//!
//! Output is two lines. The first is `<name> = <value>[, <value>...]` in
//! canonical units with full precision; the second renders the result the
//! way it is usually quoted (Mbps, 4-decimal fractions, whole cost units).

use adaptstream_core::models::{
    buffering_latency, combined_loss, connectivity_probability, effective_bitrate,
    effective_latency, fec_effective_loss, net_bitrate, optimal_gop, raw_bitrate,
    select_interface, selection_distribution, CompressionParams, CorrectionParams, GopParams,
    LinkMetrics, ModelError, ReliabilityParams, SelectionContext, SelectionMode, VideoProfile,
};
use adaptstream_core::scenario::{
    self, active_connections, baseline_cost, display_cost, district_population,
    offloaded_volume, persons_per_tower, reduced_cost, CostModel, District, OffloadConfig,
    ScenarioError, SocialProfile,
};
use clap::Subcommand;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::render::{fraction, mbps, ms};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Formula {
    /// width × height × fps × color depth
    RawBitrate {
        #[arg(long)]
        width: u32,
        #[arg(long)]
        height: u32,
        #[arg(long)]
        fps: u32,
        #[arg(long)]
        depth: u32,
    },
    /// raw / eta
    EffectiveBitrate {
        #[arg(long)]
        raw_mbps: f64,
        #[arg(long)]
        eta: f64,
    },
    /// (raw / eta) × (1 − overhead) × (1 − loss)
    NetBitrate {
        #[arg(long)]
        raw_mbps: f64,
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        #[arg(long)]
        overhead: f64,
        #[arg(long)]
        loss: f64,
    },
    /// exp(−alpha × loss)
    Connectivity {
        #[arg(long)]
        loss: f64,
        #[arg(long, default_value_t = 10.0)]
        alpha: f64,
    },
    /// rtt + processing delay
    EffectiveLatency {
        #[arg(long)]
        rtt: f64,
        #[arg(long = "proc", default_value_t = 0.0)]
        processing_delay: f64,
    },
    /// Inverse-latency selection weights
    Selection {
        #[arg(long, value_delimiter = ',', required = true)]
        rtts: Vec<f64>,
        #[arg(long = "proc", default_value_t = 0.0)]
        processing_delay: f64,
    },
    /// Chosen interface index (argmax, or sampled with --seed)
    Select {
        #[arg(long, value_delimiter = ',', required = true)]
        rtts: Vec<f64>,
        #[arg(long = "proc", default_value_t = 0.0)]
        processing_delay: f64,
        /// Sample from the distribution with this seed instead of argmax.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// loss × (1 − 1/(1 + gamma))
    FecLoss {
        #[arg(long)]
        loss: f64,
        #[arg(long)]
        gamma: f64,
    },
    /// max(0, l_eff − beta × nack_rate)
    CombinedLoss {
        #[arg(long)]
        l_eff: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        nack_rate: f64,
    },
    /// t_buffer + 1000 × gop / fps
    BufferingLatency {
        #[arg(long)]
        gop: u32,
        #[arg(long)]
        t_buffer: f64,
        #[arg(long)]
        fps: f64,
    },
    /// Clamped whole-frame GOP for a latency budget
    OptimalGop {
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        t_buffer: f64,
        #[arg(long)]
        fps: f64,
        #[arg(long)]
        g_min: u32,
        #[arg(long)]
        g_max: u32,
    },
    /// density × area
    DistrictPopulation {
        #[arg(long)]
        density: f64,
        #[arg(long)]
        area: f64,
    },
    /// population / towers
    PersonsPerTower {
        #[arg(long)]
        population: f64,
        #[arg(long)]
        towers: u32,
    },
    /// penetration × population × platforms
    ActiveConnections {
        #[arg(long)]
        population: f64,
        #[arg(long)]
        penetration: f64,
        #[arg(long)]
        platforms: f64,
    },
    /// handled × volume × unit cost
    BaselineCost {
        #[arg(long)]
        volume_mb: f64,
        #[arg(long)]
        handled: f64,
        #[arg(long)]
        unit_cost: f64,
    },
    /// baseline × (1 − reduction)
    ReducedCost {
        #[arg(long)]
        baseline: f64,
        #[arg(long)]
        reduction: f64,
    },
    /// min(aps × avg MB, generated MB)
    OffloadedVolume {
        #[arg(long)]
        aps: u32,
        #[arg(long)]
        avg_mb: f64,
        #[arg(long)]
        generated_mb: f64,
    },
    /// offloaded / generated
    OffloadRatio {
        #[arg(long)]
        offloaded: f64,
        #[arg(long)]
        generated: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutput {
    pub name: &'static str,
    pub values: Vec<f64>,
    pub rendering: String,
}

impl std::fmt::Display for EvalOutput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let values: Vec<String> = self.values.iter().map(f64::to_string).collect();
        writeln!(f, "{} = {}", self.name, values.join(", "))?;
        writeln!(f, "{}", self.rendering)
    }
}

fn one(name: &'static str, value: f64, rendering: String) -> EvalOutput {
    EvalOutput {
        name,
        values: vec![value],
        rendering,
    }
}

fn count(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e15 {
        format!("{value:.0}")
    } else {
        format!("{value:.4}")
    }
}

impl Formula {
    pub fn evaluate(&self) -> Result<EvalOutput, EvalError> {
        Ok(match *self {
            Formula::RawBitrate {
                width,
                height,
                fps,
                depth,
            } => {
                let profile = VideoProfile::new(width, height, fps, depth);
                profile.validate()?;
                let b = raw_bitrate(&profile);
                one("raw_bitrate_bps", b, format!("raw bitrate = {}", mbps(b)))
            }
            Formula::EffectiveBitrate { raw_mbps, eta } => {
                let params = CompressionParams {
                    eta,
                    overhead: 0.0,
                    retransmission_loss: 0.0,
                };
                let b = effective_bitrate(raw_mbps * 1e6, &params)?;
                one("effective_bitrate_bps", b, format!("effective bitrate = {}", mbps(b)))
            }
            Formula::NetBitrate {
                raw_mbps,
                eta,
                overhead,
                loss,
            } => {
                let params = CompressionParams {
                    eta,
                    overhead,
                    retransmission_loss: loss,
                };
                let b = net_bitrate(effective_bitrate(raw_mbps * 1e6, &params)?, &params)?;
                one("net_bitrate_bps", b, format!("net bitrate = {}", mbps(b)))
            }
            Formula::Connectivity { loss, alpha } => {
                let p = connectivity_probability(loss, &ReliabilityParams { alpha })?;
                one("connectivity_probability", p, format!("P_conn = {}", fraction(p)))
            }
            Formula::EffectiveLatency {
                rtt,
                processing_delay,
            } => {
                let link = LinkMetrics::new(rtt, 0.0, 0.0);
                link.validate()?;
                let t = effective_latency(&link, processing_delay);
                one("effective_latency_ms", t, format!("T_eff = {}", ms(t)))
            }
            Formula::Selection {
                ref rtts,
                processing_delay,
            } => {
                let dist = selection_distribution(&SelectionContext::from_rtts(rtts, processing_delay))?;
                let rendered: Vec<String> = dist.iter().map(|&p| fraction(p)).collect();
                EvalOutput {
                    name: "selection_distribution",
                    rendering: format!("P = [{}]", rendered.join(", ")),
                    values: dist,
                }
            }
            Formula::Select {
                ref rtts,
                processing_delay,
                seed,
            } => {
                let ctx = SelectionContext::from_rtts(rtts, processing_delay);
                let index = match seed {
                    Some(seed) => {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        select_interface(&ctx, SelectionMode::Stochastic, Some(&mut rng))?
                    }
                    None => select_interface::<ChaCha8Rng>(&ctx, SelectionMode::Deterministic, None)?,
                };
                one("selected_interface", index as f64, format!("interface {index}"))
            }
            Formula::FecLoss { loss, gamma } => {
                let l = fec_effective_loss(
                    loss,
                    &CorrectionParams {
                        gamma,
                        beta: 0.0,
                        nack_rate: 0.0,
                    },
                )?;
                one("fec_effective_loss", l, format!("L_eff = {}", fraction(l)))
            }
            Formula::CombinedLoss {
                l_eff,
                beta,
                nack_rate,
            } => {
                let l = combined_loss(
                    l_eff,
                    &CorrectionParams {
                        gamma: 0.0,
                        beta,
                        nack_rate,
                    },
                )?;
                one("combined_loss", l, format!("L_combined = {}", fraction(l)))
            }
            Formula::BufferingLatency { gop, t_buffer, fps } => {
                let params = GopParams {
                    t_max: t_buffer,
                    t_buffer,
                    frame_rate: fps,
                    g_min: 1,
                    g_max: gop.max(1),
                };
                params.validate()?;
                let t = buffering_latency(gop, &params);
                one("buffering_latency_ms", t, format!("T_latency = {}", ms(t)))
            }
            Formula::OptimalGop {
                t_max,
                t_buffer,
                fps,
                g_min,
                g_max,
            } => {
                let params = GopParams {
                    t_max,
                    t_buffer,
                    frame_rate: fps,
                    g_min,
                    g_max,
                };
                params.validate()?;
                let g = optimal_gop(&params);
                one("optimal_gop_frames", f64::from(g), format!("G_opt = {g} frames"))
            }
            Formula::DistrictPopulation { density, area } => {
                let d = District {
                    name: String::new(),
                    density,
                    area,
                    towers: 0,
                };
                d.validate()?;
                let p = district_population(&d);
                one("population", p, format!("population = {} persons", count(p)))
            }
            Formula::PersonsPerTower { population, towers } => {
                let p = persons_per_tower(population, towers)?;
                one("persons_per_tower", p, format!("persons per tower = {}", count(p)))
            }
            Formula::ActiveConnections {
                population,
                penetration,
                platforms,
            } => {
                let s = SocialProfile {
                    population,
                    penetration,
                    platforms_per_user: platforms,
                };
                s.validate()?;
                let c = active_connections(&s);
                one("active_connections", c, format!("active connections = {}", count(c)))
            }
            Formula::BaselineCost {
                volume_mb,
                handled,
                unit_cost,
            } => {
                let c = CostModel {
                    unit_cost,
                    handled_fraction: handled,
                    reduction: 0.0,
                };
                c.validate()?;
                let cost = baseline_cost(volume_mb, &c);
                one("baseline_cost_units", cost, format!("baseline cost = {} units", count(cost)))
            }
            Formula::ReducedCost {
                baseline,
                reduction,
            } => {
                let c = CostModel {
                    unit_cost: 0.0,
                    handled_fraction: 0.0,
                    reduction,
                };
                c.validate()?;
                let cost = reduced_cost(baseline, &c);
                one(
                    "reduced_cost_units",
                    cost,
                    format!("reduced cost = {:.0} units (exact {cost})", display_cost(cost)),
                )
            }
            Formula::OffloadedVolume {
                aps,
                avg_mb,
                generated_mb,
            } => {
                let o = OffloadConfig {
                    ap_count: aps,
                    avg_offload_mb: avg_mb,
                    generated_mb,
                };
                o.validate()?;
                let v = offloaded_volume(&o);
                one("offloaded_mb", v, format!("offloaded volume = {} MB", count(v)))
            }
            Formula::OffloadRatio {
                offloaded,
                generated,
            } => {
                let r = scenario::offload_ratio(offloaded, generated)?;
                one("offload_ratio", r, format!("offload ratio = {}", fraction(r)))
            }
        })
    }
}
