use super::config::ScenarioConfig;
use super::rng::TraceRng;
use super::SimError;
use crate::models::LinkMetrics;

/// Per-slot link measurements, `rows[slot][interface]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub rows: Vec<Vec<LinkMetrics>>,
}

/// Builds the link trace for `config`.
///
/// For every slot, and every interface within a slot, three variates are
/// drawn in order: RTT factor, capacity factor, loss offset. Draws happen
/// even when jitter is zero so the stream position depends only on slot and
/// interface index. Congestion windows are applied after noise.
pub fn generate_trace(config: &ScenarioConfig) -> Result<Trace, SimError> {
    config.validate().map_err(SimError::InvalidConfig)?;
    let noise = config.noise;
    let mut rng = TraceRng::new(config.seed);
    let rows = (0..config.slots)
        .map(|slot| {
            config
                .interfaces
                .iter()
                .map(|iface| {
                    let rtt_factor = 1.0 + rng.symmetric(noise.jitter);
                    let capacity_factor = 1.0 + rng.symmetric(noise.jitter);
                    let loss_offset = rng.symmetric(noise.loss_jitter);
                    let mut link = LinkMetrics {
                        rtt: iface.base.rtt * rtt_factor,
                        loss: (iface.base.loss + loss_offset).clamp(0.0, 1.0),
                        capacity: iface.base.capacity * capacity_factor,
                    };
                    for window in config.congestion_windows.iter().filter(|w| w.contains(slot)) {
                        link.capacity *= 1.0 - window.speed_drop;
                        link.rtt += window.rtt_spike_ms;
                        link.loss = (link.loss + window.loss_add).clamp(0.0, 1.0);
                    }
                    link
                })
                .collect()
        })
        .collect();
    Ok(Trace { rows })
}
