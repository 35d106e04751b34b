//! Models and a deterministic slot simulator for adaptive streaming over
//! congested mobile networks.
//!
//! - [`models`]: bitrate chain, connectivity, interface selection, FEC/NACK
//!   loss, buffering latency and GOP sizing.
//! - [`controller`]: per-slot adaptive transcoding decisions.
//! - [`scenario`]: population, infrastructure, offload and cost arithmetic.
//! - [`sim`]: trace generation, slot engine, journals and metrics.

pub mod controller;
pub mod models;
pub mod scenario;
pub mod sim;
