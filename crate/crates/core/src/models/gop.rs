use super::GopParams;

/// Buffering delay plus the time to accumulate one GOP, in milliseconds.
pub fn buffering_latency(gop_size: u32, params: &GopParams) -> f64 {
    params.t_buffer + 1000.0 * f64::from(gop_size) / params.frame_rate
}

/// Largest whole GOP that fits in the latency budget left after buffering,
/// clamped to `[g_min, g_max]`.
pub fn optimal_gop(params: &GopParams) -> u32 {
    let frames = ((params.t_max - params.t_buffer) * params.frame_rate / 1000.0).floor();
    // NaN and negative budgets fall through to g_min.
    if !(frames >= f64::from(params.g_min)) {
        params.g_min
    } else if frames >= f64::from(params.g_max) {
        params.g_max
    } else {
        frames as u32
    }
}
