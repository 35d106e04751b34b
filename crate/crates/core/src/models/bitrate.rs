use super::{check_nonnegative, CompressionParams, Result, VideoProfile};

/// Uncompressed bitrate: width × height × frame rate × color depth.
pub fn raw_bitrate(profile: &VideoProfile) -> f64 {
    // Integer product is exact for any realistic geometry; widen before
    // converting so 8K/120fps/48bpp still fits.
    let bits = u128::from(profile.width)
        * u128::from(profile.height)
        * u128::from(profile.frame_rate)
        * u128::from(profile.color_depth);
    bits as f64
}

/// Bitrate after the encoder's compression factor.
pub fn effective_bitrate(raw: f64, params: &CompressionParams) -> Result<f64> {
    check_nonnegative("raw", raw)?;
    params.validate()?;
    Ok(raw / params.eta)
}

/// Bitrate left after network overhead and retransmission losses.
pub fn net_bitrate(effective: f64, params: &CompressionParams) -> Result<f64> {
    check_nonnegative("effective", effective)?;
    params.validate()?;
    Ok(effective * (1.0 - params.overhead) * (1.0 - params.retransmission_loss))
}
