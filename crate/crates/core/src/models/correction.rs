use super::{check_fraction, CorrectionParams, Result};

/// Residual loss after FEC, `L * (1 - 1/(1 + gamma))`.
///
/// The expression is evaluated as given: it grows with `gamma` and is zero
/// when `gamma == 0`.
pub fn fec_effective_loss(loss: f64, params: &CorrectionParams) -> Result<f64> {
    check_fraction("loss", loss)?;
    params.validate()?;
    Ok(loss * (1.0 - 1.0 / (1.0 + params.gamma)))
}

/// Loss after NACK recovery, `max(0, l_eff - beta * nack_rate)` clamped to
/// `[0, 1]`.
pub fn combined_loss(l_eff: f64, params: &CorrectionParams) -> Result<f64> {
    check_fraction("l_eff", l_eff)?;
    params.validate()?;
    Ok((l_eff - params.beta * params.nack_rate).clamp(0.0, 1.0))
}
