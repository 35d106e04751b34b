use super::{check_fraction, ReliabilityParams, Result};

/// Probability that an interface with loss fraction `loss` stays connected,
/// `exp(-alpha * loss)`.
pub fn connectivity_probability(loss: f64, params: &ReliabilityParams) -> Result<f64> {
    check_fraction("loss", loss)?;
    params.validate()?;
    Ok((-params.alpha * loss).exp())
}
