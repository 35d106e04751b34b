use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Portable trace noise source.
///
/// ChaCha8 keyed with the seed's 8 little-endian bytes followed by 24 zero
/// bytes. Each uniform variate takes the top 53 bits of one `next_u64`
/// output and scales by 2^-53, so the stream is reproducible in any
/// language with a ChaCha8 implementation.
pub struct TraceRng(ChaCha8Rng);

impl TraceRng {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        Self(ChaCha8Rng::from_seed(key))
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-half_width, half_width)`.
    pub fn symmetric(&mut self, half_width: f64) -> f64 {
        half_width * (2.0 * self.unit() - 1.0)
    }
}
