//! Seeded synthetic series: white noise, the logistic map and observational
//! noise.
//!
//! All randomness comes from SplitMix64, so a seed reproduces the same
//! bit-exact stream on every platform.

use crate::error::{Error, Result};

/// The SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// `n` i.i.d. uniform samples on `[0, 1)`.
pub fn white_noise(n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("white noise needs n >= 1"));
    }
    let mut rng = SplitMix64::new(seed);
    Ok((0..n).map(|_| rng.next_f64()).collect())
}

/// Default parameter of the logistic map.
pub const LOGISTIC_R: f64 = 4.0;
/// Default number of discarded initial iterates.
pub const LOGISTIC_TRANSIENT: usize = 1000;

/// `n` iterates of `x ↦ r x (1 − x)` after discarding `transient` steps.
///
/// Orbits that reach exactly 0 or 1 (which then stay on the fixed point 0)
/// are rejected as degenerate.
pub fn logistic_map(n: usize, r: f64, x0: f64, transient: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("logistic map needs n >= 1"));
    }
    if !(r > 0.0 && r <= 4.0) {
        return Err(Error::invalid(format!("logistic parameter r must lie in (0, 4], got {r}")));
    }
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::invalid(format!("x0 must lie in (0, 1), got {x0}")));
    }
    let mut x = x0;
    let mut out = Vec::with_capacity(n);
    for step in 0..transient + n {
        x = r * x * (1.0 - x);
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::DegenerateOrbit(format!(
                "orbit from x0 = {x0} reached {x} at step {}",
                step + 1
            )));
        }
        if step >= transient {
            out.push(x);
        }
    }
    Ok(out)
}

/// Adds `amplitude · U(−1, 1)` to every sample.
pub fn add_observational_noise(series: &[f64], amplitude: f64, seed: u64) -> Result<Vec<f64>> {
    if !(amplitude >= 0.0) || !amplitude.is_finite() {
        return Err(Error::invalid(format!("noise amplitude must be finite and >= 0, got {amplitude}")));
    }
    if amplitude == 0.0 {
        return Ok(series.to_vec());
    }
    let mut rng = SplitMix64::new(seed);
    Ok(series
        .iter()
        .map(|x| x + amplitude * (2.0 * rng.next_f64() - 1.0))
        .collect())
}
