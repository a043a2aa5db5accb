//! Seeded kernels that are reproducible everywhere.
//!
//! The generator is SplitMix64: `state += 0x9E3779B97F4A7C15`, then the
//! output is the state mixed by two xor-shift-multiply rounds. The top 53
//! bits give a uniform double in `[0, 1)`, mapped to `[-1, 1)`.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn next_signed(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_f64() * n as f64) as usize
    }
}

/// `M + 1` kernel coefficients uniform in `[-1, 1]`.
pub fn random_kernel(m: usize, seed: u64) -> Vec<f64> {
    let mut g = SplitMix64::new(seed);
    (0..=m).map(|_| g.next_signed()).collect()
}
