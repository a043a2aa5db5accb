#![allow(dead_code)]

use proptest::test_runner::{Config, RngSeed};

/// Fixed-seed config so every run draws the same cases.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

const S3: f64 = 1.732_050_807_568_877_2;

/// Renewal kernel `x^2 exp(-x) / 2`.
pub fn renewal_f(x: f64) -> f64 {
    0.5 * x * x * (-x).exp()
}

/// Solution of `u = f + f * u` for [`renewal_f`].
pub fn renewal_u(x: f64) -> f64 {
    let s = 0.5 * S3 * x;
    1.0 / 3.0 - (s.cos() + S3 * s.sin()) * (-1.5 * x).exp() / 3.0
}

/// Half-line input paired with [`renewal_f`].
pub fn laguerre_g(x: f64) -> f64 {
    let s = 0.5 * S3 * x;
    -(s.cos() + S3 * s.sin()) * (-1.5 * x).exp() / 3.0
}

/// `(renewal_f * laguerre_g)(x)` on `[0, inf)`.
pub fn laguerre_h(x: f64) -> f64 {
    let s = 0.5 * S3 * x;
    -((-x).exp() * (x * x - x - 1.0) + (-1.5 * x).exp() * (S3 * s.sin() + s.cos())) / 3.0
}
