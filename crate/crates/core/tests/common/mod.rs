//! Seeded random oscillatory integrals shared by the test targets.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

/// Smooth random amplitude: a rational-times-polynomial with a mild phase.
#[derive(Debug, Clone, Copy)]
pub struct RandomAmplitude {
    c: [Complex64; 3],
    gamma: f64,
    beta: f64,
}

impl RandomAmplitude {
    pub fn draw(rng: &mut ChaCha8Rng) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); 3];
        for z in c.iter_mut() {
            *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        RandomAmplitude { c, gamma: rng.gen_range(0.0..2.0), beta: rng.gen_range(-3.0..3.0) }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let poly = self.c[0] + self.c[1] * x + self.c[2] * x * x;
        poly * Complex64::from_polar(1.0 / (1.0 + self.gamma * x * x), self.beta * x)
    }
}

pub struct Case {
    pub t: f64,
    pub m: usize,
    pub r: f64,
    pub sigma: f64,
    pub support: (f64, f64),
    pub amp: RandomAmplitude,
}

pub fn draw_case(rng: &mut ChaCha8Rng) -> Case {
    let m = if rng.gen_bool(0.5) { 1 } else { 2 };
    let a: f64 = rng.gen_range(0.1..1.0);
    let b = a + rng.gen_range(0.5..2.0);
    let t = rng.gen_range(-40.0..40.0) / (b.powi(2 * m as i32 - 1));
    let r = rng.gen_range(-80.0..80.0);
    let sigma = if rng.gen_bool(0.3) { rng.gen_range(-16.0..16.0) } else { 0.0 };
    Case { t, m, r, sigma, support: (a, b), amp: RandomAmplitude::draw(rng) }
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}
