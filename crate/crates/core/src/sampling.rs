//! Seeded sampling of test inputs. Every randomized check in the crate draws
//! from a `ChaCha8Rng` so reports are reproducible from the seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clinalg::{c64, Complex};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the ball of radius `max_norm`.
pub fn vector_in_ball(rng: &mut SeededRng, max_norm: f64) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 <= 1.0 {
            return v.map(|x| x * max_norm);
        }
    }
}

pub fn uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..=hi)
}

/// Complex number uniform in the unit disc scaled by `radius`.
pub fn complex_in_disc(rng: &mut SeededRng, radius: f64) -> Complex {
    loop {
        let (a, b) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if a * a + b * b <= 1.0 {
            return c64(a * radius, b * radius);
        }
    }
}
