//! Seeded, splittable random streams.
//!
//! A stream is identified by `(seed, stream_id)` and backed by ChaCha8 with
//! the stream id fed into ChaCha's 64-bit stream counter. Child streams are
//! derived from the parent's identity only (never from its state), so trial
//! `t`, user `k` always sees the same numbers no matter which thread runs it
//! or in what order.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Child stream `child` of this stream. Depends only on
    /// `(seed, stream_id, child)`, not on how many values were drawn.
    pub fn fork(&self, child: u64) -> RngStream {
        let seed = splitmix64(self.seed ^ splitmix64(self.stream_id.wrapping_add(0xA076_1D64_78BD_642F)));
        RngStream::new(seed, child)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer on `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// Circularly symmetric complex Gaussian `CN(0, variance)` via Box–Muller:
/// real and imaginary parts are independent with variance `variance / 2`.
pub fn sample_complex_gaussian(rng: &mut RngStream, variance: f64) -> Complex64 {
    debug_assert!(variance > 0.0);
    // 1 - U lies in (0, 1], keeping the log finite.
    let u1 = 1.0 - rng.next_unit();
    let u2 = rng.next_unit();
    let radius = (-variance * u1.ln()).sqrt();
    Complex64::from_polar(radius, TAU * u2)
}

/// Uniform angle on `[0, 2pi)`.
pub fn sample_uniform_angle(rng: &mut RngStream) -> f64 {
    let theta = TAU * rng.next_unit();
    // Rounding can land exactly on 2pi for the largest unit draws.
    if theta >= TAU {
        0.0
    } else {
        theta
    }
}
