//! Seedable random streams: the adversary's "random tape".
//!
//! Every draw is a function of (seed, draw index), which is what makes
//! fork-and-replay experiments literal: replaying with the same seed replays
//! the same tape. A tape may carry a pinned prefix of explicit values so
//! fixture runs can dictate, e.g., the exact signing exponent.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::group::GroupDescription;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct RandomTape {
    pinned: VecDeque<u64>,
    rng: ChaCha20Rng,
}

impl RandomTape {
    pub fn seeded(seed: u64) -> Self {
        RandomTape {
            pinned: VecDeque::new(),
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// A tape that serves `pinned` verbatim before falling back to the
    /// seeded stream. Pinned values must already lie in the target range.
    pub fn with_pinned(pinned: &[u64], seed: u64) -> Self {
        RandomTape {
            pinned: pinned.iter().copied().collect(),
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from Z_p* (the range [1, p)).
    pub fn sample_scalar(&mut self, desc: &GroupDescription) -> Scalar {
        let p = desc.modulus();
        match self.pinned.pop_front() {
            Some(v) => {
                debug_assert!(v >= 1 && v < p, "pinned tape value out of range");
                Scalar::new(v, p)
            }
            None => Scalar::new(self.rng.gen_range(1..p), p),
        }
    }

    /// Raw 64-bit draw, used to derive sub-seeds.
    pub fn sample_u64(&mut self) -> u64 {
        self.pinned
            .pop_front()
            .unwrap_or_else(|| self.rng.gen::<u64>())
    }
}

/// SplitMix64 step: derives independent role seeds from a base seed.
pub fn derive_seed(base: u64, role: u64) -> u64 {
    let mut z = base
        .wrapping_add(role.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
