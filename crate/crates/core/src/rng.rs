//! Reproducible random substreams.
//!
//! A [`SeedStream`] is a master seed plus a purpose tag. Monte Carlo work is
//! cut into fixed-size blocks of sample indices and block `b` always draws
//! from ChaCha stream `b` of the tagged key, so results depend only on the
//! master seed and the sample count, never on how blocks are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5EED_2024_F3A7_0001;

/// Samples per Monte Carlo block.
pub const BLOCK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedStream {
    master: u64,
    key: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a(tag: &str) -> u64 {
    tag.bytes().fold(0xCBF2_9CE4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

impl SeedStream {
    pub fn new(master: u64) -> Self {
        Self {
            master,
            key: splitmix64(master),
        }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// Independent child stream for a named purpose.
    pub fn derive(&self, tag: &str) -> Self {
        Self {
            master: self.master,
            key: splitmix64(self.key ^ fnv1a(tag)),
        }
    }

    /// Child stream for an integer label (e.g. a degree `k`).
    pub fn derive_index(&self, label: u64) -> Self {
        Self {
            master: self.master,
            key: splitmix64(self.key.rotate_left(17) ^ splitmix64(label)),
        }
    }

    /// Generator for block `block` of this stream.
    pub fn block_rng(&self, block: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.key);
        rng.set_stream(block);
        rng
    }

    pub fn rng(&self) -> ChaCha8Rng {
        self.block_rng(0)
    }
}

impl Default for SeedStream {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}

/// Splits `samples` into `(block index, block length)` pairs.
pub fn blocks(samples: usize) -> impl Iterator<Item = (u64, usize)> {
    let full = samples / BLOCK_SIZE;
    let rest = samples % BLOCK_SIZE;
    (0..full)
        .map(|b| (b as u64, BLOCK_SIZE))
        .chain((rest > 0).then_some((full as u64, rest)))
}
