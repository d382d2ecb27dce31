//! Position-addressable random bits for partition sampling.
//!
//! Bitstream contract: bit number `p` (0-based) of the stream for seed `s` is the most
//! significant bit of the `(p + 1)`-th output of SplitMix64 seeded with `s`, i.e. of
//! `mix(s + (p + 1)·0x9E3779B97F4A7C15)` with the standard SplitMix64 finalizer. Round `r` of
//! the sampling solver over `m` functions reads bits `r·m .. r·m + m`, bit `r·m + i` deciding
//! whether function `i` joins the first group. Any bit can be computed without the ones
//! before it, so rounds can be drawn independently.

use super::partition::Partition;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The `index`-th output (1-based) of SplitMix64 seeded with `seed`.
pub fn splitmix64(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitStream {
    seed: u64,
    position: u64,
}

impl BitStream {
    pub fn new(seed: u64) -> Self {
        BitStream { seed, position: 0 }
    }

    pub fn at(seed: u64, position: u64) -> Self {
        BitStream { seed, position }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn next_bit(&mut self) -> bool {
        let bit = splitmix64(self.seed, self.position.wrapping_add(1)) >> 63 == 1;
        self.position = self.position.wrapping_add(1);
        bit
    }
}

/// Samples `(A, B)`: each function joins `A` independently with probability 1/2.
/// Consumes `m` bits of the stream.
pub fn random_partition(m: usize, stream: &mut BitStream) -> Partition {
    let labels: Vec<usize> = (0..m).map(|_| usize::from(!stream.next_bit())).collect();
    Partition::from_labels(&labels, 2)
}

/// The partition drawn in round `round` of a run with the given seed.
pub fn round_partition(seed: u64, round: u64, m: usize) -> Partition {
    random_partition(m, &mut BitStream::at(seed, round.wrapping_mul(m as u64)))
}
