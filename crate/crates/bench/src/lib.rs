//! Seeded inputs shared by the benchmarks.

use lcislab_core::IntSeq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` random sequences of length `n` over `0..alphabet`.
pub fn random_seqs(count: usize, n: usize, alphabet: i64, seed: u64) -> Vec<IntSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(0..alphabet)).collect())
        .collect()
}
