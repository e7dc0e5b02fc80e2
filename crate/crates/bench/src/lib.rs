//! Shared inputs for the criterion benches.

use polyweb_core::{random_matching, PerfectMatching};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FIXTURE_SEED: u64 = 7;

/// `count` uniformly random perfect matchings on `[2n]`, the same on every run.
pub fn random_matchings(n: usize, count: usize) -> Vec<PerfectMatching> {
    let mut rng = ChaCha8Rng::seed_from_u64(FIXTURE_SEED);
    (0..count).map(|_| random_matching(n, &mut rng).expect("n within range")).collect()
}

/// The matching `{1~n+1, 2~n+2, ...}`, where every pair crosses every other.
pub fn fully_crossing(n: usize) -> PerfectMatching {
    let pairs: Vec<_> = (1..=n).map(|i| (i, i + n)).collect();
    PerfectMatching::from_pairs(2 * n, &pairs).expect("valid pairs")
}
