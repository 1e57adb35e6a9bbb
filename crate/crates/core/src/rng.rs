use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when `WORKBENCH_SEED` is unset or unparsable.
pub const DEFAULT_SEED: u64 = 0x5eed_cb9f;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The seed from `WORKBENCH_SEED`, falling back to [`DEFAULT_SEED`].
pub fn env_seed() -> u64 {
    std::env::var("WORKBENCH_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}
