//! Seeded random streams. One user seed drives many independent streams,
//! each selected by a purpose label, so adding a new consumer never shifts
//! the numbers drawn by an existing one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64, purpose: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(purpose));
    rng
}

/// FNV-1a over the label.
fn stream_id(purpose: &str) -> u64 {
    purpose.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}
