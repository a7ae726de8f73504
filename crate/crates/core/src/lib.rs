//! Shift scheduling for part-time workforces: two Mamdani fuzzy inference
//! systems rank workers slot by slot, and a genetic algorithm learns the
//! rule tables and output membership functions from preference deviations.

pub mod eval;
pub mod fuzzy;
pub mod ga;
pub mod io;
pub mod schedule;

// Structural constants hold by construction; pinned here once.
const _: () = assert!(schedule::SLOT_COUNT == 51);
const _: () = assert!(schedule::SLOT_COUNT * schedule::DEFAULT_COVERAGE == 204);
const _: () = assert!(ga::CHROMOSOME_LEN == 34);
const _: () = assert!(ga::FIS1_RULE_COUNT == 16);
const _: () = assert!(ga::FIS2_RULE_COUNT == 9);

/// Concrete scalar aliases for the generic fuzzy types.
pub type TriangularMf32 = fuzzy::TriangularMf<f32>;
pub type TriangularMf64 = fuzzy::TriangularMf<f64>;
pub type InputPartition32 = fuzzy::InputPartition<f32>;
pub type InputPartition64 = fuzzy::InputPartition<f64>;
pub type OutputPartition64 = fuzzy::OutputPartition<f64>;
pub type Fis32 = fuzzy::Fis<f32>;
pub type Fis64 = fuzzy::Fis<f64>;
pub type FisPair64 = fuzzy::FisPair<f64>;

/// Mixes a base seed with stream coordinates into a fresh rng seed.
/// splitmix64 applied to each component in turn.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    fn splitmix64(mut x: u64) -> u64 {
        x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let mut state = splitmix64(base);
    for &p in parts {
        state = splitmix64(state ^ splitmix64(p));
    }
    state
}

#[cfg(test)]
mod tests {
    use super::derive_seed;

    #[test]
    fn derive_seed_separates_streams() {
        assert_eq!(derive_seed(1, &[2, 3]), derive_seed(1, &[2, 3]));
        assert_ne!(derive_seed(1, &[2, 3]), derive_seed(1, &[3, 2]));
        assert_ne!(derive_seed(1, &[2, 3]), derive_seed(2, &[2, 3]));
        assert_ne!(derive_seed(1, &[0]), derive_seed(1, &[]));
    }
}
