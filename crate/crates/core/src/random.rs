//! Exact random primitives: unbounded uniform integers, uniform subsets and
//! per-task seed derivation.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

/// Uniform draw from `[0, bound)`.
///
/// Rejection sampling over random bit strings of the bound's bit length, so
/// every value is exactly equally likely. Panics if `bound` is zero.
pub fn uniform_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(bound.bits() > 0, "uniform_below needs a positive bound");
    if let Some(small) = bound.to_u64() {
        return BigUint::from(rng.random_range(0..small));
    }
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_bits = (bits % 32) as u32;
    let mut digits = vec![0u32; words];
    loop {
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        if top_bits != 0 {
            digits[words - 1] &= (1u32 << top_bits) - 1;
        }
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Returns `true` with probability `numerator / denominator` (capped at 1).
pub fn bernoulli_ratio<R: Rng + ?Sized>(
    numerator: &BigUint,
    denominator: &BigUint,
    rng: &mut R,
) -> bool {
    if numerator >= denominator {
        return true;
    }
    &uniform_below(denominator, rng) < numerator
}

/// Machine-word version of [`bernoulli_ratio`].
pub fn bernoulli_ratio_u128<R: Rng + ?Sized>(numerator: u128, denominator: u128, rng: &mut R) -> bool {
    if numerator >= denominator {
        return true;
    }
    rng.random_range(0..denominator) < numerator
}

/// Chooses `k` of `slots` positions uniformly at random; `mask[i]` is set for
/// the chosen ones.
///
/// Partial Fisher-Yates over the slot indices.
pub fn random_combination<R: Rng + ?Sized>(slots: usize, k: usize, rng: &mut R) -> Vec<bool> {
    assert!(k <= slots, "cannot choose {k} of {slots} slots");
    let mut indices: Vec<usize> = (0..slots).collect();
    let mut mask = vec![false; slots];
    for i in 0..k {
        let j = rng.random_range(i..slots);
        indices.swap(i, j);
        mask[indices[i]] = true;
    }
    mask
}

/// Seed for task `index` of a run with seed `base`: SplitMix64 applied to
/// `base + (index + 1) * golden_gamma`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
