use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

/// The generator used by every search. Seeded runs are reproducible across
/// platforms.
pub type SearchRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream for one worker: `seed ⊕ splitmix64(worker)`.
pub fn worker_rng(seed: u64, worker: usize) -> SearchRng {
    SearchRng::seed_from_u64(seed ^ splitmix64(worker as u64))
}

/// Uniform sequence of length `v` with exactly `k` entries equal to `-1`.
pub fn random_fixed_weight_sequence<R: Rng + ?Sized>(
    v: usize,
    k: usize,
    rng: &mut R,
) -> Result<BinarySequence> {
    if v == 0 || k > v {
        return Err(Error::invalid(format!("weight {k} out of range for v = {v}")));
    }
    let mut positions: Vec<usize> = (0..v).collect();
    let (chosen, _) = positions.partial_shuffle(rng, k);
    let mut entries = vec![1i8; v];
    for &p in chosen.iter() {
        entries[p] = -1;
    }
    Ok(BinarySequence::from_raw(entries))
}

/// Checks that a symmetric sequence of odd length `v` can have `k` minus
/// signs: `a_0` contributes `k mod 2` and the mirror pairs `{i, v-i}` the
/// rest, so `k ≤ v` is the only constraint.
pub fn symmetric_weight_feasible(v: usize, k: usize) -> Result<()> {
    if v.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "symmetric blocks are only generated for odd v, got v = {v}"
        )));
    }
    let pairs = k / 2;
    if pairs > (v - 1) / 2 {
        return Err(Error::invalid(format!(
            "no symmetric sequence of length {v} has {k} minus signs"
        )));
    }
    Ok(())
}

/// Uniform symmetric sequence (`a_i = a_{v-i}`) of odd length `v` with
/// exactly `k` entries equal to `-1`.
pub fn random_symmetric_sequence<R: Rng + ?Sized>(
    v: usize,
    k: usize,
    rng: &mut R,
) -> Result<BinarySequence> {
    symmetric_weight_feasible(v, k)?;
    let mut entries = vec![1i8; v];
    if k % 2 == 1 {
        entries[0] = -1;
    }
    let mut orbits: Vec<usize> = (1..=(v - 1) / 2).collect();
    let (chosen, _) = orbits.partial_shuffle(rng, k / 2);
    for &i in chosen.iter() {
        entries[i] = -1;
        entries[v - i] = -1;
    }
    Ok(BinarySequence::from_raw(entries))
}
