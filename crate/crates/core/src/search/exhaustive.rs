//! Complete enumeration of propus families for small `v`.

use std::collections::HashMap;

use itertools::Itertools;

use super::random::symmetric_weight_feasible;
use crate::error::{Error, Result};
use crate::family::{DifferenceFamily, SymmetricSlot};
use crate::params::PropusParameterSet;
use crate::sequence::{BinarySequence, Block};

/// Largest `v` searched without `allow_large`.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 13;

#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveOptions {
    /// Outer block required to be symmetric (`A` or `D`).
    pub slot: SymmetricSlot,
    /// Lift the `v ≤ 13` cap.
    pub allow_large: bool,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            slot: SymmetricSlot::A,
            allow_large: false,
        }
    }
}

fn mask_sequence(v: usize, mask: u64) -> BinarySequence {
    BinarySequence::from_raw((0..v).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
}

fn mask_block(v: usize, mask: u64) -> Block {
    Block::new(v, (0..v).filter(|&i| mask >> i & 1 == 1).collect()).expect("residues in range")
}

fn half_paf(seq: &BinarySequence) -> Vec<i16> {
    seq.paf_half().into_iter().map(|x| x as i16).collect()
}

fn subsets(v: usize, k: usize) -> impl Iterator<Item = u64> {
    (0..v).combinations(k).map(|c| c.into_iter().fold(0u64, |m, i| m | 1 << i))
}

/// Symmetric subsets of `Z_v` (odd `v`) with `k` elements.
fn symmetric_subsets(v: usize, k: usize) -> Vec<u64> {
    let centre = (k % 2) as u64;
    (1..=(v - 1) / 2)
        .combinations(k / 2)
        .map(|pairs| pairs.into_iter().fold(centre, |m, i| m | 1 << i | 1 << (v - i)))
        .collect()
}

/// Every propus family `(A, B, B, D)` whose `slot` block is symmetric.
///
/// Right keys `-paf_E` are tabulated once; each `(S, B)` pair is then looked
/// up by `paf_S + 2·paf_B`. Families come back sorted.
pub fn exhaustive_propus_search(
    params: &PropusParameterSet,
    options: &ExhaustiveOptions,
) -> Result<Vec<DifferenceFamily>> {
    let v = params.v();
    if v > DEFAULT_EXHAUSTIVE_CAP && !options.allow_large {
        return Err(Error::Refused(format!(
            "exhaustive search at v = {v} exceeds the cap of {DEFAULT_EXHAUSTIVE_CAP}; \
             pass allow_large to run it anyway (cost grows like C(v, v/2)²)"
        )));
    }
    if v > 64 {
        return Err(Error::invalid("exhaustive search supports v ≤ 64"));
    }
    let (sym_size, other_size) = match options.slot {
        SymmetricSlot::A => (params.x(), params.z()),
        SymmetricSlot::D => (params.z(), params.x()),
        SymmetricSlot::AD => return Err(Error::invalid("slot must be A or D")),
    };
    symmetric_weight_feasible(v, sym_size)?;

    let mut right: HashMap<Vec<i16>, Vec<u64>> = HashMap::new();
    for e in subsets(v, other_size) {
        let key = half_paf(&mask_sequence(v, e)).into_iter().map(|x| -x).collect();
        right.entry(key).or_default().push(e);
    }
    let syms: Vec<(u64, Vec<i16>)> = symmetric_subsets(v, sym_size)
        .into_iter()
        .map(|s| (s, half_paf(&mask_sequence(v, s))))
        .collect();

    let mut out = Vec::new();
    let mut key = vec![0i16; v / 2];
    for b in subsets(v, params.y()) {
        let pb = half_paf(&mask_sequence(v, b));
        for (s, ps) in &syms {
            for (k, (x, y)) in key.iter_mut().zip(ps.iter().zip(&pb)) {
                *k = x + 2 * y;
            }
            let Some(partners) = right.get(&key) else {
                continue;
            };
            for &e in partners {
                let (sb, bb, eb) = (mask_block(v, *s), mask_block(v, b), mask_block(v, e));
                let blocks = match options.slot {
                    SymmetricSlot::D => [eb, bb.clone(), bb, sb],
                    _ => [sb, bb.clone(), bb, eb],
                };
                out.push(DifferenceFamily::new(*params, blocks)?);
            }
        }
    }
    out.sort_by(|f, g| f.blocks().cmp(g.blocks()));
    out.dedup();
    Ok(out)
}
