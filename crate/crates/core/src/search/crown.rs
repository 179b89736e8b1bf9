//! The crown: `2^m` labelled branches, each holding up to `w` leaves per side.
//!
//! A new leaf is compared only against the opposite-side leaves of its own
//! branch and is then stored. Equal keys always receive equal labels, so no
//! match is ever lost across branches. A full side overwrites its oldest leaf.

use std::collections::HashMap;
use std::sync::Mutex;

use super::hash::{hash_label, SignMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A candidate record: the matching key and whatever produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf<P> {
    pub key: Vec<i64>,
    pub payload: P,
}

#[derive(Debug)]
struct Ring<P> {
    leaves: Vec<Leaf<P>>,
    next: usize,
}

impl<P> Ring<P> {
    fn new() -> Self {
        Ring {
            leaves: Vec::new(),
            next: 0,
        }
    }

    /// Returns true when an old leaf was overwritten.
    fn push(&mut self, leaf: Leaf<P>, capacity: usize) -> bool {
        if self.leaves.len() < capacity {
            self.leaves.push(leaf);
            false
        } else {
            self.leaves[self.next] = leaf;
            self.next = (self.next + 1) % capacity;
            true
        }
    }
}

#[derive(Debug)]
struct Branch<P> {
    left: Ring<P>,
    right: Ring<P>,
}

/// What one insert did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InsertReport {
    pub label: u32,
    pub comparisons: u64,
    pub evicted: bool,
}

const MAX_SHARDS: usize = 256;

/// Branches are created on first use and grouped into lock shards, so large
/// crowns cost memory only for occupied branches.
#[derive(Debug)]
pub struct Crown<P> {
    exponent: u32,
    capacity: usize,
    mode: SignMode,
    shards: Vec<Mutex<HashMap<u32, Branch<P>>>>,
}

impl<P: Clone> Crown<P> {
    pub fn new(exponent: u32, capacity: usize, mode: SignMode) -> Self {
        assert!((1..=31).contains(&exponent));
        assert!(capacity >= 1);
        let shards = (1usize << exponent).min(MAX_SHARDS);
        Crown {
            exponent,
            capacity,
            mode,
            shards: (0..shards).map(|_| Mutex::new(HashMap::new())).collect(),
        }
    }

    pub fn label(&self, key: &[i64]) -> u32 {
        hash_label(key, self.exponent, self.mode)
    }

    /// Probes the opposite side of the leaf's branch, calling `on_match` for
    /// each stored leaf with an identical key, then stores the leaf.
    pub fn insert(
        &self,
        side: Side,
        leaf: Leaf<P>,
        mut on_match: impl FnMut(&Leaf<P>),
    ) -> InsertReport {
        let label = self.label(&leaf.key);
        let shard = &self.shards[label as usize % self.shards.len()];
        let mut guard = shard.lock().unwrap_or_else(|e| e.into_inner());
        let branch = guard.entry(label).or_insert_with(|| Branch {
            left: Ring::new(),
            right: Ring::new(),
        });
        let (own, other) = match side {
            Side::Left => (&mut branch.left, &branch.right),
            Side::Right => (&mut branch.right, &branch.left),
        };
        let mut comparisons = 0;
        for stored in &other.leaves {
            comparisons += 1;
            if stored.key == leaf.key {
                on_match(stored);
            }
        }
        let evicted = own.push(leaf, self.capacity);
        InsertReport {
            label,
            comparisons,
            evicted,
        }
    }

    /// `hist[n]` = number of branches holding `n` leaves in total (both sides),
    /// for `n = 0..=2w`.
    pub fn occupancy_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; 2 * self.capacity + 1];
        let mut occupied = 0u64;
        for shard in &self.shards {
            let guard = shard.lock().unwrap_or_else(|e| e.into_inner());
            for branch in guard.values() {
                hist[branch.left.leaves.len() + branch.right.leaves.len()] += 1;
                occupied += 1;
            }
        }
        hist[0] += (1u64 << self.exponent) - occupied;
        hist
    }

    pub fn leaf_count(&self) -> usize {
        self.shards
            .iter()
            .map(|s| {
                let g = s.lock().unwrap_or_else(|e| e.into_inner());
                g.values()
                    .map(|b| b.left.leaves.len() + b.right.leaves.len())
                    .sum::<usize>()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(key: &[i64], tag: u32) -> Leaf<u32> {
        Leaf {
            key: key.to_vec(),
            payload: tag,
        }
    }

    #[test]
    fn matches_only_opposite_side() {
        let crown = Crown::new(4, 8, SignMode::Ternary);
        let mut found = Vec::new();
        crown.insert(Side::Left, leaf(&[1, -1], 1), |l| found.push(l.payload));
        crown.insert(Side::Left, leaf(&[1, -1], 2), |l| found.push(l.payload));
        assert!(found.is_empty());
        let r = crown.insert(Side::Right, leaf(&[1, -1], 3), |l| found.push(l.payload));
        assert_eq!(found, vec![1, 2]);
        assert_eq!(r.comparisons, 2);
        let r = crown.insert(Side::Right, leaf(&[-1, 1], 4), |l| found.push(l.payload));
        assert_eq!(r.comparisons, 0);
        assert_eq!(crown.leaf_count(), 4);
    }

    #[test]
    fn ring_overwrites_oldest() {
        let crown = Crown::new(1, 2, SignMode::Binary);
        for tag in 0..3 {
            let r = crown.insert(Side::Left, leaf(&[0], tag), |_| {});
            assert_eq!(r.evicted, tag == 2);
        }
        let mut found = Vec::new();
        crown.insert(Side::Right, leaf(&[0], 9), |l| found.push(l.payload));
        found.sort();
        assert_eq!(found, vec![1, 2]);
        let hist = crown.occupancy_histogram();
        assert_eq!(hist[3], 1);
        assert_eq!(hist[0], 1);
    }
}
