//! Randomized meet-in-the-middle search for complementary sequences.
//!
//! Candidates are generated at random, keyed by their autocorrelation values
//! at shifts `1..=v/2`, and matched against candidates from the other half of
//! the problem. Three matching strategies are available for periodic Golay
//! pairs (one-against-many, two tables, and the hashed crown); the propus
//! family search always uses the crown.

mod crown;
mod exhaustive;
mod golay;
mod hash;
mod propus;
mod random;

use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{DifferenceFamily, SymmetricSlot};

pub use crown::{Crown, InsertReport, Leaf, Side};
pub use exhaustive::{exhaustive_propus_search, ExhaustiveOptions, DEFAULT_EXHAUSTIVE_CAP};
pub use golay::{golay_round, golay_search, CandidateSource, GolayOutcome, GolayPair, RandomSource, Tape};
pub use hash::{hash_label, SignMode};
pub use propus::{propus_search, PropusOutcome};
pub use random::{
    random_fixed_weight_sequence, random_symmetric_sequence, symmetric_weight_feasible, worker_rng,
    SearchRng,
};

/// Matching strategy for the Golay pair search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Variant {
    /// One `a` against a fresh batch of `w` sequences `b`.
    Brute,
    /// `w` sequences `a` against `w` sequences `b`.
    TwoTable,
    /// Leaves distributed over the crown; only equal labels are compared.
    #[default]
    HashTree,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Variant::Brute),
            "two-table" => Ok(Variant::TwoTable),
            "hash-tree" => Ok(Variant::HashTree),
            other => Err(Error::invalid(format!("unknown variant {other:?}"))),
        }
    }
}

/// How the three distinct propus blocks are split between the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Split {
    /// Left leaves carry the symmetric block and `B`; right leaves the other
    /// outer block.
    #[default]
    SymmetricWithMiddle,
    /// Left leaves carry the symmetric block alone; right leaves `B` and the
    /// other outer block.
    SymmetricAlone,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    /// `m`; the crown has `2^m` branches.
    pub crown_exponent: u32,
    /// `w`; leaves per branch side.
    pub branch_capacity: usize,
    /// Candidates per worker between budget checks. Also the table size `w`
    /// of the Golay brute and two-table variants.
    pub batch_size: usize,
    pub max_candidates: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Stop after this many distinct solutions.
    pub max_solutions: Option<usize>,
    pub workers: usize,
    pub sign_mode: SignMode,
    /// Which outer block is generated symmetric. `AD` is not accepted.
    pub symmetric_slot: SymmetricSlot,
    pub split: Split,
    pub variant: Variant,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            crown_exponent: 12,
            branch_capacity: 64,
            batch_size: 1024,
            max_candidates: None,
            time_budget: None,
            max_solutions: Some(1),
            workers: 1,
            sign_mode: SignMode::default(),
            symmetric_slot: SymmetricSlot::A,
            split: Split::default(),
            variant: Variant::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=31).contains(&self.crown_exponent) {
            return Err(Error::invalid("crown exponent must be in 1..=31"));
        }
        if self.branch_capacity == 0 {
            return Err(Error::invalid("branch capacity must be at least 1"));
        }
        if self.batch_size == 0 {
            return Err(Error::invalid("batch size must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::invalid("at least one worker is required"));
        }
        if self.symmetric_slot == SymmetricSlot::AD {
            return Err(Error::invalid("symmetric slot must be A or D"));
        }
        if self.max_candidates.is_none() && self.time_budget.is_none() && self.max_solutions.is_none() {
            return Err(Error::invalid(
                "set at least one of max_candidates, time_budget, max_solutions",
            ));
        }
        Ok(())
    }
}

/// Counters shared by all search variants.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Sequences generated, each with its autocorrelation computed.
    pub sequences: u64,
    /// Leaves (candidate records) produced.
    pub candidates: u64,
    /// Exact key comparisons.
    pub comparisons: u64,
    /// Comparisons whose keys were equal.
    pub collisions: u64,
    /// Collisions checked and confirmed as solutions.
    pub verified: u64,
    /// Collisions that failed a check; always zero unless there is a bug.
    pub rejected: u64,
    /// Verified solutions already seen.
    pub duplicates: u64,
    /// Leaves overwritten in full branches.
    pub evictions: u64,
    pub elapsed_ms: u64,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.sequences += other.sequences;
        self.candidates += other.candidates;
        self.comparisons += other.comparisons;
        self.collisions += other.collisions;
        self.verified += other.verified;
        self.rejected += other.rejected;
        self.duplicates += other.duplicates;
        self.evictions += other.evictions;
    }
}

/// Progress notifications; the CLI writes them to stderr as JSON lines.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum SearchEvent {
    Progress {
        stats: SearchStats,
    },
    Found {
        family: String,
    },
    Finished {
        stats: SearchStats,
        /// `hist[n]` = branches holding `n` leaves.
        occupancy: Vec<u64>,
    },
}

/// Callback receiving search events; may be called from several workers.
pub type EventSink<'a> = &'a (dyn Fn(&SearchEvent) + Sync);

pub(crate) fn ignore_events(_: &SearchEvent) {}

/// Canonical text of a family, used for duplicate suppression.
pub(crate) fn canonical_key(family: &DifferenceFamily) -> String {
    family.to_string()
}
