//! Periodic Golay pairs: `paf_a(s) + paf_b(s) = 0` for every `s ≠ 0`.

use std::collections::HashSet;
use std::time::Instant;

use super::crown::{Crown, Leaf, Side};
use super::random::{random_fixed_weight_sequence, worker_rng, SearchRng};
use super::{SearchConfig, SearchStats, Variant};
use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GolayPair {
    pub a: BinarySequence,
    pub b: BinarySequence,
}

impl GolayPair {
    /// Full check over all nonzero shifts.
    pub fn is_complementary(&self) -> bool {
        let v = self.a.len();
        v == self.b.len() && (1..v).all(|s| self.a.paf_at(s) + self.b.paf_at(s) == 0)
    }
}

/// Supplies the `a` and `b` candidates of a search.
pub trait CandidateSource {
    fn next_a(&mut self) -> BinarySequence;
    fn next_b(&mut self) -> BinarySequence;
}

/// Random fixed-weight candidates.
pub struct RandomSource {
    v: usize,
    k1: usize,
    k2: usize,
    rng: SearchRng,
}

impl RandomSource {
    pub fn new(v: usize, k1: usize, k2: usize, seed: u64) -> Result<Self> {
        if k1 > v || k2 > v {
            return Err(Error::invalid(format!("weights ({k1}, {k2}) out of range for v = {v}")));
        }
        Ok(RandomSource {
            v,
            k1,
            k2,
            rng: worker_rng(seed, 0),
        })
    }
}

impl CandidateSource for RandomSource {
    fn next_a(&mut self) -> BinarySequence {
        random_fixed_weight_sequence(self.v, self.k1, &mut self.rng).expect("weight checked")
    }
    fn next_b(&mut self) -> BinarySequence {
        random_fixed_weight_sequence(self.v, self.k2, &mut self.rng).expect("weight checked")
    }
}

/// A recorded candidate stream. Each list is replayed cyclically, so a
/// strategy that regenerates `b` sequences sees the same ones again.
#[derive(Debug, Clone)]
pub struct Tape {
    a: Vec<BinarySequence>,
    b: Vec<BinarySequence>,
    ia: usize,
    ib: usize,
}

impl Tape {
    pub fn new(a: Vec<BinarySequence>, b: Vec<BinarySequence>) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::invalid("tape lists must be nonempty"));
        }
        Ok(Tape { a, b, ia: 0, ib: 0 })
    }

    /// Records `w` draws of each kind from another source.
    pub fn record(source: &mut dyn CandidateSource, w: usize) -> Result<Self> {
        let a = (0..w).map(|_| source.next_a()).collect();
        let b = (0..w).map(|_| source.next_b()).collect();
        Self::new(a, b)
    }
}

impl CandidateSource for Tape {
    fn next_a(&mut self) -> BinarySequence {
        let s = self.a[self.ia].clone();
        self.ia = (self.ia + 1) % self.a.len();
        s
    }
    fn next_b(&mut self) -> BinarySequence {
        let s = self.b[self.ib].clone();
        self.ib = (self.ib + 1) % self.b.len();
        s
    }
}

fn negated(key: Vec<i64>) -> Vec<i64> {
    key.into_iter().map(|x| -x).collect()
}

fn check_pair(a: &BinarySequence, b: &BinarySequence, stats: &mut SearchStats, out: &mut Vec<GolayPair>) {
    stats.collisions += 1;
    let pair = GolayPair {
        a: a.clone(),
        b: b.clone(),
    };
    if pair.is_complementary() {
        stats.verified += 1;
        out.push(pair);
    } else {
        stats.rejected += 1;
    }
}

/// One basic step of the chosen strategy with table size `w`.
///
/// * `Brute`: `w` times, one `a` against `w` fresh `b`: `w(w+1)` sequences.
/// * `TwoTable`: `w` of each, all `w²` pairs compared: `2w` sequences.
/// * `HashTree`: `w` of each inserted into `crown`; only leaves sharing a
///   label are compared.
///
/// `crown` is required for `HashTree` and ignored otherwise.
pub fn golay_round(
    source: &mut dyn CandidateSource,
    w: usize,
    variant: Variant,
    crown: Option<&Crown<BinarySequence>>,
    stats: &mut SearchStats,
) -> Result<Vec<GolayPair>> {
    let mut found = Vec::new();
    match variant {
        Variant::Brute => {
            for _ in 0..w {
                let a = source.next_a();
                let ka = a.paf_half();
                stats.sequences += 1;
                stats.candidates += 1;
                for _ in 0..w {
                    let b = source.next_b();
                    let kb = negated(b.paf_half());
                    stats.sequences += 1;
                    stats.candidates += 1;
                    stats.comparisons += 1;
                    if ka == kb {
                        check_pair(&a, &b, stats, &mut found);
                    }
                }
            }
        }
        Variant::TwoTable => {
            let table_a: Vec<_> = (0..w)
                .map(|_| {
                    let a = source.next_a();
                    let k = a.paf_half();
                    (a, k)
                })
                .collect();
            let table_b: Vec<_> = (0..w)
                .map(|_| {
                    let b = source.next_b();
                    let k = negated(b.paf_half());
                    (b, k)
                })
                .collect();
            stats.sequences += 2 * w as u64;
            stats.candidates += 2 * w as u64;
            for (a, ka) in &table_a {
                for (b, kb) in &table_b {
                    stats.comparisons += 1;
                    if ka == kb {
                        check_pair(a, b, stats, &mut found);
                    }
                }
            }
        }
        Variant::HashTree => {
            let crown = crown.ok_or_else(|| Error::invalid("hash-tree round needs a crown"))?;
            let mut hits: Vec<(BinarySequence, BinarySequence)> = Vec::new();
            for side in [Side::Left, Side::Right] {
                for _ in 0..w {
                    let (seq, key) = match side {
                        Side::Left => {
                            let a = source.next_a();
                            let k = a.paf_half();
                            (a, k)
                        }
                        Side::Right => {
                            let b = source.next_b();
                            let k = negated(b.paf_half());
                            (b, k)
                        }
                    };
                    stats.sequences += 1;
                    stats.candidates += 1;
                    let leaf = Leaf {
                        key,
                        payload: seq.clone(),
                    };
                    let report = crown.insert(side, leaf, |other| {
                        let pair = match side {
                            Side::Left => (seq.clone(), other.payload.clone()),
                            Side::Right => (other.payload.clone(), seq.clone()),
                        };
                        hits.push(pair);
                    });
                    stats.comparisons += report.comparisons;
                    stats.evictions += u64::from(report.evicted);
                }
            }
            for (a, b) in hits {
                check_pair(&a, &b, stats, &mut found);
            }
        }
    }
    Ok(found)
}

#[derive(Debug, Clone)]
pub struct GolayOutcome {
    /// Distinct pairs, in discovery order.
    pub pairs: Vec<GolayPair>,
    pub stats: SearchStats,
}

/// Randomized search for periodic Golay pairs with `k1` and `k2` minus signs.
///
/// Runs rounds of `config.batch_size` until a budget is exhausted or
/// `config.max_solutions` distinct pairs are found. The hash-tree crown
/// persists across rounds. Single-threaded; `config.workers` is ignored.
pub fn golay_search(v: usize, k1: usize, k2: usize, config: &SearchConfig) -> Result<GolayOutcome> {
    if v < 2 || v % 2 == 1 {
        return Err(Error::invalid(format!(
            "periodic Golay pairs exist only for even v, got {v}"
        )));
    }
    config.validate()?;
    let mut source = RandomSource::new(v, k1, k2, config.seed)?;
    let mut stats = SearchStats::default();
    let mut pairs = Vec::new();

    // Summing the autocorrelations over all shifts gives this necessary condition.
    let excess = |k: usize| (v as i64 - 2 * k as i64).pow(2);
    if excess(k1) + excess(k2) != 2 * v as i64 {
        return Ok(GolayOutcome { pairs, stats });
    }

    let crown = (config.variant == Variant::HashTree)
        .then(|| Crown::new(config.crown_exponent, config.branch_capacity, config.sign_mode));
    let mut seen = HashSet::new();
    let start = Instant::now();
    loop {
        let round = golay_round(
            &mut source,
            config.batch_size,
            config.variant,
            crown.as_ref(),
            &mut stats,
        )?;
        for pair in round {
            if seen.insert(pair.clone()) {
                pairs.push(pair);
            } else {
                stats.duplicates += 1;
            }
            if config.max_solutions.is_some_and(|n| pairs.len() >= n) {
                break;
            }
        }
        let done = config.max_solutions.is_some_and(|n| pairs.len() >= n)
            || config.max_candidates.is_some_and(|n| stats.sequences >= n)
            || config.time_budget.is_some_and(|t| start.elapsed() >= t);
        if done {
            break;
        }
    }
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(GolayOutcome { pairs, stats })
}
