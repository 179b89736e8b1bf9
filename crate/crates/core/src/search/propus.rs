//! Randomized search for propus families `(A, B, B, D)` with `A` or `D`
//! symmetric.
//!
//! With `S` the symmetric outer block, `E` the other one and `B = C`, the
//! condition is `paf_S + 2·paf_B + paf_E = 0` at every nonzero shift. The
//! three distinct blocks are split into a left half and a right half whose
//! keys must be equal: by default `(S, B)` keyed by `paf_S + 2·paf_B`
//! against `E` keyed by `-paf_E`.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::Rng;

use super::crown::{Crown, Leaf, Side};
use super::random::{random_fixed_weight_sequence, random_symmetric_sequence, symmetric_weight_feasible, worker_rng};
use super::{canonical_key, ignore_events, EventSink, SearchConfig, SearchEvent, SearchStats, Split};
use crate::arrays::build_symmetric_hadamard;
use crate::error::{Error, Result};
use crate::family::{DifferenceFamily, SymmetricSlot};
use crate::params::PropusParameterSet;
use crate::sequence::{sequence_to_block, BinarySequence};

/// One side's share of the three distinct blocks.
#[derive(Debug, Clone)]
struct Half {
    sym: Option<BinarySequence>,
    mid: Option<BinarySequence>,
    other: Option<BinarySequence>,
}

impl Half {
    fn sequence_count(&self) -> u64 {
        [&self.sym, &self.mid, &self.other]
            .iter()
            .filter(|s| s.is_some())
            .count() as u64
    }

    fn join(&self, rhs: &Half) -> Option<(BinarySequence, BinarySequence, BinarySequence)> {
        let pick = |a: &Option<BinarySequence>, b: &Option<BinarySequence>| a.clone().or_else(|| b.clone());
        Some((
            pick(&self.sym, &rhs.sym)?,
            pick(&self.mid, &rhs.mid)?,
            pick(&self.other, &rhs.other)?,
        ))
    }
}

fn weighted_sum(parts: &[(i64, &BinarySequence)]) -> Vec<i64> {
    let h = parts[0].1.len() / 2;
    let mut key = vec![0i64; h];
    for (w, seq) in parts {
        for (s, k) in key.iter_mut().enumerate() {
            *k += w * seq.paf_at(s + 1);
        }
    }
    key
}

struct Shape {
    params: PropusParameterSet,
    slot: SymmetricSlot,
    split: Split,
    sym_size: usize,
    other_size: usize,
}

impl Shape {
    fn new(params: &PropusParameterSet, config: &SearchConfig) -> Result<Self> {
        let (sym_size, other_size) = match config.symmetric_slot {
            SymmetricSlot::A => (params.x(), params.z()),
            SymmetricSlot::D => (params.z(), params.x()),
            SymmetricSlot::AD => return Err(Error::invalid("symmetric slot must be A or D")),
        };
        symmetric_weight_feasible(params.v(), sym_size)?;
        Ok(Shape {
            params: *params,
            slot: config.symmetric_slot,
            split: config.split,
            sym_size,
            other_size,
        })
    }

    fn generate<R: Rng>(&self, side: Side, rng: &mut R) -> Leaf<Half> {
        let v = self.params.v();
        let y = self.params.y();
        match (self.split, side) {
            (Split::SymmetricWithMiddle, Side::Left) => {
                let s = random_symmetric_sequence(v, self.sym_size, rng).expect("weight checked");
                let b = random_fixed_weight_sequence(v, y, rng).expect("weight checked");
                Leaf {
                    key: weighted_sum(&[(1, &s), (2, &b)]),
                    payload: Half { sym: Some(s), mid: Some(b), other: None },
                }
            }
            (Split::SymmetricWithMiddle, Side::Right) => {
                let e = random_fixed_weight_sequence(v, self.other_size, rng).expect("weight checked");
                Leaf {
                    key: weighted_sum(&[(-1, &e)]),
                    payload: Half { sym: None, mid: None, other: Some(e) },
                }
            }
            (Split::SymmetricAlone, Side::Left) => {
                let s = random_symmetric_sequence(v, self.sym_size, rng).expect("weight checked");
                Leaf {
                    key: weighted_sum(&[(1, &s)]),
                    payload: Half { sym: Some(s), mid: None, other: None },
                }
            }
            (Split::SymmetricAlone, Side::Right) => {
                let b = random_fixed_weight_sequence(v, y, rng).expect("weight checked");
                let e = random_fixed_weight_sequence(v, self.other_size, rng).expect("weight checked");
                Leaf {
                    key: weighted_sum(&[(-2, &b), (-1, &e)]),
                    payload: Half { sym: None, mid: Some(b), other: Some(e) },
                }
            }
        }
    }

    /// Arranges the blocks as `(A, B, B, D)` and checks the difference
    /// counts.
    fn arrange(&self, sym: &BinarySequence, mid: &BinarySequence, other: &BinarySequence) -> Result<DifferenceFamily> {
        let (s, b, e) = (sequence_to_block(sym), sequence_to_block(mid), sequence_to_block(other));
        let blocks = match self.slot {
            SymmetricSlot::D => [e, b.clone(), b, s],
            _ => [s, b.clone(), b, e],
        };
        DifferenceFamily::new(self.params, blocks)
    }
}

#[derive(Debug, Clone)]
pub struct PropusOutcome {
    /// Distinct verified families in discovery order.
    pub families: Vec<DifferenceFamily>,
    pub stats: SearchStats,
    /// `occupancy[n]` = branches holding `n` leaves when the search stopped.
    pub occupancy: Vec<u64>,
}

struct Shared<'a> {
    shape: Shape,
    config: &'a SearchConfig,
    crown: Crown<Half>,
    stop: AtomicBool,
    candidates: AtomicU64,
    found: Mutex<(HashSet<String>, Vec<DifferenceFamily>)>,
    stats: Mutex<SearchStats>,
    start: Instant,
    last_progress: Mutex<Instant>,
    sink: EventSink<'a>,
}

impl Shared<'_> {
    fn out_of_budget(&self) -> bool {
        self.config
            .max_candidates
            .is_some_and(|n| self.candidates.load(Ordering::Relaxed) >= n)
            || self.config.time_budget.is_some_and(|t| self.start.elapsed() >= t)
    }

    /// Keeps a new family once its propus matrix is confirmed Hadamard and
    /// symmetric.
    fn record(&self, family: DifferenceFamily, local: &mut SearchStats) {
        let mut guard = self.found.lock().unwrap_or_else(|e| e.into_inner());
        let (seen, list) = &mut *guard;
        if self.config.max_solutions.is_some_and(|n| list.len() >= n) {
            return;
        }
        if !seen.insert(canonical_key(&family)) {
            local.duplicates += 1;
            return;
        }
        if build_symmetric_hadamard(&family).is_err() {
            local.rejected += 1;
            return;
        }
        (self.sink)(&SearchEvent::Found {
            family: family.to_string(),
        });
        list.push(family);
        if self.config.max_solutions.is_some_and(|n| list.len() >= n) {
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    fn worker(&self, id: usize) {
        let mut rng = worker_rng(self.config.seed, id);
        let mut step = 0u64;
        while !self.stop.load(Ordering::Relaxed) {
            let mut local = SearchStats::default();
            let mut hits = Vec::new();
            for _ in 0..self.config.batch_size {
                let side = if step.is_multiple_of(2) { Side::Left } else { Side::Right };
                step += 1;
                let leaf = self.shape.generate(side, &mut rng);
                let fresh = leaf.payload.clone();
                local.sequences += fresh.sequence_count();
                local.candidates += 1;
                let report = self.crown.insert(side, leaf, |stored| hits.push(fresh.join(&stored.payload)));
                local.comparisons += report.comparisons;
                local.evictions += u64::from(report.evicted);
            }
            local.collisions += hits.len() as u64;
            for hit in hits {
                if self.stop.load(Ordering::Relaxed) {
                    break;
                }
                let family = hit
                    .ok_or_else(|| Error::invalid("incomplete match"))
                    .and_then(|(s, b, e)| self.shape.arrange(&s, &b, &e));
                match family {
                    Ok(family) => {
                        local.verified += 1;
                        self.record(family, &mut local);
                    }
                    Err(_) => local.rejected += 1,
                }
            }
            self.candidates.fetch_add(local.candidates, Ordering::Relaxed);
            let snapshot = {
                let mut stats = self.stats.lock().unwrap_or_else(|e| e.into_inner());
                stats.absorb(&local);
                stats.elapsed_ms = self.start.elapsed().as_millis() as u64;
                stats.clone()
            };
            if self.out_of_budget() {
                self.stop.store(true, Ordering::Relaxed);
            }
            let mut last = self.last_progress.lock().unwrap_or_else(|e| e.into_inner());
            if last.elapsed().as_secs() >= 1 {
                *last = Instant::now();
                (self.sink)(&SearchEvent::Progress { stats: snapshot });
            }
        }
    }
}

/// Searches for propus families with the given parameters.
///
/// Every returned family has passed the difference-count check and its
/// propus matrix has been verified Hadamard and symmetric. A single worker
/// with a fixed seed reproduces its results exactly; with several workers
/// each result is still verified but the order and selection may vary.
pub fn propus_search(
    params: &PropusParameterSet,
    config: &SearchConfig,
    sink: Option<EventSink<'_>>,
) -> Result<PropusOutcome> {
    config.validate()?;
    let shape = Shape::new(params, config)?;
    let shared = Shared {
        shape,
        config,
        crown: Crown::new(config.crown_exponent, config.branch_capacity, config.sign_mode),
        stop: AtomicBool::new(config.max_solutions == Some(0)),
        candidates: AtomicU64::new(0),
        found: Mutex::new((HashSet::new(), Vec::new())),
        stats: Mutex::new(SearchStats::default()),
        start: Instant::now(),
        last_progress: Mutex::new(Instant::now()),
        sink: sink.unwrap_or(&ignore_events),
    };

    if config.workers == 1 {
        shared.worker(0);
    } else {
        std::thread::scope(|scope| {
            for id in 0..config.workers {
                let shared = &shared;
                scope.spawn(move || shared.worker(id));
            }
        });
    }

    let mut stats = shared.stats.into_inner().unwrap_or_else(|e| e.into_inner());
    stats.elapsed_ms = shared.start.elapsed().as_millis() as u64;
    let mut occupancy = shared.crown.occupancy_histogram();
    while occupancy.len() > 1 && occupancy.last() == Some(&0) {
        occupancy.pop();
    }
    (shared.sink)(&SearchEvent::Finished {
        stats: stats.clone(),
        occupancy: occupancy.clone(),
    });
    let (_, families) = shared.found.into_inner().unwrap_or_else(|e| e.into_inner());
    Ok(PropusOutcome {
        families,
        stats,
        occupancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: &str) -> PropusParameterSet {
        s.parse().unwrap()
    }

    #[test]
    fn finds_nine() {
        let cfg = SearchConfig {
            seed: 11,
            crown_exponent: 6,
            branch_capacity: 256,
            batch_size: 256,
            max_candidates: Some(2_000_000),
            ..SearchConfig::default()
        };
        let out = propus_search(&params("(9;3,3,3,3;3)"), &cfg, None).unwrap();
        assert_eq!(out.families.len(), 1);
        let f = &out.families[0];
        assert!(f.is_propus());
        assert!(f.a().is_symmetric());
        assert_eq!(out.stats.rejected, 0);
    }

    #[test]
    fn slot_d_and_alternate_split() {
        let cfg = SearchConfig {
            seed: 5,
            crown_exponent: 6,
            branch_capacity: 256,
            batch_size: 256,
            max_candidates: Some(2_000_000),
            symmetric_slot: SymmetricSlot::D,
            split: Split::SymmetricAlone,
            ..SearchConfig::default()
        };
        let out = propus_search(&params("(9;3,3,3,3;3)"), &cfg, None).unwrap();
        assert_eq!(out.families.len(), 1);
        assert!(out.families[0].d().is_symmetric());
    }

    #[test]
    fn nonexistent_family_emits_nothing() {
        let cfg = SearchConfig {
            seed: 1,
            crown_exponent: 3,
            batch_size: 64,
            max_candidates: Some(20_000),
            max_solutions: None,
            ..SearchConfig::default()
        };
        let out = propus_search(&params("(5;1,2,2,1;1)"), &cfg, None).unwrap();
        assert!(out.families.is_empty());
        assert_eq!(out.stats.verified, 0);
        assert!(out.stats.candidates >= 20_000);
    }

    #[test]
    fn rejects_bad_configs() {
        let even = params("(4;1,1,1,1;0)");
        assert!(propus_search(&even, &SearchConfig::default(), None).is_err());
        let cfg = SearchConfig {
            symmetric_slot: SymmetricSlot::AD,
            ..SearchConfig::default()
        };
        assert!(propus_search(&params("(9;3,3,3,3;3)"), &cfg, None).is_err());
    }
}
