//! Propus parameter sets `(v; x, y, y, z; λ)` and their enumeration.
//!
//! Block sizes satisfy `(v-2x)² + 2(v-2y)² + (v-2z)² = 4v`. For odd `v` the
//! substitution `v - 2x = 2p + 1` (and likewise for `y`, `z`) turns this into
//! `T_p + 2T_q + T_r = (v-1)/2` with triangular numbers `T_n = n(n+1)/2`; for
//! even `v` the substitution `v - 2x = 2p` gives `p² + 2q² + r² = v`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A GS parameter set with the two middle block sizes equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PropusParameterSet {
    v: usize,
    x: usize,
    y: usize,
    z: usize,
    lambda: usize,
}

impl PropusParameterSet {
    /// Validates all invariants: `λ = x + 2y + z - v ≥ 0`, the
    /// difference-count identity, and the normal form `x ≥ z` with all sizes
    /// at most `⌊v/2⌋`.
    pub fn new(v: usize, x: usize, y: usize, z: usize) -> Result<Self> {
        if v < 1 {
            return Err(Error::invalid("v must be positive"));
        }
        let lambda = lambda_for(v, [x, y, y, z]).ok_or_else(|| {
            Error::invalid(format!(
                "({v};{x},{y},{y},{z};·) does not satisfy the difference family conditions"
            ))
        })?;
        if x.max(y).max(z) > v / 2 {
            return Err(Error::invalid(format!(
                "block sizes must not exceed {} (complement larger blocks)",
                v / 2
            )));
        }
        if x < z {
            return Err(Error::invalid(format!(
                "normal form requires x ≥ z, got x = {x}, z = {z}"
            )));
        }
        let set = PropusParameterSet { v, x, y, z, lambda };
        debug_assert!(set.check_square_identity());
        Ok(set)
    }

    pub fn v(&self) -> usize {
        self.v
    }
    pub fn x(&self) -> usize {
        self.x
    }
    pub fn y(&self) -> usize {
        self.y
    }
    pub fn z(&self) -> usize {
        self.z
    }
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Block sizes `(k1, k2, k3, k4) = (x, y, y, z)`.
    pub fn sizes(&self) -> [usize; 4] {
        [self.x, self.y, self.y, self.z]
    }

    /// `(v-2x)² + 2(v-2y)² + (v-2z)² = 4v`.
    pub fn check_square_identity(&self) -> bool {
        let v = self.v as i64;
        let d = |k: usize| v - 2 * k as i64;
        d(self.x).pow(2) + 2 * d(self.y).pow(2) + d(self.z).pow(2) == 4 * v
    }

    /// Maps the set back through the odd-`v` substitution. `None` for even `v`.
    pub fn triangular(&self) -> Option<TriangularSolution> {
        if self.v.is_multiple_of(2) {
            return None;
        }
        let back = |k: usize| (self.v - 2 * k - 1) / 2;
        Some(TriangularSolution {
            p: back(self.x),
            q: back(self.y),
            r: back(self.z),
        })
    }
}

impl fmt::Display for PropusParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({};{},{},{},{};{})",
            self.v, self.x, self.y, self.y, self.z, self.lambda
        )
    }
}

impl FromStr for PropusParameterSet {
    type Err = Error;

    /// Accepts `(v;k1,k2,k3,k4;λ)` with or without the parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, format!("{msg} in parameter set {s:?}"));
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        let parts: Vec<&str> = t.split(';').map(str::trim).collect();
        let [v, ks, lambda] = parts[..] else {
            return Err(bad("expected `v;k1,k2,k3,k4;lambda`"));
        };
        let num = |p: &str| p.trim().parse::<usize>().map_err(|_| bad("bad number"));
        let v = num(v)?;
        let ks = ks.split(',').map(num).collect::<Result<Vec<_>>>()?;
        let [k1, k2, k3, k4] = ks[..] else {
            return Err(bad("expected four block sizes"));
        };
        let lambda = lambda
            .trim()
            .parse::<i64>()
            .map_err(|_| bad("bad lambda"))?;
        if k2 != k3 {
            return Err(bad("middle block sizes must be equal"));
        }
        let set = PropusParameterSet::new(v, k1, k2, k4).map_err(|e| bad(&e.to_string()))?;
        if set.lambda as i64 != lambda {
            return Err(bad(&format!("lambda should be {}", set.lambda)));
        }
        Ok(set)
    }
}

/// `λ = Σk_i - v`, returned only if it is nonnegative and
/// `Σ k_i(k_i - 1) = λ(v - 1)` holds.
pub fn lambda_for(v: usize, sizes: [usize; 4]) -> Option<usize> {
    if v == 0 || sizes.iter().any(|&k| k > v) {
        return None;
    }
    let total: usize = sizes.iter().sum();
    let lambda = total.checked_sub(v)?;
    let lhs: usize = sizes.iter().map(|&k| k * k.saturating_sub(1)).sum();
    (lhs == lambda * (v - 1)).then_some(lambda)
}

/// A representation `T_p + 2T_q + T_r = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangularSolution {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

pub fn triangular(n: usize) -> usize {
    n * (n + 1) / 2
}

/// All nonnegative `(p, q, r)` with `T_p + 2T_q + T_r = n`, in lexicographic
/// order.
pub fn solve_triangular(n: usize) -> Vec<TriangularSolution> {
    let mut bound = 0;
    while triangular(bound + 1) <= n {
        bound += 1;
    }
    let mut out = Vec::new();
    for p in 0..=bound {
        let tp = triangular(p);
        for q in 0..=bound {
            let partial = tp + 2 * triangular(q);
            if partial > n {
                break;
            }
            let rest = n - partial;
            // T_r = rest has at most one nonnegative root
            let r = ((((8 * rest + 1) as f64).sqrt() - 1.0) / 2.0).round() as usize;
            for cand in r.saturating_sub(1)..=r + 1 {
                if triangular(cand) == rest {
                    out.push(TriangularSolution { p, q, r: cand });
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every normalized propus parameter set for odd `v ≥ 3`, sorted by
/// `(x, y, z)`.
///
/// Sets `(v; x, y, y, z)` with `x = z ≠ y` come paired with `(v; y, x, x, y)`:
/// both arise from the triangular solutions, as the form is invariant under
/// `(p, q, p) ↦ (q, p, q)`.
pub fn enumerate_propus_sets(v: usize) -> Result<Vec<PropusParameterSet>> {
    if v < 3 || v.is_multiple_of(2) {
        return Err(Error::invalid(format!("v must be odd and at least 3, got {v}")));
    }
    let mut sets: Vec<_> = solve_triangular((v - 1) / 2)
        .into_iter()
        .filter_map(|TriangularSolution { p, q, r }| {
            let size = |t: usize| (v - 1).checked_sub(2 * t).map(|d| d / 2);
            let (x, y, z) = (size(p)?, size(q)?, size(r)?);
            PropusParameterSet::new(v, x.max(z), y, x.min(z)).ok()
        })
        .collect();
    sets.sort_by_key(|s| (s.x, s.y, s.z));
    sets.dedup();
    // Every set built from a triangular solution must include its dual.
    for s in &sets {
        if s.x == s.z && s.x != s.y {
            debug_assert!(sets.iter().any(|d| (d.x, d.y, d.z) == (s.y, s.x, s.y)));
        }
    }
    Ok(sets)
}

/// `true` unless `v = 2^(2k+1) (8m+7)`, the even numbers with no
/// representation `p² + 2q² + r²`.
pub fn even_v_admissible(v: usize) -> Result<bool> {
    if v == 0 || v % 2 == 1 {
        return Err(Error::invalid(format!("v must be even and positive, got {v}")));
    }
    let mut w = v;
    while w.is_multiple_of(4) {
        w /= 4;
    }
    Ok(!(w.is_multiple_of(2) && (w / 2) % 8 == 7))
}

/// Normalized propus parameter sets for even `v`. Empty when `v` is
/// inadmissible; sets with negative `λ` are dropped.
pub fn enumerate_even_sets(v: usize) -> Result<Vec<PropusParameterSet>> {
    if !even_v_admissible(v)? {
        return Ok(Vec::new());
    }
    let root = (v as f64).sqrt() as usize + 1;
    let half = v / 2;
    let mut sets = Vec::new();
    for p in 0..=root {
        for q in 0..=root {
            for r in 0..=root {
                if p * p + 2 * q * q + r * r != v || p.max(q).max(r) > half {
                    continue;
                }
                let (x, y, z) = (half - p, half - q, half - r);
                if let Ok(s) = PropusParameterSet::new(v, x.max(z), y, x.min(z)) {
                    sets.push(s);
                }
            }
        }
    }
    sets.sort_by_key(|s| (s.x, s.y, s.z));
    sets.dedup();
    Ok(sets)
}
