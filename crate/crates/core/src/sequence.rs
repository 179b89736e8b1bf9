//! Binary sequences over `Z_v`, their periodic autocorrelation, and the
//! correspondence between subsets of `Z_v` and `{+1, -1}` sequences.
//!
//! A subset `X` is mapped to the sequence whose entry `i` is `-1` exactly when
//! `i` belongs to `X`. Sequences are the working representation for all
//! correlation arithmetic; blocks are what gets stored and printed.

use std::fmt;

use crate::error::{Error, Result};

/// A `{+1, -1}` sequence of length `v` with cyclic indexing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySequence {
    entries: Vec<i8>,
}

impl BinarySequence {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("sequence length must be at least 1"));
        }
        if let Some(pos) = entries.iter().position(|&e| e != 1 && e != -1) {
            return Err(Error::invalid(format!(
                "entry {} at position {pos} is not +1 or -1",
                entries[pos]
            )));
        }
        Ok(BinarySequence { entries })
    }

    /// The all `+1` sequence.
    pub fn ones(v: usize) -> Result<Self> {
        Self::new(vec![1; v])
    }

    /// Parses a string of `+` and `-` characters.
    pub fn from_signs(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::invalid(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(entries)
    }

    /// Builds a sequence from entries already known to be `±1`.
    pub(crate) fn from_raw(entries: Vec<i8>) -> Self {
        debug_assert!(!entries.is_empty() && entries.iter().all(|&e| e == 1 || e == -1));
        BinarySequence { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; sequences have length at least 1.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Entry at a cyclic index.
    pub fn at(&self, i: usize) -> i8 {
        self.entries[i % self.entries.len()]
    }

    /// Number of `-1` entries.
    pub fn minus_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e < 0).count()
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn to_signs(&self) -> String {
        self.entries
            .iter()
            .map(|&e| if e > 0 { '+' } else { '-' })
            .collect()
    }

    /// Periodic autocorrelation `paf(s) = Σ a_i a_{i+s}` for every shift.
    pub fn paf(&self) -> PafVector {
        let v = self.len();
        let values = (0..v).map(|s| self.paf_at(s)).collect();
        PafVector { values }
    }

    /// A single autocorrelation value.
    pub fn paf_at(&self, s: usize) -> i64 {
        let v = self.len();
        let s = s % v;
        (0..v)
            .map(|i| i64::from(self.entries[i]) * i64::from(self.entries[(i + s) % v]))
            .sum()
    }

    /// `paf(s)` for `s = 1..=v/2`, which determines the whole function.
    pub fn paf_half(&self) -> Vec<i64> {
        (1..=self.len() / 2).map(|s| self.paf_at(s)).collect()
    }

    /// `a_i = a_{v-i}` for all `i ≥ 1`.
    pub fn is_symmetric(&self) -> bool {
        let v = self.len();
        (1..v).all(|i| self.entries[i] == self.entries[v - i])
    }

    /// `a_i = -a_{v-i}` for all `i ≥ 1`. Never holds for even `v`, since the
    /// index `v/2` is paired with itself.
    pub fn is_skew(&self) -> bool {
        let v = self.len();
        (1..v).all(|i| self.entries[i] == -self.entries[v - i])
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({})", self.to_signs())
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_signs())
    }
}

/// All `v` periodic autocorrelation values of a sequence; `values[0] = v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PafVector {
    values: Vec<i64>,
}

impl PafVector {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The values at `s = 1..=v/2`; the rest follow by `paf(s) = paf(v-s)`.
    pub fn half(&self) -> &[i64] {
        &self.values[1..=self.values.len() / 2]
    }
}

impl std::ops::Index<usize> for PafVector {
    type Output = i64;
    fn index(&self, s: usize) -> &i64 {
        &self.values[s]
    }
}

/// A subset of `Z_v`, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    v: usize,
    elements: Vec<usize>,
}

impl Block {
    /// Accepts residues in any order; rejects duplicates and values `≥ v`.
    pub fn new(v: usize, mut elements: Vec<usize>) -> Result<Self> {
        if v == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if let Some(&bad) = elements.iter().find(|&&e| e >= v) {
            return Err(Error::invalid(format!("residue {bad} out of range for v = {v}")));
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("residue {} repeated", w[0])));
        }
        Ok(Block { v, elements })
    }

    pub fn empty(v: usize) -> Result<Self> {
        Self::new(v, Vec::new())
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The complementary subset of `Z_v`.
    pub fn complement(&self) -> Block {
        let elements = (0..self.v).filter(|&x| !self.contains(x)).collect();
        Block { v: self.v, elements }
    }

    /// Closed under `x ↦ -x`.
    pub fn is_symmetric(&self) -> bool {
        self.elements
            .iter()
            .all(|&x| self.contains((self.v - x) % self.v))
    }

    pub fn to_sequence(&self) -> BinarySequence {
        block_to_sequence(self)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Entry `i` is `-1` iff `i` is in the block.
pub fn block_to_sequence(block: &Block) -> BinarySequence {
    let mut entries = vec![1i8; block.v];
    for &x in &block.elements {
        entries[x] = -1;
    }
    BinarySequence::from_raw(entries)
}

pub fn sequence_to_block(seq: &BinarySequence) -> Block {
    let elements = seq
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e < 0)
        .map(|(i, _)| i)
        .collect();
    Block {
        v: seq.len(),
        elements,
    }
}

pub fn paf(seq: &BinarySequence) -> PafVector {
    seq.paf()
}

pub fn is_symmetric(seq: &BinarySequence) -> bool {
    seq.is_symmetric()
}

pub fn is_skew(seq: &BinarySequence) -> bool {
    seq.is_skew()
}

/// Weighted sum of autocorrelations at the nonzero shifts `s = 1..v-1`.
///
/// A family of sequences (with the given multiplicities) has complementary
/// autocorrelation exactly when the result is all zeros.
pub fn paf_deficit(seqs: &[&BinarySequence], multiplicities: &[u32]) -> Result<Vec<i64>> {
    if seqs.len() != multiplicities.len() {
        return Err(Error::invalid(format!(
            "{} sequences but {} multiplicities",
            seqs.len(),
            multiplicities.len()
        )));
    }
    let Some(first) = seqs.first() else {
        return Err(Error::invalid("at least one sequence is required"));
    };
    let v = first.len();
    if let Some(bad) = seqs.iter().find(|s| s.len() != v) {
        return Err(Error::invalid(format!(
            "sequence lengths differ: {v} and {}",
            bad.len()
        )));
    }
    let mut deficit = vec![0i64; v.saturating_sub(1)];
    for (seq, &mult) in seqs.iter().zip(multiplicities) {
        for (s, d) in deficit.iter_mut().enumerate() {
            *d += i64::from(mult) * seq.paf_at(s + 1);
        }
    }
    Ok(deficit)
}

/// Counts, for every nonzero `a ∈ Z_v`, the ordered within-block pairs
/// `(x, y)` with `x - y = a`.
pub fn difference_counts(blocks: &[Block], v: usize) -> Result<Vec<usize>> {
    if let Some(b) = blocks.iter().find(|b| b.v != v) {
        return Err(Error::invalid(format!(
            "block has modulus {} but {v} was expected",
            b.v
        )));
    }
    let mut counts = vec![0usize; v];
    for block in blocks {
        for &x in &block.elements {
            for &y in &block.elements {
                if x != y {
                    counts[(x + v - y) % v] += 1;
                }
            }
        }
    }
    Ok(counts)
}

/// Returns `λ` when every nonzero difference occurs exactly `λ` times.
pub fn is_difference_family(blocks: &[Block], v: usize) -> Option<usize> {
    let counts = difference_counts(blocks, v).ok()?;
    match counts.get(1..) {
        None | Some([]) => Some(0),
        Some([first, rest @ ..]) => rest.iter().all(|c| c == first).then_some(*first),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(v: usize, xs: &[usize]) -> Block {
        Block::new(v, xs.to_vec()).unwrap()
    }

    #[test]
    fn block_sequence_correspondence() {
        assert_eq!(block(3, &[0]).to_sequence().entries(), &[-1, 1, 1]);
        assert_eq!(block(5, &[]).to_sequence().entries(), &[1; 5]);
        let s = block(9, &[0, 1, 8]).to_sequence();
        assert_eq!(s.entries(), &[-1, -1, 1, 1, 1, 1, 1, 1, -1]);

        let seq = BinarySequence::new(vec![-1, -1, 1, -1]).unwrap();
        assert_eq!(sequence_to_block(&seq).elements(), &[0, 1, 3]);
        assert!(sequence_to_block(&BinarySequence::ones(4).unwrap()).is_empty());
        assert_eq!(
            sequence_to_block(&BinarySequence::from_signs("-++").unwrap()).elements(),
            &[0]
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BinarySequence::new(vec![]).is_err());
        assert!(BinarySequence::new(vec![1, 0, -1]).is_err());
        assert!(Block::new(5, vec![1, 5]).is_err());
        assert!(Block::new(5, vec![2, 2]).is_err());
        assert_eq!(Block::new(7, vec![4, 1, 2]).unwrap().elements(), &[1, 2, 4]);
    }

    #[test]
    fn paf_small_cases() {
        let s = BinarySequence::from_signs("-++").unwrap();
        assert_eq!(s.paf().values(), &[3, -1, -1]);
        let s = BinarySequence::from_signs("+-").unwrap();
        assert_eq!(s.paf().values(), &[2, -2]);
        for v in 1..8 {
            let s = BinarySequence::ones(v).unwrap();
            assert!(s.paf().values().iter().all(|&x| x == v as i64));
        }
    }

    #[test]
    fn symmetry_and_skew() {
        assert!(block(9, &[0, 1, 8]).to_sequence().is_symmetric());
        assert!(block(9, &[0, 1, 8]).is_symmetric());
        assert!(!block(5, &[0, 1]).to_sequence().is_symmetric());
        assert!(BinarySequence::from_signs("-").unwrap().is_symmetric());
        assert!(BinarySequence::from_signs("++-").unwrap().is_skew());
        assert!(!BinarySequence::from_signs("+++").unwrap().is_skew());
        for bits in 0..16u32 {
            let e = (0..4).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
            assert!(!BinarySequence::new(e).unwrap().is_skew());
        }
    }

    #[test]
    fn deficit_examples() {
        let seqs: Vec<_> = [&[0, 1, 8][..], &[0, 2, 5], &[0, 2, 5], &[0, 1, 4]]
            .iter()
            .map(|xs| block(9, xs).to_sequence())
            .collect();
        let refs: Vec<_> = seqs.iter().collect();
        assert_eq!(paf_deficit(&refs, &[1, 1, 1, 1]).unwrap(), vec![0; 8]);

        let ones = BinarySequence::ones(3).unwrap();
        assert_eq!(paf_deficit(&[&ones], &[1]).unwrap(), vec![3, 3]);

        let a = BinarySequence::from_signs("++").unwrap();
        let b = BinarySequence::from_signs("+-").unwrap();
        assert_eq!(paf_deficit(&[&a, &b], &[1, 1]).unwrap(), vec![0]);

        let c = BinarySequence::ones(3).unwrap();
        assert!(paf_deficit(&[&a, &c], &[1, 1]).is_err());
        assert!(paf_deficit(&[&a], &[1, 1]).is_err());
    }

    #[test]
    fn difference_family_examples() {
        let trivial = [block(3, &[0]), block(3, &[0]), block(3, &[0]), block(3, &[])];
        assert_eq!(is_difference_family(&trivial, 3), Some(0));

        let nine = [
            block(9, &[0, 1, 8]),
            block(9, &[0, 2, 5]),
            block(9, &[0, 2, 5]),
            block(9, &[0, 1, 4]),
        ];
        assert_eq!(is_difference_family(&nine, 9), Some(3));

        let uneven = [block(5, &[0, 1]), block(5, &[0, 1])];
        assert_eq!(difference_counts(&uneven, 5).unwrap()[1..], [2, 0, 0, 2]);
        assert_eq!(is_difference_family(&uneven, 5), None);
    }
}
