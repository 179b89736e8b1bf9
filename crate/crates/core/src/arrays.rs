//! Dense integer matrices and the block arrays that turn four circulants into
//! a Hadamard matrix of order `4v`.
//!
//! `R` is the exchange matrix with ones on the anti-diagonal. Products with
//! `R` are never formed explicitly: `C·R` reverses the column order of `C`
//! and `R·C` reverses its row order.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::{DifferenceFamily, SymmetricSlot};
use crate::sequence::BinarySequence;

#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i32>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::invalid(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i32) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i32]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&x| -x).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        Ok(SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: i32) -> Self {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&x| k * x).collect(),
        }
    }

    /// General product; used where no structured shortcut applies.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `M·R`: columns in reverse order.
    pub fn times_r(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, self.n - 1 - j));
            }
        }
        out
    }

    /// `R·M`: rows in reverse order.
    pub fn r_times(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            out.entries[i * self.n..(i + 1) * self.n].copy_from_slice(self.row(self.n - 1 - i));
        }
        out
    }

    pub fn is_pm_one(&self) -> bool {
        self.entries.iter().all(|&x| x == 1 || x == -1)
    }

    /// Copies `block` into the `(bi, bj)` block position of size `block.n`.
    fn put_block(&mut self, bi: usize, bj: usize, block: &SquareMatrix) {
        let v = block.n;
        for i in 0..v {
            let dst = (bi * v + i) * self.n + bj * v;
            self.entries[dst..dst + v].copy_from_slice(block.row(i));
        }
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::invalid(format!(
                "order mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({})", self.n)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Row `i` is the sequence cyclically shifted right by `i`.
pub fn circulant(seq: &BinarySequence) -> SquareMatrix {
    let v = seq.len();
    let mut m = SquareMatrix::zeros(v);
    for i in 0..v {
        for j in 0..v {
            m.set(i, j, i32::from(seq.at(j + v - i)));
        }
    }
    m
}

/// The exchange matrix: `R[i][j] = 1` iff `i + j = v - 1`.
pub fn back_circulant_r(v: usize) -> SquareMatrix {
    let mut r = SquareMatrix::zeros(v);
    for i in 0..v {
        r.set(i, v - 1 - i, 1);
    }
    r
}

fn check_quadruple(blocks: [&SquareMatrix; 4]) -> Result<usize> {
    let v = blocks[0].order();
    if v == 0 {
        return Err(Error::invalid("blocks must have positive order"));
    }
    if let Some(b) = blocks.iter().find(|b| b.order() != v) {
        return Err(Error::invalid(format!(
            "block orders differ: {v} and {}",
            b.order()
        )));
    }
    Ok(v)
}

fn assemble(v: usize, layout: [[SquareMatrix; 4]; 4]) -> SquareMatrix {
    let mut h = SquareMatrix::zeros(4 * v);
    for (bi, row) in layout.iter().enumerate() {
        for (bj, block) in row.iter().enumerate() {
            h.put_block(bi, bj, block);
        }
    }
    h
}

/// The Goethals-Seidel array:
///
/// ```text
///  C1    C2R   C3R   C4R
/// -C2R   C1   -RC4   RC3
/// -C3R   RC4   C1   -RC2
/// -C4R  -RC3   RC2   C1
/// ```
pub fn goethals_seidel(
    c1: &SquareMatrix,
    c2: &SquareMatrix,
    c3: &SquareMatrix,
    c4: &SquareMatrix,
) -> Result<SquareMatrix> {
    let v = check_quadruple([c1, c2, c3, c4])?;
    let (c2r, c3r, c4r) = (c2.times_r(), c3.times_r(), c4.times_r());
    let (rc2, rc3, rc4) = (c2.r_times(), c3.r_times(), c4.r_times());
    Ok(assemble(
        v,
        [
            [c1.clone(), c2r.clone(), c3r.clone(), c4r.clone()],
            [c2r.neg(), c1.clone(), rc4.neg(), rc3.clone()],
            [c3r.neg(), rc4, c1.clone(), rc2.neg()],
            [c4r.neg(), rc3.neg(), rc2, c1.clone()],
        ],
    ))
}

/// The propus array, symmetric whenever `C1` is symmetric and `C2 = C3`:
///
/// ```text
/// -C1    C2R   C3R   C4R
///  C3R   RC4   C1   -RC2
///  C2R   C1   -RC4   RC3
///  C4R  -RC3   RC2   C1
/// ```
pub fn propus(
    c1: &SquareMatrix,
    c2: &SquareMatrix,
    c3: &SquareMatrix,
    c4: &SquareMatrix,
) -> Result<SquareMatrix> {
    let v = check_quadruple([c1, c2, c3, c4])?;
    let (c2r, c3r, c4r) = (c2.times_r(), c3.times_r(), c4.times_r());
    let (rc2, rc3, rc4) = (c2.r_times(), c3.r_times(), c4.r_times());
    Ok(assemble(
        v,
        [
            [c1.neg(), c2r.clone(), c3r.clone(), c4r.clone()],
            [c3r, rc4.clone(), c1.clone(), rc2.neg()],
            [c2r, c1.clone(), rc4.neg(), rc3.clone()],
            [c4r, rc3.neg(), rc2, c1.clone()],
        ],
    ))
}

/// `H·Hᵀ = n·I`, computed exactly. Entries must be `±1`.
pub fn is_hadamard(h: &SquareMatrix) -> Result<bool> {
    if !h.is_pm_one() {
        return Err(Error::invalid("Hadamard check needs a ±1 matrix"));
    }
    let n = h.order();
    for i in 0..n {
        let ri = h.row(i);
        for j in i + 1..n {
            let dot: i64 = ri
                .iter()
                .zip(h.row(j))
                .map(|(&a, &b)| i64::from(a * b))
                .sum();
            if dot != 0 {
                return Ok(false);
            }
        }
    }
    // diagonal of H·Hᵀ is n automatically for ±1 rows
    Ok(true)
}

pub fn is_symmetric_matrix(h: &SquareMatrix) -> bool {
    let n = h.order();
    (0..n).all(|i| (i + 1..n).all(|j| h.get(i, j) == h.get(j, i)))
}

/// `H + Hᵀ = 2I`.
pub fn is_skew_type(h: &SquareMatrix) -> bool {
    let n = h.order();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let expect = if i == j { 2 } else { 0 };
            h.get(i, j) + h.get(j, i) == expect
        })
    })
}

/// The propus matrix of any four blocks, without checks. The symmetric
/// outer block, if any, goes in the `C1` position.
pub fn propus_matrix(family: &DifferenceFamily) -> SquareMatrix {
    let [a, b, c, d] = family.sequences();
    let order = match family.symmetric_slot() {
        Some(SymmetricSlot::D) => [&d, &b, &c, &a],
        _ => [&a, &b, &c, &d],
    }
    .map(circulant);
    propus(&order[0], &order[1], &order[2], &order[3]).expect("blocks share v")
}

/// The Goethals-Seidel matrix of the blocks in listed order, without checks.
pub fn goethals_seidel_matrix(family: &DifferenceFamily) -> SquareMatrix {
    let c = family.sequences().each_ref().map(circulant);
    goethals_seidel(&c[0], &c[1], &c[2], &c[3]).expect("blocks share v")
}

/// Assembles the symmetric Hadamard matrix of a propus family.
///
/// The symmetric block goes in the `C1` position: `(A, B, C, D)` when `A` is
/// symmetric (including when both are), otherwise `(D, B, C, A)`.
pub fn build_symmetric_hadamard(family: &DifferenceFamily) -> Result<SquareMatrix> {
    let slot = family.propus_slot()?;
    let [a, b, c, d] = family.sequences();
    let first = match slot {
        SymmetricSlot::A | SymmetricSlot::AD => [&a, &b, &c, &d],
        SymmetricSlot::D => [&d, &b, &c, &a],
    }
    .map(circulant);
    let h = propus(&first[0], &first[1], &first[2], &first[3])?;
    if !is_hadamard(&h)? {
        return Err(Error::Precondition(format!(
            "blocks of {} do not give a Hadamard matrix",
            family.params()
        )));
    }
    if !is_symmetric_matrix(&h) {
        return Err(Error::Precondition(format!(
            "propus matrix of {} is not symmetric",
            family.params()
        )));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Block;

    fn seq(s: &str) -> BinarySequence {
        BinarySequence::from_signs(s).unwrap()
    }

    fn m(rows: &[&[i32]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn circulant_examples() {
        assert_eq!(circulant(&seq("+")), m(&[&[1]]));
        assert_eq!(
            circulant(&seq("-++")),
            m(&[&[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]])
        );
        let c = circulant(&Block::new(9, vec![0, 1, 8]).unwrap().to_sequence());
        assert_eq!(c, c.transpose());
    }

    #[test]
    fn exchange_matrix() {
        assert_eq!(back_circulant_r(2), m(&[&[0, 1], &[1, 0]]));
        assert_eq!(back_circulant_r(1), m(&[&[1]]));
        for v in 1..8 {
            let r = back_circulant_r(v);
            assert_eq!(r.mul(&r).unwrap(), SquareMatrix::identity(v));
            assert_eq!(r, r.transpose());
        }
    }

    #[test]
    fn r_shortcuts_match_products() {
        let c = circulant(&seq("+-+--+-"));
        let r = back_circulant_r(7);
        assert_eq!(c.times_r(), c.mul(&r).unwrap());
        assert_eq!(c.r_times(), r.mul(&c).unwrap());
    }

    #[test]
    fn hadamard_predicates() {
        assert!(is_hadamard(&m(&[&[1, 1], &[1, -1]])).unwrap());
        assert!(is_hadamard(&m(&[&[1]])).unwrap());
        assert!(!is_hadamard(&m(&[&[1, 1], &[1, 1]])).unwrap());
        assert!(is_hadamard(&m(&[&[1, 0], &[0, 1]])).is_err());

        let h = m(&[&[1, 1], &[-1, 1]]);
        assert!(!is_symmetric_matrix(&h));
        assert!(is_skew_type(&h));
    }

    #[test]
    fn order_four_from_trivial_quadruple() {
        let c = circulant(&seq("+"));
        let h = goethals_seidel(&c, &c, &c, &c).unwrap();
        assert_eq!(h.order(), 4);
        assert!(is_hadamard(&h).unwrap());
        let h2 = propus(&c, &c, &c, &c).unwrap();
        assert!(is_hadamard(&h2).unwrap());
        assert!(is_symmetric_matrix(&h2));
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = circulant(&seq("+-+"));
        let b = circulant(&seq("+-"));
        assert!(goethals_seidel(&a, &a, &b, &a).is_err());
        assert!(propus(&a, &b, &a, &a).is_err());
    }

    #[test]
    fn twelve_from_v3() {
        let blocks = [&[0][..], &[0], &[0], &[]]
            .map(|xs| circulant(&Block::new(3, xs.to_vec()).unwrap().to_sequence()));
        let gs = goethals_seidel(&blocks[0], &blocks[1], &blocks[2], &blocks[3]).unwrap();
        assert_eq!(gs.order(), 12);
        assert!(is_hadamard(&gs).unwrap());
        let p = propus(&blocks[0], &blocks[1], &blocks[2], &blocks[3]).unwrap();
        assert!(is_hadamard(&p).unwrap());
        assert!(is_symmetric_matrix(&p));
    }

    #[test]
    fn skew_first_block_gives_skew_type() {
        // (3;1,1,1,0;0) with A = {2}: sequence ++- is skew
        let blocks = [&[2][..], &[0], &[0], &[]]
            .map(|xs| Block::new(3, xs.to_vec()).unwrap().to_sequence());
        assert!(blocks[0].is_skew());
        let c = blocks.each_ref().map(circulant);
        let gs = goethals_seidel(&c[0], &c[1], &c[2], &c[3]).unwrap();
        assert!(is_hadamard(&gs).unwrap());
        assert!(is_skew_type(&gs));
    }
}
