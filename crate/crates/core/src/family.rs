use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::PropusParameterSet;
use crate::sequence::{is_difference_family, BinarySequence, Block};

/// Which of the outer blocks `A`, `D` is symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetricSlot {
    A,
    D,
    AD,
}

impl SymmetricSlot {
    pub fn includes_a(self) -> bool {
        matches!(self, SymmetricSlot::A | SymmetricSlot::AD)
    }

    pub fn includes_d(self) -> bool {
        matches!(self, SymmetricSlot::D | SymmetricSlot::AD)
    }
}

impl fmt::Display for SymmetricSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetricSlot::A => "A",
            SymmetricSlot::D => "D",
            SymmetricSlot::AD => "AD",
        })
    }
}

impl std::str::FromStr for SymmetricSlot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(SymmetricSlot::A),
            "D" => Ok(SymmetricSlot::D),
            "AD" => Ok(SymmetricSlot::AD),
            other => Err(Error::invalid(format!("unknown slot {other:?}"))),
        }
    }
}

/// Four base blocks `A, B, C, D` in `Z_v` with a propus parameter set.
///
/// [`DifferenceFamily::new`] checks block sizes and the difference-count
/// condition. [`DifferenceFamily::unchecked`] only checks that the blocks
/// share the modulus of the parameter set; it exists so damaged input can be
/// loaded and reported on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferenceFamily {
    params: PropusParameterSet,
    blocks: [Block; 4],
}

impl DifferenceFamily {
    pub fn new(params: PropusParameterSet, blocks: [Block; 4]) -> Result<Self> {
        let family = Self::unchecked(params, blocks)?;
        family.validate()?;
        Ok(family)
    }

    pub fn unchecked(params: PropusParameterSet, blocks: [Block; 4]) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.v() != params.v()) {
            return Err(Error::invalid(format!(
                "block modulus {} does not match v = {}",
                b.v(),
                params.v()
            )));
        }
        Ok(DifferenceFamily { params, blocks })
    }

    /// Sizes match the parameter set and every nonzero difference occurs
    /// exactly `λ` times.
    pub fn validate(&self) -> Result<()> {
        if !self.sizes_match() {
            return Err(Error::Precondition(format!(
                "block sizes {:?} do not match {}",
                self.blocks.each_ref().map(Block::len),
                self.params
            )));
        }
        match is_difference_family(&self.blocks, self.params.v()) {
            Some(l) if l == self.params.lambda() => Ok(()),
            Some(l) => Err(Error::Precondition(format!(
                "blocks form a difference family with λ = {l}, expected {}",
                self.params.lambda()
            ))),
            None => Err(Error::Precondition(
                "difference counts are not constant".to_string(),
            )),
        }
    }

    pub fn sizes_match(&self) -> bool {
        self.blocks.each_ref().map(Block::len) == self.params.sizes()
    }

    pub fn params(&self) -> &PropusParameterSet {
        &self.params
    }

    pub fn v(&self) -> usize {
        self.params.v()
    }

    pub fn blocks(&self) -> &[Block; 4] {
        &self.blocks
    }

    pub fn a(&self) -> &Block {
        &self.blocks[0]
    }
    pub fn b(&self) -> &Block {
        &self.blocks[1]
    }
    pub fn c(&self) -> &Block {
        &self.blocks[2]
    }
    pub fn d(&self) -> &Block {
        &self.blocks[3]
    }

    pub fn sequences(&self) -> [BinarySequence; 4] {
        self.blocks.each_ref().map(Block::to_sequence)
    }

    /// Which of `A` and `D` are symmetric, if either.
    pub fn symmetric_slot(&self) -> Option<SymmetricSlot> {
        match (self.a().is_symmetric(), self.d().is_symmetric()) {
            (true, true) => Some(SymmetricSlot::AD),
            (true, false) => Some(SymmetricSlot::A),
            (false, true) => Some(SymmetricSlot::D),
            (false, false) => None,
        }
    }

    /// The symmetric slot of a propus family: requires `B = C` and a
    /// symmetric `A` or `D`.
    pub fn propus_slot(&self) -> Result<SymmetricSlot> {
        if self.b() != self.c() {
            return Err(Error::Precondition("blocks B and C differ".to_string()));
        }
        self.symmetric_slot()
            .ok_or_else(|| Error::Precondition("neither A nor D is symmetric".to_string()))
    }

    pub fn is_propus(&self) -> bool {
        self.validate().is_ok() && self.propus_slot().is_ok()
    }
}

impl fmt::Display for DifferenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.params)?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(v: usize, sizes: (usize, usize, usize), blocks: [&[usize]; 4]) -> Result<DifferenceFamily> {
        let params = PropusParameterSet::new(v, sizes.0, sizes.1, sizes.2)?;
        DifferenceFamily::new(params, blocks.map(|b| Block::new(v, b.to_vec()).unwrap()))
    }

    #[test]
    fn validation() {
        let f = family(9, (3, 3, 3), [&[0, 1, 8], &[0, 2, 5], &[0, 2, 5], &[0, 1, 4]]).unwrap();
        assert_eq!(f.propus_slot().unwrap(), SymmetricSlot::A);
        assert!(f.is_propus());

        // wrong size
        assert!(family(9, (3, 3, 3), [&[0, 1], &[0, 2, 5], &[0, 2, 5], &[0, 1, 4]]).is_err());
        // not a difference family
        assert!(family(9, (3, 3, 3), [&[0, 1, 3], &[0, 2, 5], &[0, 2, 5], &[0, 1, 4]]).is_err());
    }

    #[test]
    fn propus_conditions() {
        // (3;1,1,1,0;0) with B ≠ C is still a difference family
        let f = family(3, (1, 1, 0), [&[0], &[0], &[1], &[]]).unwrap();
        assert!(f.propus_slot().is_err());
        // empty D is symmetric, A = {1} is not
        let f = family(3, (1, 1, 0), [&[1], &[0], &[0], &[]]).unwrap();
        assert_eq!(f.propus_slot().unwrap(), SymmetricSlot::D);
    }
}
