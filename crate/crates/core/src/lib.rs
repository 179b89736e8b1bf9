//! Symmetric Hadamard matrices from cyclic propus difference families.
//!
//! A propus family is a quadruple of subsets `(A, B, C, D)` of `Z_v` with
//! `B = C` and `A` or `D` symmetric, whose differences cover every nonzero
//! residue equally often. Plugged into the propus array, its circulants give
//! a symmetric Hadamard matrix of order `4v`.
//!
//! * [`sequence`]: ±1 sequences, periodic autocorrelation, blocks.
//! * [`params`]: admissible parameter sets `(v;x,y,y,z;λ)`.
//! * [`arrays`]: circulants and the Goethals-Seidel and propus arrays.
//! * [`search`]: randomized and exhaustive family search, Golay pairs.
//! * [`catalog`]: bundled known families and an independent verifier.
//! * [`format`]: family and matrix file formats.
//!
//! ```
//! use propus::{arrays::build_symmetric_hadamard, format::parse_family};
//!
//! let family = parse_family("9;3,3,3,3;3\n0,1,8\n0,2,5\n0,2,5\n0,1,4\n").unwrap();
//! let h = build_symmetric_hadamard(&family).unwrap();
//! assert_eq!(h.order(), 36);
//! ```

pub mod arrays;
pub mod catalog;
pub mod cli;
mod error;
pub mod family;
pub mod format;
pub mod params;
pub mod search;
pub mod sequence;

pub use error::{Error, Result};
pub use family::{DifferenceFamily, SymmetricSlot};
pub use params::PropusParameterSet;
pub use sequence::{BinarySequence, Block};
