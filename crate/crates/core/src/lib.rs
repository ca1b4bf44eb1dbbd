//! Exact-arithmetic engine for restricted root systems of symmetric pairs.
//!
//! Given an ambient root datum with an involution of the character lattice
//! and the traces of the involution on its fixed root spaces, the engine
//! derives the restricted root system with its multiplicity layers, the
//! subgroup system, the distinguished Weyl coset transversal, the relative
//! test character of each representative, and positivity verdicts over the
//! lattice of invariant parabolic faces. A lattice-cone decomposition
//! provides an independent series oracle for the same verdicts.
//!
//! All verdict-bearing arithmetic is exact rational; floating point appears
//! only in illustrative truncated series.

pub mod conelattice;
pub mod criteria;
pub mod error;
pub mod families;
pub mod linalg;
pub mod rootsys;
pub mod sympair;

pub use error::{Error, Result};
pub use linalg::{Int, IntMat, QMat, Rat, RatVec};
pub use rootsys::{RootSystem, WeylGroup};
pub use sympair::{CosetReps, DescendentSystem, InvolutionData, RootDatumG};
