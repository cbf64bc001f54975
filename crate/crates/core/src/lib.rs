//! Decide whether a complex Lie algebra, given by structure constants,
//! carries a flat torsion-free invariant affine connection.
//!
//! Everything that feeds a verdict is computed over the Gaussian rationals
//! ℚ(i). The numerical search in [`search`] only proposes candidates; each
//! one is snapped to exact values and re-verified before it can certify
//! anything.

pub mod affine;
pub mod cli;
pub mod connections;
pub mod format;
pub mod lie;
pub mod obstructions;
pub mod report;
pub mod scalar;
pub mod search;
