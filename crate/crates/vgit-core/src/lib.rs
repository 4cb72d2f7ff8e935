//! Plus/minus chamber computation for diagonal torus actions on affine space,
//! with an exact rational feasibility kernel and an independent brute-force oracle.

mod chambers;
mod feasible;
mod stratum;
mod system;

pub use chambers::{
    minus_locus, minus_locus_with_cap, plus_locus, plus_locus_with_cap, DEFAULT_COORD_CAP,
};
pub use feasible::{
    brute_force_in_minus, brute_force_in_plus, certified_box_bound, in_minus, in_plus,
    limit_exists, lp_feasible, maximal_limit_masks, ChamberSign, Constraint, Rational,
};
pub use stratum::StratumUnion;
pub use system::{Coordinate, MonomialSign, OneParamSubgroup, SupportPattern, WeightSystem};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum VgitError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid weight system: {0}")]
    InvalidSystem(String),
    #[error("support index {index} out of range for {coords} coordinates")]
    SupportOutOfRange { index: usize, coords: usize },
    #[error("enumeration too large: {coords} coordinates exceeds cap {cap}")]
    EnumerationTooLarge { coords: usize, cap: usize },
    #[error("brute-force budget exceeded: {required} candidate subgroups, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("operation requires rank 1, system has rank {rank}")]
    UnsupportedRank { rank: usize },
    #[error("witness entries exceed the integer range")]
    WitnessOverflow,
    #[error("mask oracle supports at most 64 coordinates, system has {coords}")]
    TooManyCoordsForMask { coords: usize },
}
