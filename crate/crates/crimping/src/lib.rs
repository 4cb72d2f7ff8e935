//! Crimping moduli arithmetic: scaling orbits of crimping vectors, truncated
//! subalgebra membership, one-parameter limits over a formal disc, and the
//! quotient-presentation weight tables.

mod series;
mod vector;

pub use series::{
    subalgebra_contains, subalgebra_contains_split, subalgebra_generators,
    subalgebra_generators_split, SeriesPair, TruncatedSeries,
};
pub use vector::{
    crimping_equivalent, limit_crimping, CrimpingVector, ValuedCrimping, ValuedEntry,
};

use thiserror::Error;

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;

/// Branch parity of the singularity a crimping vector belongs to: even for
/// the unibranch types, odd for the two-branch ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrimpError {
    #[error("m must be at least 1")]
    ZeroM,
    #[error("expected {expected} crimping entries for m = {m}, got {got}")]
    EntryCount {
        m: usize,
        expected: usize,
        got: usize,
    },
    #[error("crimping vectors have mismatched parity or length")]
    ShapeMismatch,
    #[error("series truncation {got} too small, need at least {needed}")]
    TruncationTooSmall { needed: usize, got: usize },
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("operation applies to {expected:?} parity only")]
    WrongParity { expected: Parity },
    #[error("entry with infinite valuation must have zero leading coefficient")]
    InfiniteWithLead,
    #[error("entry with finite valuation must have nonzero leading coefficient")]
    ZeroLead,
    #[error("invalid rational string {0:?}")]
    BadRational(String),
}

/// Scaling weights of the m-1 crimping coordinates: 2l-1 for even parity,
/// l for odd, l = 1..m-1.
pub fn crimping_weights(m: usize, parity: Parity) -> Vec<i64> {
    (1..m as i64)
        .map(|l| match parity {
            Parity::Even => 2 * l - 1,
            Parity::Odd => l,
        })
        .collect()
}

/// Torus weights of the versal chart attached to a monomial H-curve:
/// -4, -6, ..., -(4m+2) in the one-pointed case and -2, -3, ..., -(2m+2)
/// in the two-pointed one. All entries are strictly negative, so the origin
/// is the unique closed orbit of the chart.
pub fn h_weight_table(m: usize, parity: Parity) -> Vec<i64> {
    let m = m as i64;
    match parity {
        Parity::Even => (1..=2 * m).map(|j| -(2 * j + 2)).collect(),
        Parity::Odd => (2..=2 * m + 2).map(|j| -j).collect(),
    }
}
