//! Pointed curves with A_k-singularities: stability, canonical decomposition,
//! maximal degeneration, and isomorphism testing on a combinatorial curve model.

mod decompose;
mod degenerate;
mod graph;
mod hcurves;
mod iso;
mod json;
mod stability;
mod subcurve;

pub use decompose::{
    canonical_decomposition, reassemble, AppendEnd, Appendage, Decomposition, DecompositionCase,
};
pub use degenerate::{
    closed_classes_equal, closed_limit_class, is_maximally_degenerate, maximal_degeneration,
    ClosedLimitClass, DegeneracyReport, ThreeValued,
};
pub use graph::{
    branch_count, conductor, crimping_len, delta, m_of, Component, CurveBuilder, CurveGraph,
    HDeclaration, PointRef, Singularity,
};
pub use hcurves::{
    attaching_is_nodal, chain_attaching_destabilizes, find_h_bridges, find_h_chains, find_h_links,
    find_h_tails, tail_attaching_destabilizes, HBridge, HChain, HLink, HTail,
};
pub use iso::curves_isomorphic;
pub use stability::{stability, StabilityVerdict, Variant, Violation};
pub use subcurve::{gluing_subcurves, Attaching, AttachingType, BoundaryPoint, Subcurve};

/// Exact scalar type shared with the crimping module.
pub type Rational = num_rational::BigRational;

/// Errors raised by curve-model operations.
#[derive(Debug, thiserror::Error)]
pub enum CurveError {
    /// The curve fails one or more structural invariants.
    #[error("invalid curve: {}", .0.join("; "))]
    InvalidCurve(Vec<String>),
    /// Stability and decomposition only support k in {2, 3, 4}.
    #[error("unsupported singularity parameter k = {0}")]
    UnsupportedK(u8),
    /// An operation required a stable input.
    #[error("curve is not A_{k}-stable ({variant:?} variant): {detail}")]
    NotStable {
        k: u8,
        variant: Variant,
        detail: String,
    },
    /// Component-count cap for subcurve enumeration or isomorphism search.
    #[error("too many components: {0} (cap {1})")]
    TooManyComponents(usize, usize),
    /// No canonical decomposition case applies.
    #[error("no decomposition case applies: {0}")]
    NoCase(String),
    /// An internal structural invariant failed (malformed appendage data, etc.).
    #[error("structure error: {0}")]
    Structure(String),
    /// Curve JSON did not match the schema.
    #[error("bad curve JSON: {0}")]
    BadJson(String),
}
