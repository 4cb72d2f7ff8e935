//! First-order deformation charts of maximally degenerate curves, their
//! expected chamber decompositions, and the crosscheck against the
//! feasibility kernel.

mod chain;
mod chart;
mod crosscheck;

pub use chain::{chain_chamber_formula, chain_system};
pub use chart::{
    build_chart, build_weight_system, expected_h_locus, expected_s_locus, CoordRole, LocalChart,
};
pub use crosscheck::{crosscheck_chart, crosscheck_local_vgit, crosscheck_system, CrosscheckReport};

/// Errors raised while building or checking a deformation chart.
#[derive(Debug, thiserror::Error)]
pub enum ChartError {
    /// The curve is stable but not maximally degenerate; the list carries the
    /// failing clauses verbatim.
    #[error("curve is not maximally degenerate: {}", .0.join("; "))]
    NotMaximallyDegenerate(Vec<String>),
    /// The curve has no appendages, so the deformation torus is trivial and
    /// there is no chamber decomposition to check.
    #[error("trivial deformation torus: the curve has no appendages")]
    TrivialTorus,
    /// A chart or chain parameter was outside its allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Curve(#[from] curve_model::CurveError),
    #[error(transparent)]
    Vgit(#[from] vgit_core::VgitError),
}
