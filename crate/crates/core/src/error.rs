use alloc::string::String;
use alloc::vec::Vec;

use crate::pro::ValidationReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Dimensions of the operands do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A matrix was required to carry a structure (symmetric, skew, PSD) it does not have.
    #[error("{what} is not {structure} (residual {residual:e})")]
    Structure {
        what: &'static str,
        structure: &'static str,
        residual: f64,
    },

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    /// Evaluation point too close to a pole. `omega` is the pole frequency
    /// when it is known (Foster evaluation).
    #[error("evaluation point is {distance:e} away from a pole{}", omega.map(|w| alloc::format!(" at +-i{w}")).unwrap_or_default())]
    PoleProximity { omega: Option<f64>, distance: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("Foster data fails validation:\n{0}")]
    InvalidFoster(ValidationReport),

    /// `det F(z)` vanishes identically. `witness` is a unit vector in
    /// `Ker M` annihilated by both `B` and `D`.
    #[error("function is not invertible (det F(z) vanishes identically)")]
    NotInvertible { witness: Vec<f64> },

    /// A kernel/range split whose singular-value gap is too small to be trusted.
    #[error("ambiguous rank split in {context}: smallest kept value {kept:e}, largest discarded {discarded:e}")]
    Degenerate {
        context: &'static str,
        kept: f64,
        discarded: f64,
    },

    #[error("matrix pencil is not regular")]
    IrregularPencil,
}
