use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Cantor regime required: |c| = {abs_c} must exceed 2")]
    NotCantorRegime { abs_c: f64 },

    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    #[error("decay not guaranteed: |c| = {abs_c} does not exceed 3+sqrt(3)")]
    DecayNotGuaranteed { abs_c: f64 },

    #[error("epsilon {epsilon} outside the admissible interval (0, {margin})")]
    EpsilonOutOfRange { epsilon: f64, margin: f64 },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("size cap exceeded: {what} needs {requested}, cap is {cap}; {hint}")]
    SizeCap {
        what: &'static str,
        requested: u64,
        cap: u64,
        hint: &'static str,
    },

    #[error(
        "Re(c) < 0: the square-root branch cut crosses D - c, so boundary samples \
         do not describe the pieces"
    )]
    BranchCutCrossesDomain,

    #[error("mismatched cell sizes {0} and {1}")]
    CellMismatch(f64, f64),

    #[error("containment violated: |v - center| = {distance} exceeds radius {radius}")]
    ContainmentViolation { distance: f64, radius: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }
}
