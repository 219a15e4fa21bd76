use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the compute kernels.
///
/// Variants are grouped so that front ends can map them onto exit codes:
/// bad input, exceeded budgets and everything else.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index {index} out of range for point set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("coordinate overflow: {0}")]
    Overflow(String),

    #[error("float-mode point set has no quantization scale")]
    QuantizationUnset,

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("budget exceeded: {required} > {budget} ({what})")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("not enough data: {0}")]
    InsufficientData(String),

    #[error("empty sphere: no lattice points with squared radius {0}")]
    EmptySphere(u64),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors caused by the shape or content of the input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::IndexOutOfRange { .. }
                | Error::Overflow(_)
                | Error::QuantizationUnset
                | Error::UnsupportedDimension(_)
                | Error::EmptySphere(_)
        )
    }
}
