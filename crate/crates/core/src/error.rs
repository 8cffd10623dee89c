use thiserror::Error;

use crate::scalar::ScalarError;

/// Every domain error the kernel reports. [`DownUpError::name`] gives the
/// stable identifier printed by the cli and returned over FFI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DownUpError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("the multiplicative order of zero is undefined")]
    ZeroInput,
    #[error("r*s must be nonzero")]
    NotNoetherian,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("this operation requires r != 1")]
    RequiresRNotOne,
    #[error("not conformal: s=r^{j} and a_{j}≠0")]
    NotConformal { j: u32 },
    #[error("unsupported regime: r != 1 and gamma != 0 (apply the gamma shift first)")]
    UnsupportedRegime,
    #[error("the algebra is conformal")]
    IsConformal,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("no square root of r in the ambient field; try doubling the conductor or pass --sqrt-r")]
    NeedsSquareRootOfR,
    #[error("no multiplicative relation between r and s up to exponent {0}; declare one or raise the bound")]
    UndecidableAtBound(u32),
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension {0} exceeds the cap of 64")]
    DimensionTooLarge(usize),
}

impl DownUpError {
    pub fn name(&self) -> &'static str {
        match self {
            DownUpError::DivisionByZero => "DivisionByZero",
            DownUpError::ZeroInput => "ZeroInput",
            DownUpError::NotNoetherian => "NotNoetherian",
            DownUpError::NotHomogeneous => "NotHomogeneous",
            DownUpError::RequiresRNotOne => "RequiresRNotOne",
            DownUpError::NotConformal { .. } => "NotConformal",
            DownUpError::UnsupportedRegime => "UnsupportedRegime",
            DownUpError::IsConformal => "IsConformal",
            DownUpError::HypothesisFailed(_) => "HypothesisFailed",
            DownUpError::NeedsSquareRootOfR => "NeedsSquareRootOfR",
            DownUpError::UndecidableAtBound(_) => "UndecidableAtBound",
            DownUpError::SyntaxError { .. } => "SyntaxError",
            DownUpError::UnknownSymbol(_) => "UnknownSymbol",
            DownUpError::InvalidConfig(_) => "InvalidConfig",
            DownUpError::DimensionTooLarge(_) => "DimensionTooLarge",
        }
    }
}

impl From<ScalarError> for DownUpError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::DivisionByZero => DownUpError::DivisionByZero,
            ScalarError::ZeroInput => DownUpError::ZeroInput,
        }
    }
}

pub type Result<T> = std::result::Result<T, DownUpError>;
