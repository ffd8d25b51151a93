use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable `error` tag in the CLI's
/// JSON output, see [`Error::kind`].
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("defining polynomial must have degree at least 2")]
    DegreeTooSmall,
    #[error("defining polynomial must be monic")]
    NotMonic,
    #[error("defining polynomial is not squarefree")]
    NotSquarefree,
    #[error("defining polynomial has {real} real roots, expected {degree}")]
    NotTotallyReal { real: usize, degree: usize },
    #[error("defining polynomial is reducible over Q")]
    Reducible,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("precision cap of {cap} bits reached while certifying {what}")]
    PrecisionCapExceeded { cap: u32, what: &'static str },
    #[error("element is not totally positive")]
    NotTotallyPositive,
    #[error("element is not a unit of the ring of integers")]
    NotAUnit,
    #[error("units are multiplicatively dependent")]
    DependentUnits,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("last coordinate is zero; projection undefined")]
    LastCoordinateZero,
    #[error("simplex vertices are affinely dependent")]
    DegenerateSimplex,
    #[error("end point does not lie in the closed simplex")]
    YNotInSimplex,
    #[error("end point does not lie in the closed cone")]
    YNotInCone,
    #[error("sign could not be certified within the precision cap ({0})")]
    UndecidableSign(&'static str),
    #[error("integral basis failed validation: {0}")]
    NotValidated(String),
    #[error("ideal is zero")]
    ZeroIdeal,
    #[error("cone generators do not lie in the lattice")]
    GeneratorsNotInLattice,
    #[error("no class resolution for ideal {0}")]
    ClassResolutionMissing(String),
    #[error("tail bound {bound:e} above target {target:e} at truncation cap {cap}")]
    TailBoundUnachievable { bound: f64, target: f64, cap: u64 },
    #[error("power basis is not maximal at p = {0}")]
    NonMonogenicPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable tag used in serialized error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeTooSmall => "DegreeTooSmall",
            Error::NotMonic => "NotMonic",
            Error::NotSquarefree => "NotSquarefree",
            Error::NotTotallyReal { .. } => "NotTotallyReal",
            Error::Reducible => "Reducible",
            Error::ZeroElement => "ZeroElement",
            Error::PrecisionCapExceeded { .. } => "PrecisionCapExceeded",
            Error::NotTotallyPositive => "NotTotallyPositive",
            Error::NotAUnit => "NotAUnit",
            Error::DependentUnits => "DependentUnits",
            Error::DependentBasis => "DependentBasis",
            Error::LastCoordinateZero => "LastCoordinateZero",
            Error::DegenerateSimplex => "DegenerateSimplex",
            Error::YNotInSimplex => "YNotInSimplex",
            Error::YNotInCone => "YNotInCone",
            Error::UndecidableSign(_) => "UndecidableSign",
            Error::NotValidated(_) => "NotValidated",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::GeneratorsNotInLattice => "GeneratorsNotInLattice",
            Error::ClassResolutionMissing(_) => "ClassResolutionMissing",
            Error::TailBoundUnachievable { .. } => "TailBoundUnachievable",
            Error::NonMonogenicPrime(_) => "NonMonogenicPrime",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnknownStrategy(_) => "UnknownStrategy",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors caused by running out of precision rather than by
    /// bad input. Callers sampling random points resample on these.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::PrecisionCapExceeded { .. } | Error::UndecidableSign(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
