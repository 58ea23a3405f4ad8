use thiserror::Error;

/// Every failure the library can report.
///
/// Variants map one-to-one onto the failure modes of the individual
/// operations; the CLI groups them into parse errors and domain errors via
/// [`Error::is_parse`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid input: {0}")]
    Format(String),

    #[error("norm {norm} exceeds the factorization bound {bound}")]
    FactorBoundExceeded { norm: String, bound: u64 },

    #[error("polynomial does not split over Q(i); residual factor {residual}")]
    SplitFailure { residual: String },

    #[error("I + A is singular, Cayley transform undefined")]
    CayleyPole,

    #[error("map is not skew-symmetric with respect to the form")]
    NotSkew,

    #[error("bilinear form is not invariant")]
    NotInvariant,

    #[error("algebra is Abelian; dup is undefined")]
    Abelian,

    #[error("no nondegenerate split found over Q(i): {0}")]
    NonSplitForm(String),

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("double extension extraction failed: {0}")]
    ExtractionFailure(String),

    #[error("not recognized as o(3) plus a central ideal: {0}")]
    NotRecognized(String),

    #[error("map is not nilpotent")]
    NotNilpotent,

    #[error("map is not invertible")]
    NotInvertible,

    #[error("partition {0:?} has an even part with odd multiplicity")]
    NotAdmissiblePartition(Vec<usize>),

    #[error("degree-0 form has no contraction")]
    ZeroDegree,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    /// Whether this error stems from malformed input text or files.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Format(_))
    }

    /// Short machine-readable tag, used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Format(_) => "FormatError",
            Error::FactorBoundExceeded { .. } => "FactorBoundExceeded",
            Error::SplitFailure { .. } => "SplitFailure",
            Error::CayleyPole => "CayleyPoleError",
            Error::NotSkew => "NotSkewError",
            Error::NotInvariant => "NotInvariantError",
            Error::Abelian => "AbelianError",
            Error::NonSplitForm(_) => "NonSplitForm",
            Error::NotSolvable => "NotSolvable",
            Error::ExtractionFailure(_) => "ExtractionFailure",
            Error::NotRecognized(_) => "NotRecognized",
            Error::NotNilpotent => "NotNilpotent",
            Error::NotInvertible => "NotInvertible",
            Error::NotAdmissiblePartition(_) => "NotAdmissiblePartition",
            Error::ZeroDegree => "ZeroDegreeError",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Domain(_) => "DomainError",
            Error::InternalInvariant(_) => "InternalInvariantError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
