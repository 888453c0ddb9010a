use num_bigint::BigInt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("non-integral {what}: {value} is odd")]
    NonIntegral { what: &'static str, value: BigInt },

    #[error("map is not an involution")]
    NotInvolution,

    #[error("map is not an isometry")]
    NotIsometry,

    #[error("unsupported degree K.K = {0}; only 1 (Bertini) and 2 (Geiser) are supported")]
    UnsupportedDegree(BigInt),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("unknown surface `{0}`")]
    UnknownSurface(String),

    #[error("unknown enumeration strategy `{0}`")]
    UnknownStrategy(String),

    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),

    #[error("degree underflow: blow-up would have degree {0}")]
    DegreeUnderflow(i64),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("center lies on the hypersurface")]
    CenterOnHypersurface,

    #[error("non-transversal input at segment {segment}: {reason}; perturb input")]
    NonTransversal { segment: usize, reason: String },
}
