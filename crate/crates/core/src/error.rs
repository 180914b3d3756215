use thiserror::Error;

/// Crate-wide error type. Operations that can fail on user-reachable input
/// return `Result<T>`; violations of internal invariants panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field degree m={0} outside supported range 1..=1024")]
    DegreeOutOfRange(u32),

    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegreeMismatch { expected: u32, found: u32 },

    #[error("modulus is reducible over GF(2)")]
    ReducibleModulus,

    #[error("element is not invertible (zero)")]
    NotInvertible,

    #[error("exact element order is only computed for m <= 64 (got m={0})")]
    OrderUnavailable(u32),

    #[error("{0} does not divide the field degree {1}")]
    NotASubfieldDegree(u32, u32),

    #[error("generator powers require a verified primitive modulus")]
    NotPrimitive,

    #[error("cannot parse {what}: {text:?}")]
    Parse { what: &'static str, text: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("cannot factor a constant polynomial")]
    ConstantPolynomial,

    #[error("exact division failed: remainder is nonzero")]
    DoesNotDivide,

    #[error("specialization degree collapsed; this substitution cannot serve as a witness")]
    DegreeCollapse,

    #[error("exponent {0} exceeds the configured cap {1}")]
    ExponentCap(u64, u64),

    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,

    #[error("quadratic binomial is degenerate: the two monomials coincide (s=0, i=t)")]
    DegenerateBinomial,

    #[error("exponent {0} is not a sum of two distinct powers of 2")]
    NotQuadraticExponent(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field size 2^{0} exceeds the desk-scale cap 2^{1}")]
    FieldTooLarge(u32, u32),

    #[error("divisibility test with gcd(n, r) != 1 is inapplicable (n={n}, r={r})")]
    InapplicableMultiplicity { n: u64, r: u64 },

    #[error("family {family}: constraint violated: {constraint}")]
    ConstraintViolated { family: String, constraint: String },

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("missing parameter {0} for family {1}")]
    MissingParameter(&'static str, &'static str),

    #[error("search budget exhausted after {0} trials")]
    BudgetExhausted(u64),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
