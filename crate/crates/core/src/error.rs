use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{m} exceeds the supported maximum of 256")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("index {index} is not an element of a field of order {q}")]
    ElementOutOfRange { index: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("the graded piece R({dt}, {dx}) is zero (requires dX >= 0 and dT + eta*dX >= 0)")]
    EmptyGradedPiece { dt: i64, dx: i64 },
    #[error("({d2}, {c2}) is not a lattice point of the polygon")]
    OutsidePolygon { d2: i64, c2: i64 },
    #[error("monomial does not have the expected bidegree")]
    NotHomogeneous,
    #[error("bidegrees belong to different surfaces (eta {0} vs {1})")]
    MixedSurfaces(u32, u32),
    #[error("closed-form parameters are not available for eta = 1")]
    EtaOneUnsupported,
    #[error("hypothesis (H) does not hold for this bidegree")]
    HypothesisHNotSatisfied,
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("({d2}, {c2}) is not a representative in K*")]
    NotARepresentative { d2: i64, c2: i64 },
    #[error("codeword budget exceeded and witness weight does not certify the distance")]
    BudgetExceededWithoutWitnessMatch,
    #[error("puncturing preconditions violated: {0}")]
    PrecedingConditionsViolated(&'static str),
    #[error("no closed-form bound applies: {0}")]
    CaseOutOfRange(&'static str),
    #[error("the code is zero-dimensional")]
    TrivialCode,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
