use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("n = {n} is odd but a half-turn element n/2 was requested")]
    HalfWithoutEvenN { n: u64 },

    #[error("{set} element {value} out of range for n = {n} ({bound})")]
    OutOfRange { set: &'static str, value: i64, n: u64, bound: &'static str },

    #[error("n must be positive")]
    ZeroOrder,

    #[error("spoke set S is empty; the graph cannot be connected")]
    EmptySpokes,

    #[error("graph is not connected")]
    NotConnected,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial division is not exact over the integers")]
    InexactDivision,

    #[error("could not separate a root of modulus ~{modulus} from the unit circle at {digits} digits")]
    UnitCircleAmbiguity { modulus: f64, digits: u32 },

    #[error("P1 vanishes identically")]
    DegenerateSystem,

    #[error("closed-form value is not an integer: {0}")]
    NonIntegralResult(String),

    #[error("structure constant {value} is not positive")]
    NonPositiveStructure { value: String },

    #[error("{0} is not a perfect square; square structure does not hold")]
    NotAPerfectSquare(String),

    #[error("cofactor {cofactor} does not divide {value}")]
    NonDivisible { cofactor: String, value: String },

    #[error("parity remark violated: witness {0} is odd")]
    ParityViolation(String),

    #[error("quadrature did not converge within {points} points")]
    NonConvergence { points: usize },

    #[error("no linear recurrence of order <= {max_order}")]
    OrderExceeded { max_order: usize },

    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("invalid spec JSON: {0}")]
    Json(String),
}

impl Error {
    /// True for failures that indicate a bug or a falsified identity rather
    /// than bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision
                | Error::DegenerateSystem
                | Error::NonIntegralResult(_)
                | Error::NotAPerfectSquare(_)
                | Error::NonDivisible { .. }
                | Error::ParityViolation(_)
                | Error::NonConvergence { .. }
                | Error::UnitCircleAmbiguity { .. }
        )
    }
}
