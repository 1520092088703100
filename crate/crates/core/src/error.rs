use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(i128),
    #[error("prime {0} is not admissible here (need p >= 5)")]
    BadPrime(i128),
    #[error("modulus {0} is not supported (expected 3 or 4)")]
    InvalidModulus(i64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("homogeneous evaluation at (0, 0)")]
    BothZero,
    #[error("A and B are both the zero polynomial")]
    BothZeroPolys,
    #[error("polynomial is zero")]
    ZeroPoly,
    #[error("polynomial degree {degree} exceeds declared bound {bound}")]
    DegreeExceedsBound { degree: usize, bound: usize },
    #[error("cannot parse polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("singular model: discriminant vanishes identically")]
    SingularSurface,
    #[error("fiber at t = {0} is singular")]
    SingularFiber(String),
    #[error("singular Weierstrass curve (discriminant 0)")]
    SingularCurve,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("curve coefficients are not integral after scaling by {0}")]
    NotIntegralAfterScaling(String),
    #[error("curve model does not have integer coefficients")]
    NonIntegralModel,
    #[error("place has good reduction")]
    GoodReduction,
    #[error("place does not divide the discriminant")]
    PlaceNotOnDiscriminant,

    #[error("leading coefficient {0} is not a square in Q")]
    LeadingNotSquare(String),
    #[error("quartic still has a cubic term")]
    NotDepressed,
    #[error("expected a polynomial of degree 4, got degree {0}")]
    NotDegreeFour(usize),
    #[error("leading quartic coefficient is zero")]
    ZeroLeading,

    #[error("no representation a = 3A^2 C, b = B^2 C with gcd(A, B) = 1")]
    NoCmRepresentation,
    #[error("A and B must be coprime (gcd = {0})")]
    NotCoprime(i128),
    #[error("local analysis did not converge at p = {0}")]
    LocalAnalysisDiverged(u64),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
