use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A request needs more work or memory than the configured budget allows.
    #[error("{what} budget exceeded: requested {requested}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("operation requires a canonicalized series")]
    NotCanonical,

    #[error("series has radix {0}; a dyadic value is only defined for radix 2")]
    NotDyadic(u32),

    #[error("coefficient {value} at index {index} exceeds the declared bound {bound}")]
    CoefficientBound {
        index: usize,
        value: String,
        bound: String,
    },

    #[error("exponents must be non-decreasing: a[{index}] = {value} after {previous}")]
    NonMonotoneExponents { index: usize, value: u64, previous: u64 },

    /// Digits could not be pinned down before the refinement cap; carries what was resolved.
    #[error("digits unresolved within the exponent budget; resolved prefix {integer_part}.{prefix}")]
    PrecisionUnresolvable { integer_part: String, prefix: String },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid sequence{}: {reason}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    InvalidSequence { line: Option<usize>, reason: String },

    #[error("invalid series specification: {0}")]
    InvalidSeries(String),

    #[error("invalid interval: lower bound exceeds upper bound")]
    InvalidInterval,

    #[error("unsupported base {0}; only 2 and 10 are available")]
    UnsupportedBase(u32),

    #[error("witness search cap exceeded: no p <= {0} satisfies the certificate inequalities")]
    CapExceeded(u32),

    /// The certificate structure guaranteed by the argument failed to hold.
    /// This indicates an implementation bug, not an input problem.
    #[error("certificate invariant violated: {0}")]
    CertificateInvariant(String),

    #[error("invalid cap {name}={value:?}: expected a non-negative integer")]
    InvalidCap { name: String, value: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
