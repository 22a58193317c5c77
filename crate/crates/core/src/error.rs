use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {point} out of range for degree {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("image table is not a bijection of 0..{0}")]
    NotBijective(usize),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("order {0} exceeds the cap of {max}", max = crate::reldig::MAX_ORDER)]
    TooLarge(usize),
    #[error("a permutation group needs at least one generator")]
    NoGenerators,
    #[error("group is not transitive")]
    Intransitive,
    #[error("block seed points must be distinct")]
    EqualPoints,
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("digraph is not regular")]
    NotRegular,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("branch (1) of the dichotomy does not hold for this digraph")]
    Branch1NotSatisfied,
    #[error("design check failed: {0}")]
    DesignInvariant(String),
    #[error("dichotomy violated: neither branch holds (n={n}, d={d}, kappa={kappa})")]
    DichotomyViolated { n: usize, d: usize, kappa: usize },
    #[error("semigroup closure refused for degree {0} (limit 7)")]
    ClosureTooLarge(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
