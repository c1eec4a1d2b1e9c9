use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("Cartan matrix is not of finite type: root height exceeded {0}")]
    NotFiniteType(i64),
    #[error("unknown root-system label {0:?}")]
    UnknownLabel(String),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),
    #[error("weight {0} is not integral; block matrices are only computed for integral weights")]
    NonIntegralWeight(String),
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("invalid norm parameter: {0}")]
    InvalidNormParam(String),
    #[error("element is not of weight zero")]
    NotWeightZero,
    #[error("element is not central: [z, b_{0}] != 0")]
    NotCentral(usize),
    #[error("Killing form is degenerate; the algebra is not semisimple")]
    DegenerateKilling,
    #[error("result reaches depth {depth}, beyond the slice truncation {limit}")]
    DepthOverflow { depth: i64, limit: usize },
    #[error(
        "height of lambda - mu is {height}, not below the filtration length {length}; \
         the multiplicity beyond the truncation is left unresolved"
    )]
    FiltrationLength { height: i64, length: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Weyl group of order {0} is too large to enumerate")]
    WeylGroupTooLarge(u128),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// True for failures that signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}
