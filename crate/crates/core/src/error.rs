use thiserror::Error;

use crate::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scale needs at least 2 grades, got {0}")]
    TooFewGrades(usize),

    #[error("duplicate grade label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown grade `{label}` in scale `{scale}`")]
    UnknownGrade { scale: String, label: String },

    #[error("grade rank {rank} is outside scale `{scale}` of size {size}")]
    GradeNotInScale {
        scale: String,
        rank: usize,
        size: usize,
    },

    #[error("operands belong to different scales (`{left}` vs `{right}`)")]
    ScaleMismatch { left: String, right: String },

    #[error("negation table has {found} entries, scale has {expected} grades")]
    NegationNotTotal { expected: usize, found: usize },

    #[error("negation is not antitone: {lo} <= {hi} but {lo}' = {lo_image} < {hi}' = {hi_image}")]
    NegationNotAntitone {
        lo: String,
        hi: String,
        lo_image: String,
        hi_image: String,
    },

    #[error("negation must map bottom to top and top to bottom ({0})")]
    NegationBoundary(String),

    #[error("empty grade string")]
    EmptyString,

    #[error("grade string is not nondecreasing at position {0}")]
    NotSorted(usize),

    #[error("`{0}` is not a canonical valuation")]
    NotCanonical(String),

    #[error("valuation length {len} exceeds the configured cap of {cap}")]
    LengthCapExceeded { len: usize, cap: usize },

    #[error("supremum search for {f} => {g} did not stabilise within length bound {bound}")]
    SearchBoundExhausted { f: String, g: String, bound: usize },

    #[error("enumeration budget overflows a 64-bit counter")]
    BudgetOverflow,

    #[error("enumeration length bound must be at least 1")]
    EmptyBudget,

    #[error("law check needs about {needed} evaluations, ceiling is {ceiling}; use a smaller scale or length")]
    CostCeilingExceeded { needed: u128, ceiling: u64 },

    #[error("invalid rule base: {0}")]
    InvalidRuleBase(String),

    #[error("{source} while firing {chain}")]
    Derivation { chain: String, source: Box<Error> },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("`{0}` is not a single grade; numeric evaluation needs grade pvs")]
    NotAGrade(String),

    #[error(transparent)]
    Parse(#[from] Box<ParseError>),
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(Box::new(e))
    }
}
