use thiserror::Error;

/// Errors raised while reading one of the supported text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed problem line `{text}`")]
    ProblemLine { line: usize, text: String },
    #[error("missing problem line")]
    MissingProblemLine,
    #[error("line {line}: duplicate problem line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: malformed record `{text}`")]
    Record { line: usize, text: String },
    #[error("line {line}: expected 2 tokens, found {found}")]
    TokenCount { line: usize, found: usize },
    #[error("line {line}: `{token}` is not an integer")]
    NotAnInteger { line: usize, token: String },
    #[error("declared {declared} records but found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: non-positive length {length}")]
    NonPositiveLength { line: usize, length: i64 },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: i64 },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: i64 },
    #[error("invalid json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {index}: length must be in 1..=2^31, got {length}")]
    InvalidLength { index: usize, length: u64 },
    #[error("edge {index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("vertex {t} is not reachable from {s}")]
    Unreachable { s: usize, t: usize },
    #[error("infeasible flow: requirement {required}, maximum achievable {achieved}")]
    InfeasibleFlow { required: u64, achieved: u64 },
    #[error("weight bound violated: k^2 * sum(w) = {value} must stay below 2^62")]
    WeightBound { value: u128 },
    #[error("copy index {index} out of range 1..={k}")]
    CopyIndex { index: usize, k: usize },
    #[error("maximum degree {degree} exceeds the number of colors {k}")]
    DegreeTooLarge { degree: usize, k: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True when the input is well formed but admits no solution.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::Unreachable { .. } | Error::InfeasibleFlow { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
