use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation of 1..{degree}: {reason}")]
    NotAPermutation { degree: usize, reason: String },

    #[error("cycle notation, offset {offset}: {message}")]
    CycleSyntax { offset: usize, message: String },

    #[error("point {point} out of range 1..{degree} (offset {offset})")]
    PointOutOfRange { point: usize, degree: usize, offset: usize },

    #[error("point {point} repeated (offset {offset})")]
    RepeatedPoint { point: usize, offset: usize },

    #[error("permutation of degree {degree} is not an element of Iso({n}): {reason}")]
    NotAnIsometry { degree: usize, n: usize, reason: String },

    #[error("group closure exceeded {limit} elements")]
    ClosureLimit { limit: usize },

    #[error("permutation code is empty")]
    EmptyCode,

    #[error("word {index} occurs more than once in the code")]
    DuplicateWord { index: usize },

    #[error("group descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("{kind} is not a field component")]
    NotAField { kind: String },

    #[error("element expression `{text}`: {message}")]
    ElementSyntax { text: String, message: String },

    #[error("bad group descriptor `{0}`")]
    BadDescriptor(String),

    #[error("matrix shape: {0}")]
    Shape(String),

    #[error("row interchange: {0}")]
    Interchange(String),

    #[error("difference matrix failed verification: {0}")]
    NotADifferenceMatrix(String),

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("symbol {symbol} out of range 1..{n}")]
    SymbolOutOfRange { symbol: u64, n: usize },

    #[error("MOLS file, line {line}: {message}")]
    MolsFormat { line: usize, message: String },

    #[error("dataset line {line}, column {column}: {message}")]
    DatasetSyntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dataset line {line}, {what}: {source}")]
    DatasetEntry {
        line: usize,
        what: String,
        source: Box<Error>,
    },

    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),
}
