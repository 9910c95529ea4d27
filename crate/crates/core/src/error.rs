use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlignError {
    #[error("document contains no non-blank line")]
    EmptyDocument,
    #[error("paragraph must contain at least one sentence")]
    EmptyParagraph,
    #[error("cannot fit a TF-IDF model on an empty corpus")]
    EmptyCorpus,
    #[error("similarity matrix has zero rows or columns")]
    EmptyMatrix,
    #[error("alignment component over {axis} indices {first}..={last} interleaves with another component")]
    NonContiguousComponent {
        axis: &'static str,
        first: usize,
        last: usize,
    },
    #[error("index {index} out of bounds (1..={bound})")]
    OutOfBounds { index: usize, bound: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid synthesis parameters: {0}")]
    InvalidSpec(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = AlignError> = std::result::Result<T, E>;
