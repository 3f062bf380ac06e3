use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("window mismatch: source {source_window:?}, target {target_window:?}")]
    WindowMismatch {
        source_window: (i64, i64),
        target_window: (i64, i64),
    },
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("boundary does not square to zero at degree {0}")]
    NotAComplex(i64),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("maps do not commute with boundaries at degree {0}")]
    NotAChainMap(i64),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invalid complex: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("degree {degree} out of range 0..={dim}")]
    DegreeOutOfRange { degree: usize, dim: i64 },
    #[error("complex is not pure")]
    NotPure,
    #[error("empty complex")]
    Empty,
    #[error("empty subcomplex")]
    EmptySub,
    #[error("identification is not a simplicial isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("facet index {0} out of range")]
    FacetIndex(usize),
    #[error("product has not been constructed from these factors")]
    ProductMismatch,
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("complex is disconnected")]
    Disconnected,
    #[error("coset enumeration exceeded {0} cosets")]
    CosetLimit(usize),
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("local system violates relator {0}")]
    RelatorViolated(usize),
    #[error("generator matrix {0} is not unimodular")]
    NotUnimodular(usize),
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
