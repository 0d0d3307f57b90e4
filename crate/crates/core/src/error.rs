use std::fmt;

/// Source position of a parse failure, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Position, message: String },

    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: Position },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("quotient by the zero ideal")]
    QuotientByZero,

    #[error("ideal is not monomial")]
    NotMonomial,

    #[error("ideal is not squarefree monomial")]
    NotSquarefree,

    #[error("ideal is not homogeneous")]
    NotHomogeneous,

    #[error("unit ideal where a proper ideal is required")]
    UnitIdeal,

    #[error("zero ideal where a nonzero ideal is required")]
    ZeroIdeal,

    #[error("grade undefined: aM = M")]
    GradeUndefined,

    #[error("invalid regular sequence: {0}")]
    InvalidWitness(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal defect: {0}")]
    Defect(String),

    #[error("{0}")]
    Instance(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos: Position { line, column },
            message: message.into(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
