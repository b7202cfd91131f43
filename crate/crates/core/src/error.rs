use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("not gentle: {0}")]
    NotGentle(String),

    #[error("relation {first}{second} is not composable: target of {first} differs from source of {second}")]
    RelationNotComposable { first: String, second: String },

    #[error("algebra is not proper (relation-free cycle {0})")]
    NotProper(String),

    #[error("algebra is not homologically smooth (cyclic forbidden thread {0})")]
    NotSmooth(String),

    #[error("loop arrow {0} is not supported by the surface construction")]
    UnsupportedLoop(String),

    #[error("algebra is not connected ({0} components)")]
    Disconnected(usize),

    #[error("invalid idempotent: {0}")]
    InvalidIdempotent(String),

    #[error("expected an algebra of the form A^(n) with {0}")]
    NotAnForm(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("inconsistent dual walk: {0}")]
    InconsistentWalk(String),

    #[error("cycle is not embedded: {0}")]
    NotEmbedded(String),

    #[error("no symplectic basis found among {pool} simple closed curves (genus {genus})")]
    SymplecticBasisNotFound { genus: usize, pool: usize },

    #[error("genus {genus} outside the range where {invariant} is defined")]
    GenusOutOfRange { genus: usize, invariant: &'static str },

    #[error("Arf invariant undefined: {0}")]
    ArfUndefined(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::NotGentle(_) => "NotGentle",
            Error::RelationNotComposable { .. } => "RelationNotComposable",
            Error::NotProper(_) => "NotProper",
            Error::NotSmooth(_) => "NotSmooth",
            Error::UnsupportedLoop(_) => "UnsupportedLoop",
            Error::Disconnected(_) => "Disconnected",
            Error::InvalidIdempotent(_) => "InvalidIdempotent",
            Error::NotAnForm(_) => "NotAnForm",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InconsistentWalk(_) => "InconsistentWalk",
            Error::NotEmbedded(_) => "NotEmbedded",
            Error::SymplecticBasisNotFound { .. } => "SymplecticBasisNotFound",
            Error::GenusOutOfRange { .. } => "GenusOutOfRange",
            Error::ArfUndefined(_) => "ArfUndefined",
        }
    }
}
