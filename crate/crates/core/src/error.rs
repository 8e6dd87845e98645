use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("values from different lattices or universes were mixed")]
    LatticeMismatch,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("numerical integrity: {0}")]
    Numerical(String),
    #[error("closure did not reach a fixpoint within {0} elements")]
    ClosureDiverged(usize),
    #[error("duplicate child in dom")]
    DuplicateChild,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unresolved constant `{0}`")]
    Unresolved(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("no counterexample: {0}")]
    NoCounterexample(String),
    #[error("corpus entry `{id}` failed the sanity gate: {reason}")]
    Sanity { id: String, reason: String },
    #[error("malformed input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
