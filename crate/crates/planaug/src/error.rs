use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("bad argument: {0}")]
    Argument(String),
    #[error("size guard exceeded: {0}")]
    Capacity(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(usize, usize),
    #[error("illegal flip of {0}-{1}: opposite vertices already adjacent")]
    IllegalFlip(usize, usize),
    #[error("not a hitting set: triangle {0:?} is missed")]
    NotHittingSet([usize; 3]),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible(_) | Error::NotHittingSet(_) => 1,
            _ => 2,
        }
    }
}
