use thiserror::Error;

use crate::term::ModuleTerm;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("module is not quasi-stable: {reason}")]
    NotQuasiStable { reason: String },

    #[error("head term {0} is not in the Pommaret basis")]
    HeadNotInPommaretBasis(ModuleTerm),

    #[error("tail term {0} lies inside the module")]
    TailTermInU(ModuleTerm),

    #[error("tail term {tail} has degree {tail_degree}, head {head} has degree {head_degree}")]
    DegreeMismatch { head: ModuleTerm, head_degree: i64, tail: ModuleTerm, tail_degree: i64 },

    #[error("no marked element assigned to Pommaret basis term {0}")]
    MissingHead(ModuleTerm),

    #[error("duplicate head term {0}")]
    DuplicateHead(ModuleTerm),

    #[error("marked set is not a marked basis: x{var} * (element with head {head}) has nonzero remainder")]
    NotABasis { head: ModuleTerm, var: usize },

    #[error("matrix shapes are incompatible: left column shifts {left_cols:?}, right row shifts {right_rows:?}")]
    ShapeMismatch { left_cols: Vec<i64>, right_rows: Vec<i64> },

    #[error("degree-{degree} piece is not complemented by the sous-escalier (direct sum fails)")]
    DirectSumFails { degree: i64 },

    #[error("shape mismatch: {0}")]
    EvaluationMismatch(String),

    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
