//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while analyzing a graph.
///
/// Errors fall into two families.  *Rejections* mean the input is not a
/// bipartite distance-regular graph satisfying the hypotheses (diameter at
/// least 4, valency at least 3); these map to exit code 1 in the CLI.
/// *Internal failures* mean a proven identity did not hold numerically,
/// which always indicates a bug or numerical breakdown, never a property
/// of the input; these map to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("not distance-regular: {0}")]
    NotDistanceRegular(String),

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("eigensolver did not converge: off-diagonal residual {residual:.3e} after {sweeps} sweeps")]
    NoConvergence { residual: f64, sweeps: usize },

    #[error("ill-separated spectrum: cluster gap {gap:.3e} below 10x tolerance {tol:.3e}")]
    IllSeparated { gap: f64, tol: f64 },

    #[error("verified identity failed: {0}")]
    Identity(String),
}

impl Error {
    /// True when the error rejects the *input* rather than reporting an
    /// internal inconsistency.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidGraph(_)
                | Error::NotDistanceRegular(_)
                | Error::Hypothesis(_)
                | Error::Io(_)
        )
    }

    /// CLI exit code: 1 for input rejections, 2 for internal failures.
    pub fn exit_code(&self) -> i32 {
        if self.is_rejection() {
            1
        } else {
            2
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
