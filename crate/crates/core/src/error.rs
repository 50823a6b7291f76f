use thiserror::Error;

use crate::graph::{ArcId, EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph is not biconnected")]
    NotBiconnected,

    #[error("vertex {0} does not exist")]
    MissingVertex(VertexId),

    #[error("edge {0} does not exist")]
    MissingEdge(EdgeId),

    #[error("arc {0} does not exist")]
    MissingArc(ArcId),

    /// An arc of a contraction sequence was destroyed by an earlier contraction.
    #[error("arc {arc} (position {position} of the sequence) vanished before its contraction")]
    VanishedArc { position: usize, arc: ArcId },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error(
        "exhaustive cut-covering provider refuses |X| = {terminals} (limit {limit}); \
         use the trivial provider or raise the limit"
    )]
    ProviderRefused { terminals: usize, limit: usize },

    /// A structural guarantee of the algorithm failed to hold. Always a bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    pub(crate) fn inconsistency(msg: impl Into<String>) -> Self {
        Error::InternalInconsistency(msg.into())
    }
}
