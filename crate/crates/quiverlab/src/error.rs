use thiserror::Error;

/// Errors shared by the library's operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("totality violation: {0}")]
    Totality(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exhausted after {0} nodes")]
    Budget(u64),

    #[error("invalid blow-up spec: {0}")]
    InvalidSpec(String),

    /// Raised when a structural guarantee that should hold for a verified
    /// input fails to hold. This indicates a bug in the library, never bad
    /// input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Node-count meter for backtracking searches. Every assignment attempt
/// spends one node; exhaustion aborts the search with [`QuiverError::Budget`]
/// instead of hanging.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

/// Default search budget when none is configured.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    /// Spends one search node.
    pub fn spend(&mut self) -> Result<(), QuiverError> {
        if self.used >= self.limit {
            return Err(QuiverError::Budget(self.used));
        }
        self.used += 1;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
