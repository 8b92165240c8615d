use thiserror::Error;

/// Coarse classification used by callers (notably the CLI) to map errors onto
/// exit codes without matching every variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad arguments or configuration supplied by the caller.
    Config,
    /// Unreadable or malformed input data.
    Input,
    /// Numerical failure: divergent series, non-convergent iteration.
    Numeric,
    /// Invariant violation that should be unreachable from valid inputs.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two whitespace-separated labels, got {found} token(s)")]
    MalformedLine { line: usize, found: usize },

    #[error("line {line}: self-loop on node {label:?} is not allowed")]
    SelfLoop { line: usize, label: String },

    #[error("unknown builtin dataset {0:?} (available: karate, lesmis)")]
    UnknownDataset(String),

    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("cannot remove absent edge ({a}, {b})")]
    NoSuchEdge { a: String, b: String },

    #[error("cannot add edge ({a}, {b}): already present")]
    EdgeExists { a: String, b: String },

    #[error("cannot add self-loop on node {0}")]
    SelfLoopEdge(String),

    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "series diverges: alpha * lambda_max = {alpha_lambda:.6} is not below 1; \
         use a finite horizon or a smaller alpha"
    )]
    Divergent { alpha_lambda: f64 },

    #[error("power iteration did not converge in {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("internal numeric fault: {0}")]
    NumericFault(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            MalformedLine { .. } | SelfLoop { .. } | UnknownDataset(_) | Io(_) => {
                ErrorCategory::Input
            }
            NodeOutOfRange { .. }
            | NoSuchEdge { .. }
            | EdgeExists { .. }
            | SelfLoopEdge(_)
            | DuplicateLabel(_)
            | InvalidConfig(_) => ErrorCategory::Config,
            Divergent { .. } | NoConvergence { .. } => ErrorCategory::Numeric,
            NumericFault(_) => ErrorCategory::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
