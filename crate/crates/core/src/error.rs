use thiserror::Error;

/// Errors raised by the library.
///
/// Verdicts (a graph that is not mediatic, a token system that is not a
/// medium) are never errors; they are reported with witnesses. Errors are
/// reserved for bad input, violated preconditions and exhausted budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown token `{0}`")]
    UnknownToken(String),

    /// Structurally invalid input; `field` names the offending location.
    #[error("invalid input at {field}: {message}")]
    Input { field: String, message: String },

    /// The token system violates a well-formedness rule that the operation
    /// depends on (missing or ambiguous reverse, duplicate token action).
    #[error("malformed token system: {0}")]
    Malformed(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An operation needing a mediatic graph got one that is not.
    #[error("graph is not mediatic (connected: {}, bipartite: {}, like-transitive: {})", .0.g1, .0.g2, .0.g3)]
    NotMediatic(Box<crate::graph::MediaticReport>),

    /// An operation needing a medium got a token system that is not one.
    #[error("token system is not a medium: {}", .0.failure.as_deref().unwrap_or("axioms fail"))]
    NotAMedium(Box<crate::medium::MediumReport>),

    /// An exhaustive search needed more states than the configured budget.
    #[error("enumeration budget of {budget} exceeded while {context}")]
    Budget { budget: usize, context: String },

    /// A certified result failed its own verification. Signals a bug.
    #[error("internal contradiction: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
