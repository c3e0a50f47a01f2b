use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable a{index} exceeds the declared variable count k={k}")]
    VarOutOfRange { index: u32, k: u32 },

    #[error("{what} {requested} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("truth tables support at most {max} variables, got k={k}")]
    TruthTableBudget { k: u32, max: u32 },

    #[error("count for {class} unavailable at k={k}, n={n}: {reason}")]
    CountUnavailable {
        class: String,
        k: u32,
        n: u32,
        reason: String,
    },

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
