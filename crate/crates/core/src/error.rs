use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The kernel of M(G) has more free coordinates than the enumeration limit allows.
    #[error("kernel nullity {nullity} exceeds the enumeration limit {limit}")]
    NullityTooLarge { nullity: usize, limit: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// True for errors caused by limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::NullityTooLarge { .. }
                | Error::BudgetExhausted { .. }
                | Error::Resource(_)
                | Error::Overflow(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
