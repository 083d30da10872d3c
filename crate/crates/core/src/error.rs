use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value is too large for the sieve that was built.
    #[error("capacity exceeded: {what} needs a sieve limit of at least {required} (current limit {limit})")]
    Capacity {
        what: String,
        required: u128,
        limit: u128,
    },

    /// The brute-force oracle refuses bounds past its budget.
    #[error(
        "oracle budget exceeded: T = {t} is above the budget {budget}; use the stratified engine"
    )]
    Budget { t: u64, budget: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// The point is one of the marked (stacky) points, where the height degenerates.
    #[error("[{a}:{b}] is a marked point")]
    StackyPoint { a: i64, b: i64 },

    /// Two independent characterisations disagreed. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors the CLI reports with the capacity exit code.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::Capacity { .. } | Error::Budget { .. } | Error::Overflow(_)
        )
    }
}
