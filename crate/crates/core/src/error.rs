use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("item index {index} out of range for a ground set of {n} items")]
    ItemIndex { index: usize, n: usize },

    #[error("function index {index} out of range for {m} functions")]
    FunctionIndex { index: usize, m: usize },

    #[error("item {item} is already a member of the set")]
    ItemPresent { item: usize },

    #[error("candidate set has {size} items but the cardinality bound is {k}")]
    Cardinality { size: usize, k: usize },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exhaustive routine would need more work than its configured cap allows.
    #[error("{what} needs {required} steps, exceeding the budget of {limit}")]
    Budget {
        what: &'static str,
        required: u128,
        limit: u64,
    },
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
