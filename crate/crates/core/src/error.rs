use thiserror::Error;

/// Errors reported by the exact engine, the simulator and the statistics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A requested size exceeds what the library is configured to hold in memory.
    #[error("capacity exceeded: {what} = {requested} is above the limit {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// An argument outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Too few samples to form a statistic.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
