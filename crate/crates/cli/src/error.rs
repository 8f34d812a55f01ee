use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}; reduce --n or --trials")]
    Capacity(coupon_core::Error),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Consistency(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<coupon_core::Error> for CliError {
    fn from(e: coupon_core::Error) -> Self {
        match e {
            coupon_core::Error::Capacity { .. } => CliError::Capacity(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}
