use thiserror::Error;

/// Errors raised by the engine. Each variant maps onto one stable machine
/// code used by the service and CLI layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("protocol violation: {0}")]
    ProtocolViolation(String),

    #[error("insufficient funds: {payer} holds {available}, needs {required}")]
    InsufficientFunds {
        payer: &'static str,
        available: u64,
        required: u64,
    },

    #[error("unsupported order {0}: the dual basis needs an even group order")]
    UnsupportedOrder(u32),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::ProtocolViolation(_) => "protocol_violation",
            Error::InsufficientFunds { .. } => "insufficient_funds",
            Error::UnsupportedOrder(_) => "unsupported_order",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
