//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {symbol} out of range for alphabet size {r}")]
    SymbolOutOfRange { symbol: u8, r: u8 },

    #[error("alphabet size {r} not supported (must be 2..=10)")]
    BadAlphabet { r: u8 },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: u8, right: u8 },

    #[error("operation defined only for (0,1)-matrices, found symbol {symbol}")]
    NotBinary { symbol: u8 },

    #[error("row index {index} out of range for {m} rows")]
    RowIndexOutOfRange { index: usize, m: usize },

    #[error("duplicate row index {index}")]
    DuplicateRowIndex { index: usize },

    #[error("matrix dimensions are inconsistent: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("diagonal and off-diagonal symbols must differ (both {symbol})")]
    EqualSymbols { symbol: u8 },

    #[error("all four block heights are zero")]
    EmptyBlocks,

    #[error("matrix must have even dimension, found {0} rows")]
    OddDimension(usize),

    #[error("matrix must be square, found {m}x{n}")]
    NotSquare { m: usize, n: usize },

    #[error("canonical form only computed for matrices up to 8x8, found {m}x{n}")]
    ConfigTooLarge { m: usize, n: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
