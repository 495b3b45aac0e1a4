use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("epsilon must be in (0,1), got {0}")]
    InvalidEpsilon(f64),

    #[error("max pattern length must be at least 1")]
    InvalidMaxLen,

    #[error("text too long: {0} bytes (limit {limit})", limit = u32::MAX)]
    TextTooLong(usize),

    #[error("fingerprint collisions persisted after {0} base draws")]
    PersistentCollisions(usize),

    #[error("grid points do not form a permutation")]
    NotPermutation,

    #[error("bad magic {0:?}, not an index file")]
    BadMagic([u8; 4]),

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u32),

    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },

    #[error("index file truncated")]
    Truncated,

    #[error("malformed index file: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
