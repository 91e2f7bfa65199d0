use core::fmt;

/// Errors reported by the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Error {
    /// An even number has no multiplicative inverse modulo a power of two.
    NotInvertible,
    /// A word string had the wrong number of words.
    LengthMismatch { expected: usize, actual: usize },
    /// An operation on word strings was given an empty string.
    EmptyWordString,
    /// Word width outside the supported set.
    InvalidWidth(u32),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::NotInvertible => f.write_str("even value has no inverse modulo 2^w"),
            Error::LengthMismatch { expected, actual } => {
                write!(f, "expected {expected} words, got {actual}")
            }
            Error::EmptyWordString => f.write_str("word string is empty"),
            Error::InvalidWidth(w) => write!(f, "unsupported word width {w}"),
        }
    }
}

impl core::error::Error for Error {}
