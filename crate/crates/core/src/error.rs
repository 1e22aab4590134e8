use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field order {0}; supported orders are 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedOrder(u32),
    #[error("a line over GF({q}) has only {max} points; cannot place {requested}")]
    TooManyPoints { q: u32, requested: usize, max: usize },
    #[error("no hyperoval exists over GF({0}): the order must be even")]
    OddCharacteristic(u32),
    #[error("flat index {i} out of range for rank {r}")]
    IndexOutOfRange { r: usize, i: usize },
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("rank {k} out of range 0..={max}")]
    RankOutOfRange { k: usize, max: usize },
    #[error("subset is not a flat: {0}")]
    NotAFlat(String),
    #[error("instance too large: {what} is {got}, bound is {bound}")]
    TooLarge {
        what: &'static str,
        got: usize,
        bound: usize,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("no representable amalgam found (internal error: preconditions should rule this out)")]
    NotRepresentableAmalgam,
    #[error("malformed document: {0}")]
    MalformedDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
