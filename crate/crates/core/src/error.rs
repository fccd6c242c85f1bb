use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Stabilization,
    Overflow,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(i64),

    #[error("digits: expected {expected} digits for modulus {expected}, got {actual}")]
    DigitCount { expected: usize, actual: usize },

    #[error("digits: {first} and {second} share residue {residue} mod {modulus}")]
    DuplicateResidue {
        first: i64,
        second: i64,
        residue: i64,
        modulus: i64,
    },

    #[error("alphabet: {0}")]
    Alphabet(String),

    #[error("rules: {0}")]
    Rule(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("spec: {0}")]
    Parse(String),

    #[error("position conflict at {position}: digit system is not a complete residue system")]
    PositionConflict { position: i64 },

    #[error("`{0}` is not a fixed seed (its image does not keep it at digit 0)")]
    NotASeed(String),

    #[error("position 0 is not in the supertile")]
    MissingOrigin,

    #[error("central patch does not grow (stuck at length {length} since level {since})")]
    PatchStall { length: usize, since: u32 },

    #[error("word complexity did not stabilize by level {level}; lower bound p(1..) = {lower_bound:?}")]
    NotStabilized { level: u32, lower_bound: Vec<usize> },

    #[error("position arithmetic overflows at level {level}")]
    Overflow { level: u32 },

    #[error("supertile at level {level} would hold {cells} cells, above the cap of {cap}")]
    DepthCap { level: u32, cells: u128, cap: u128 },

    #[error("word of length {length} is too short for length {needed}")]
    WordTooShort { length: usize, needed: usize },

    #[error("length must be at least 1")]
    ZeroLength,

    #[error("window {window} must be odd")]
    EvenWindow { window: usize },

    #[error("window {window} too small for this digit set; missing positions {missing:?}")]
    Coverage { window: usize, missing: Vec<i64> },

    #[error("window `{0}` does not occur in the fixed point")]
    UnknownWindow(String),

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotStabilized { .. } | Error::PatchStall { .. } => ErrorKind::Stabilization,
            Error::Overflow { .. } | Error::DepthCap { .. } => ErrorKind::Overflow,
            _ => ErrorKind::Validation,
        }
    }
}
