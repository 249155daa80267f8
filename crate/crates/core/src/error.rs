use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected {expected} orientation characters for h={h}, got {got}")]
    WrongLength { h: usize, expected: usize, got: usize },
    #[error("unexpected character {0:?} in tournament encoding (only '0' and '1' allowed)")]
    BadCharacter(char),
    #[error("unsupported vertex count {0} (supported range is 1..={max})", max = crate::MAX_H)]
    Unsupported(usize),
    #[error("bad vertex subset: {0}")]
    BadSubset(String),
    #[error("pattern has {pattern} vertices but host has only {host}")]
    SizeMismatch { pattern: usize, host: usize },
    #[error("corrupt cache file {path}: {reason}")]
    CorruptCache { path: PathBuf, reason: String },
    #[error("odd coefficient of x^{0} did not cancel")]
    OddCoefficientResidue(usize),
    #[error("bias parameter x must lie strictly between 0 and 1/2, got {0}")]
    XOutOfRange(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("probability must lie in [0, 1], got {0}")]
    BadProbability(String),
    #[error("n={n} is not a multiple of {modulus}")]
    NotMultiple { n: usize, modulus: usize },
    #[error("pattern on {k} vertices must be smaller than h={h}")]
    StarTooBig { k: usize, h: usize },
    #[error("could not pack {k} edge-disjoint copies of K_{h} into K_{r} after {attempts} attempts")]
    PackingFailed { k: usize, h: usize, r: usize, attempts: usize },
    #[error("exact census over C({n},{h}) = {subsets} subsets exceeds the limit of {limit}")]
    TooLarge { n: usize, h: usize, subsets: u128, limit: u128 },
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
