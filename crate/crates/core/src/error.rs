use std::path::PathBuf;

/// Errors produced by the pipeline stages.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty manifest")]
    EmptyManifest,
    #[error("{path}: {source}")]
    FileRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: unsupported format")]
    UnsupportedFormat { path: PathBuf },
    #[error("{path}: {reason}")]
    Decode { path: PathBuf, reason: String },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
    #[error("rect ({x},{y}) {w}x{h} out of bounds for {img_w}x{img_h} image")]
    RectOutOfBounds {
        x: u32,
        y: u32,
        w: u32,
        h: u32,
        img_w: u32,
        img_h: u32,
    },
    #[error("empty point set")]
    EmptyPoints,
    #[error("cannot split: single cluster")]
    CannotSplit,
    #[error("no palm: distance floor too high")]
    NoPalm,
    #[error("fewer than 2 rows with edge pixels")]
    TooFewEdgeRows,
    #[error("no idle frame before idle_until")]
    NoIdleFrame,
    #[error("empty key list")]
    EmptyKeys,
    #[error("key {0} never observed")]
    KeyNeverObserved(String),
    #[error("ranges collide: {0},{1}")]
    RangesCollide(String, String),
    #[error("unknown key name: {0}")]
    UnknownKey(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
