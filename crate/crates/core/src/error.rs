use thiserror::Error;

use crate::root_data::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("type {family} needs n >= {min}, got n = {n}")]
    RankTooSmall { family: Family, n: usize, min: usize },

    #[error("{0}")]
    Domain(String),

    #[error("word is empty")]
    EmptyWord,

    #[error("index {index} in word is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("index {0} never occurs in the word")]
    MissingIndex(usize),

    #[error("index {index} repeats at consecutive positions {position} and {next}")]
    ConsecutiveRepeat { index: usize, position: usize, next: usize },

    #[error("word is not adapted: pair ({i},{j}) fails to alternate in window {window:?}")]
    NotAdapted { i: usize, j: usize, window: Vec<usize> },

    #[error("expected family {expected}, got {found}")]
    FamilyMismatch { expected: String, found: String },

    #[error("charge {k} is not allowed here: {reason}")]
    BadCharge { k: usize, reason: String },

    #[error("enumeration exceeded cap {cap} (reached {reached})")]
    ResourceLimit { cap: usize, reached: usize },

    #[error("({x},{y}) is not a {kind} corner")]
    NotACorner { x: i64, y: i64, kind: &'static str },

    #[error("point ({x},{y}) is not marked {role}")]
    NotMarked { x: i64, y: i64, role: &'static str },

    #[error("no {role} site in column {column}")]
    NotASite { column: usize, role: &'static str },

    #[error("invalid object: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
