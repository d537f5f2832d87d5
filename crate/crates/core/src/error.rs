use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("input is empty")]
    EmptyInput,

    #[error("no FASTA header: input must start with '>'")]
    MissingHeader,

    #[error("FASTA header on line {line} has no sequence name")]
    EmptyName { line: usize },

    #[error("duplicate sequence name '{0}'")]
    DuplicateName(String),

    #[error("sequence '{0}' has no residues")]
    EmptySequence(String),

    #[error("position {pos} is outside a sequence set of length {len}")]
    OutOfRange { pos: usize, len: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index was built with {index} but the search was asked to use {search}")]
    ParamsMismatch { index: String, search: String },

    #[error("input of {len} symbols exceeds the 32-bit position limit ({max})")]
    TooLong { len: usize, max: usize },

    #[error("cannot allocate {entries} index entries")]
    Allocation { entries: usize },

    #[error("oracle refused: {cells} cells exceeds the cap of {max_cells}")]
    OracleTooLarge { cells: u128, max_cells: u128 },

    #[error("malformed report line {line}: {reason}")]
    MalformedReport { line: usize, reason: String },
}
