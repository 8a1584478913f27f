// SPDX-License-Identifier: MIT OR Apache-2.0

//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("quadratic numbers over different fields: disc {left} vs disc {right}")]
    DiscMismatch { left: i64, right: i64 },

    #[error("element {0} is not invertible")]
    NotInvertible(String),

    #[error("{op}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid relation matrix: {0}")]
    InvalidRelationMatrix(String),

    #[error("relation {relation} has non-constant {kind} sums ({first} vs {other})")]
    NonConstantValency {
        relation: usize,
        kind: &'static str,
        first: usize,
        other: usize,
    },

    #[error("transpose of relation {0} is not a relation of the scheme")]
    NotTransposeClosed(usize),

    /// `(A_i A_j)[x][y]` differs between two pairs `(x, y)` of the same relation `l`.
    #[error(
        "not an association scheme: entries of A_{i}A_{j} on relation {l} take values {first} and {other}"
    )]
    NonConstantIntersection {
        i: usize,
        j: usize,
        l: usize,
        first: u64,
        other: u64,
    },

    #[error("adjacency algebra is not commutative: A_{0}A_{1} != A_{1}A_{0}")]
    NotCommutative(usize, usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("identity failed: {0}")]
    IdentityFailed(String),

    #[error("inadmissible parameter {name} = {value}: {reason}")]
    Inadmissible {
        name: &'static str,
        value: i64,
        reason: &'static str,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("inconsistent eigen data: {0}")]
    InconsistentEigenData(String),

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
