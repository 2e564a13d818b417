use thiserror::Error;

use crate::dimer::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimerError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("arrow {arrow} in {count} {sign} faces")]
    FaceCount { arrow: usize, count: usize, sign: Sign },
    #[error("face {face} is not composable at arrow {arrow}")]
    NotComposable { face: String, arrow: usize },
    #[error("head-star mismatch: {0}")]
    HeadStar(String),
    #[error("odd Euler characteristic {0}")]
    OddEuler(i64),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("not a torus: {0}")]
    NotTorus(String),
    #[error("{0}")]
    Invalid(String),
}
