//! Vectors and matrices over the scalars, and their proof-term encodings.

mod codec;
mod compile;
pub mod interchange;
pub mod library;
mod linalg;
mod measure;

use thiserror::Error;

use crate::reduce::ReduceError;

pub use codec::{decode, encode};
pub use compile::compile_matrix;
pub use library::{gate, gate_matrix, state, state_vector, with_builtins};
pub use linalg::{kron, mat_mul, mat_vec, vec_add, vec_scale, CMatrix, CVector};
pub use measure::{born_probabilities, cascade, measure, measure_with, MeasureOptions, SampleReport};

#[derive(Debug, Error)]
pub enum VecError {
    #[error("vector length {0} is not a power of two")]
    BadLength(usize),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a canonical proof of a qubit type: {0}")]
    NotCanonical(String),
    #[error("unknown gate or state `{0}`")]
    UnknownName(String),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("malformed matrix document: {0}")]
    Interchange(String),
    #[error("thread pool: {0}")]
    Threads(String),
}
