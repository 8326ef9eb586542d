//! Lambda-S: booleans, abstractions over base or span types, and linear
//! combinations. Base abstractions distribute over superposed arguments;
//! span abstractions substitute them whole.

mod parser;
mod reduce;
mod syntax;
mod typing;

use thiserror::Error;

pub use parser::{has_header, parse_s_source, parse_sterm, parse_stype, SSourceFile, HEADER};
pub use reduce::{combination, combinations_close, from_combination, s_normalize, s_normalize_trace, s_step, Combination, SRule};
pub use syntax::{s_alpha_eq, s_substitute, STerm, SType};
pub use typing::{s_typecheck, SContext};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SError {
    #[error("type mismatch at `{term}`: expected {expected}, found {found}")]
    TypeMismatch { term: String, expected: String, found: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("NonLinearUseOfSpanVariable: `{var}` has a span type and is used {uses} times")]
    NonLinearUseOfSpanVariable { var: String, uses: usize },
    #[error("stuck term: {0}")]
    StuckTerm(String),
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: u64 },
}

impl SError {
    pub fn is_type_error(&self) -> bool {
        matches!(self, SError::TypeMismatch { .. } | SError::UnboundVariable(_) | SError::NonLinearUseOfSpanVariable { .. })
    }
}
