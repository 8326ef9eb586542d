//! Proof terms with sums and scalars.
//!
//! Propositions `T`, `A odot B`, `A -o B` (plus `(+)` and `&` behind a
//! switch), proof terms with scalar-indexed stars, sums and scalar
//! action, cut elimination as rewriting in a deterministic and a
//! seeded probabilistic mode, and the bridge between closed normal proofs
//! of `Q^n` and complex vectors of length `2^n`. A small interpreter for a
//! call-by-base lambda calculus lives in [`lambda_s`].

pub mod lambda_s;
pub mod parser;
pub mod reduce;
pub mod scalar;
pub mod syntax;
pub mod vector;

pub use scalar::Scalar;
