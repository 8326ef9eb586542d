//! Propositions, proof terms, typing, substitution and the linearity lint.

pub mod lint;
mod pretty;
mod prop;
mod term;
pub mod typing;

pub use lint::{linear_lint, LintReport, Usage, Violation};
pub use prop::{qpow, Prop};
pub use term::{alpha_eq, fresh_name, substitute, Binder, Term};
pub(crate) use pretty::write_scale_factor;
pub use typing::{fmt_path, typecheck, Context, Path, TypeError};
