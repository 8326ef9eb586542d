//! Named gates and states.
//!
//! Gate names: `I`, `X`, `Z`, `H`, `CNOT`. A name such as `H_I` denotes the
//! tensor product of its underscore-separated factors, first factor on the
//! most significant qubit. State names: `ket0`, `ket1`, `ket+` (`ketp`),
//! `ket-` (`ketm`), `ket00` through `ket11`, and `bell`.

use std::f64::consts::FRAC_1_SQRT_2 as R;

use crate::syntax::{substitute, Term};

use super::{compile_matrix, encode, kron, CMatrix, CVector, VecError};

pub const GATES: &[&str] = &["I", "X", "Z", "H", "CNOT"];
pub const STATES: &[&str] = &["ket0", "ket1", "ket+", "ket-", "ket00", "ket01", "ket10", "ket11", "bell"];

fn base_gate(name: &str) -> Option<CMatrix> {
    let m = match name {
        "I" => CMatrix::identity(1),
        "X" => CMatrix::from_reals(2, 2, &[0.0, 1.0, 1.0, 0.0]).ok()?,
        "Z" => CMatrix::from_reals(2, 2, &[1.0, 0.0, 0.0, -1.0]).ok()?,
        // columns are |+> and |->
        "H" => CMatrix::from_reals(2, 2, &[R, R, R, -R]).ok()?,
        "CNOT" => CMatrix::from_reals(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
        .ok()?,
        _ => return None,
    };
    Some(m)
}

pub fn gate_matrix(name: &str) -> Result<CMatrix, VecError> {
    let unknown = || VecError::UnknownName(name.to_string());
    let mut factors = name.split('_');
    let first = base_gate(factors.next().ok_or_else(unknown)?).ok_or_else(unknown)?;
    factors.try_fold(first, |acc, f| Ok(kron(&acc, &base_gate(f).ok_or_else(unknown)?)))
}

pub fn gate(name: &str) -> Result<Term, VecError> {
    gate_matrix(name).map(|m| compile_matrix(&m))
}

pub fn state_vector(name: &str) -> Result<CVector, VecError> {
    let reals: &[f64] = match name {
        "ket0" => &[1.0, 0.0],
        "ket1" => &[0.0, 1.0],
        "ket+" | "ketp" => &[R, R],
        "ket-" | "ketm" => &[R, -R],
        "ket00" => &[1.0, 0.0, 0.0, 0.0],
        "ket01" => &[0.0, 1.0, 0.0, 0.0],
        "ket10" => &[0.0, 0.0, 1.0, 0.0],
        "ket11" => &[0.0, 0.0, 0.0, 1.0],
        "bell" => &[R, 0.0, 0.0, R],
        _ => return Err(VecError::UnknownName(name.to_string())),
    };
    CVector::from_reals(reals)
}

pub fn state(name: &str) -> Result<Term, VecError> {
    state_vector(name).map(|v| encode(&v))
}

fn builtin(name: &str) -> Option<Term> {
    state(name).or_else(|_| gate(name)).ok()
}

/// Replaces every free variable of `t` that names a library gate or state
/// by its term.
pub fn with_builtins(t: &Term) -> Term {
    let mut names: Vec<String> = t.free_vars().into_iter().collect();
    names.sort();
    names.into_iter().fold(t.clone(), |acc, x| match builtin(&x) {
        Some(b) => substitute(&acc, &x, &b),
        None => acc,
    })
}
