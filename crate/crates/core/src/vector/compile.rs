//! Matrices as proofs of `Q^m -o Q^n`.
//!
//! A single column `u` (`m = 0`) becomes `lam x: T. s_u(x)` where `s_(a)`
//! is `a * x` and `s_[u1; u2]` is `[s_u1(x), s_u2(x)]`. For `m + 1`
//! columns-qubits the matrix splits into left and right column blocks and
//! the argument is eliminated with `smatch`, applying each block's term to
//! the matching half; deterministic reduction adds the two images.

use crate::syntax::{qpow, Term};

use super::{CMatrix, CVector};

pub fn compile_matrix(m: &CMatrix) -> Term {
    let inputs = m.cols().trailing_zeros() as usize;
    compile(m, inputs)
}

fn compile(m: &CMatrix, inputs: usize) -> Term {
    if inputs == 0 {
        return Term::lam("x", qpow(0), scale_gadget(&m.column(0), "x"));
    }
    let half = m.cols() / 2;
    let left = compile(&m.column_block(0, half), inputs - 1);
    let right = compile(&m.column_block(half, half), inputs - 1);
    Term::lam(
        "x",
        qpow(inputs),
        Term::match_sup(
            Term::var("x"),
            "l",
            Term::app(left, Term::var("l")),
            "r",
            Term::app(right, Term::var("r")),
        ),
    )
}

/// Proof of `Q^n` spreading the `T`-typed variable `x` over the entries of
/// `u`. Uses `x` once per entry.
fn scale_gadget(u: &CVector, x: &str) -> Term {
    fn go(xs: &[crate::Scalar], x: &str) -> Term {
        if xs.len() == 1 {
            return Term::scale(xs[0], Term::var(x));
        }
        let (l, r) = xs.split_at(xs.len() / 2);
        Term::pair(go(l, x), go(r, x))
    }
    go(u.entries(), x)
}
