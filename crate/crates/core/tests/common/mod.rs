//! Random generators shared by the integration suites.
#![allow(dead_code)]

use lsq::lambda_s::{STerm, SType};
use lsq::scalar::Scalar;
use lsq::syntax::{qpow, Prop, Term};
use lsq::vector::{compile_matrix, encode, CMatrix, CVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Modulus at most one.
pub fn small_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let a = scalar(rng);
        if a.sq_modulus() <= 1.0 {
            return a;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> CVector {
    CVector::new((0..1 << n).map(|_| scalar(rng)).collect()).unwrap()
}

pub fn matrix<R: Rng>(rng: &mut R, rows_log: usize, cols_log: usize) -> CMatrix {
    let (r, c) = (1 << rows_log, 1 << cols_log);
    CMatrix::new(r, c, (0..r * c).map(|_| scalar(rng)).collect()).unwrap()
}

/// Closed term of type `Q^n`, nesting depth at most `depth`. Mixes sums,
/// scalings, pairs, compiled matrices, sums of functions, beta redexes and
/// superposition matches.
pub fn q_term(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        return encode(&vector(rng, n));
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => Term::sum(q_term(rng, n, d), q_term(rng, n, d)),
        1 => Term::scale(scalar(rng), q_term(rng, n, d)),
        2 if n > 0 => Term::pair(q_term(rng, n - 1, d), q_term(rng, n - 1, d)),
        3 => {
            let k = rng.gen_range(0..=2);
            Term::app(compile_matrix(&matrix(rng, n, k)), q_term(rng, k, d))
        }
        4 => {
            let k = rng.gen_range(0..=1);
            let f = Term::sum(compile_matrix(&matrix(rng, n, k)), Term::scale(scalar(rng), compile_matrix(&matrix(rng, n, k))));
            Term::app(f, q_term(rng, k, d))
        }
        5 => {
            let body = Term::sum(Term::var("x"), q_term(rng, n, d.min(2)));
            Term::app(Term::lam("x", qpow(n), body), q_term(rng, n, d))
        }
        _ => {
            let k = rng.gen_range(0..=1);
            let (ml, mr) = (matrix(rng, n, k), matrix(rng, n, k));
            Term::match_sup(
                q_term(rng, k + 1, d),
                "a",
                Term::app(compile_matrix(&ml), Term::var("a")),
                "b",
                Term::app(compile_matrix(&mr), Term::var("b")),
            )
        }
    }
}

const NAMES: &[&str] = &["x", "y", "z", "f", "g", "q0", "x'", "_t"];

fn any_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    match rng.gen_range(0..6) {
        0 => Scalar::FRAC_1_SQRT_2,
        1 => -Scalar::FRAC_1_SQRT_2,
        2 => Scalar::real(rng.gen_range(-4i32..5) as f64),
        3 => Scalar::new(0.0, rng.gen_range(-3.0..3.0)),
        4 => Scalar::real(rng.gen_range(-1e3..1e3)),
        _ => Scalar::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
    }
}

pub fn any_prop(rng: &mut ChaCha8Rng, depth: usize, ext: bool) -> Prop {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) { Prop::Top } else { qpow(rng.gen_range(0..3)) };
    }
    let (a, b) = (any_prop(rng, depth - 1, ext), any_prop(rng, depth - 1, ext));
    match rng.gen_range(0..if ext { 4 } else { 2 }) {
        0 => Prop::odot(a, b),
        1 => Prop::lolli(a, b),
        2 => Prop::plus(a, b),
        _ => Prop::with(a, b),
    }
}

/// Arbitrary (not necessarily well-typed) syntax tree.
pub fn any_term(rng: &mut ChaCha8Rng, depth: usize, ext: bool) -> Term {
    let name = |rng: &mut ChaCha8Rng| NAMES.choose(rng).unwrap().to_string();
    if depth == 0 || rng.gen_bool(0.15) {
        return if rng.gen_bool(0.5) { Term::var(name(rng)) } else { Term::Star(any_scalar(rng)) };
    }
    let d = depth - 1;
    let kinds = if ext { 15 } else { 7 };
    match rng.gen_range(0..kinds) {
        0 => Term::pair(any_term(rng, d, ext), any_term(rng, d, ext)),
        1 => Term::match_sup(any_term(rng, d, ext), name(rng), any_term(rng, d, ext), name(rng), any_term(rng, d, ext)),
        2 => Term::lam(name(rng), any_prop(rng, 2, ext), any_term(rng, d, ext)),
        3 => Term::app(any_term(rng, d, ext), any_term(rng, d, ext)),
        4 => Term::sum(any_term(rng, d, ext), any_term(rng, d, ext)),
        5 => Term::scale(any_scalar(rng), any_term(rng, d, ext)),
        6 => Term::var(name(rng)),
        7 => Term::inl(any_term(rng, d, ext)),
        8 => Term::inr(any_term(rng, d, ext)),
        9 => Term::inlr(any_term(rng, d, ext), any_term(rng, d, ext)),
        10 => Term::case_plus(any_term(rng, d, ext), name(rng), any_term(rng, d, ext), name(rng), any_term(rng, d, ext)),
        11 => Term::with_pair(any_term(rng, d, ext), any_term(rng, d, ext)),
        12 => Term::proj1(any_term(rng, d, ext)),
        13 => Term::proj2(any_term(rng, d, ext)),
        _ => Term::Star(any_scalar(rng)),
    }
}

fn sb() -> SType {
    SType::span(SType::Bool)
}

/// Body of type `Bool` or `S(Bool)` mentioning the base variable `x`
/// freely.
fn s_body(rng: &mut ChaCha8Rng, x: &str, depth: usize, fresh: &mut usize) -> STerm {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..3) {
            0 => STerm::var(x),
            1 => STerm::True,
            _ => STerm::False,
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => STerm::sum(s_body(rng, x, d, fresh), s_body(rng, x, d, fresh)),
        1 => STerm::scale(scalar(rng), s_body(rng, x, d, fresh)),
        2 => {
            *fresh += 1;
            let y = format!("y{fresh}");
            let inner = s_body(rng, &y, d, fresh);
            // mention x as well
            let inner = if rng.gen_bool(0.5) { STerm::sum(inner, STerm::var(x)) } else { inner };
            STerm::app(STerm::lam(&y, SType::Bool, inner), s_body(rng, x, d, fresh))
        }
        3 => {
            *fresh += 1;
            let y = format!("s{fresh}");
            let inner = s_linear(rng, &y, x, d, fresh);
            STerm::app(STerm::lam(&y, sb(), inner), s_body(rng, x, d, fresh))
        }
        _ => s_body(rng, x, d, fresh),
    }
}

/// `S(Bool)`-typed body using the span variable `y` exactly once.
fn s_linear(rng: &mut ChaCha8Rng, y: &str, x: &str, depth: usize, fresh: &mut usize) -> STerm {
    if depth == 0 {
        return STerm::var(y);
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => STerm::var(y),
        1 => STerm::scale(scalar(rng), s_linear(rng, y, x, d, fresh)),
        2 => STerm::sum(s_linear(rng, y, x, d, fresh), s_body(rng, x, d, fresh)),
        _ => {
            *fresh += 1;
            let z = format!("z{fresh}");
            STerm::app(STerm::lam(&z, SType::Bool, s_body(rng, &z, d, fresh)), s_linear(rng, y, x, d, fresh))
        }
    }
}

/// Closed `lam x: Bool. body`, body of type `Bool` or `S(Bool)`.
pub fn s_function(rng: &mut ChaCha8Rng, depth: usize) -> STerm {
    let mut fresh = 0;
    STerm::lam("x", SType::Bool, s_body(rng, "x", depth, &mut fresh))
}
