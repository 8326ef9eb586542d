//! Printing in the concrete syntax accepted by [`crate::parser`]. The
//! output reparses to an alpha-equivalent AST; `Q^n` sugar is not
//! reconstructed.

use std::fmt::{self, Display, Formatter, Write};

use crate::scalar::Scalar;
use crate::syntax::{Prop, Term};

const PROP_LOLLI: u8 = 0;
const PROP_BIN: u8 = 1;
const PROP_ATOM: u8 = 2;

fn write_prop(f: &mut impl Write, p: &Prop, level: u8) -> fmt::Result {
    let (op, a, b) = match p {
        Prop::Top => return f.write_char('T'),
        Prop::Lolli(a, b) => {
            if level > PROP_LOLLI {
                f.write_char('(')?;
            }
            write_prop(f, a, PROP_BIN)?;
            f.write_str(" -o ")?;
            write_prop(f, b, PROP_LOLLI)?;
            if level > PROP_LOLLI {
                f.write_char(')')?;
            }
            return Ok(());
        }
        Prop::Odot(a, b) => ("odot", a, b),
        Prop::Plus(a, b) => ("(+)", a, b),
        Prop::With(a, b) => ("&", a, b),
    };
    if level > PROP_BIN {
        f.write_char('(')?;
    }
    write_prop(f, a, PROP_ATOM)?;
    write!(f, " {op} ")?;
    write_prop(f, b, PROP_ATOM)?;
    if level > PROP_BIN {
        f.write_char(')')?;
    }
    Ok(())
}

impl Display for Prop {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_prop(f, self, PROP_LOLLI)
    }
}

const SUM: u8 = 0;
const SCALED: u8 = 1;
const APP: u8 = 2;
const FACTOR: u8 = 3;

pub(crate) fn write_scale_factor(f: &mut impl Write, a: Scalar) -> fmt::Result {
    if a.re() != 0.0 && a.im() != 0.0 || a.re().is_sign_negative() && a.im() != 0.0 {
        write!(f, "({a})")
    } else {
        write!(f, "{a}")
    }
}

fn write_term(f: &mut impl Write, t: &Term, level: u8) -> fmt::Result {
    let needs = |min: u8| level > min;
    match t {
        Term::Var(x) => f.write_str(x),
        Term::Star(a) => write!(f, "star({a})"),
        Term::SupPair(a, b) => {
            f.write_char('[')?;
            write_term(f, a, SUM)?;
            f.write_str(", ")?;
            write_term(f, b, SUM)?;
            f.write_char(']')
        }
        Term::WithPair(a, b) => {
            f.write_char('<')?;
            write_term(f, a, SUM)?;
            f.write_str(", ")?;
            write_term(f, b, SUM)?;
            f.write_char('>')
        }
        Term::MatchSup(s, l, r) => {
            f.write_str("smatch ")?;
            write_term(f, s, SUM)?;
            write!(f, " {{ {} => ", l.var)?;
            write_term(f, &l.body, SUM)?;
            write!(f, " | {} => ", r.var)?;
            write_term(f, &r.body, SUM)?;
            f.write_str(" }")
        }
        Term::CasePlus(s, l, r) => {
            f.write_str("pmatch ")?;
            write_term(f, s, SUM)?;
            write!(f, " {{ inl {} => ", l.var)?;
            write_term(f, &l.body, SUM)?;
            write!(f, " | inr {} => ", r.var)?;
            write_term(f, &r.body, SUM)?;
            f.write_str(" }")
        }
        Term::Lam(x, ty, body) => {
            write!(f, "(lam {x}: {ty}. ")?;
            write_term(f, body, SUM)?;
            f.write_char(')')
        }
        Term::Inl(a) | Term::Inr(a) | Term::Proj1(a) | Term::Proj2(a) => {
            let kw = match t {
                Term::Inl(_) => "inl",
                Term::Inr(_) => "inr",
                Term::Proj1(_) => "proj1",
                _ => "proj2",
            };
            write!(f, "{kw} ")?;
            write_term(f, a, FACTOR)
        }
        Term::Inlr(a, b) => {
            f.write_str("inlr ")?;
            write_term(f, a, FACTOR)?;
            f.write_char(' ')?;
            write_term(f, b, FACTOR)
        }
        Term::App(fun, arg) => {
            if needs(APP) {
                f.write_char('(')?;
            }
            write_term(f, fun, APP)?;
            f.write_char(' ')?;
            write_term(f, arg, FACTOR)?;
            if needs(APP) {
                f.write_char(')')?;
            }
            Ok(())
        }
        Term::Scale(a, body) => {
            if needs(SCALED) {
                f.write_char('(')?;
            }
            write_scale_factor(f, *a)?;
            f.write_str(" * ")?;
            write_term(f, body, SCALED)?;
            if needs(SCALED) {
                f.write_char(')')?;
            }
            Ok(())
        }
        Term::Sum(a, b) => {
            if needs(SUM) {
                f.write_char('(')?;
            }
            write_term(f, a, SUM)?;
            f.write_str(" + ")?;
            write_term(f, b, SCALED)?;
            if needs(SUM) {
                f.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_term(f, self, SUM)
    }
}
