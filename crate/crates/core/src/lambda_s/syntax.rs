use std::collections::HashSet;
use std::fmt::{self, Display, Formatter, Write};

use crate::scalar::Scalar;
use crate::syntax::{fresh_name, write_scale_factor};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SType {
    Bool,
    Arrow(Box<SType>, Box<SType>),
    Span(Box<SType>),
}

impl SType {
    pub fn arrow(a: SType, b: SType) -> SType {
        SType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn span(a: SType) -> SType {
        SType::Span(Box::new(a))
    }

    pub fn is_span(&self) -> bool {
        matches!(self, SType::Span(_))
    }

    /// Drops outer `S(..)` layers.
    pub fn strip(&self) -> &SType {
        match self {
            SType::Span(a) => a.strip(),
            a => a,
        }
    }

    /// Collapses nested spans everywhere: `S(S(A))` becomes `S(A)`.
    pub fn collapsed(&self) -> SType {
        match self {
            SType::Bool => SType::Bool,
            SType::Arrow(a, b) => SType::arrow(a.collapsed(), b.collapsed()),
            SType::Span(a) => SType::span(a.strip().collapsed()),
        }
    }

    /// `self <= other`, with `A <= S(A)`.
    pub fn is_subtype(&self, other: &SType) -> bool {
        let (a, b) = (self.collapsed(), other.collapsed());
        match &b {
            SType::Span(inner) => a == b || a == **inner,
            _ => a == b,
        }
    }
}

impl Display for SType {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SType::Bool => f.write_str("Bool"),
            SType::Span(a) => write!(f, "S({a})"),
            SType::Arrow(a, b) => {
                if matches!(**a, SType::Arrow(..)) {
                    write!(f, "({a}) => {b}")
                } else {
                    write!(f, "{a} => {b}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum STerm {
    Var(String),
    True,
    False,
    Lam(String, SType, Box<STerm>),
    App(Box<STerm>, Box<STerm>),
    Sum(Box<STerm>, Box<STerm>),
    Scale(Scalar, Box<STerm>),
}

impl STerm {
    pub fn var(x: impl Into<String>) -> STerm {
        STerm::Var(x.into())
    }

    pub fn lam(x: impl Into<String>, ty: SType, body: STerm) -> STerm {
        STerm::Lam(x.into(), ty, Box::new(body))
    }

    pub fn app(f: STerm, a: STerm) -> STerm {
        STerm::App(Box::new(f), Box::new(a))
    }

    pub fn sum(a: STerm, b: STerm) -> STerm {
        STerm::Sum(Box::new(a), Box::new(b))
    }

    pub fn scale(a: impl Into<Scalar>, t: STerm) -> STerm {
        STerm::Scale(a.into(), Box::new(t))
    }

    /// `true`, `false` and abstractions.
    pub fn is_basis(&self) -> bool {
        matches!(self, STerm::True | STerm::False | STerm::Lam(..))
    }

    pub fn free_vars(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut HashSet<String>) {
        match self {
            STerm::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            STerm::True | STerm::False => {}
            STerm::Lam(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            STerm::App(a, b) | STerm::Sum(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            STerm::Scale(_, b) => b.collect_free(bound, out),
        }
    }

    /// Free occurrences of `x`.
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            STerm::Var(y) => usize::from(y == x),
            STerm::True | STerm::False => 0,
            STerm::Lam(y, _, b) => {
                if y == x {
                    0
                } else {
                    b.occurrences(x)
                }
            }
            STerm::App(a, b) | STerm::Sum(a, b) => a.occurrences(x) + b.occurrences(x),
            STerm::Scale(_, b) => b.occurrences(x),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            STerm::Var(_) | STerm::True | STerm::False => 1,
            STerm::Lam(_, _, b) | STerm::Scale(_, b) => 1 + b.size(),
            STerm::App(a, b) | STerm::Sum(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Alpha-equivalence with exact scalar comparison.
pub fn s_alpha_eq(a: &STerm, b: &STerm) -> bool {
    fn go<'a>(a: &'a STerm, b: &'a STerm, env: &mut Vec<(&'a str, &'a str)>) -> bool {
        match (a, b) {
            (STerm::Var(x), STerm::Var(y)) => {
                match env.iter().rev().find(|(l, r)| l == x || r == y) {
                    Some((l, r)) => l == x && r == y,
                    None => x == y,
                }
            }
            (STerm::True, STerm::True) | (STerm::False, STerm::False) => true,
            (STerm::Lam(x, ta, ba), STerm::Lam(y, tb, bb)) => {
                if ta != tb {
                    return false;
                }
                env.push((x, y));
                let r = go(ba, bb, env);
                env.pop();
                r
            }
            (STerm::App(a1, a2), STerm::App(b1, b2)) | (STerm::Sum(a1, a2), STerm::Sum(b1, b2)) => {
                go(a1, b1, env) && go(a2, b2, env)
            }
            (STerm::Scale(x, a), STerm::Scale(y, b)) => x == y && go(a, b, env),
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

/// Capture-avoiding `t[u/x]`.
pub fn s_substitute(t: &STerm, x: &str, u: &STerm) -> STerm {
    let fv = u.free_vars();
    subst(t, x, u, &fv)
}

fn subst(t: &STerm, x: &str, u: &STerm, fv: &HashSet<String>) -> STerm {
    match t {
        STerm::Var(y) if y == x => u.clone(),
        STerm::Var(_) | STerm::True | STerm::False => t.clone(),
        STerm::Lam(y, ty, body) => {
            if y == x {
                return t.clone();
            }
            if fv.contains(y) {
                let mut avoid = fv.clone();
                avoid.extend(body.free_vars());
                avoid.insert(x.to_string());
                let z = fresh_name(y, &avoid);
                let renamed = subst(body, y, &STerm::Var(z.clone()), &HashSet::from([z.clone()]));
                return STerm::lam(z, ty.clone(), subst(&renamed, x, u, fv));
            }
            STerm::lam(y.clone(), ty.clone(), subst(body, x, u, fv))
        }
        STerm::App(a, b) => STerm::app(subst(a, x, u, fv), subst(b, x, u, fv)),
        STerm::Sum(a, b) => STerm::sum(subst(a, x, u, fv), subst(b, x, u, fv)),
        STerm::Scale(a, b) => STerm::Scale(*a, Box::new(subst(b, x, u, fv))),
    }
}

const SUM: u8 = 0;
const SCALED: u8 = 1;
const APP: u8 = 2;
const FACTOR: u8 = 3;

fn write_sterm(f: &mut impl Write, t: &STerm, level: u8) -> fmt::Result {
    let open = |f: &mut _, min: u8| if level > min { Write::write_char(f, '(') } else { Ok(()) };
    let close = |f: &mut _, min: u8| if level > min { Write::write_char(f, ')') } else { Ok(()) };
    match t {
        STerm::Var(x) => f.write_str(x),
        STerm::True => f.write_str("true"),
        STerm::False => f.write_str("false"),
        STerm::Lam(x, ty, body) => {
            write!(f, "(lam {x}: {ty}. ")?;
            write_sterm(f, body, SUM)?;
            f.write_char(')')
        }
        STerm::App(a, b) => {
            open(f, APP)?;
            write_sterm(f, a, APP)?;
            f.write_char(' ')?;
            write_sterm(f, b, FACTOR)?;
            close(f, APP)
        }
        STerm::Scale(a, b) => {
            open(f, SCALED)?;
            write_scale_factor(f, *a)?;
            f.write_str(" * ")?;
            write_sterm(f, b, SCALED)?;
            close(f, SCALED)
        }
        STerm::Sum(a, b) => {
            open(f, SUM)?;
            write_sterm(f, a, SUM)?;
            f.write_str(" + ")?;
            write_sterm(f, b, SCALED)?;
            close(f, SUM)
        }
    }
}

impl Display for STerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_sterm(f, self, SUM)
    }
}
