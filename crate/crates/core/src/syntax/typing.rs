//! The typing judgment `Γ ⊢ t : A`.
//!
//! Contexts are additive: every premise of a rule sees the whole of `Γ`.
//! Usage discipline is reported separately by [`crate::syntax::lint`].
//!
//! `inl t` and `inr t` do not say what the other summand is. Inference
//! works with partial types in which that summand is a hole; holes are
//! filled when the term meets a partner (a sum, an annotated binder, or a
//! case with both branches typed). A term whose type still has a hole at
//! the end is rejected.

use std::fmt;

use thiserror::Error;

use crate::syntax::{Prop, Term};

/// Position of a subterm as child indices from the root.
pub type Path = Vec<usize>;

pub fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "root".to_string();
    }
    path.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(".")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TypeError {
    #[error("type mismatch at {}: `{subterm}`: expected {expected}, found {found}", fmt_path(path))]
    TypeMismatch {
        path: Path,
        subterm: String,
        expected: String,
        found: String,
    },
    #[error("unbound variable `{name}` at {}", fmt_path(path))]
    UnboundVariable { path: Path, name: String },
    #[error("application of a non-function at {}: `{subterm}` has type {found}", fmt_path(path))]
    AnnotationRequired { path: Path, subterm: String, found: String },
}

impl TypeError {
    pub fn path(&self) -> &[usize] {
        match self {
            TypeError::TypeMismatch { path, .. }
            | TypeError::UnboundVariable { path, .. }
            | TypeError::AnnotationRequired { path, .. } => path,
        }
    }
}

/// Typing context. Later entries shadow earlier ones with the same name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Context {
    entries: Vec<(String, Prop)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lookup(&self, x: &str) -> Option<&Prop> {
        self.entries.iter().rev().find(|(y, _)| y == x).map(|(_, a)| a)
    }

    /// Binds `x : a`, replacing any previous binding of `x`.
    pub fn extend(&mut self, x: &str, a: Prop) {
        self.entries.retain(|(y, _)| y != x);
        self.entries.push((x.to_string(), a));
    }

    pub fn with(mut self, x: &str, a: Prop) -> Self {
        self.extend(x, a);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Prop)> {
        self.entries.iter().map(|(x, a)| (x.as_str(), a))
    }
}

/// Infers the type of `t` under `ctx`.
pub fn typecheck(ctx: &Context, t: &Term) -> Result<Prop, TypeError> {
    let local = ctx.iter().map(|(x, a)| (x.to_string(), Ty::from(a))).collect();
    let mut checker = Checker { path: Vec::new(), ctx: local };
    let ty = checker.infer(t)?;
    ty.to_prop().ok_or_else(|| TypeError::TypeMismatch {
        path: Vec::new(),
        subterm: t.to_string(),
        expected: "a fully determined type (annotate the injection's other side)".into(),
        found: ty.to_string(),
    })
}

/// Partial proposition; `Hole` is the unknown side of an injection.
#[derive(Clone, PartialEq)]
enum Ty {
    Hole,
    Top,
    Odot(Box<Ty>, Box<Ty>),
    Lolli(Box<Ty>, Box<Ty>),
    Plus(Box<Ty>, Box<Ty>),
    With(Box<Ty>, Box<Ty>),
}

impl From<&Prop> for Ty {
    fn from(p: &Prop) -> Ty {
        let bx = |a: &Prop| Box::new(Ty::from(a));
        match p {
            Prop::Top => Ty::Top,
            Prop::Odot(a, b) => Ty::Odot(bx(a), bx(b)),
            Prop::Lolli(a, b) => Ty::Lolli(bx(a), bx(b)),
            Prop::Plus(a, b) => Ty::Plus(bx(a), bx(b)),
            Prop::With(a, b) => Ty::With(bx(a), bx(b)),
        }
    }
}

impl Ty {
    fn to_prop(&self) -> Option<Prop> {
        Some(match self {
            Ty::Hole => return None,
            Ty::Top => Prop::Top,
            Ty::Odot(a, b) => Prop::odot(a.to_prop()?, b.to_prop()?),
            Ty::Lolli(a, b) => Prop::lolli(a.to_prop()?, b.to_prop()?),
            Ty::Plus(a, b) => Prop::plus(a.to_prop()?, b.to_prop()?),
            Ty::With(a, b) => Prop::with(a.to_prop()?, b.to_prop()?),
        })
    }

    /// Least common refinement of two partial types, if they agree.
    fn join(&self, other: &Ty) -> Option<Ty> {
        let pair = |a1: &Ty, b1: &Ty, a2: &Ty, b2: &Ty| Some((Box::new(a1.join(a2)?), Box::new(b1.join(b2)?)));
        Some(match (self, other) {
            (Ty::Hole, t) | (t, Ty::Hole) => t.clone(),
            (Ty::Top, Ty::Top) => Ty::Top,
            (Ty::Odot(a1, b1), Ty::Odot(a2, b2)) => {
                let (a, b) = pair(a1, b1, a2, b2)?;
                Ty::Odot(a, b)
            }
            (Ty::Lolli(a1, b1), Ty::Lolli(a2, b2)) => {
                let (a, b) = pair(a1, b1, a2, b2)?;
                Ty::Lolli(a, b)
            }
            (Ty::Plus(a1, b1), Ty::Plus(a2, b2)) => {
                let (a, b) = pair(a1, b1, a2, b2)?;
                Ty::Plus(a, b)
            }
            (Ty::With(a1, b1), Ty::With(a2, b2)) => {
                let (a, b) = pair(a1, b1, a2, b2)?;
                Ty::With(a, b)
            }
            _ => return None,
        })
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Ty, op: &str, b: &Ty| write!(f, "({a}) {op} ({b})");
        match self {
            Ty::Hole => f.write_str("?"),
            Ty::Top => f.write_str("T"),
            Ty::Odot(a, b) => bin(f, a, "odot", b),
            Ty::Lolli(a, b) => bin(f, a, "-o", b),
            Ty::Plus(a, b) => bin(f, a, "(+)", b),
            Ty::With(a, b) => bin(f, a, "&", b),
        }
    }
}

fn show(ty: &Ty) -> String {
    match ty.to_prop() {
        Some(p) => p.to_string(),
        None => ty.to_string(),
    }
}

struct Checker {
    path: Path,
    ctx: Vec<(String, Ty)>,
}

impl Checker {
    fn mismatch_at(&self, k: Option<usize>, t: &Term, expected: String, found: &Ty) -> TypeError {
        let mut path = self.path.clone();
        path.extend(k);
        TypeError::TypeMismatch { path, subterm: t.to_string(), expected, found: show(found) }
    }

    fn infer_at(&mut self, k: usize, t: &Term) -> Result<Ty, TypeError> {
        self.path.push(k);
        let r = self.infer(t);
        self.path.pop();
        r
    }

    fn infer_bound(&mut self, k: usize, x: &str, a: Ty, body: &Term) -> Result<Ty, TypeError> {
        self.ctx.push((x.to_string(), a));
        let r = self.infer_at(k, body);
        self.ctx.pop();
        r
    }

    /// Infers child `k` and joins it with `want`.
    fn expect_at(&mut self, k: usize, t: &Term, want: &Ty) -> Result<Ty, TypeError> {
        let got = self.infer_at(k, t)?;
        got.join(want).ok_or_else(|| self.mismatch_at(Some(k), t, show(want), &got))
    }

    fn infer(&mut self, t: &Term) -> Result<Ty, TypeError> {
        match t {
            Term::Var(x) => self
                .ctx
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, a)| a.clone())
                .ok_or_else(|| TypeError::UnboundVariable { path: self.path.clone(), name: x.clone() }),
            Term::Star(_) => Ok(Ty::Top),
            Term::SupPair(a, b) => {
                let ta = self.infer_at(0, a)?;
                let tb = self.infer_at(1, b)?;
                Ok(Ty::Odot(Box::new(ta), Box::new(tb)))
            }
            Term::MatchSup(s, l, r) => {
                let ts = self.infer_at(0, s)?;
                let (pa, pb) = match ts {
                    Ty::Odot(a, b) => (*a, *b),
                    Ty::Hole => (Ty::Hole, Ty::Hole),
                    other => return Err(self.mismatch_at(Some(0), s, "A odot B".into(), &other)),
                };
                self.branches(l, pa, r, pb)
            }
            Term::CasePlus(s, l, r) => {
                let ts = self.infer_at(0, s)?;
                let (pa, pb) = match ts {
                    Ty::Plus(a, b) => (*a, *b),
                    Ty::Hole => (Ty::Hole, Ty::Hole),
                    other => return Err(self.mismatch_at(Some(0), s, "A (+) B".into(), &other)),
                };
                self.branches(l, pa, r, pb)
            }
            Term::Lam(x, a, body) => {
                let b = self.infer_bound(0, x, Ty::from(a), body)?;
                Ok(Ty::Lolli(Box::new(Ty::from(a)), Box::new(b)))
            }
            Term::App(f, arg) => {
                let tf = self.infer_at(0, f)?;
                let Ty::Lolli(dom, cod) = tf else {
                    let mut path = self.path.clone();
                    path.push(0);
                    return Err(TypeError::AnnotationRequired { path, subterm: f.to_string(), found: show(&tf) });
                };
                self.expect_at(1, arg, &dom)?;
                Ok(*cod)
            }
            Term::Sum(a, b) => {
                let ta = self.infer_at(0, a)?;
                self.expect_at(1, b, &ta)
            }
            Term::Scale(_, a) => self.infer_at(0, a),
            Term::Inl(a) => Ok(Ty::Plus(Box::new(self.infer_at(0, a)?), Box::new(Ty::Hole))),
            Term::Inr(a) => Ok(Ty::Plus(Box::new(Ty::Hole), Box::new(self.infer_at(0, a)?))),
            Term::Inlr(a, b) => {
                let ta = self.infer_at(0, a)?;
                let tb = self.infer_at(1, b)?;
                Ok(Ty::Plus(Box::new(ta), Box::new(tb)))
            }
            Term::WithPair(a, b) => {
                let ta = self.infer_at(0, a)?;
                let tb = self.infer_at(1, b)?;
                Ok(Ty::With(Box::new(ta), Box::new(tb)))
            }
            Term::Proj1(a) | Term::Proj2(a) => match self.infer_at(0, a)? {
                Ty::With(l, r) => Ok(if matches!(t, Term::Proj1(_)) { *l } else { *r }),
                Ty::Hole => Ok(Ty::Hole),
                other => Err(self.mismatch_at(Some(0), a, "A & B".into(), &other)),
            },
        }
    }

    fn branches(&mut self, l: &crate::syntax::Binder, pa: Ty, r: &crate::syntax::Binder, pb: Ty) -> Result<Ty, TypeError> {
        let c1 = self.infer_bound(1, &l.var, pa, &l.body)?;
        let c2 = self.infer_bound(2, &r.var, pb, &r.body)?;
        c1.join(&c2).ok_or_else(|| self.mismatch_at(Some(2), &r.body, show(&c1), &c2))
    }
}
