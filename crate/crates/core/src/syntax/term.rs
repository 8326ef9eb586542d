use std::collections::HashSet;
use std::fmt;

use crate::scalar::Scalar;
use crate::syntax::Prop;

/// A proof term.
///
/// Child positions (used by reduction paths) are numbered left to right in
/// the order the fields appear below.
#[derive(Clone, PartialEq)]
pub enum Term {
    Var(String),
    /// `star(a)`, the proof of `T` indexed by the scalar `a`.
    Star(Scalar),
    /// `[t, r]`, introduction of `odot`.
    SupPair(Box<Term>, Box<Term>),
    /// `smatch t { x => r | y => s }`, elimination of `odot`.
    MatchSup(Box<Term>, Binder, Binder),
    Lam(String, Prop, Box<Term>),
    App(Box<Term>, Box<Term>),
    Sum(Box<Term>, Box<Term>),
    Scale(Scalar, Box<Term>),
    Inl(Box<Term>),
    Inr(Box<Term>),
    Inlr(Box<Term>, Box<Term>),
    /// `pmatch t { inl x => r | inr y => s }`.
    CasePlus(Box<Term>, Binder, Binder),
    /// `<t, r>`, introduction of `&`.
    WithPair(Box<Term>, Box<Term>),
    Proj1(Box<Term>),
    Proj2(Box<Term>),
}

/// A branch `x => body` of an elimination.
#[derive(Clone, PartialEq)]
pub struct Binder {
    pub var: String,
    pub body: Box<Term>,
}

impl Binder {
    pub fn new(var: impl Into<String>, body: Term) -> Self {
        Binder { var: var.into(), body: Box::new(body) }
    }
}

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn star(a: impl Into<Scalar>) -> Term {
        Term::Star(a.into())
    }

    pub fn pair(t: Term, r: Term) -> Term {
        Term::SupPair(Box::new(t), Box::new(r))
    }

    pub fn match_sup(t: Term, x: impl Into<String>, r: Term, y: impl Into<String>, s: Term) -> Term {
        Term::MatchSup(Box::new(t), Binder::new(x, r), Binder::new(y, s))
    }

    pub fn lam(x: impl Into<String>, ty: Prop, body: Term) -> Term {
        Term::Lam(x.into(), ty, Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn sum(t: Term, r: Term) -> Term {
        Term::Sum(Box::new(t), Box::new(r))
    }

    pub fn scale(a: impl Into<Scalar>, t: Term) -> Term {
        Term::Scale(a.into(), Box::new(t))
    }

    pub fn inl(t: Term) -> Term {
        Term::Inl(Box::new(t))
    }

    pub fn inr(t: Term) -> Term {
        Term::Inr(Box::new(t))
    }

    pub fn inlr(t: Term, r: Term) -> Term {
        Term::Inlr(Box::new(t), Box::new(r))
    }

    pub fn case_plus(t: Term, x: impl Into<String>, r: Term, y: impl Into<String>, s: Term) -> Term {
        Term::CasePlus(Box::new(t), Binder::new(x, r), Binder::new(y, s))
    }

    pub fn with_pair(t: Term, r: Term) -> Term {
        Term::WithPair(Box::new(t), Box::new(r))
    }

    pub fn proj1(t: Term) -> Term {
        Term::Proj1(Box::new(t))
    }

    pub fn proj2(t: Term) -> Term {
        Term::Proj2(Box::new(t))
    }

    /// Whether the term uses `(+)`/`&` constructs or annotations.
    pub fn uses_extensions(&self) -> bool {
        match self {
            Term::Inl(_)
            | Term::Inr(_)
            | Term::Inlr(..)
            | Term::CasePlus(..)
            | Term::WithPair(..)
            | Term::Proj1(_)
            | Term::Proj2(_) => true,
            Term::Lam(_, ty, body) => ty.uses_extensions() || body.uses_extensions(),
            Term::Var(_) | Term::Star(_) => false,
            Term::SupPair(a, b) | Term::App(a, b) | Term::Sum(a, b) => {
                a.uses_extensions() || b.uses_extensions()
            }
            Term::Scale(_, a) => a.uses_extensions(),
            Term::MatchSup(s, l, r) => {
                s.uses_extensions() || l.body.uses_extensions() || r.body.uses_extensions()
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + match self {
            Term::Var(_) | Term::Star(_) => 0,
            Term::Lam(_, _, b) | Term::Scale(_, b) | Term::Inl(b) | Term::Inr(b) => b.size(),
            Term::Proj1(b) | Term::Proj2(b) => b.size(),
            Term::SupPair(a, b) | Term::App(a, b) | Term::Sum(a, b) | Term::Inlr(a, b) | Term::WithPair(a, b) => {
                a.size() + b.size()
            }
            Term::MatchSup(s, l, r) | Term::CasePlus(s, l, r) => s.size() + l.body.size() + r.body.size(),
        }
    }

    pub fn free_vars(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut HashSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Star(_) => {}
            Term::Lam(x, _, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::MatchSup(s, l, r) | Term::CasePlus(s, l, r) => {
                s.collect_free(bound, out);
                for b in [l, r] {
                    bound.push(b.var.clone());
                    b.body.collect_free(bound, out);
                    bound.pop();
                }
            }
            Term::Scale(_, a) | Term::Inl(a) | Term::Inr(a) | Term::Proj1(a) | Term::Proj2(a) => {
                a.collect_free(bound, out)
            }
            Term::SupPair(a, b) | Term::App(a, b) | Term::Sum(a, b) | Term::Inlr(a, b) | Term::WithPair(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Occurrences of `x` free in the term.
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            Term::Var(y) => usize::from(y == x),
            Term::Star(_) => 0,
            Term::Lam(y, _, body) => {
                if y == x {
                    0
                } else {
                    body.occurrences(x)
                }
            }
            Term::MatchSup(s, l, r) | Term::CasePlus(s, l, r) => {
                s.occurrences(x)
                    + [l, r]
                        .iter()
                        .filter(|b| b.var != x)
                        .map(|b| b.body.occurrences(x))
                        .sum::<usize>()
            }
            Term::Scale(_, a) | Term::Inl(a) | Term::Inr(a) | Term::Proj1(a) | Term::Proj2(a) => a.occurrences(x),
            Term::SupPair(a, b) | Term::App(a, b) | Term::Sum(a, b) | Term::Inlr(a, b) | Term::WithPair(a, b) => {
                a.occurrences(x) + b.occurrences(x)
            }
        }
    }

    /// The subterm at a child-index path, if the path is valid.
    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        let Some((&k, rest)) = path.split_first() else {
            return Some(self);
        };
        let child: &Term = match (self, k) {
            (Term::Lam(_, _, b), 0)
            | (Term::Scale(_, b), 0)
            | (Term::Inl(b), 0)
            | (Term::Inr(b), 0)
            | (Term::Proj1(b), 0)
            | (Term::Proj2(b), 0) => b,
            (Term::SupPair(a, _), 0)
            | (Term::App(a, _), 0)
            | (Term::Sum(a, _), 0)
            | (Term::Inlr(a, _), 0)
            | (Term::WithPair(a, _), 0) => a,
            (Term::SupPair(_, b), 1)
            | (Term::App(_, b), 1)
            | (Term::Sum(_, b), 1)
            | (Term::Inlr(_, b), 1)
            | (Term::WithPair(_, b), 1) => b,
            (Term::MatchSup(s, _, _), 0) | (Term::CasePlus(s, _, _), 0) => s,
            (Term::MatchSup(_, l, _), 1) | (Term::CasePlus(_, l, _), 1) => &l.body,
            (Term::MatchSup(_, _, r), 2) | (Term::CasePlus(_, _, r), 2) => &r.body,
            _ => return None,
        };
        child.at(rest)
    }

    /// Mutable access to the subterm at a path.
    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Term> {
        let Some((&k, rest)) = path.split_first() else {
            return Some(self);
        };
        let child: &mut Term = match (self, k) {
            (Term::Lam(_, _, b), 0)
            | (Term::Scale(_, b), 0)
            | (Term::Inl(b), 0)
            | (Term::Inr(b), 0)
            | (Term::Proj1(b), 0)
            | (Term::Proj2(b), 0) => b,
            (Term::SupPair(a, _), 0)
            | (Term::App(a, _), 0)
            | (Term::Sum(a, _), 0)
            | (Term::Inlr(a, _), 0)
            | (Term::WithPair(a, _), 0) => a,
            (Term::SupPair(_, b), 1)
            | (Term::App(_, b), 1)
            | (Term::Sum(_, b), 1)
            | (Term::Inlr(_, b), 1)
            | (Term::WithPair(_, b), 1) => b,
            (Term::MatchSup(s, _, _), 0) | (Term::CasePlus(s, _, _), 0) => s,
            (Term::MatchSup(_, l, _), 1) | (Term::CasePlus(_, l, _), 1) => &mut l.body,
            (Term::MatchSup(_, _, r), 2) | (Term::CasePlus(_, _, r), 2) => &mut r.body,
            _ => return None,
        };
        child.at_mut(rest)
    }
}

/// Alpha-equivalence. Scalars compare exactly.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    fn go<'a>(a: &'a Term, b: &'a Term, env: &mut Vec<(&'a str, &'a str)>) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                match env.iter().rev().find(|(l, r)| l == x || r == y) {
                    Some((l, r)) => l == x && r == y,
                    None => x == y,
                }
            }
            (Term::Star(x), Term::Star(y)) => x == y,
            (Term::Lam(x, tx, bx), Term::Lam(y, ty, by)) => {
                if tx != ty {
                    return false;
                }
                env.push((x, y));
                let ok = go(bx, by, env);
                env.pop();
                ok
            }
            (Term::MatchSup(s1, l1, r1), Term::MatchSup(s2, l2, r2))
            | (Term::CasePlus(s1, l1, r1), Term::CasePlus(s2, l2, r2)) => {
                if !go(s1, s2, env) {
                    return false;
                }
                for (p, q) in [(l1, l2), (r1, r2)] {
                    env.push((&p.var, &q.var));
                    let ok = go(&p.body, &q.body, env);
                    env.pop();
                    if !ok {
                        return false;
                    }
                }
                true
            }
            (Term::Scale(x, t), Term::Scale(y, r)) => x == y && go(t, r, env),
            (Term::Inl(t), Term::Inl(r))
            | (Term::Inr(t), Term::Inr(r))
            | (Term::Proj1(t), Term::Proj1(r))
            | (Term::Proj2(t), Term::Proj2(r)) => go(t, r, env),
            (Term::SupPair(a1, b1), Term::SupPair(a2, b2))
            | (Term::App(a1, b1), Term::App(a2, b2))
            | (Term::Sum(a1, b1), Term::Sum(a2, b2))
            | (Term::Inlr(a1, b1), Term::Inlr(a2, b2))
            | (Term::WithPair(a1, b1), Term::WithPair(a2, b2)) => go(a1, a2, env) && go(b1, b2, env),
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

/// A variant of `base` that is not in `avoid`, formed by appending primes.
pub fn fresh_name(base: &str, avoid: &HashSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// Capture-avoiding substitution `t[u/x]`.
pub fn substitute(t: &Term, x: &str, u: &Term) -> Term {
    let fv_u = u.free_vars();
    subst(t, x, u, &fv_u)
}

fn subst(t: &Term, x: &str, u: &Term, fv_u: &HashSet<String>) -> Term {
    match t {
        Term::Var(y) => {
            if y == x {
                u.clone()
            } else {
                t.clone()
            }
        }
        Term::Star(_) => t.clone(),
        Term::Lam(y, ty, body) => {
            let (y, body) = subst_under(y, body, x, u, fv_u);
            Term::Lam(y, ty.clone(), Box::new(body))
        }
        Term::MatchSup(s, l, r) => Term::MatchSup(
            Box::new(subst(s, x, u, fv_u)),
            subst_binder(l, x, u, fv_u),
            subst_binder(r, x, u, fv_u),
        ),
        Term::CasePlus(s, l, r) => Term::CasePlus(
            Box::new(subst(s, x, u, fv_u)),
            subst_binder(l, x, u, fv_u),
            subst_binder(r, x, u, fv_u),
        ),
        Term::Scale(a, b) => Term::Scale(*a, Box::new(subst(b, x, u, fv_u))),
        Term::Inl(b) => Term::inl(subst(b, x, u, fv_u)),
        Term::Inr(b) => Term::inr(subst(b, x, u, fv_u)),
        Term::Proj1(b) => Term::proj1(subst(b, x, u, fv_u)),
        Term::Proj2(b) => Term::proj2(subst(b, x, u, fv_u)),
        Term::SupPair(a, b) => Term::pair(subst(a, x, u, fv_u), subst(b, x, u, fv_u)),
        Term::App(a, b) => Term::app(subst(a, x, u, fv_u), subst(b, x, u, fv_u)),
        Term::Sum(a, b) => Term::sum(subst(a, x, u, fv_u), subst(b, x, u, fv_u)),
        Term::Inlr(a, b) => Term::inlr(subst(a, x, u, fv_u), subst(b, x, u, fv_u)),
        Term::WithPair(a, b) => Term::with_pair(subst(a, x, u, fv_u), subst(b, x, u, fv_u)),
    }
}

fn subst_binder(b: &Binder, x: &str, u: &Term, fv_u: &HashSet<String>) -> Binder {
    let (var, body) = subst_under(&b.var, &b.body, x, u, fv_u);
    Binder { var, body: Box::new(body) }
}

/// Substitutes under a binder `y`, renaming `y` when it would capture a
/// free variable of `u`.
fn subst_under(y: &str, body: &Term, x: &str, u: &Term, fv_u: &HashSet<String>) -> (String, Term) {
    if y == x || body.occurrences(x) == 0 {
        return (y.to_string(), body.clone());
    }
    if fv_u.contains(y) {
        let mut avoid = body.free_vars();
        avoid.extend(fv_u.iter().cloned());
        avoid.insert(x.to_string());
        let fresh = fresh_name(y, &avoid);
        let renamed = subst(body, y, &Term::Var(fresh.clone()), &HashSet::from([fresh.clone()]));
        (fresh, subst(&renamed, x, u, fv_u))
    } else {
        (y.to_string(), subst(body, x, u, fv_u))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitute_var() {
        let a = Scalar::new(0.25, 1.0);
        assert_eq!(substitute(&Term::var("x"), "x", &Term::Star(a)), Term::Star(a));
    }

    #[test]
    fn substitute_duplicates_into_sum() {
        let t = Term::sum(Term::var("x"), Term::var("x"));
        let got = substitute(&t, "x", &Term::star(1.0));
        assert_eq!(got, Term::sum(Term::star(1.0), Term::star(1.0)));
    }

    #[test]
    fn substitute_avoids_capture() {
        let t = Term::lam("y", Prop::Top, Term::var("x"));
        let got = substitute(&t, "x", &Term::var("y"));
        match &got {
            Term::Lam(z, Prop::Top, body) => {
                assert_ne!(z, "y");
                assert_eq!(**body, Term::var("y"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(alpha_eq(&got, &Term::lam("z", Prop::Top, Term::var("y"))));
    }

    #[test]
    fn substitute_respects_shadowing() {
        let t = Term::match_sup(Term::var("x"), "x", Term::var("x"), "y", Term::var("x"));
        let got = substitute(&t, "x", &Term::star(2.0));
        let want = Term::match_sup(Term::star(2.0), "x", Term::var("x"), "y", Term::star(2.0));
        assert_eq!(got, want);
    }

    #[test]
    fn substitute_absent_variable_is_identity() {
        let t = Term::lam("y", Prop::Top, Term::sum(Term::var("y"), Term::var("z")));
        assert_eq!(substitute(&t, "x", &Term::var("y")), t);
    }

    #[test]
    fn alpha_eq_distinguishes_binding() {
        let a = Term::lam("x", Prop::Top, Term::lam("y", Prop::Top, Term::var("x")));
        let b = Term::lam("y", Prop::Top, Term::lam("x", Prop::Top, Term::var("y")));
        let c = Term::lam("y", Prop::Top, Term::lam("x", Prop::Top, Term::var("x")));
        assert!(alpha_eq(&a, &b));
        assert!(!alpha_eq(&a, &c));
        assert!(!alpha_eq(&Term::var("x"), &Term::var("y")));
    }

    #[test]
    fn paths_address_children() {
        let t = Term::match_sup(Term::var("s"), "x", Term::var("l"), "y", Term::var("r"));
        assert_eq!(t.at(&[0]), Some(&Term::var("s")));
        assert_eq!(t.at(&[2]), Some(&Term::var("r")));
        assert_eq!(t.at(&[3]), None);
    }
}
