//! The rewrite rules and their one-step effect on a redex.

use std::fmt;

use crate::scalar::inv_sqrt_real;
use crate::syntax::{substitute, Binder, Term};

use super::canonical::sq_norm;
use super::ReduceError;

/// A named rewrite rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `(lam x: A. t) v -> t[v/x]`
    Beta,
    /// `smatch [t, r] { x => s | y => u } -> s[t/x] + u[r/y]`
    MatchDet,
    /// `smatch c { x => s | y => u }` collapses to one branch with Born
    /// probability.
    MatchProb,
    /// `a * [t, r] -> [a * t, a * r]`
    ScalePair,
    /// `a * star(b) -> star(ab)`
    ScaleStar,
    /// `[t, r] + [u, v] -> [t + u, r + v]`
    PairSum,
    /// `star(a) + star(b) -> star(a + b)`
    StarSum,
    /// `a * (t + r) -> a * t + a * r`
    ScaleSum,
    /// `a * (b * t) -> (ab) * t`
    ScaleScale,
    /// `smatch (t + r) {..} -> smatch t {..} + smatch r {..}`
    MatchSum,
    /// `smatch (a * t) {..} -> a * smatch t {..}`
    MatchScale,
    /// `(t + r) s -> t s + r s`
    AppSum,
    /// `(a * t) s -> a * (t s)`
    AppScale,
    /// `pmatch inl t {..} -> s[t/x]`
    CaseInl,
    /// `pmatch inr r {..} -> u[r/y]`
    CaseInr,
    /// `pmatch inlr t r {..} -> s[t/x] + u[r/y]`
    CaseInlr,
    /// `pmatch (t + r) {..} -> pmatch t {..} + pmatch r {..}`
    CaseSum,
    /// `pmatch (a * t) {..} -> a * pmatch t {..}`
    CaseScale,
    /// `proj1 <t, r> -> t`
    Proj1,
    /// `proj2 <t, r> -> r`
    Proj2,
    /// `proj (t + r) -> proj t + proj r`
    ProjSum,
    /// `proj (a * t) -> a * proj t`
    ProjScale,
    /// Sum of two injections, e.g. `inl t + inr r -> inlr t r`.
    InjSum,
    /// `a * inl t -> inl (a * t)` and likewise for `inr`, `inlr`.
    ScaleInj,
    /// `<t, r> + <u, v> -> <t + u, r + v>`
    WithSum,
    /// `a * <t, r> -> <a * t, a * r>`
    ScaleWith,
}

impl Rule {
    pub const ALL: [Rule; 26] = [
        Rule::Beta,
        Rule::MatchDet,
        Rule::MatchProb,
        Rule::ScalePair,
        Rule::ScaleStar,
        Rule::PairSum,
        Rule::StarSum,
        Rule::ScaleSum,
        Rule::ScaleScale,
        Rule::MatchSum,
        Rule::MatchScale,
        Rule::AppSum,
        Rule::AppScale,
        Rule::CaseInl,
        Rule::CaseInr,
        Rule::CaseInlr,
        Rule::CaseSum,
        Rule::CaseScale,
        Rule::Proj1,
        Rule::Proj2,
        Rule::ProjSum,
        Rule::ProjScale,
        Rule::InjSum,
        Rule::ScaleInj,
        Rule::WithSum,
        Rule::ScaleWith,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Beta => "beta",
            Rule::MatchDet => "match-det",
            Rule::MatchProb => "match-prob",
            Rule::ScalePair => "scale-pair",
            Rule::ScaleStar => "scale-star",
            Rule::PairSum => "pair-sum",
            Rule::StarSum => "star-sum",
            Rule::ScaleSum => "scale-sum",
            Rule::ScaleScale => "scale-scale",
            Rule::MatchSum => "match-sum",
            Rule::MatchScale => "match-scale",
            Rule::AppSum => "app-sum",
            Rule::AppScale => "app-scale",
            Rule::CaseInl => "case-inl",
            Rule::CaseInr => "case-inr",
            Rule::CaseInlr => "case-inlr",
            Rule::CaseSum => "case-sum",
            Rule::CaseScale => "case-scale",
            Rule::Proj1 => "proj1",
            Rule::Proj2 => "proj2",
            Rule::ProjSum => "proj-sum",
            Rule::ProjScale => "proj-scale",
            Rule::InjSum => "inj-sum",
            Rule::ScaleInj => "scale-inj",
            Rule::WithSum => "with-sum",
            Rule::ScaleWith => "scale-with",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Rules that only fire in deterministic mode.
    pub fn deterministic_only(self) -> bool {
        matches!(
            self,
            Rule::MatchDet | Rule::MatchSum | Rule::MatchScale | Rule::AppSum | Rule::AppScale | Rule::CaseSum | Rule::CaseScale
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which branch a probabilistic match collapsed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Left,
    Right,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Left => "L",
            Branch::Right => "R",
        })
    }
}

/// Rules that fire on shape alone, with no normal-form side condition on a
/// child. `deterministic` enables the commuting rules that push
/// eliminations through sums and scalings.
pub(super) fn shape_rule(t: &Term, deterministic: bool) -> Option<Rule> {
    use Term::*;
    let rule = match t {
        Scale(_, inner) => match **inner {
            SupPair(..) => Rule::ScalePair,
            Star(_) => Rule::ScaleStar,
            Sum(..) => Rule::ScaleSum,
            Scale(..) => Rule::ScaleScale,
            Inl(_) | Inr(_) | Inlr(..) => Rule::ScaleInj,
            WithPair(..) => Rule::ScaleWith,
            _ => return None,
        },
        Sum(a, b) => match (&**a, &**b) {
            (SupPair(..), SupPair(..)) => Rule::PairSum,
            (Star(_), Star(_)) => Rule::StarSum,
            (WithPair(..), WithPair(..)) => Rule::WithSum,
            (Inl(_) | Inr(_) | Inlr(..), Inl(_) | Inr(_) | Inlr(..)) => Rule::InjSum,
            _ => return None,
        },
        Proj1(inner) | Proj2(inner) => match **inner {
            WithPair(..) if matches!(t, Proj1(_)) => Rule::Proj1,
            WithPair(..) => Rule::Proj2,
            Sum(..) => Rule::ProjSum,
            Scale(..) => Rule::ProjScale,
            _ => return None,
        },
        App(f, _) if deterministic => match **f {
            Sum(..) => Rule::AppSum,
            Scale(..) => Rule::AppScale,
            _ => return None,
        },
        MatchSup(s, ..) if deterministic => match **s {
            Sum(..) => Rule::MatchSum,
            Scale(..) => Rule::MatchScale,
            _ => return None,
        },
        CasePlus(s, ..) if deterministic => match **s {
            Sum(..) => Rule::CaseSum,
            Scale(..) => Rule::CaseScale,
            _ => return None,
        },
        _ => return None,
    };
    Some(rule)
}

fn sub_binder(b: Binder, value: Term) -> Term {
    substitute(&b.body, &b.var, &value)
}

fn injection_parts(t: Term) -> (Option<Term>, Option<Term>) {
    match t {
        Term::Inl(a) => (Some(*a), None),
        Term::Inr(b) => (None, Some(*b)),
        Term::Inlr(a, b) => (Some(*a), Some(*b)),
        other => unreachable!("not an injection: {other}"),
    }
}

fn merge(a: Option<Term>, b: Option<Term>) -> Option<Term> {
    match (a, b) {
        (Some(a), Some(b)) => Some(Term::sum(a, b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Post-collapse value of a branch: the component itself, or the component
/// scaled by `1/‖c‖` when renormalizing.
pub(super) fn collapse_value(c: Term, renormalize: bool, eps: f64) -> Result<Term, ReduceError> {
    if !renormalize {
        return Ok(c);
    }
    let factor = inv_sqrt_real(sq_norm(&c), eps).map_err(|_| ReduceError::ZeroNorm)?;
    Ok(Term::scale(factor, c))
}

/// Rewrites the redex `t` by `rule`. `choice` is required for
/// [`Rule::MatchProb`].
pub(super) fn rewrite(
    rule: Rule,
    t: Term,
    choice: Option<Branch>,
    renormalize: bool,
    eps: f64,
) -> Result<Term, ReduceError> {
    use Term::*;
    let mismatch = |t: &Term| -> ReduceError { ReduceError::RuleMismatch { rule, term: t.to_string() } };
    Ok(match (rule, t) {
        (Rule::Beta, App(f, a)) => match *f {
            Lam(x, _, body) => substitute(&body, &x, &a),
            other => return Err(mismatch(&App(Box::new(other), a))),
        },
        (Rule::MatchDet, MatchSup(s, l, r)) => match *s {
            SupPair(a, b) => Term::sum(sub_binder(l, *a), sub_binder(r, *b)),
            other => return Err(mismatch(&other)),
        },
        (Rule::MatchProb, MatchSup(s, l, r)) => match (*s, choice) {
            (SupPair(a, _), Some(Branch::Left)) => sub_binder(l, collapse_value(*a, renormalize, eps)?),
            (SupPair(_, b), Some(Branch::Right)) => sub_binder(r, collapse_value(*b, renormalize, eps)?),
            (other, _) => return Err(mismatch(&other)),
        },
        (Rule::ScalePair, Scale(a, inner)) => match *inner {
            SupPair(t, r) => Term::pair(Scale(a, t), Scale(a, r)),
            other => return Err(mismatch(&other)),
        },
        (Rule::ScaleStar, Scale(a, inner)) => match *inner {
            Star(b) => Star(a * b),
            other => return Err(mismatch(&other)),
        },
        (Rule::ScaleSum, Scale(a, inner)) => match *inner {
            Sum(t, r) => Term::sum(Scale(a, t), Scale(a, r)),
            other => return Err(mismatch(&other)),
        },
        (Rule::ScaleScale, Scale(a, inner)) => match *inner {
            Scale(b, t) => Scale(a * b, t),
            other => return Err(mismatch(&other)),
        },
        (Rule::ScaleInj, Scale(a, inner)) => match *inner {
            Inl(t) => Term::inl(Scale(a, t)),
            Inr(t) => Term::inr(Scale(a, t)),
            Inlr(t, r) => Term::inlr(Scale(a, t), Scale(a, r)),
            other => return Err(mismatch(&other)),
        },
        (Rule::ScaleWith, Scale(a, inner)) => match *inner {
            WithPair(t, r) => Term::with_pair(Scale(a, t), Scale(a, r)),
            other => return Err(mismatch(&other)),
        },
        (Rule::PairSum, Sum(x, y)) => match (*x, *y) {
            (SupPair(t, r), SupPair(u, v)) => Term::pair(Sum(t, u), Sum(r, v)),
            (x, y) => return Err(mismatch(&Term::sum(x, y))),
        },
        (Rule::StarSum, Sum(x, y)) => match (*x, *y) {
            (Star(a), Star(b)) => Star(a + b),
            (x, y) => return Err(mismatch(&Term::sum(x, y))),
        },
        (Rule::WithSum, Sum(x, y)) => match (*x, *y) {
            (WithPair(t, r), WithPair(u, v)) => Term::with_pair(Sum(t, u), Sum(r, v)),
            (x, y) => return Err(mismatch(&Term::sum(x, y))),
        },
        (Rule::InjSum, Sum(x, y)) => {
            if !is_injection(&x) || !is_injection(&y) {
                return Err(mismatch(&Sum(x, y)));
            }
            let (l1, r1) = injection_parts(*x);
            let (l2, r2) = injection_parts(*y);
            match (merge(l1, l2), merge(r1, r2)) {
                (Some(l), Some(r)) => Term::inlr(l, r),
                (Some(l), None) => Term::inl(l),
                (None, Some(r)) => Term::inr(r),
                (None, None) => unreachable!("injections have at least one side"),
            }
        }
        (Rule::MatchSum, MatchSup(s, l, r)) => match *s {
            Sum(a, b) => Term::sum(MatchSup(a, l.clone(), r.clone()), MatchSup(b, l, r)),
            other => return Err(mismatch(&other)),
        },
        (Rule::MatchScale, MatchSup(s, l, r)) => match *s {
            Scale(a, t) => Scale(a, Box::new(MatchSup(t, l, r))),
            other => return Err(mismatch(&other)),
        },
        (Rule::CaseSum, CasePlus(s, l, r)) => match *s {
            Sum(a, b) => Term::sum(CasePlus(a, l.clone(), r.clone()), CasePlus(b, l, r)),
            other => return Err(mismatch(&other)),
        },
        (Rule::CaseScale, CasePlus(s, l, r)) => match *s {
            Scale(a, t) => Scale(a, Box::new(CasePlus(t, l, r))),
            other => return Err(mismatch(&other)),
        },
        (Rule::AppSum, App(f, arg)) => match *f {
            Sum(g, h) => Term::sum(App(g, arg.clone()), App(h, arg)),
            other => return Err(mismatch(&other)),
        },
        (Rule::AppScale, App(f, arg)) => match *f {
            Scale(a, g) => Scale(a, Box::new(App(g, arg))),
            other => return Err(mismatch(&other)),
        },
        (Rule::CaseInl | Rule::CaseInr | Rule::CaseInlr, CasePlus(s, l, r)) => match (rule, *s) {
            (Rule::CaseInl, Inl(t)) => sub_binder(l, *t),
            (Rule::CaseInr, Inr(t)) => sub_binder(r, *t),
            (Rule::CaseInlr, Inlr(t, u)) => Term::sum(sub_binder(l, *t), sub_binder(r, *u)),
            (_, other) => return Err(mismatch(&other)),
        },
        (Rule::Proj1, Proj1(inner)) => match *inner {
            WithPair(t, _) => *t,
            other => return Err(mismatch(&other)),
        },
        (Rule::Proj2, Proj2(inner)) => match *inner {
            WithPair(_, r) => *r,
            other => return Err(mismatch(&other)),
        },
        (Rule::ProjSum, p @ (Proj1(_) | Proj2(_))) => {
            let first = matches!(p, Proj1(_));
            let (Proj1(inner) | Proj2(inner)) = p else { unreachable!() };
            let wrap = |t: Box<Term>| if first { Proj1(t) } else { Proj2(t) };
            match *inner {
                Sum(a, b) => Term::sum(wrap(a), wrap(b)),
                other => return Err(mismatch(&other)),
            }
        }
        (Rule::ProjScale, p @ (Proj1(_) | Proj2(_))) => {
            let first = matches!(p, Proj1(_));
            let (Proj1(inner) | Proj2(inner)) = p else { unreachable!() };
            match *inner {
                Scale(a, t) => Scale(a, Box::new(if first { Proj1(t) } else { Proj2(t) })),
                other => return Err(mismatch(&other)),
            }
        }
        (_, t) => return Err(mismatch(&t)),
    })
}

fn is_injection(t: &Term) -> bool {
    matches!(t, Term::Inl(_) | Term::Inr(_) | Term::Inlr(..))
}

/// Probability of the left branch when collapsing `[c1, c2]`.
pub(super) fn left_probability(c1: &Term, c2: &Term, eps: f64) -> Result<f64, ReduceError> {
    let (n1, n2) = (sq_norm(c1), sq_norm(c2));
    let total = n1 + n2;
    if total.is_nan() || total <= eps {
        return Err(ReduceError::ZeroNorm);
    }
    Ok(n1 / total)
}
