//! Strict-linearity lint.
//!
//! Flags every variable bound by `lam`, `smatch` or `pmatch` that is not
//! used exactly once. Branches of an elimination (and the two sides of a
//! `<t, r>` pair) are alternative worlds: each must use the variable the
//! same number of times. Children of sums, scalings, `[t, r]` pairs and
//! applications share one world, so their uses add up.

use std::fmt;

use crate::syntax::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Usage {
    Exactly(usize),
    /// Alternative branches disagree on the number of uses.
    Inconsistent,
}

impl Usage {
    fn plus(self, other: Usage) -> Usage {
        match (self, other) {
            (Usage::Exactly(a), Usage::Exactly(b)) => Usage::Exactly(a + b),
            _ => Usage::Inconsistent,
        }
    }

    fn either(self, other: Usage) -> Usage {
        if self == other {
            self
        } else {
            Usage::Inconsistent
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub var: String,
    pub usage: Usage,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.usage {
            Usage::Exactly(0) => write!(f, "{} is never used", self.var),
            Usage::Exactly(n) => write!(f, "{} used {n} times", self.var),
            Usage::Inconsistent => write!(f, "{} used a different number of times across branches", self.var),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LintReport {
    pub violations: Vec<Violation>,
}

impl LintReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Counts the free uses of `x` in `t`.
pub fn usage(t: &Term, x: &str) -> Usage {
    match t {
        Term::Var(y) => Usage::Exactly(usize::from(y == x)),
        Term::Star(_) => Usage::Exactly(0),
        Term::Lam(y, _, body) => {
            if y == x {
                Usage::Exactly(0)
            } else {
                usage(body, x)
            }
        }
        Term::MatchSup(s, l, r) | Term::CasePlus(s, l, r) => {
            let branch = |b: &crate::syntax::Binder| {
                if b.var == x {
                    Usage::Exactly(0)
                } else {
                    usage(&b.body, x)
                }
            };
            usage(s, x).plus(branch(l).either(branch(r)))
        }
        Term::WithPair(a, b) => usage(a, x).either(usage(b, x)),
        Term::Scale(_, a) | Term::Inl(a) | Term::Inr(a) | Term::Proj1(a) | Term::Proj2(a) => usage(a, x),
        Term::SupPair(a, b) | Term::App(a, b) | Term::Sum(a, b) | Term::Inlr(a, b) => usage(a, x).plus(usage(b, x)),
    }
}

pub fn linear_lint(t: &Term) -> LintReport {
    let mut report = LintReport::default();
    walk(t, &mut report);
    report
}

fn check(var: &str, body: &Term, report: &mut LintReport) {
    let u = usage(body, var);
    if u != Usage::Exactly(1) {
        report.violations.push(Violation { var: var.to_string(), usage: u });
    }
}

fn walk(t: &Term, report: &mut LintReport) {
    match t {
        Term::Var(_) | Term::Star(_) => {}
        Term::Lam(x, _, body) => {
            check(x, body, report);
            walk(body, report);
        }
        Term::MatchSup(s, l, r) | Term::CasePlus(s, l, r) => {
            walk(s, report);
            for b in [l, r] {
                check(&b.var, &b.body, report);
                walk(&b.body, report);
            }
        }
        Term::Scale(_, a) | Term::Inl(a) | Term::Inr(a) | Term::Proj1(a) | Term::Proj2(a) => walk(a, report),
        Term::SupPair(a, b) | Term::App(a, b) | Term::Sum(a, b) | Term::Inlr(a, b) | Term::WithPair(a, b) => {
            walk(a, report);
            walk(b, report);
        }
    }
}
