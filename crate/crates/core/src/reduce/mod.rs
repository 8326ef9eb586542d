//! Cut elimination as rewriting.
//!
//! Two modes share one rule catalog ([`Rule`]):
//!
//! * **Deterministic**: eliminating a `[t, r]` pair runs both branches and
//!   adds the results; eliminations commute with sums and scalings.
//! * **Probabilistic**: eliminating a canonical `Q^(n+1)` pair picks one
//!   branch with Born probability, using a seeded generator so runs are
//!   reproducible.
//!
//! Arguments of beta and scrutinees of eliminations are normalized before
//! those rules fire. Reduction never enters a `lam` body or an unfired
//! branch.

mod canonical;
mod rules;
mod trace;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use canonical::{canonical_depth, is_canonical, sq_norm};
pub use rules::{Branch, Rule};
pub use trace::{ReductionTrace, TraceStep};

use crate::scalar::DEFAULT_EPS;
use crate::syntax::{fmt_path, Path, Term};

/// Default step budget for [`normalize`].
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Deterministic,
    Probabilistic { seed: u64, renormalize: bool },
}

impl Mode {
    /// Probabilistic mode with post-collapse renormalization on.
    pub fn probabilistic(seed: u64) -> Mode {
        Mode::Probabilistic { seed, renormalize: true }
    }

    pub fn is_deterministic(self) -> bool {
        matches!(self, Mode::Deterministic)
    }

    fn renormalize(self) -> bool {
        matches!(self, Mode::Probabilistic { renormalize: true, .. })
    }
}

/// Which redex is contracted when several are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LeftmostOutermost,
    RightmostInnermost,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReduceError {
    #[error("stuck at {}: cannot collapse `{term}` (not a canonical Q^(n+1) state)", fmt_path(path))]
    StuckTerm { path: Path, term: String },
    #[error("both branches have zero norm")]
    ZeroNorm,
    #[error("fuel exhausted after {} steps", trace.steps.len())]
    FuelExhausted { trace: Box<ReductionTrace> },
    #[error("rule {rule} does not apply to `{term}`")]
    RuleMismatch { rule: Rule, term: String },
    #[error("invalid redex path {}", fmt_path(path))]
    BadPath { path: Path },
}

/// One contraction.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub term: Term,
    pub rule: Rule,
    pub path: Path,
    /// For probabilistic collapses: branch taken and its probability.
    pub choice: Option<(Branch, f64)>,
}

/// A stateful reducer. In probabilistic mode it owns the generator, so
/// successive steps consume one random stream.
#[derive(Debug, Clone)]
pub struct Reducer {
    mode: Mode,
    strategy: Strategy,
    eps: f64,
    record_terms: bool,
    rng: Option<ChaCha8Rng>,
}

impl Reducer {
    pub fn new(mode: Mode) -> Self {
        let rng = match mode {
            Mode::Probabilistic { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
            Mode::Deterministic => None,
        };
        Reducer { mode, strategy: Strategy::default(), eps: DEFAULT_EPS, record_terms: false, rng }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    /// Keep every intermediate term in the trace.
    pub fn record_terms(mut self, on: bool) -> Self {
        self.record_terms = on;
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Finds the next redex without contracting it.
    pub fn find_redex(&self, t: &Term) -> Result<Option<(Path, Rule)>, ReduceError> {
        let mut path = Vec::new();
        let found = match self.strategy {
            Strategy::LeftmostOutermost => self.find_lo(t, &mut path)?,
            Strategy::RightmostInnermost => self.find_ri(t, &mut path)?,
        };
        Ok(found.map(|rule| (path, rule)))
    }

    /// One contraction, or `None` when `t` is normal for the mode.
    pub fn step(&mut self, t: &Term) -> Result<Option<Step>, ReduceError> {
        let Some((path, rule)) = self.find_redex(t)? else {
            return Ok(None);
        };
        let redex = t.at(&path).ok_or_else(|| ReduceError::BadPath { path: path.clone() })?;
        let choice = if rule == Rule::MatchProb { Some(self.sample_branch(redex)?) } else { None };
        let term = contract(t, &path, rule, choice.map(|c| c.0), self.mode.renormalize(), self.eps)?;
        Ok(Some(Step { term, rule, path, choice }))
    }

    /// Steps until normal or until `fuel` steps have been taken.
    pub fn normalize(&mut self, t: &Term, fuel: u64) -> Result<(Term, ReductionTrace), ReduceError> {
        let mut trace = ReductionTrace::new(t.clone(), self.mode);
        let mut current = t.clone();
        loop {
            let Some(step) = self.step(&current)? else {
                trace.final_term = current.clone();
                return Ok((current, trace));
            };
            if trace.steps.len() as u64 >= fuel {
                trace.final_term = current;
                return Err(ReduceError::FuelExhausted { trace: Box::new(trace) });
            }
            trace.steps.push(TraceStep {
                rule: step.rule,
                path: step.path,
                choice: step.choice,
                result: self.record_terms.then(|| step.term.clone()),
            });
            current = step.term;
        }
    }

    fn sample_branch(&mut self, redex: &Term) -> Result<(Branch, f64), ReduceError> {
        let Term::MatchSup(s, ..) = redex else {
            return Err(ReduceError::RuleMismatch { rule: Rule::MatchProb, term: redex.to_string() });
        };
        let Term::SupPair(c1, c2) = &**s else {
            return Err(ReduceError::RuleMismatch { rule: Rule::MatchProb, term: redex.to_string() });
        };
        let p = rules::left_probability(c1, c2, self.eps)?;
        let rng = self.rng.as_mut().expect("probabilistic mode owns a generator");
        let u: f64 = rng.gen();
        Ok(if u < p { (Branch::Left, p) } else { (Branch::Right, 1.0 - p) })
    }

    fn deterministic(&self) -> bool {
        self.mode.is_deterministic()
    }

    /// Rule for a node whose scrutinee/argument is already normal.
    fn guarded_rule(&self, t: &Term, path: &Path) -> Result<Option<Rule>, ReduceError> {
        Ok(match t {
            Term::App(f, _) if matches!(**f, Term::Lam(..)) => Some(Rule::Beta),
            Term::MatchSup(s, ..) => {
                if self.deterministic() {
                    matches!(**s, Term::SupPair(..)).then_some(Rule::MatchDet)
                } else if canonical_depth(s).is_some_and(|n| n >= 1) {
                    Some(Rule::MatchProb)
                } else {
                    return Err(ReduceError::StuckTerm { path: path.clone(), term: s.to_string() });
                }
            }
            Term::CasePlus(s, ..) => match **s {
                Term::Inl(_) => Some(Rule::CaseInl),
                Term::Inr(_) => Some(Rule::CaseInr),
                Term::Inlr(..) => Some(Rule::CaseInlr),
                _ => None,
            },
            _ => None,
        })
    }

    fn find_lo(&self, t: &Term, path: &mut Path) -> Result<Option<Rule>, ReduceError> {
        if let Some(rule) = rules::shape_rule(t, self.deterministic()) {
            return Ok(Some(rule));
        }
        for k in reducible_children(t) {
            path.push(k);
            let found = self.find_lo(t.at(&[k]).expect("child exists"), path)?;
            if found.is_some() {
                return Ok(found);
            }
            path.pop();
        }
        self.guarded_rule(t, path)
    }

    fn find_ri(&self, t: &Term, path: &mut Path) -> Result<Option<Rule>, ReduceError> {
        for k in reducible_children(t).rev() {
            path.push(k);
            let found = self.find_ri(t.at(&[k]).expect("child exists"), path)?;
            if found.is_some() {
                return Ok(found);
            }
            path.pop();
        }
        if let Some(rule) = rules::shape_rule(t, self.deterministic()) {
            return Ok(Some(rule));
        }
        self.guarded_rule(t, path)
    }
}

/// Child positions in which reduction may take place: never under a `lam`
/// or inside an elimination branch.
fn reducible_children(t: &Term) -> std::ops::Range<usize> {
    match t {
        Term::Var(_) | Term::Star(_) | Term::Lam(..) => 0..0,
        Term::MatchSup(..) | Term::CasePlus(..) => 0..1,
        Term::Scale(..) | Term::Inl(_) | Term::Inr(_) | Term::Proj1(_) | Term::Proj2(_) => 0..1,
        Term::SupPair(..) | Term::App(..) | Term::Sum(..) | Term::Inlr(..) | Term::WithPair(..) => 0..2,
    }
}

/// Contracts the redex at `path` by `rule`.
pub fn contract(
    t: &Term,
    path: &[usize],
    rule: Rule,
    choice: Option<Branch>,
    renormalize: bool,
    eps: f64,
) -> Result<Term, ReduceError> {
    let mut out = t.clone();
    let slot = out.at_mut(path).ok_or_else(|| ReduceError::BadPath { path: path.to_vec() })?;
    let redex = std::mem::replace(slot, Term::Var(String::new()));
    *slot = rules::rewrite(rule, redex, choice, renormalize, eps)?;
    Ok(out)
}

/// One leftmost-outermost step. Probabilistic mode seeds a fresh
/// generator on every call; use [`Reducer`] for a sequence of steps.
pub fn step(t: &Term, mode: Mode) -> Result<Option<(Term, Rule)>, ReduceError> {
    Ok(Reducer::new(mode).step(t)?.map(|s| (s.term, s.rule)))
}

pub fn normalize(t: &Term, mode: Mode, fuel: u64) -> Result<(Term, ReductionTrace), ReduceError> {
    Reducer::new(mode).normalize(t, fuel)
}

/// Deterministic normal form, without a trace.
pub fn normalize_det(t: &Term, fuel: u64) -> Result<Term, ReduceError> {
    normalize(t, Mode::Deterministic, fuel).map(|(t, _)| t)
}
