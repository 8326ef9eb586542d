use std::fmt::Write;

use crate::syntax::{fmt_path, Path, Term};

use super::{contract, Branch, Mode, ReduceError, Rule};

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub rule: Rule,
    pub path: Path,
    /// Branch taken and its probability, for probabilistic collapses.
    pub choice: Option<(Branch, f64)>,
    /// The whole term after this step, when the reducer records terms.
    pub result: Option<Term>,
}

/// Record of a normalization run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace {
    pub initial: Term,
    pub mode: Mode,
    pub steps: Vec<TraceStep>,
    pub final_term: Term,
}

impl ReductionTrace {
    pub(super) fn new(initial: Term, mode: Mode) -> Self {
        ReductionTrace { final_term: initial.clone(), initial, mode, steps: Vec::new() }
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Probabilistic choices in order.
    pub fn choices(&self) -> impl Iterator<Item = (Branch, f64)> + '_ {
        self.steps.iter().filter_map(|s| s.choice)
    }

    /// Re-applies every recorded rule at its position, starting from the
    /// initial term.
    pub fn replay(&self, eps: f64) -> Result<Term, ReduceError> {
        let renormalize = matches!(self.mode, Mode::Probabilistic { renormalize: true, .. });
        self.steps.iter().try_fold(self.initial.clone(), |t, s| {
            contract(&t, &s.path, s.rule, s.choice.map(|c| c.0), renormalize, eps)
        })
    }

    /// Line-oriented log: `step k: <rule> at <path> ⇒ <term>`, with
    /// `p=<float> chose=<L|R>` appended to probabilistic steps.
    pub fn log(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let _ = write!(out, "step {}: {} at {}", k + 1, s.rule, fmt_path(&s.path));
            if let Some(t) = &s.result {
                let _ = write!(out, " ⇒ {t}");
            }
            if let Some((branch, p)) = s.choice {
                let _ = write!(out, " p={p} chose={branch}");
            }
            out.push('\n');
        }
        out
    }
}
