use std::fmt;

use crate::scalar::{approx_eq, Scalar};

use super::{s_alpha_eq, s_substitute, SError, STerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SRule {
    /// Sum/scale tree over basis values rewritten to its canonical combination.
    Merge,
    /// Abstraction over `S(A)`: the whole argument is substituted.
    BetaName,
    /// Abstraction over a base type applied to a basis value.
    BetaBase,
    /// Base abstraction applied to a combination distributes over it.
    Distribute,
    /// A combination of functions applied to an argument.
    AppSum,
}

impl fmt::Display for SRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SRule::Merge => "merge",
            SRule::BetaName => "beta-name",
            SRule::BetaBase => "beta-base",
            SRule::Distribute => "distribute",
            SRule::AppSum => "app-sum",
        })
    }
}

/// A linear combination of basis values, in first-occurrence order.
pub type Combination = Vec<(Scalar, STerm)>;

fn is_comb_node(t: &STerm) -> bool {
    matches!(t, STerm::Sum(..) | STerm::Scale(..))
}

/// Flattens a sum/scale tree whose leaves are all basis values, merging
/// coefficients of alpha-equal leaves and dropping exact zeros. A bare
/// basis value is the combination `1 * v`.
pub fn combination(t: &STerm) -> Option<Combination> {
    fn leaves(t: &STerm, coef: Scalar, out: &mut Vec<(Scalar, STerm)>) -> bool {
        match t {
            STerm::Sum(a, b) => leaves(a, coef, out) && leaves(b, coef, out),
            STerm::Scale(a, b) => leaves(b, coef * *a, out),
            v if v.is_basis() => {
                out.push((coef, v.clone()));
                true
            }
            _ => false,
        }
    }
    let mut raw = Vec::new();
    if !leaves(t, Scalar::ONE, &mut raw) {
        return None;
    }
    let mut merged: Combination = Vec::new();
    for (c, v) in raw {
        match merged.iter_mut().find(|(_, w)| s_alpha_eq(w, &v)) {
            Some(slot) => slot.0 = slot.0 + c,
            None => merged.push((c, v)),
        }
    }
    merged.retain(|(c, _)| *c != Scalar::ZERO);
    Some(merged)
}

/// `a1 * v1 + a2 * v2 + ...`, left-associated; the empty combination is
/// `0 * true`.
pub fn from_combination(c: &Combination) -> STerm {
    let mut terms = c.iter().map(|(a, v)| STerm::scale(*a, v.clone()));
    match terms.next() {
        None => STerm::scale(Scalar::ZERO, STerm::True),
        Some(first) => terms.fold(first, STerm::sum),
    }
}

/// Whether two combinations have the same coefficient on every basis value,
/// within `eps`.
pub fn combinations_close(a: &Combination, b: &Combination, eps: f64) -> bool {
    let coef = |c: &Combination, v: &STerm| c.iter().find(|(_, w)| s_alpha_eq(w, v)).map_or(Scalar::ZERO, |p| p.0);
    a.iter().chain(b).all(|(_, v)| approx_eq(coef(a, v), coef(b, v), eps))
}

fn is_canonical_comb(t: &STerm) -> bool {
    combination(t).is_some_and(|c| from_combination(&c) == *t)
}

fn distribute(c: &Combination, mut apply: impl FnMut(&STerm) -> STerm) -> STerm {
    let mut terms = c.iter().map(|(a, v)| STerm::scale(*a, apply(v)));
    match terms.next() {
        None => STerm::scale(Scalar::ZERO, apply(&STerm::True)),
        Some(first) => terms.fold(first, STerm::sum),
    }
}

/// One leftmost-outermost step.
pub fn s_step(t: &STerm) -> Result<Option<(STerm, SRule)>, SError> {
    match t {
        STerm::Var(_) | STerm::True | STerm::False | STerm::Lam(..) => Ok(None),
        STerm::Sum(a, b) => {
            if let Some(c) = combination(t) {
                return Ok((!is_canonical_comb(t)).then(|| (from_combination(&c), SRule::Merge)));
            }
            if let Some((a2, r)) = s_step(a)? {
                return Ok(Some((STerm::Sum(Box::new(a2), b.clone()), r)));
            }
            Ok(s_step(b)?.map(|(b2, r)| (STerm::Sum(a.clone(), Box::new(b2)), r)))
        }
        STerm::Scale(alpha, b) => {
            if let Some(c) = combination(t) {
                return Ok((!is_canonical_comb(t)).then(|| (from_combination(&c), SRule::Merge)));
            }
            Ok(s_step(b)?.map(|(b2, r)| (STerm::Scale(*alpha, Box::new(b2)), r)))
        }
        STerm::App(f, arg) => {
            if let STerm::Lam(x, ty, body) = &**f {
                if ty.is_span() {
                    return Ok(Some((s_substitute(body, x, arg), SRule::BetaName)));
                }
                if arg.is_basis() {
                    return Ok(Some((s_substitute(body, x, arg), SRule::BetaBase)));
                }
                if let Some((a2, r)) = s_step(arg)? {
                    return Ok(Some((STerm::App(f.clone(), Box::new(a2)), r)));
                }
                return match combination(arg) {
                    Some(c) => Ok(Some((distribute(&c, |v| STerm::app((**f).clone(), v.clone())), SRule::Distribute))),
                    None => Err(SError::StuckTerm(t.to_string())),
                };
            }
            if let Some((f2, r)) = s_step(f)? {
                return Ok(Some((STerm::App(Box::new(f2), arg.clone()), r)));
            }
            if is_comb_node(f) {
                if let Some(c) = combination(f) {
                    return Ok(Some((distribute(&c, |g| STerm::app(g.clone(), (**arg).clone())), SRule::AppSum)));
                }
            }
            Ok(s_step(arg)?.map(|(a2, r)| (STerm::App(f.clone(), Box::new(a2)), r)))
        }
    }
}

pub fn s_normalize(t: &STerm, fuel: u64) -> Result<STerm, SError> {
    s_normalize_trace(t, fuel).map(|(t, _)| t)
}

/// Normal form together with the rules applied, in order.
pub fn s_normalize_trace(t: &STerm, fuel: u64) -> Result<(STerm, Vec<SRule>), SError> {
    let mut cur = t.clone();
    let mut rules = Vec::new();
    while let Some((next, r)) = s_step(&cur)? {
        if rules.len() as u64 >= fuel {
            return Err(SError::FuelExhausted { steps: rules.len() as u64 });
        }
        cur = next;
        rules.push(r);
    }
    Ok((cur, rules))
}
