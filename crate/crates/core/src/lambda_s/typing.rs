use std::collections::HashMap;

use super::{SError, STerm, SType};

pub type SContext = HashMap<String, SType>;

fn mismatch(t: &STerm, expected: impl Into<String>, found: &SType) -> SError {
    SError::TypeMismatch { term: t.to_string(), expected: expected.into(), found: found.to_string() }
}

/// Types `t`. Abstractions over `S(A)` must use their variable exactly
/// once.
pub fn s_typecheck(ctx: &SContext, t: &STerm) -> Result<SType, SError> {
    match t {
        STerm::Var(x) => ctx.get(x).cloned().ok_or_else(|| SError::UnboundVariable(x.clone())),
        STerm::True | STerm::False => Ok(SType::Bool),
        STerm::Lam(x, a, body) => {
            if a.is_span() {
                let uses = body.occurrences(x);
                if uses != 1 {
                    return Err(SError::NonLinearUseOfSpanVariable { var: x.clone(), uses });
                }
            }
            let mut inner = ctx.clone();
            inner.insert(x.clone(), a.clone());
            let b = s_typecheck(&inner, body)?;
            Ok(SType::arrow(a.clone(), b))
        }
        STerm::App(f, arg) => {
            let ft = s_typecheck(ctx, f)?;
            let at = s_typecheck(ctx, arg)?;
            let (dom, cod, spanned) = match ft.collapsed() {
                SType::Arrow(a, b) => (*a, *b, false),
                SType::Span(inner) => match *inner {
                    SType::Arrow(a, b) => (*a, *b, true),
                    other => return Err(mismatch(f, "a function", &SType::span(other))),
                },
                other => return Err(mismatch(f, "a function", &other)),
            };
            if at.is_subtype(&dom) {
                return Ok(if spanned { SType::span(cod.strip().clone()) } else { cod });
            }
            // call-by-base: a base binder applied to a superposition
            if !dom.is_span() && at.is_subtype(&SType::span(dom.clone())) {
                return Ok(SType::span(cod.strip().clone()));
            }
            Err(mismatch(arg, dom.to_string(), &at))
        }
        STerm::Sum(a, b) => {
            let ta = s_typecheck(ctx, a)?;
            let tb = s_typecheck(ctx, b)?;
            let (ba, bb) = (ta.strip().collapsed(), tb.strip().collapsed());
            if ba != bb {
                return Err(mismatch(b, SType::span(ba).to_string(), &tb));
            }
            Ok(SType::span(ba))
        }
        STerm::Scale(_, body) => {
            let tb = s_typecheck(ctx, body)?;
            Ok(SType::span(tb.strip().collapsed()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn closed(t: &STerm) -> Result<SType, SError> {
        s_typecheck(&SContext::new(), t)
    }

    fn sb() -> SType {
        SType::span(SType::Bool)
    }

    #[test]
    fn plus_state() {
        let h = Scalar::FRAC_1_SQRT_2;
        let t = STerm::sum(STerm::scale(h, STerm::True), STerm::scale(h, STerm::False));
        assert_eq!(closed(&t).unwrap(), sb());
    }

    #[test]
    fn span_identity() {
        let id = STerm::lam("x", sb(), STerm::var("x"));
        assert_eq!(closed(&id).unwrap(), SType::arrow(sb(), sb()));
    }

    #[test]
    fn span_variable_used_twice() {
        let t = STerm::lam("x", sb(), STerm::sum(STerm::var("x"), STerm::var("x")));
        assert!(matches!(closed(&t), Err(SError::NonLinearUseOfSpanVariable { uses: 2, .. })));
        let unused = STerm::lam("x", sb(), STerm::True);
        assert!(matches!(closed(&unused), Err(SError::NonLinearUseOfSpanVariable { uses: 0, .. })));
    }

    #[test]
    fn base_variable_may_repeat() {
        let t = STerm::lam("x", SType::Bool, STerm::sum(STerm::var("x"), STerm::var("x")));
        assert_eq!(closed(&t).unwrap(), SType::arrow(SType::Bool, sb()));
    }

    #[test]
    fn application_rules() {
        let not_id = STerm::lam("x", SType::Bool, STerm::var("x"));
        assert_eq!(closed(&STerm::app(not_id.clone(), STerm::True)).unwrap(), SType::Bool);
        let sup = STerm::sum(STerm::scale(0.5, STerm::True), STerm::scale(0.5, STerm::False));
        assert_eq!(closed(&STerm::app(not_id.clone(), sup.clone())).unwrap(), sb());
        let span_id = STerm::lam("x", sb(), STerm::var("x"));
        assert_eq!(closed(&STerm::app(span_id, STerm::True)).unwrap(), sb());
        let fsum = STerm::sum(not_id.clone(), not_id.clone());
        assert_eq!(closed(&STerm::app(fsum, STerm::False)).unwrap(), sb());
        let wrong = STerm::app(not_id.clone(), not_id);
        assert!(matches!(closed(&wrong), Err(SError::TypeMismatch { .. })));
        assert!(matches!(closed(&STerm::app(STerm::True, STerm::True)), Err(SError::TypeMismatch { .. })));
        assert!(matches!(closed(&STerm::var("y")), Err(SError::UnboundVariable(_))));
    }

    #[test]
    fn sums_need_matching_bases() {
        let f = STerm::lam("x", SType::Bool, STerm::var("x"));
        assert!(closed(&STerm::sum(STerm::True, f)).is_err());
        assert_eq!(closed(&STerm::sum(STerm::True, STerm::scale(2.0, STerm::False))).unwrap(), sb());
    }
}
