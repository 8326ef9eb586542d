use crate::syntax::Term;

/// If `t` is a closed irreducible proof of `Q^n` (`star(a)` for `n = 0`,
/// a `[t1, t2]` pair of two canonical terms of `Q^(n-1)` otherwise),
/// returns `n`.
pub fn canonical_depth(t: &Term) -> Option<usize> {
    match t {
        Term::Star(_) => Some(0),
        Term::SupPair(a, b) => {
            let n = canonical_depth(a)?;
            (canonical_depth(b)? == n).then_some(n + 1)
        }
        _ => None,
    }
}

pub fn is_canonical(t: &Term, n: usize) -> bool {
    canonical_depth(t) == Some(n)
}

/// Squared 2-norm of the vector a canonical term denotes. Non-canonical
/// subterms contribute nothing; callers check the shape first.
pub fn sq_norm(t: &Term) -> f64 {
    match t {
        Term::Star(a) => a.sq_modulus(),
        Term::SupPair(a, b) => sq_norm(a) + sq_norm(b),
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn shapes() {
        assert!(is_canonical(&Term::Star(Scalar::new(0.2, -1.0)), 0));
        assert!(is_canonical(&Term::pair(Term::star(1.0), Term::star(0.0)), 1));
        assert!(!is_canonical(&Term::sum(Term::star(1.0), Term::star(0.0)), 0));
        let lopsided = Term::pair(Term::star(1.0), Term::pair(Term::star(1.0), Term::star(0.0)));
        assert_eq!(canonical_depth(&lopsided), None);
        assert!(!is_canonical(&Term::pair(Term::star(1.0), Term::star(0.0)), 2));
    }

    #[test]
    fn norms() {
        let t = Term::pair(Term::Star(Scalar::new(3.0, 4.0)), Term::star(1.0));
        assert_eq!(sq_norm(&t), 26.0);
    }
}
