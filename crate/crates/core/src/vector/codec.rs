use crate::reduce::canonical_depth;
use crate::syntax::Term;

use super::{CVector, VecError};

/// Vector denoted by a canonical proof of `Q^n`: `star(a)` is `(a)`, and
/// `[t1, t2]` stacks the vectors of `t1` and `t2`.
pub fn decode(t: &Term) -> Result<CVector, VecError> {
    if canonical_depth(t).is_none() {
        return Err(VecError::NotCanonical(t.to_string()));
    }
    let mut out = Vec::new();
    collect(t, &mut out);
    CVector::new(out)
}

fn collect(t: &Term, out: &mut Vec<crate::Scalar>) {
    match t {
        Term::Star(a) => out.push(*a),
        Term::SupPair(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        _ => unreachable!("checked canonical"),
    }
}

/// Canonical proof of `Q^n` for a vector of length `2^n`: halves become
/// the two components of a pair.
pub fn encode(v: &CVector) -> Term {
    fn go(xs: &[crate::Scalar]) -> Term {
        if xs.len() == 1 {
            return Term::Star(xs[0]);
        }
        let (l, r) = xs.split_at(xs.len() / 2);
        Term::pair(go(l), go(r))
    }
    go(v.entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::syntax::{alpha_eq, qpow, typecheck, Context};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decode_examples() {
        let a = Scalar::new(0.1, -0.2);
        assert_eq!(decode(&Term::Star(a)).unwrap().entries(), &[a]);
        assert_eq!(decode(&Term::pair(Term::star(1.0), Term::star(0.0))).unwrap(), CVector::basis(1, 0));
        let t = Term::pair(
            Term::pair(Term::star(0.0), Term::star(0.0)),
            Term::pair(Term::star(0.0), Term::star(1.0)),
        );
        assert_eq!(decode(&t).unwrap(), CVector::basis(2, 3));
        assert!(matches!(decode(&Term::sum(Term::star(1.0), Term::star(1.0))), Err(VecError::NotCanonical(_))));
    }

    #[test]
    fn encode_plus_state() {
        let h = Scalar::FRAC_1_SQRT_2;
        let v = CVector::new(vec![h, h]).unwrap();
        assert_eq!(encode(&v), Term::pair(Term::Star(h), Term::Star(h)));
    }

    #[test]
    fn roundtrip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(0..=4);
            let v = CVector::new((0..1 << n).map(|_| Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()).unwrap();
            let t = encode(&v);
            assert_eq!(typecheck(&Context::new(), &t).unwrap(), qpow(n));
            assert_eq!(decode(&t).unwrap(), v);
            assert!(alpha_eq(&encode(&decode(&t).unwrap()), &t));
        }
    }
}
