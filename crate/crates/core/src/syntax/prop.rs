use std::fmt;

/// A proposition (type) of the proof language.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Prop {
    Top,
    /// The sup connective `A odot B`.
    Odot(Box<Prop>, Box<Prop>),
    /// Linear implication `A -o B`.
    Lolli(Box<Prop>, Box<Prop>),
    /// `A (+) B`.
    Plus(Box<Prop>, Box<Prop>),
    /// `A & B`.
    With(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn odot(a: Prop, b: Prop) -> Prop {
        Prop::Odot(Box::new(a), Box::new(b))
    }

    pub fn lolli(a: Prop, b: Prop) -> Prop {
        Prop::Lolli(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Prop, b: Prop) -> Prop {
        Prop::Plus(Box::new(a), Box::new(b))
    }

    pub fn with(a: Prop, b: Prop) -> Prop {
        Prop::With(Box::new(a), Box::new(b))
    }

    /// If `self` is `Q^n`, returns `n`.
    pub fn qubit_count(&self) -> Option<usize> {
        match self {
            Prop::Top => Some(0),
            Prop::Odot(a, b) => {
                let n = a.qubit_count()?;
                (b.qubit_count()? == n).then_some(n + 1)
            }
            _ => None,
        }
    }

    /// Number of `Top` leaves.
    pub fn top_leaves(&self) -> usize {
        match self {
            Prop::Top => 1,
            Prop::Odot(a, b) | Prop::Lolli(a, b) | Prop::Plus(a, b) | Prop::With(a, b) => {
                a.top_leaves() + b.top_leaves()
            }
        }
    }

    /// Whether the proposition mentions `(+)` or `&`.
    pub fn uses_extensions(&self) -> bool {
        match self {
            Prop::Top => false,
            Prop::Plus(..) | Prop::With(..) => true,
            Prop::Odot(a, b) | Prop::Lolli(a, b) => a.uses_extensions() || b.uses_extensions(),
        }
    }
}

/// `Q^0 = T`, `Q^(n+1) = Q^n odot Q^n`.
pub fn qpow(n: usize) -> Prop {
    (0..n).fold(Prop::Top, |q, _| Prop::odot(q.clone(), q))
}

impl fmt::Debug for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
