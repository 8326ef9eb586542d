//! Complex scalars.
//!
//! Every amplitude carried by a proof term (`star(a)`, `a * t`) is a
//! double-precision complex number. Comparisons go through [`approx_eq`]
//! with a caller-supplied tolerance; [`DEFAULT_EPS`] is used when none is
//! given.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Default comparison tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("expected a value greater than {eps}, got {value}")]
    NonPositive { value: f64, eps: f64 },
    #[error("invalid scalar literal `{0}`")]
    BadLiteral(String),
}

/// A complex number `re + im·i`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Scalar(pub Complex64);

impl Scalar {
    pub const ZERO: Scalar = Scalar(Complex64::new(0.0, 0.0));
    pub const ONE: Scalar = Scalar(Complex64::new(1.0, 0.0));
    pub const I: Scalar = Scalar(Complex64::new(0.0, 1.0));
    pub const FRAC_1_SQRT_2: Scalar = Scalar(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));

    pub const fn new(re: f64, im: f64) -> Self {
        Scalar(Complex64::new(re, im))
    }

    pub const fn real(re: f64) -> Self {
        Scalar(Complex64::new(re, 0.0))
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn sq_modulus(self) -> f64 {
        sq_modulus(self)
    }

    pub fn is_finite(self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn conj(self) -> Self {
        Scalar(self.0.conj())
    }
}

pub fn add(a: Scalar, b: Scalar) -> Scalar {
    Scalar(a.0 + b.0)
}

pub fn mul(a: Scalar, b: Scalar) -> Scalar {
    Scalar(a.0 * b.0)
}

/// `|a|² = re² + im²`, the Born weight of an amplitude.
pub fn sq_modulus(a: Scalar) -> f64 {
    a.0.re * a.0.re + a.0.im * a.0.im
}

/// True iff `|a - b|² ≤ eps²`.
pub fn approx_eq(a: Scalar, b: Scalar, eps: f64) -> bool {
    debug_assert!(eps > 0.0);
    sq_modulus(a - b) <= eps * eps
}

/// `1/√x` as a real scalar. Used as the renormalization factor `1/‖v‖`
/// where `x = ‖v‖²`.
pub fn inv_sqrt_real(x: f64, eps: f64) -> Result<Scalar, ScalarError> {
    if x.is_nan() || x <= eps {
        return Err(ScalarError::NonPositive { value: x, eps });
    }
    Ok(Scalar::real(1.0 / x.sqrt()))
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        add(self, rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        mul(self, rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl From<f64> for Scalar {
    fn from(re: f64) -> Self {
        Scalar::real(re)
    }
}

impl From<Complex64> for Scalar {
    fn from(c: Complex64) -> Self {
        Scalar(c)
    }
}

fn fmt_real(x: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x == std::f64::consts::FRAC_1_SQRT_2 {
        f.write_str("1/sqrt2")
    } else if x == -std::f64::consts::FRAC_1_SQRT_2 {
        f.write_str("-1/sqrt2")
    } else {
        write!(f, "{x}")
    }
}

/// Textual form: `a`, `bi`, `a+bi` or `a-bi`. The exact double `2^(-1/2)`
/// in a purely real scalar prints as `1/sqrt2`. The printed form parses
/// back to the same value; a zero imaginary part is omitted, so its sign
/// is not kept.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.0.re, self.0.im);
        if im == 0.0 {
            return fmt_real(re, f);
        }
        if re == 0.0 && !re.is_sign_negative() {
            return write!(f, "{im}i");
        }
        write!(f, "{re}")?;
        if im.is_sign_negative() {
            write!(f, "-{}i", -im)
        } else {
            write!(f, "+{im}i")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;

    /// Parses the textual form written by `Display`, surrounding
    /// whitespace allowed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar_text(s.trim()).ok_or_else(|| ScalarError::BadLiteral(s.to_string()))
    }
}

/// Unsigned magnitude: a decimal literal or `1/sqrt2`.
fn parse_magnitude(s: &str) -> Option<f64> {
    if s == "1/sqrt2" {
        return Some(std::f64::consts::FRAC_1_SQRT_2);
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() || !bytes[0].is_ascii_digit() {
        return None;
    }
    if !bytes
        .iter()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
    {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn parse_signed(s: &str) -> Option<f64> {
    match s.strip_prefix('-') {
        Some(rest) => parse_magnitude(rest).map(|x| -x),
        None => parse_magnitude(s),
    }
}

fn parse_scalar_text(s: &str) -> Option<Scalar> {
    if let Some(body) = s.strip_suffix('i') {
        // Split `a+b` / `a-b` at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        return match split {
            Some(k) => {
                let re = parse_signed(&body[..k])?;
                let im = parse_magnitude(&body[k + 1..])?;
                Some(Scalar::new(re, if bytes[k] == b'-' { -im } else { im }))
            }
            None => Some(Scalar::new(0.0, parse_signed(body)?)),
        };
    }
    parse_signed(s).map(Scalar::real)
}
