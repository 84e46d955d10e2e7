//! Exact arithmetic in the rationals and in real quadratic extensions Q(sqrt(d)).
//!
//! Every scalar in this crate is a [`QFElement`]: a value `a + b*sqrt(d)` with
//! rational `a`, `b` and a fixed squarefree discriminant `d`. A purely rational
//! value is stored with `d = 1` and `b = 0`, and mixes freely with values of any
//! other discriminant; two genuinely irrational values with different
//! discriminants refuse to combine.
//!
//! Submodules build on this scalar type: dense matrices and exact elimination
//! ([`matrix`]), fixed-point real evaluation ([`real`]), numeric-to-exact
//! identification ([`identify`]), and univariate polynomial root finding
//! ([`poly`]).

pub mod identify;
pub mod matrix;
pub mod poly;
pub mod real;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors produced by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    /// Two irrational operands live in different quadratic fields.
    #[error("discriminant mismatch: cannot combine sqrt({0}) with sqrt({1})")]
    DiscMismatch(u64, u64),
    /// Division by the zero element.
    #[error("division by zero")]
    DivisionByZero,
    /// A discriminant with a square factor was supplied.
    #[error("discriminant {0} is not squarefree")]
    NotSquarefree(u64),
    /// A string did not match the exact-value serialization format.
    #[error("cannot parse {input:?} as an exact value: {reason}")]
    Parse { input: String, reason: String },
    /// A matrix was built or combined with inconsistent dimensions.
    #[error("matrix shape error: {0}")]
    Shape(String),
    /// Numeric identification found no exact value within the search bounds.
    #[error("no exact value of height <= {height_bound} matches {value} within {tol:e}")]
    NoMatch {
        value: f64,
        height_bound: u64,
        tol: f64,
    },
    /// Numeric identification found two distinct exact values within tolerance.
    #[error("ambiguous identification of {value}: {first} and {second} both match")]
    AmbiguousMatch {
        value: f64,
        first: String,
        second: String,
    },
    /// A polynomial root does not lie in any permitted quadratic field.
    #[error("polynomial root outside the permitted quadratic fields: {0}")]
    RootOutsideField(String),
}

/// Returns true if `d` has no repeated prime factor.
fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(p * p) {
            return false;
        }
        while n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

/// An exact element `rat + rad*sqrt(disc)` of a real quadratic field.
///
/// Invariants, maintained by every constructor and operation:
/// - `disc` is squarefree and positive;
/// - if `rad` is zero then `disc == 1` (canonical form for rationals);
/// - both rationals are stored reduced with positive denominator
///   (guaranteed by `BigRational`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QFElement {
    rat: BigRational,
    rad: BigRational,
    disc: u64,
}

impl QFElement {
    /// The zero element.
    pub fn zero() -> Self {
        Self::from_big(BigRational::zero())
    }

    /// The unit element.
    pub fn one() -> Self {
        Self::integer(1)
    }

    /// A rational element from an integer.
    pub fn integer(n: i64) -> Self {
        Self::from_big(BigRational::from_integer(BigInt::from(n)))
    }

    /// A rational element `n/d`. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// A rational element from an arbitrary-precision rational.
    pub fn from_big(rat: BigRational) -> Self {
        QFElement {
            rat,
            rad: BigRational::zero(),
            disc: 1,
        }
    }

    /// The element `rat + rad*sqrt(disc)`.
    ///
    /// Fails if `disc` is not squarefree. A zero `rad` collapses to the
    /// canonical rational form with `disc = 1`.
    pub fn quadratic(rat: BigRational, rad: BigRational, disc: u64) -> Result<Self, ExactError> {
        if !is_squarefree(disc) {
            return Err(ExactError::NotSquarefree(disc));
        }
        let mut out = QFElement { rat, rad, disc };
        out.normalize();
        Ok(out)
    }

    /// The element `sqrt(d)` itself.
    pub fn sqrt_disc(d: u64) -> Result<Self, ExactError> {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    /// Convenience constructor `(a/b) + (c/d)*sqrt(n)` from machine integers.
    pub fn quad_ratio(a: i64, b: i64, c: i64, d: i64, n: u64) -> Result<Self, ExactError> {
        Self::quadratic(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
            n,
        )
    }

    fn normalize(&mut self) {
        if self.rad.is_zero() {
            self.disc = 1;
        } else if self.disc == 1 {
            // sqrt(1) = 1: fold the radical coefficient into the rational part.
            let rad = std::mem::replace(&mut self.rad, BigRational::zero());
            self.rat += rad;
        }
    }

    /// The rational part `a` of `a + b*sqrt(d)`.
    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    /// The radical coefficient `b` of `a + b*sqrt(d)`.
    pub fn rad_part(&self) -> &BigRational {
        &self.rad
    }

    /// The discriminant `d` (1 for purely rational values).
    pub fn disc(&self) -> u64 {
        self.disc
    }

    /// Both parts `(a, b)` at once.
    pub fn parts(&self) -> (BigRational, BigRational) {
        (self.rat.clone(), self.rad.clone())
    }

    /// The rational value, or `None` if the element is irrational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.rad.is_zero() {
            Some(&self.rat)
        } else {
            None
        }
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    /// True if the element is rational (including zero).
    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// True if the element equals the integer `n`.
    pub fn is_integer_value(&self, n: i64) -> bool {
        self.rad.is_zero() && self.rat == BigRational::from_integer(BigInt::from(n))
    }

    fn common_disc(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.disc, other.disc) {
            (a, b) if a == b => Ok(a),
            (1, b) => Ok(b),
            (a, 1) => Ok(a),
            (a, b) => Err(ExactError::DiscMismatch(a, b)),
        }
    }

    /// Exact sum. Fails on a discriminant mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let disc = self.common_disc(other)?;
        let mut out = QFElement {
            rat: &self.rat + &other.rat,
            rad: &self.rad + &other.rad,
            disc,
        };
        out.normalize();
        Ok(out)
    }

    /// Exact difference. Fails on a discriminant mismatch.
    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&(-other))
    }

    /// Exact product `(a+b*sqrt(d))(a'+b'*sqrt(d)) = (aa'+bb'd) + (ab'+a'b)sqrt(d)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let disc = self.common_disc(other)?;
        let d = BigRational::from_integer(BigInt::from(disc));
        let rat = &self.rat * &other.rat + &self.rad * &other.rad * &d;
        let rad = &self.rat * &other.rad + &self.rad * &other.rat;
        let mut out = QFElement { rat, rad, disc };
        out.normalize();
        Ok(out)
    }

    /// Exact quotient via the conjugate. Fails on division by zero or a
    /// discriminant mismatch.
    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let disc = self.common_disc(other)?;
        // norm = a^2 - b^2 d, nonzero for a nonzero element since sqrt(d) is
        // irrational for squarefree d > 1.
        let d = BigRational::from_integer(BigInt::from(other.disc));
        let norm = &other.rat * &other.rat - &other.rad * &other.rad * &d;
        debug_assert!(!norm.is_zero());
        let conj = QFElement {
            rat: other.rat.clone(),
            rad: -other.rad.clone(),
            disc: other.disc,
        };
        let num = self.try_mul(&conj)?;
        let mut out = QFElement {
            rat: num.rat / &norm,
            rad: num.rad / &norm,
            disc: num.disc.max(disc),
        };
        out.normalize();
        Ok(out)
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn try_inv(&self) -> Result<Self, ExactError> {
        Self::one().try_div(self)
    }

    /// The conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        let mut out = QFElement {
            rat: self.rat.clone(),
            rad: -self.rad.clone(),
            disc: self.disc,
        };
        out.normalize();
        out
    }

    /// Sign of the real value: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        let a = &self.rat;
        let b = &self.rad;
        if b.is_zero() {
            return sign_of(a);
        }
        if a.is_zero() {
            return sign_of(b);
        }
        let sa = sign_of(a);
        let sb = sign_of(b);
        if sa == sb {
            return sa;
        }
        // Compare |a| against |b|sqrt(d) by squaring; the sign is the sign of
        // the larger magnitude term.
        let d = BigRational::from_integer(BigInt::from(self.disc));
        let diff = a * a - b * b * d;
        match sign_of(&diff) {
            0 => 0,
            1 => sa,
            _ => sb,
        }
    }

    /// True if the real value is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Exact comparison of real values. Fails on a discriminant mismatch.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok(match self.try_sub(other)?.signum() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Height: the largest of the four numerator/denominator magnitudes.
    ///
    /// Used for pivot selection and for bounding identification searches.
    pub fn height(&self) -> BigUint {
        let parts = [
            self.rat.numer().magnitude(),
            self.rat.denom().magnitude(),
            self.rad.numer().magnitude(),
            self.rad.denom().magnitude(),
        ];
        parts.into_iter().max().cloned().unwrap_or_default()
    }

    /// Approximate double value (for display and prefilters only).
    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.rad.is_zero() {
            return a;
        }
        let b = self.rad.to_f64().unwrap_or(f64::NAN);
        a + b * (self.disc as f64).sqrt()
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Checked field arithmetic with an explicit operator tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies one checked field operation; the entry point mirrored by the
/// library's public arithmetic contract.
pub fn qf_arith(op: QfOp, x: &QFElement, y: &QFElement) -> Result<QFElement, ExactError> {
    match op {
        QfOp::Add => x.try_add(y),
        QfOp::Sub => x.try_sub(y),
        QfOp::Mul => x.try_mul(y),
        QfOp::Div => x.try_div(y),
    }
}

/// Returns the rational and radical parts of `x` as a pair.
pub fn qf_parts(x: &QFElement) -> (BigRational, BigRational) {
    x.parts()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &QFElement {
            type Output = QFElement;
            fn $method(self, rhs: &QFElement) -> QFElement {
                self.$checked(rhs).expect("incompatible exact operands")
            }
        }
        impl std::ops::$trait for QFElement {
            type Output = QFElement;
            fn $method(self, rhs: QFElement) -> QFElement {
                (&self).$checked(&rhs).expect("incompatible exact operands")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl std::ops::Neg for &QFElement {
    type Output = QFElement;
    fn neg(self) -> QFElement {
        QFElement {
            rat: -self.rat.clone(),
            rad: -self.rad.clone(),
            disc: self.disc,
        }
    }
}

impl std::ops::Neg for QFElement {
    type Output = QFElement;
    fn neg(self) -> QFElement {
        -&self
    }
}

impl fmt::Display for QFElement {
    /// Serialization format used across the crate and its CLI:
    /// `a/b` for rationals and `a/b+c/d*sqrt(n)` otherwise, whitespace-free,
    /// denominators always explicit, negative signs attached to numerators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.rat.numer(), self.rat.denom())?;
        if !self.rad.is_zero() {
            write!(
                f,
                "+{}/{}*sqrt({})",
                self.rad.numer(),
                self.rad.denom(),
                self.disc
            )?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str, input: &str) -> Result<BigRational, ExactError> {
    let err = |reason: &str| ExactError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_str).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den_str).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for QFElement {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ExactError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(err("empty string"));
        }
        match s.find("*sqrt(") {
            None => Ok(QFElement::from_big(parse_rational(s, s)?)),
            Some(star) => {
                if !s.ends_with(')') {
                    return Err(err("missing closing parenthesis"));
                }
                let disc: u64 = s[star + 6..s.len() - 1]
                    .parse()
                    .map_err(|_| err("bad discriminant"))?;
                // The radical term never contains '+', so the last '+' splits
                // the two parts; numerators carry their own signs.
                let plus = s[..star].rfind('+').ok_or_else(|| err("missing '+'"))?;
                if plus == 0 {
                    return Err(err("missing rational part"));
                }
                let rat = parse_rational(&s[..plus], s)?;
                let rad = parse_rational(&s[plus + 1..star], s)?;
                QFElement::quadratic(rat, rad, disc)
            }
        }
    }
}

impl Serialize for QFElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QFElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
