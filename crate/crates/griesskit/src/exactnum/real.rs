//! Fixed-point real arithmetic with arbitrary precision.
//!
//! [`FixedReal`] stores a value as `mant * 2^(-bits)` with a big-integer
//! mantissa. It provides the handful of transcendental evaluations the crate
//! needs (pi, sine of rational multiples of pi, integer square roots) with
//! controlled precision, so numeric results can later be identified as exact
//! quadratic-field elements.
//!
//! Every operation rounds to nearest at the result precision; chained
//! computations should carry guard bits (the trig routines do so internally).

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extra internal bits used by the transcendental routines.
const GUARD_BITS: u32 = 64;

/// A fixed-point real number `mant * 2^(-bits)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedReal {
    mant: BigInt,
    bits: u32,
}

/// Division rounded to the nearest integer, ties away from zero.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(!den.is_zero());
    let (num, den, sign) = {
        let sign = num.sign() != den.sign() && !num.is_zero();
        (num.abs(), den.abs(), sign)
    };
    let q: BigInt = (&num + (&den >> 1)) / &den;
    if sign {
        -q
    } else {
        q
    }
}

impl FixedReal {
    /// Zero at the given precision.
    pub fn zero(bits: u32) -> Self {
        FixedReal {
            mant: BigInt::zero(),
            bits,
        }
    }

    /// Exact embedding of an integer.
    pub fn from_int(n: i64, bits: u32) -> Self {
        FixedReal {
            mant: BigInt::from(n) << bits,
            bits,
        }
    }

    /// Nearest fixed-point value of a rational.
    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        let num = r.numer() << bits;
        FixedReal {
            mant: div_round(&num, r.denom()),
            bits,
        }
    }

    /// Nearest fixed-point value of a double (exact binary expansion).
    ///
    /// Returns `None` for non-finite inputs.
    pub fn from_f64(x: f64, bits: u32) -> Option<Self> {
        let r = BigRational::from_float(x)?;
        Some(Self::from_rational(&r, bits))
    }

    /// The working precision in fractional bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        FixedReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        FixedReal {
            mant: -self.mant.clone(),
            bits: self.bits,
        }
    }

    /// Re-expresses the value at another precision, rounding if it shrinks.
    pub fn rescale(&self, bits: u32) -> Self {
        if bits >= self.bits {
            FixedReal {
                mant: &self.mant << (bits - self.bits),
                bits,
            }
        } else {
            let shift = self.bits - bits;
            let den = BigInt::one() << shift;
            FixedReal {
                mant: div_round(&self.mant, &den),
                bits,
            }
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let bits = self.bits.max(other.bits);
        (
            self.rescale(bits).mant,
            other.rescale(bits).mant,
            bits,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, bits) = self.aligned(other);
        FixedReal { mant: a + b, bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, bits) = self.aligned(other);
        let den = BigInt::one() << bits;
        FixedReal {
            mant: div_round(&(a * b), &den),
            bits,
        }
    }

    /// Quotient; panics on division by zero (callers check first).
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "FixedReal division by zero");
        let (a, b, bits) = self.aligned(other);
        FixedReal {
            mant: div_round(&(a << bits), &b),
            bits,
        }
    }

    /// Multiplies by an exact rational.
    pub fn mul_rational(&self, r: &BigRational) -> Self {
        FixedReal {
            mant: div_round(&(&self.mant * r.numer()), r.denom()),
            bits: self.bits,
        }
    }

    /// Value comparison across precisions.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }

    /// The square root of a nonnegative integer at the given precision.
    pub fn sqrt_int(n: u64, bits: u32) -> Self {
        let scaled = BigUint::from(n) << (2 * bits);
        FixedReal {
            mant: BigInt::from(num_integer::Roots::sqrt(&scaled)),
            bits,
        }
    }

    /// Pi via Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(bits: u32) -> Self {
        let prec = bits + GUARD_BITS;
        let a = atan_inv(5, prec);
        let b = atan_inv(239, prec);
        let mant = a.mant * 16 - b.mant * 4;
        FixedReal { mant, bits: prec }.rescale(bits)
    }

    /// `sin(pi * x)` for rational `x`, via range reduction to `[0, 1/2]` and
    /// a Taylor series at guarded precision.
    pub fn sin_pi(x: &BigRational, bits: u32) -> Self {
        let prec = bits + GUARD_BITS;
        // Reduce modulo the period: u = x mod 2 lies in [0, 2).
        let two = BigRational::from_integer(BigInt::from(2));
        let mut u = x - (x / &two).floor() * &two;
        let mut negate = false;
        if u >= BigRational::one() {
            u -= BigRational::one();
            negate = true;
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if u > half {
            u = BigRational::one() - u;
        }
        // t = pi * u, 0 <= t <= pi/2.
        let t = Self::pi(prec).mul_rational(&u);
        let den = BigInt::one() << prec;
        let t_sq = div_round(&(&t.mant * &t.mant), &den);
        let mut term = t.mant.clone();
        let mut sum = t.mant;
        let mut k: u64 = 1;
        while !term.is_zero() {
            term = div_round(&(&term * &t_sq), &den);
            term = div_round(&term, &BigInt::from(2 * k * (2 * k + 1)));
            term = -term;
            sum += &term;
            k += 1;
        }
        if negate {
            sum = -sum;
        }
        FixedReal { mant: sum, bits: prec }.rescale(bits)
    }

    /// Approximate double value.
    pub fn to_f64(&self) -> f64 {
        self.mant.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(self.bits as i32))
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounded to
    /// nearest with ties away from zero.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let m = self.mant.abs();
        let pow10 = BigUint::from(10u32).pow(digits);
        let scaled = div_round(
            &(m * BigInt::from(pow10.clone())),
            &(BigInt::one() << self.bits),
        );
        let (int_part, frac_part) = scaled.div_rem(&BigInt::from(pow10));
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part,
            width = digits as usize
        )
    }
}

/// `atan(1/x)` for integer `x >= 2` by the alternating power series.
fn atan_inv(x: u64, bits: u32) -> FixedReal {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x_sq = &x * &x;
    let mut power = div_round(&one, &x);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    while !power.is_zero() {
        power = div_round(&power, &x_sq);
        if power.is_zero() {
            break;
        }
        let contrib = div_round(&power, &BigInt::from(2 * k + 1));
        if k % 2 == 1 {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        k += 1;
    }
    FixedReal { mant: sum, bits }
}
