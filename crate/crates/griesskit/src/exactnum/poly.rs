//! Univariate polynomials with rational coefficients.
//!
//! [`RatPoly`] supports the small amount of polynomial algebra the rest of
//! the crate needs: ring arithmetic, Euclidean division, monic greatest
//! common divisors, and exact root extraction for polynomials whose roots
//! lie in the rationals or a real quadratic field. Root extraction peels off
//! rational roots first and then solves the remaining quadratic by factoring
//! the largest square out of its discriminant; anything irreducible of higher
//! degree is reported as an error rather than approximated.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, QFElement};

/// Upper bound on trial division when factoring discriminants and
/// enumerating divisors for the rational root scan.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// A polynomial with `BigRational` coefficients stored in ascending order.
///
/// The zero polynomial is represented by an empty coefficient vector; all
/// constructors trim trailing zeros so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    /// Builds a polynomial from ascending coefficients, trimming zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial from ascending integer coefficients.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Evaluates at a rational point by Horner's rule.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates at a quadratic-field point by Horner's rule.
    pub fn eval_qf(&self, x: &QFElement) -> Result<QFElement, ExactError> {
        let mut acc = QFElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(&QFElement::from_big(c.clone()))?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, factor: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn divrem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly), ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let d = divisor.degree().expect("nonzero divisor");
        let lead_inv = BigRational::one() / divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d && !rem.is_empty() {
            let deg_r = rem.len() - 1;
            let factor = rem.last().expect("nonempty").clone() * &lead_inv;
            if !factor.is_zero() {
                quot[deg_r - d] = factor.clone();
                for i in 0..=d {
                    let delta = &factor * divisor.coeff(i);
                    rem[deg_r - d + i] -= delta;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Divides the leading coefficient out; the zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let inv = BigRational::one() / self.leading();
        self.scale(&inv)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clears denominators and common integer content, returning integer
    /// coefficients with positive leading coefficient.
    fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in &mut ints {
                *c /= &content;
            }
        }
        if ints.last().expect("nonzero poly").is_negative() {
            for c in &mut ints {
                *c = -c.clone();
            }
        }
        ints
    }

    /// All roots lying in the rationals or a real quadratic field, sorted
    /// ascending and deduplicated (multiplicity is not reported).
    ///
    /// Fails with [`ExactError::RootOutsideField`] when a factor of degree
    /// three or more has no rational root, when a quadratic factor has
    /// negative discriminant, or when a discriminant is too large to factor.
    pub fn roots(&self) -> Result<Vec<QFElement>, ExactError> {
        if self.is_zero() {
            return Err(ExactError::Shape(
                "roots of the zero polynomial are undetermined".to_string(),
            ));
        }
        let mut roots: Vec<QFElement> = Vec::new();
        let mut current = self.clone();

        while current.degree().is_some_and(|d| d >= 1) && current.coeff(0).is_zero() {
            push_unique(&mut roots, QFElement::zero());
            let (q, _) = current.divrem(&RatPoly::from_integers(&[0, 1]))?;
            current = q;
        }

        while current.degree().is_some_and(|d| d >= 3) {
            match current.first_rational_root() {
                Some(r) => {
                    push_unique(&mut roots, QFElement::from_big(r.clone()));
                    let linear = RatPoly::new(vec![-r, BigRational::one()]);
                    let (q, rem) = current.divrem(&linear)?;
                    debug_assert!(rem.is_zero());
                    current = q;
                }
                None => {
                    return Err(ExactError::RootOutsideField(format!(
                        "no rational root of degree-{} factor {}",
                        current.degree().expect("nonzero"),
                        current
                    )));
                }
            }
        }

        match current.degree() {
            Some(2) => {
                let ints = current.primitive_integer_coeffs();
                let (c, b, a) = (ints[0].clone(), ints[1].clone(), ints[2].clone());
                let disc = &b * &b - BigInt::from(4) * &a * &c;
                let two_a = BigRational::from_integer(BigInt::from(2) * &a);
                match disc.sign() {
                    num_bigint::Sign::Minus => {
                        return Err(ExactError::RootOutsideField(format!(
                            "negative discriminant for quadratic factor {current}"
                        )));
                    }
                    num_bigint::Sign::NoSign => {
                        let r = BigRational::from_integer(-b) / two_a;
                        push_unique(&mut roots, QFElement::from_big(r));
                    }
                    num_bigint::Sign::Plus => {
                        let (s, m) = square_part(&disc.to_biguint().expect("positive"))?;
                        let s = BigRational::from_integer(BigInt::from(s));
                        let rat = BigRational::from_integer(-b) / &two_a;
                        if m == 1 {
                            push_unique(
                                &mut roots,
                                QFElement::from_big(&rat - &s / &two_a),
                            );
                            push_unique(
                                &mut roots,
                                QFElement::from_big(&rat + &s / &two_a),
                            );
                        } else {
                            for sign in [-1i64, 1] {
                                let rad =
                                    &s / &two_a * BigRational::from_integer(BigInt::from(sign));
                                push_unique(
                                    &mut roots,
                                    QFElement::quadratic(rat.clone(), rad, m)?,
                                );
                            }
                        }
                    }
                }
            }
            Some(1) => {
                let r = -current.coeff(0) / current.coeff(1);
                push_unique(&mut roots, QFElement::from_big(r));
            }
            _ => {}
        }

        sort_roots(&mut roots);
        Ok(roots)
    }

    /// First rational root found by the divisor scan, if any.
    fn first_rational_root(&self) -> Option<BigRational> {
        let ints = self.primitive_integer_coeffs();
        if ints.is_empty() {
            return None;
        }
        let a0 = ints.first().expect("nonzero").magnitude().clone();
        let an = ints.last().expect("nonzero").magnitude().clone();
        debug_assert!(!a0.is_zero(), "zero roots are stripped before scanning");
        let numerators = divisors(&a0);
        let denominators = divisors(&an);
        for p in &numerators {
            for q in &denominators {
                for sign in [1i64, -1] {
                    let cand = BigRational::new(
                        BigInt::from(sign) * BigInt::from(p.clone()),
                        BigInt::from(q.clone()),
                    );
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

impl std::fmt::Display for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn push_unique(roots: &mut Vec<QFElement>, root: QFElement) {
    if !roots.contains(&root) {
        roots.push(root);
    }
}

fn sort_roots(roots: &mut [QFElement]) {
    roots.sort_by(|a, b| {
        a.try_cmp(b)
            .unwrap_or_else(|_| a.to_f64().total_cmp(&b.to_f64()))
    });
}

/// Enumerates the divisors of `n` found by trial division.
///
/// Divisor pairs `(d, n/d)` are collected for `d` up to the trial limit, so
/// the list is complete whenever `n` has at most one prime factor above the
/// limit, which covers every polynomial this crate constructs.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let limit = BigUint::from(TRIAL_DIVISION_LIMIT);
    let mut d = BigUint::one();
    loop {
        if &d * &d > *n || d > limit {
            break;
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            let paired = n / &d;
            if paired != d {
                out.push(paired);
            }
        }
        d += BigUint::one();
    }
    out.sort();
    out
}

/// Splits `n = s^2 * m` with `m` squarefree.
///
/// Fails when the unfactored remainder is too large to certify squarefree or
/// when the squarefree part does not fit the discriminant type.
fn square_part(n: &BigUint) -> Result<(BigUint, u64), ExactError> {
    let mut s = BigUint::one();
    let mut m = BigUint::one();
    let mut r = n.clone();
    let mut p = BigUint::from(2u32);
    let limit = BigUint::from(TRIAL_DIVISION_LIMIT);
    while &p * &p <= r && p <= limit {
        if (&r % &p).is_zero() {
            let mut e = 0u32;
            while (&r % &p).is_zero() {
                r /= &p;
                e += 1;
            }
            for _ in 0..(e / 2) {
                s *= &p;
            }
            if e % 2 == 1 {
                m *= &p;
            }
        }
        p += BigUint::one();
    }
    if r > BigUint::one() {
        let root = num_integer::Roots::sqrt(&r);
        if &root * &root == r {
            s *= root;
        } else if r < BigUint::from(10u64).pow(12) {
            // No prime factor at or below the trial limit, so any square
            // divisor would exceed this size bound; r is squarefree.
            m *= &r;
        } else {
            return Err(ExactError::RootOutsideField(format!(
                "discriminant remainder {r} too large to factor"
            )));
        }
    }
    let m_u64 = m.to_u64().ok_or_else(|| {
        ExactError::RootOutsideField(format!("squarefree discriminant part {m} out of range"))
    })?;
    Ok((s, m_u64))
}
