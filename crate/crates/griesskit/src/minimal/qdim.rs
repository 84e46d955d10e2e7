//! Quantum dimensions of minimal-model modules.
//!
//! The quantum dimension of `(r,s)` in `M(p,q)` is
//!
//! ```text
//! (-1)^(r+s) * sin(pi q r / p) * sin(pi p s / q)
//!            / (sin(pi q / p) * sin(pi p / q))
//! ```
//!
//! evaluated in fixed point. Values are then identified as exact elements of
//! `Q(sqrt(2))` or `Q(sqrt(3))` where possible; a quantum dimension that
//! lies in a larger number field keeps its numeric value with `exact: None`
//! and a note explaining why. Identified matches are confirmed to the full
//! working precision, not just the search tolerance, so a coincidental
//! near-match of small height cannot masquerade as the exact value.

use num_bigint::BigInt;
use num_rational::BigRational;


use crate::exactnum::identify::{qf_identify, qf_to_fixed};
use crate::exactnum::real::FixedReal;
use crate::exactnum::{ExactError, QFElement};

use super::{KacLabel, MinimalError, MinimalModel};

/// Discriminants tried when identifying quantum dimensions.
pub const QDIM_DISCS: [u64; 2] = [2, 3];

/// Identification search tolerance.
pub const QDIM_TOL: f64 = 1e-9;

/// Starting fixed-point precision; doubled to at most [`QDIM_MAX_BITS`] when
/// identification fails.
pub const QDIM_START_BITS: u32 = 64;

/// Final fixed-point precision attempted.
pub const QDIM_MAX_BITS: u32 = 256;

/// A quantum dimension: always a numeric value, and an exact quadratic-field
/// element when one is confirmed.
#[derive(Debug, Clone, PartialEq)]
pub struct QdimValue {
    pub numeric: FixedReal,
    pub exact: Option<QFElement>,
    /// Present exactly when `exact` is `None`; says why identification was
    /// abandoned.
    pub note: Option<String>,
}

impl QdimValue {
    /// The exact value, or an error naming the obstruction.
    pub fn require_exact(&self) -> Result<&QFElement, MinimalError> {
        self.exact.as_ref().ok_or_else(|| {
            MinimalError::Exact(ExactError::NoMatch {
                value: self.numeric.to_f64(),
                height_bound: crate::exactnum::identify::DEFAULT_HEIGHT_BOUND,
                tol: QDIM_TOL,
            })
        })
    }
}

/// Evaluates the quantum dimension of one label in fixed point.
pub fn qdim_numeric(
    model: &MinimalModel,
    label: &KacLabel,
    bits: u32,
) -> Result<FixedReal, MinimalError> {
    model.check_canonical(label)?;
    let work = bits + 32;
    let (p, q) = (model.p(), model.q());
    let rat = |num: u64, den: u64| {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    };
    let numer = FixedReal::sin_pi(&rat(q * label.r, p), work)
        .mul(&FixedReal::sin_pi(&rat(p * label.s, q), work));
    let denom = FixedReal::sin_pi(&rat(q, p), work).mul(&FixedReal::sin_pi(&rat(p, q), work));
    let mut value = numer.div(&denom);
    if (label.r + label.s) % 2 == 1 {
        value = value.neg();
    }
    Ok(value.rescale(bits))
}

/// Quantum dimension of one label, with exact identification.
pub fn qdim(model: &MinimalModel, label: &KacLabel) -> Result<QdimValue, MinimalError> {
    identify_numeric(|bits| qdim_numeric(model, label, bits))
}

/// Quantum dimension of a multi-factor module: the product over factors,
/// identified as a whole (individual factors need not be quadratic for the
/// product to be).
pub fn qdim_product(
    models: &[MinimalModel],
    labels: &[KacLabel],
) -> Result<QdimValue, MinimalError> {
    assert_eq!(models.len(), labels.len(), "one label per factor");
    identify_numeric(|bits| {
        let mut acc = FixedReal::from_int(1, bits);
        for (model, label) in models.iter().zip(labels) {
            acc = acc.mul(&qdim_numeric(model, label, bits)?);
        }
        Ok(acc)
    })
}

/// True when the module's quantum dimension is exactly 1 (so fusion with it
/// permutes modules).
pub fn is_simple_current(model: &MinimalModel, label: &KacLabel) -> Result<bool, MinimalError> {
    let value = qdim(model, label)?;
    Ok(value.exact.as_ref() == Some(&QFElement::one()))
}

/// Runs the identification ladder over working precisions.
fn identify_numeric<F>(eval: F) -> Result<QdimValue, MinimalError>
where
    F: Fn(u32) -> Result<FixedReal, MinimalError>,
{
    let mut bits = QDIM_START_BITS;
    let mut note;
    loop {
        let numeric = eval(bits)?;
        match qf_identify(&numeric, &QDIM_DISCS, QDIM_TOL) {
            Ok(exact) => {
                if residual_within_precision(&exact, &numeric, bits) {
                    return Ok(QdimValue {
                        numeric,
                        exact: Some(exact),
                        note: None,
                    });
                }
                note = format!(
                    "candidate {exact} is within the search tolerance but not the \
                     working precision at {bits} bits"
                );
            }
            Err(ExactError::NoMatch { .. }) => {
                note = format!("no quadratic-field match at {bits} bits");
            }
            Err(ExactError::AmbiguousMatch { first, second, .. }) => {
                note = format!("ambiguous between {first} and {second} at {bits} bits");
            }
            Err(other) => return Err(other.into()),
        }
        if bits >= QDIM_MAX_BITS {
            return Ok(QdimValue {
                numeric,
                exact: None,
                note: Some(note),
            });
        }
        bits *= 2;
    }
}

/// Accepts a match only if it agrees with the numeric value far below the
/// search tolerance, at roughly the working precision.
fn residual_within_precision(exact: &QFElement, numeric: &FixedReal, bits: u32) -> bool {
    let threshold = FixedReal::from_rational(
        &BigRational::new(BigInt::from(1) << 16, BigInt::from(1) << bits),
        bits,
    );
    let diff = qf_to_fixed(exact, bits).sub(numeric).abs();
    diff.cmp_value(&threshold) != std::cmp::Ordering::Greater
}
