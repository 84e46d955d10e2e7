//! Virasoro minimal models `M(p,q)`: central charges, Kac weight tables,
//! fusion rules, and quantum dimensions.
//!
//! Labels `(r,s)` with `1 <= r < p`, `1 <= s < q` name irreducible modules;
//! `(r,s)` and `(p-r,q-s)` name the same module, and this crate always
//! stores the representative with `qr - ps > 0`. Everything here is exact:
//! weights and charges are rationals, and quantum dimensions are evaluated
//! in fixed point and identified as quadratic-field elements where possible.

pub mod fusion;
pub mod qdim;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::exactnum::ExactError;

/// Errors from minimal-model lookups and validation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinimalError {
    #[error("invalid minimal model ({p},{q}): {reason}")]
    InvalidModel { p: u64, q: u64, reason: String },
    #[error("label ({r},{s}) is outside the ({p},{q}) Kac table")]
    LabelOutOfRange { p: u64, q: u64, r: u64, s: u64 },
    #[error("no module of weight {h} in the ({p},{q}) Kac table")]
    WeightNotFound { p: u64, q: u64, h: String },
    #[error("weight {h} is realized by both ({p},{q}) labels {first} and {second}")]
    AmbiguousWeight {
        p: u64,
        q: u64,
        h: String,
        first: String,
        second: String,
    },
    #[error("no minimal model with p+q <= {bound} has central charge {charge}")]
    ModelNotFound { charge: String, bound: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Search bound for [`identify_model`]: candidate models satisfy
/// `p + q <= MODEL_SEARCH_BOUND`.
pub const MODEL_SEARCH_BOUND: u64 = 200;

/// A Virasoro minimal model, stored with `2 <= p < q` and `gcd(p,q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinimalModel {
    p: u64,
    q: u64,
}

/// A canonical Kac label: `1 <= r < p`, `1 <= s < q`, and `qr - ps > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KacLabel {
    pub r: u64,
    pub s: u64,
}

impl MinimalModel {
    /// Validates and normalizes a model so that `p < q`.
    pub fn new(p: u64, q: u64) -> Result<Self, MinimalError> {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        if lo < 2 {
            return Err(MinimalError::InvalidModel {
                p,
                q,
                reason: "both indices must be at least 2".to_string(),
            });
        }
        if lo == hi {
            return Err(MinimalError::InvalidModel {
                p,
                q,
                reason: "indices must be distinct".to_string(),
            });
        }
        if lo.gcd(&hi) != 1 {
            return Err(MinimalError::InvalidModel {
                p,
                q,
                reason: "indices must be coprime".to_string(),
            });
        }
        Ok(MinimalModel { p: lo, q: hi })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Central charge `1 - 6 (p-q)^2 / (pq)`.
    pub fn central_charge(&self) -> BigRational {
        let p = BigInt::from(self.p);
        let q = BigInt::from(self.q);
        let diff = &p - &q;
        BigRational::from_integer(BigInt::from(1))
            - BigRational::new(6 * &diff * &diff, p * q)
    }

    /// Conformal weight `h_{r,s} = ((qr - ps)^2 - (p-q)^2) / (4pq)` for any
    /// in-range label, canonical or not.
    pub fn weight(&self, r: u64, s: u64) -> Result<BigRational, MinimalError> {
        if r == 0 || r >= self.p || s == 0 || s >= self.q {
            return Err(MinimalError::LabelOutOfRange {
                p: self.p,
                q: self.q,
                r,
                s,
            });
        }
        let num = BigInt::from(self.q * r) - BigInt::from(self.p * s);
        let diff = BigInt::from(self.q - self.p);
        Ok(BigRational::new(
            &num * &num - &diff * &diff,
            BigInt::from(4 * self.p * self.q),
        ))
    }

    /// Conformal weight of a canonical label.
    pub fn h(&self, label: &KacLabel) -> Result<BigRational, MinimalError> {
        self.weight(label.r, label.s)
    }

    /// Canonicalizes `(r,s)`, replacing it by `(p-r, q-s)` when `qr - ps < 0`.
    pub fn canonical(&self, r: u64, s: u64) -> Result<KacLabel, MinimalError> {
        if r == 0 || r >= self.p || s == 0 || s >= self.q {
            return Err(MinimalError::LabelOutOfRange {
                p: self.p,
                q: self.q,
                r,
                s,
            });
        }
        // qr = ps is impossible for coprime p, q in range, so no tie-break is
        // needed.
        if self.q * r > self.p * s {
            Ok(KacLabel { r, s })
        } else {
            Ok(KacLabel {
                r: self.p - r,
                s: self.q - s,
            })
        }
    }

    /// Checks that a label is in range and in canonical form.
    pub fn check_canonical(&self, label: &KacLabel) -> Result<(), MinimalError> {
        let canon = self.canonical(label.r, label.s)?;
        if canon != *label {
            return Err(MinimalError::LabelOutOfRange {
                p: self.p,
                q: self.q,
                r: label.r,
                s: label.s,
            });
        }
        Ok(())
    }

    /// All canonical labels, sorted by `(r, s)`.
    pub fn labels(&self) -> Vec<KacLabel> {
        let mut out = Vec::new();
        for r in 1..self.p {
            for s in 1..self.q {
                if self.q * r > self.p * s {
                    out.push(KacLabel { r, s });
                }
            }
        }
        out
    }

    /// The vacuum label `(1,1)`.
    pub fn vacuum(&self) -> KacLabel {
        KacLabel { r: 1, s: 1 }
    }
}

impl std::fmt::Display for MinimalModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl std::fmt::Display for KacLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// Finds the canonical label of the given conformal weight by scanning the
/// Kac table.
pub fn kac_lookup(model: &MinimalModel, h: &BigRational) -> Result<KacLabel, MinimalError> {
    let mut found: Option<KacLabel> = None;
    for label in model.labels() {
        if &model.h(&label).expect("canonical label in range") == h {
            match found {
                None => found = Some(label),
                Some(first) => {
                    return Err(MinimalError::AmbiguousWeight {
                        p: model.p,
                        q: model.q,
                        h: h.to_string(),
                        first: first.to_string(),
                        second: label.to_string(),
                    });
                }
            }
        }
    }
    found.ok_or_else(|| MinimalError::WeightNotFound {
        p: model.p,
        q: model.q,
        h: h.to_string(),
    })
}

/// Finds the minimal model with the given central charge, scanning coprime
/// pairs with `p + q <= MODEL_SEARCH_BOUND`.
pub fn identify_model(charge: &BigRational) -> Result<MinimalModel, MinimalError> {
    for q in 3..MODEL_SEARCH_BOUND {
        for p in 2..q {
            if p + q > MODEL_SEARCH_BOUND || p.gcd(&q) != 1 {
                continue;
            }
            let model = MinimalModel { p, q };
            if &model.central_charge() == charge {
                return Ok(model);
            }
        }
    }
    Err(MinimalError::ModelNotFound {
        charge: charge.to_string(),
        bound: MODEL_SEARCH_BOUND,
    })
}
