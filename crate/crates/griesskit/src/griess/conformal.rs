//! Search for rescaled idempotents inside small subspaces of a case table.
//!
//! Given one or two elements of the algebra, the search finds every vector
//! in their span whose square is a nonzero multiple of itself, rescales
//! each so that its square is twice itself, and reports the norm together
//! with the central charge (twice the norm).
//!
//! For a two-element span `{u, v}` the candidates are the blends
//! `w(k) = u + k v`.  Proportionality of `w(k)*w(k)` to `w(k)` says that
//! the two by `n` matrix stacking the square over the blend has rank one,
//! so every two by two minor vanishes.  Each minor is a cubic polynomial
//! in `k`, and the common roots of all minors are the roots of their
//! greatest common divisor, which may live in a real quadratic field.

use num_rational::BigRational;

use crate::exactnum::poly::RatPoly;
use crate::exactnum::QFElement;

use super::definition::{inner, multiply, CaseTable, GriessElement};
use super::GriessError;

/// One rescaled idempotent found by [`conformal_search`].
#[derive(Debug, Clone)]
pub struct ConformalVector {
    /// Blend parameter: the vector is a multiple of `u + k v`.  `None` for
    /// a single-element span, and for the pure `v` endpoint of a pencil.
    pub k: Option<QFElement>,
    /// Factor rescaling the blend so that its square is twice itself.
    pub scale: QFElement,
    /// The rescaled vector, satisfying `vector * vector = 2 vector`.
    pub vector: GriessElement,
    /// Norm of the rescaled vector under the invariant form.
    pub norm: QFElement,
    /// Central charge carried by the vector: twice its norm.
    pub central_charge: QFElement,
}

/// Finds every vector in the span of one or two elements whose square is a
/// nonzero multiple of itself, rescaled so that its square is twice itself.
///
/// Results for a two-element span are ordered by ascending blend parameter,
/// with the pure `v` endpoint (if it qualifies) last.  The span elements
/// must have rational coordinates in the two-element case, because the
/// proportionality condition is solved as a polynomial system.
///
/// Fails with [`GriessError::ConformalSearch`] when the span is empty or
/// too large, when a pencil needs irrational coordinates, or when every
/// blend in a pencil squares proportionally (a degenerate pencil with no
/// isolated candidates).
pub fn conformal_search(
    table: &CaseTable,
    span: &[GriessElement],
) -> Result<Vec<ConformalVector>, GriessError> {
    match span {
        [u] => Ok(normalize_candidate(table, u, None)?.into_iter().collect()),
        [u, v] => search_pencil(table, u, v),
        _ => Err(GriessError::ConformalSearch(format!(
            "span must have one or two elements, got {}",
            span.len()
        ))),
    }
}

/// Checks whether `w` squares to a nonzero multiple of itself and, if so,
/// rescales it so that its square is twice itself.
fn normalize_candidate(
    table: &CaseTable,
    w: &GriessElement,
    k: Option<QFElement>,
) -> Result<Option<ConformalVector>, GriessError> {
    let square = multiply(table, w, w)?;
    let Some(lead) = w.coords().iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let ratio = square.coord(lead).try_div(w.coord(lead))?;
    if ratio.is_zero() || square != w.try_scale(&ratio)? {
        return Ok(None);
    }
    let scale = QFElement::integer(2).try_div(&ratio)?;
    let vector = w.try_scale(&scale)?;
    let norm = inner(table, &vector, &vector)?;
    let central_charge = norm.try_mul(&QFElement::integer(2))?;
    Ok(Some(ConformalVector {
        k,
        scale,
        vector,
        norm,
        central_charge,
    }))
}

/// Extracts rational coordinates, failing when any coordinate is irrational.
fn rational_coords(x: &GriessElement) -> Result<Vec<BigRational>, GriessError> {
    x.coords()
        .iter()
        .map(|c| {
            c.as_rational().cloned().ok_or_else(|| {
                GriessError::ConformalSearch(
                    "pencil search needs rational coordinates".to_string(),
                )
            })
        })
        .collect()
}

/// Searches the pencil `u + k v` for rescaled idempotents.
fn search_pencil(
    table: &CaseTable,
    u: &GriessElement,
    v: &GriessElement,
) -> Result<Vec<ConformalVector>, GriessError> {
    let uu = rational_coords(&multiply(table, u, u)?)?;
    let uv = rational_coords(&multiply(table, u, v)?)?;
    let vv = rational_coords(&multiply(table, v, v)?)?;
    let cu = rational_coords(u)?;
    let cv = rational_coords(v)?;
    let two = BigRational::from_integer(2.into());

    let dim = table.dim();
    let blend: Vec<RatPoly> = (0..dim)
        .map(|i| RatPoly::new(vec![cu[i].clone(), cv[i].clone()]))
        .collect();
    let square: Vec<RatPoly> = (0..dim)
        .map(|i| RatPoly::new(vec![uu[i].clone(), &two * &uv[i], vv[i].clone()]))
        .collect();

    let mut common = RatPoly::zero();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let minor = square[i].mul(&blend[j]).sub(&square[j].mul(&blend[i]));
            common = common.gcd(&minor);
        }
    }
    if common.is_zero() {
        return Err(GriessError::ConformalSearch(
            "every blend in the pencil squares proportionally; no isolated candidates"
                .to_string(),
        ));
    }

    let mut results = Vec::new();
    if common.degree().is_some_and(|d| d >= 1) {
        for root in common.roots()? {
            let w = u.try_add(&v.try_scale(&root)?)?;
            if let Some(found) = normalize_candidate(table, &w, Some(root))? {
                results.push(found);
            }
        }
    }
    if let Some(found) = normalize_candidate(table, v, None)? {
        results.push(found);
    }
    Ok(results)
}
