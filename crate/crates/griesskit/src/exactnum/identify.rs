//! Identification of high-precision reals as exact quadratic-field elements.
//!
//! [`qf_identify`] searches for the unique element `(m + n*sqrt(d))/q` of
//! small height within a tolerance of the input value. Candidates are
//! enumerated by a height ladder (1, 2, 4, ...) so that simple values are
//! found immediately and ambiguity is judged among the smallest heights
//! first; every candidate surviving a double-precision prefilter is confirmed
//! against the input in exact fixed-point arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::real::FixedReal;
use super::{ExactError, QFElement};

/// Default cap on `|m|`, `|n|`, and `q` in the common-denominator
/// representation `(m + n*sqrt(d))/q`.
pub const DEFAULT_HEIGHT_BOUND: u64 = 10_000;

/// Default identification tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Renders an exact element in fixed point at the given precision.
pub fn qf_to_fixed(e: &QFElement, bits: u32) -> FixedReal {
    let rat = FixedReal::from_rational(e.rat_part(), bits);
    if e.rad_part().is_zero() {
        return rat;
    }
    rat.add(&FixedReal::sqrt_int(e.disc(), bits).mul_rational(e.rad_part()))
}

/// Identifies `v` as an exact element using the default height bound.
///
/// `discs` lists the permitted discriminants; rational values are always
/// candidates (they arise as `n = 0` and normalize to discriminant 1).
pub fn qf_identify(v: &FixedReal, discs: &[u64], tol: f64) -> Result<QFElement, ExactError> {
    qf_identify_bounded(v, discs, tol, DEFAULT_HEIGHT_BOUND)
}

/// Identifies a double-precision value (convenience wrapper).
pub fn qf_identify_f64(v: f64, discs: &[u64], tol: f64) -> Result<QFElement, ExactError> {
    let fixed = FixedReal::from_f64(v, 128).ok_or(ExactError::NoMatch {
        value: v,
        height_bound: DEFAULT_HEIGHT_BOUND,
        tol,
    })?;
    qf_identify(&fixed, discs, tol)
}

/// Identifies `v` with an explicit height bound.
///
/// Returns the unique match of smallest ladder height, an
/// [`ExactError::AmbiguousMatch`] if two distinct elements tie at that
/// height, or [`ExactError::NoMatch`] when the ladder is exhausted.
pub fn qf_identify_bounded(
    v: &FixedReal,
    discs: &[u64],
    tol: f64,
    height_bound: u64,
) -> Result<QFElement, ExactError> {
    assert!(tol > 0.0, "identification tolerance must be positive");
    assert!(height_bound >= 1, "height bound must be at least 1");

    let mut discs: Vec<u64> = if discs.is_empty() {
        vec![1]
    } else {
        let mut d: Vec<u64> = discs.to_vec();
        d.sort_unstable();
        d.dedup();
        d
    };
    for &d in &discs {
        if QFElement::sqrt_disc(d).is_err() {
            return Err(ExactError::NotSquarefree(d));
        }
    }
    if !discs.contains(&1) {
        discs.insert(0, 1);
    }

    let bits = v.bits().max(64);
    let v = v.rescale(bits);
    let v_f64 = v.to_f64();
    let tol_fixed = FixedReal::from_f64(tol, bits).expect("finite tolerance");
    let prefilter = tol + 1e-9;
    let sqrt_table: Vec<(u64, f64, FixedReal)> = discs
        .iter()
        .map(|&d| (d, (d as f64).sqrt(), FixedReal::sqrt_int(d, bits)))
        .collect();

    let mut h: u64 = 1;
    loop {
        let mut matches: Vec<QFElement> = Vec::new();
        let reach = h as i64;
        for q in 1..=h {
            let qf = q as f64;
            for (d, sd_f64, sd_fixed) in &sqrt_table {
                for n in -reach..=reach {
                    if *d == 1 && n != 0 {
                        continue;
                    }
                    let target = v_f64 * qf - (n as f64) * sd_f64;
                    let m_lo = target.floor() as i64;
                    for m in [m_lo, m_lo + 1] {
                        if m.unsigned_abs() > h {
                            continue;
                        }
                        let approx = (m as f64 + n as f64 * sd_f64) / qf;
                        if (approx - v_f64).abs() > prefilter {
                            continue;
                        }
                        let inv_q = BigRational::new(BigInt::from(1), BigInt::from(q));
                        let cand_fixed = FixedReal::from_int(m, bits)
                            .add(&sd_fixed.mul_rational(&BigRational::from_integer(n.into())))
                            .mul_rational(&inv_q);
                        let diff = cand_fixed.sub(&v).abs();
                        if diff.cmp_value(&tol_fixed) == std::cmp::Ordering::Greater {
                            continue;
                        }
                        let elem = QFElement::quadratic(
                            BigRational::new(BigInt::from(m), BigInt::from(q)),
                            BigRational::new(BigInt::from(n), BigInt::from(q)),
                            *d,
                        )
                        .expect("discs validated above");
                        if !matches.contains(&elem) {
                            matches.push(elem);
                        }
                    }
                }
            }
        }
        if !matches.is_empty() {
            if matches.len() == 1 {
                return Ok(matches.pop().expect("nonempty"));
            }
            matches.sort_by_key(|e| e.to_string());
            return Err(ExactError::AmbiguousMatch {
                value: v_f64,
                first: matches[0].to_string(),
                second: matches[1].to_string(),
            });
        }
        if h == height_bound {
            return Err(ExactError::NoMatch {
                value: v_f64,
                height_bound,
                tol,
            });
        }
        h = (h * 2).min(height_bound);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifies_sqrt_two() {
        let got = qf_identify_f64(std::f64::consts::SQRT_2, &[2], 1e-9).unwrap();
        assert_eq!(got, QFElement::sqrt_disc(2).unwrap());
    }

    #[test]
    fn identifies_two_plus_sqrt_three() {
        let got = qf_identify_f64(3.732050807569, &[3], 1e-9).unwrap();
        assert_eq!(got, "2/1+1/1*sqrt(3)".parse().unwrap());
    }

    #[test]
    fn identifies_four_plus_two_sqrt_two() {
        let got = qf_identify_f64(6.828427124746, &[2], 1e-9).unwrap();
        assert_eq!(got, "4/1+2/1*sqrt(2)".parse().unwrap());
    }

    #[test]
    fn identifies_rationals_through_any_disc_list() {
        let got = qf_identify_f64(0.75, &[2, 3], 1e-9).unwrap();
        assert_eq!(got, QFElement::ratio(3, 4));
        assert_eq!(got.disc(), 1);
    }

    #[test]
    fn identifies_high_precision_input() {
        // 2 + sqrt(3) evaluated in fixed point rather than as a double.
        let v = FixedReal::from_int(2, 192).add(&FixedReal::sqrt_int(3, 192));
        let got = qf_identify(&v, &[2, 3], 1e-12).unwrap();
        assert_eq!(got, "2/1+1/1*sqrt(3)".parse().unwrap());
    }

    #[test]
    fn wide_tolerance_is_ambiguous() {
        let err = qf_identify_f64(0.5, &[2], 0.5).unwrap_err();
        match err {
            ExactError::AmbiguousMatch { .. } => {}
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn no_match_reports_bounds() {
        let err = qf_identify_bounded(
            &FixedReal::from_f64(0.1234567891234, 128).unwrap(),
            &[],
            1e-12,
            8,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ExactError::NoMatch {
                value: 0.1234567891234,
                height_bound: 8,
                tol: 1e-12,
            }
        );
    }

    #[test]
    fn square_factor_disc_is_rejected() {
        let err = qf_identify_f64(1.0, &[8], 1e-9).unwrap_err();
        assert_eq!(err, ExactError::NotSquarefree(8));
    }

    #[test]
    fn negative_values_identify() {
        let got = qf_identify_f64(-3.414213562373095, &[2], 1e-9).unwrap();
        assert_eq!(got, "-2/1+-1/1*sqrt(2)".parse::<QFElement>().unwrap());
    }

    #[test]
    fn identifies_larger_height_quadratic() {
        // (-29 + 13 sqrt(5)) / 2, a root of l^2 + 29 l - 1.
        let got = qf_identify_f64(0.03444185374863302, &[5], 1e-9).unwrap();
        assert_eq!(got, "-29/2+13/2*sqrt(5)".parse::<QFElement>().unwrap());
    }
}
