//! Exact inner products of weight-four states built from algebra elements.
//!
//! A case table describes the weight-two subspace of a larger graded
//! algebra.  Two families of weight-four states are built from weight-two
//! elements: `x` placed three steps deep on the vacuum, written `x(-3)1`,
//! and a mode of one element applied to another, written `p(-1)q`.  Their
//! inner products collapse to closed formulas in the weight-two products
//! and form, derived once from the mode commutation rules
//! `[x_m, y_n] = sum_i binom(m, i) (x_i y)_(m+n-i)` together with the
//! adjoint rule `<x_n u, v> = <u, x_(2-n) v>`, the vanishing of weight
//! one, and the one-dimensionality of weight zero:
//!
//! - `<x(-3)1, y(-3)1> = 10 <x, y>`
//! - `<p(-1)q, z(-3)1> = 3 <q, z p>`
//! - `<p(-1)q, r(-1)s> = <q, p(rs)> - <q, r(ps)> + 2 <q, (pr)s>`
//!   `+ <p,r><q,s> + <p,s><q,r>`
//!
//! Only these closed forms are implemented; there is no general mode
//! calculus.  The module also carries a previously tabulated reference
//! matrix for six particular states of the order-three case, together
//! with a discrepancy report against the recomputed values.  The
//! recomputed matrix is authoritative where the two disagree.

use crate::exactnum::matrix::{mat_reduce, QFMatrix};
use crate::exactnum::QFElement;
use crate::griess::conformal::conformal_search;
use crate::griess::definition::{inner, multiply, BasisLabel, CaseTable, GriessElement, PairClass};
use crate::griess::GriessError;

/// A formal weight-four state over the weight-two elements of one case.
///
/// No rewriting happens on construction; states are compared and combined
/// only through [`w4_inner`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight4State {
    /// The element placed three steps deep on the vacuum: `x(-3)1`.
    Deep(GriessElement),
    /// A mode of the first element applied to the second: `p(-1)q`.
    Pair(GriessElement, GriessElement),
}

/// Exact inner product of two weight-four states over `table`.
///
/// Mixing states whose operands come from cases of different dimension
/// fails with a dimension mismatch from the underlying algebra.
pub fn w4_inner(
    table: &CaseTable,
    a: &Weight4State,
    b: &Weight4State,
) -> Result<QFElement, GriessError> {
    match (a, b) {
        (Weight4State::Deep(x), Weight4State::Deep(y)) => {
            Ok(inner(table, x, y)?.try_mul(&QFElement::integer(10))?)
        }
        (Weight4State::Pair(p, q), Weight4State::Deep(z))
        | (Weight4State::Deep(z), Weight4State::Pair(p, q)) => {
            let zp = multiply(table, z, p)?;
            Ok(inner(table, q, &zp)?.try_mul(&QFElement::integer(3))?)
        }
        (Weight4State::Pair(p, q), Weight4State::Pair(r, s)) => {
            let rs = multiply(table, r, s)?;
            let ps = multiply(table, p, s)?;
            let pr = multiply(table, p, r)?;
            let assoc = inner(table, q, &multiply(table, p, &rs)?)?
                .try_sub(&inner(table, q, &multiply(table, r, &ps)?)?)?
                .try_add(
                    &inner(table, q, &multiply(table, &pr, s)?)?
                        .try_mul(&QFElement::integer(2))?,
                )?;
            let cross = inner(table, p, r)?
                .try_mul(&inner(table, q, s)?)?
                .try_add(&inner(table, p, s)?.try_mul(&inner(table, q, r)?)?)?;
            Ok(assoc.try_add(&cross)?)
        }
    }
}

/// The pairwise inner-product matrix of a list of states, with its rank
/// and determinant.
#[derive(Debug, Clone)]
pub struct W4Gram {
    pub matrix: QFMatrix,
    pub rank: usize,
    pub det: QFElement,
}

/// Builds the inner-product matrix of `states` and row reduces it.
pub fn w4_gram(table: &CaseTable, states: &[Weight4State]) -> Result<W4Gram, GriessError> {
    if states.is_empty() {
        return Err(GriessError::FormViolation(
            "a weight-four matrix needs at least one state".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(states.len());
    for a in states {
        let mut row = Vec::with_capacity(states.len());
        for b in states {
            row.push(w4_inner(table, a, b)?);
        }
        rows.push(row);
    }
    let matrix = QFMatrix::from_rows(rows).map_err(GriessError::Exact)?;
    let reduction = mat_reduce(&matrix);
    let det = reduction.det.expect("pairwise matrices are square");
    Ok(W4Gram {
        matrix,
        rank: reduction.rank,
        det,
    })
}

/// The six labeled weight-four states of the order-three case: the deep
/// and pair states of the axis `e` and of the complement conformal vector,
/// the mixed pair, and the pair state of the third basis vector `c`.
///
/// The complement vector is recovered by [`conformal_search`] over the
/// span of the basis vector `a`, so no normalization constant is repeated
/// here.
pub fn c3_reference_states(
    table: &CaseTable,
) -> Result<Vec<(String, Weight4State)>, GriessError> {
    if table.class() != PairClass::ThreeC {
        return Err(GriessError::UnsupportedClass(format!(
            "the weight-four reference states are defined for class 3C, not {}",
            table.class()
        )));
    }
    let e = table.basis_element(BasisLabel::E)?;
    let a = table.basis_element(BasisLabel::A)?;
    let c = table.basis_element(BasisLabel::C)?;
    let omega = conformal_search(table, &[a])?
        .pop()
        .ok_or_else(|| {
            GriessError::ConformalSearch(
                "the complement direction has no rescaled idempotent".to_string(),
            )
        })?
        .vector;
    Ok(vec![
        ("e(-3)1".to_string(), Weight4State::Deep(e.clone())),
        ("w(-3)1".to_string(), Weight4State::Deep(omega.clone())),
        ("e(-1)e".to_string(), Weight4State::Pair(e.clone(), e.clone())),
        (
            "w(-1)w".to_string(),
            Weight4State::Pair(omega.clone(), omega.clone()),
        ),
        ("e(-1)w".to_string(), Weight4State::Pair(e, omega)),
        ("c(-1)c".to_string(), Weight4State::Pair(c.clone(), c)),
    ])
}

/// Previously tabulated inner-product matrix for the states of
/// [`c3_reference_states`], kept verbatim as a reference fixture.
///
/// Rows and columns touching the complement vector were evidently
/// tabulated with its norm normalized to 1/4; the recomputed matrix from
/// [`w4_gram`] is authoritative, and [`w4_discrepancies`] lists every
/// disagreeing cell.
pub fn c3_tabulated_matrix() -> QFMatrix {
    let entries: [[(i64, i64); 6]; 6] = [
        [(5, 2), (0, 1), (3, 2), (0, 1), (0, 1), (189, 8192)],
        [(0, 1), (5, 2), (0, 1), (3, 2), (0, 1), (5859, 8192)],
        [(3, 2), (0, 1), (17, 8), (0, 1), (0, 1), (2079, 131072)],
        [(0, 1), (3, 2), (0, 1), (17, 8), (0, 1), (64449, 131072)],
        [(0, 1), (0, 1), (0, 1), (0, 1), (1, 16), (1023, 131072)],
        [
            (189, 8192),
            (5859, 8192),
            (2079, 131072),
            (64449, 131072),
            (1023, 131072),
            (70497, 262144),
        ],
    ];
    QFMatrix::from_fn(6, 6, |i, j| {
        let (n, d) = entries[i][j];
        QFElement::ratio(n, d)
    })
    .expect("fixed shape")
}

/// One cell where a tabulated matrix disagrees with its recomputation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDiscrepancy {
    /// Zero-based row of the cell.
    pub row: usize,
    /// Zero-based column of the cell.
    pub col: usize,
    pub tabulated: QFElement,
    pub recomputed: QFElement,
}

/// Lists every upper-triangle cell where the two symmetric matrices
/// disagree, in row-major order.
pub fn w4_discrepancies(
    tabulated: &QFMatrix,
    recomputed: &QFMatrix,
) -> Result<Vec<MatrixDiscrepancy>, GriessError> {
    if tabulated.rows() != recomputed.rows() || tabulated.cols() != recomputed.cols() {
        return Err(GriessError::DimensionMismatch {
            got: recomputed.rows(),
            want: tabulated.rows(),
        });
    }
    let mut cells = Vec::new();
    for i in 0..tabulated.rows() {
        for j in i..tabulated.cols() {
            if tabulated.get(i, j) != recomputed.get(i, j) {
                cells.push(MatrixDiscrepancy {
                    row: i,
                    col: j,
                    tabulated: tabulated.get(i, j).clone(),
                    recomputed: recomputed.get(i, j).clone(),
                });
            }
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::griess::build::build_case_table;

    fn qf(n: i64, d: i64) -> QFElement {
        QFElement::ratio(n, d)
    }

    fn states(table: &CaseTable) -> Vec<Weight4State> {
        c3_reference_states(table)
            .unwrap()
            .into_iter()
            .map(|(_, s)| s)
            .collect()
    }

    #[test]
    fn the_deep_c_pair_norm() {
        let table = build_case_table(PairClass::ThreeC).unwrap();
        let c = table.basis_element(BasisLabel::C).unwrap();
        let state = Weight4State::Pair(c.clone(), c.clone());
        let value = w4_inner(&table, &state, &state).unwrap();
        assert_eq!(value, qf(1119 * 63, 262144));

        // The quadrilinear formula specializes to the two-term chain
        // 2<c, (cc)c> + 2<c, c>^2 because the first two terms cancel.
        let cc = multiply(&table, &c, &c).unwrap();
        let ccc = multiply(&table, &cc, &c).unwrap();
        let chain = inner(&table, &c, &ccc)
            .unwrap()
            .try_mul(&qf(2, 1))
            .unwrap()
            .try_add(
                &inner(&table, &c, &c)
                    .unwrap()
                    .try_mul(&inner(&table, &c, &c).unwrap())
                    .unwrap()
                    .try_mul(&qf(2, 1))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(value, chain);
    }

    #[test]
    fn the_recomputed_reference_matrix() {
        let table = build_case_table(PairClass::ThreeC).unwrap();
        let gram = w4_gram(&table, &states(&table)).unwrap();
        let expected: [[(i64, i64); 6]; 6] = [
            [(5, 2), (0, 1), (3, 2), (0, 1), (0, 1), (189, 8192)],
            [(0, 1), (105, 22), (0, 1), (63, 22), (0, 1), (5859, 8192)],
            [(3, 2), (0, 1), (17, 8), (0, 1), (0, 1), (2079, 131072)],
            [(0, 1), (63, 22), (0, 1), (4137, 968), (0, 1), (123039, 131072)],
            [(0, 1), (0, 1), (0, 1), (0, 1), (21, 176), (1953, 131072)],
            [
                (189, 8192),
                (5859, 8192),
                (2079, 131072),
                (123039, 131072),
                (1953, 131072),
                (70497, 262144),
            ],
        ];
        let expected = QFMatrix::from_fn(6, 6, |i, j| {
            let (n, d) = expected[i][j];
            qf(n, d)
        })
        .unwrap();
        assert_eq!(gram.matrix, expected);
        assert!(gram.matrix.is_symmetric());
        assert_eq!(gram.rank, 6);
        assert!(!gram.det.is_zero());
    }

    #[test]
    fn discrepancies_against_the_tabulated_matrix() {
        let table = build_case_table(PairClass::ThreeC).unwrap();
        let gram = w4_gram(&table, &states(&table)).unwrap();
        let tabulated = c3_tabulated_matrix();
        assert!(tabulated.is_symmetric());

        let cells = w4_discrepancies(&tabulated, &gram.matrix).unwrap();
        let positions: Vec<(usize, usize)> = cells.iter().map(|c| (c.row, c.col)).collect();
        assert_eq!(
            positions,
            vec![(1, 1), (1, 3), (3, 3), (3, 5), (4, 4), (4, 5)]
        );
        // Every disagreeing cell involves the complement vector, whose
        // tabulated rows assumed norm 1/4 instead of 21/44.
        assert_eq!(cells[0].tabulated, qf(5, 2));
        assert_eq!(cells[0].recomputed, qf(105, 22));
        assert_eq!(cells[5].tabulated, qf(1023, 131072));
        assert_eq!(cells[5].recomputed, qf(1953, 131072));
    }

    #[test]
    fn symmetry_over_all_reference_pairs() {
        let table = build_case_table(PairClass::ThreeC).unwrap();
        let states = states(&table);
        for a in &states {
            for b in &states {
                assert_eq!(
                    w4_inner(&table, a, b).unwrap(),
                    w4_inner(&table, b, a).unwrap()
                );
            }
        }
    }

    #[test]
    fn single_and_duplicated_state_lists() {
        let table = build_case_table(PairClass::ThreeC).unwrap();
        let e = table.basis_element(BasisLabel::E).unwrap();
        let deep = Weight4State::Deep(e);

        let single = w4_gram(&table, std::slice::from_ref(&deep)).unwrap();
        assert_eq!(single.matrix.get(0, 0), &qf(5, 2));
        assert_eq!(single.rank, 1);
        assert_eq!(single.det, qf(5, 2));

        let doubled = w4_gram(&table, &[deep.clone(), deep]).unwrap();
        assert_eq!(doubled.rank, 1);
        assert!(doubled.det.is_zero());

        assert!(w4_gram(&table, &[]).is_err());
    }

    #[test]
    fn pair_states_are_bilinear_in_each_slot() {
        let table = build_case_table(PairClass::ThreeC).unwrap();
        let e = table.basis_element(BasisLabel::E).unwrap();
        let a = table.basis_element(BasisLabel::A).unwrap();
        let c = table.basis_element(BasisLabel::C).unwrap();
        let probe = Weight4State::Pair(c.clone(), e.clone());

        let mixed = e.try_add(&a.try_scale(&qf(3, 1)).unwrap()).unwrap();
        let combined = w4_inner(&table, &Weight4State::Pair(mixed.clone(), c.clone()), &probe)
            .unwrap();
        let split = w4_inner(&table, &Weight4State::Pair(e.clone(), c.clone()), &probe)
            .unwrap()
            .try_add(
                &w4_inner(&table, &Weight4State::Pair(a.clone(), c.clone()), &probe)
                    .unwrap()
                    .try_mul(&qf(3, 1))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(combined, split);

        let combined = w4_inner(&table, &Weight4State::Pair(c.clone(), mixed), &probe).unwrap();
        let split = w4_inner(&table, &Weight4State::Pair(c.clone(), e), &probe)
            .unwrap()
            .try_add(
                &w4_inner(&table, &Weight4State::Pair(c, a), &probe)
                    .unwrap()
                    .try_mul(&qf(3, 1))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(combined, split);
    }

    #[test]
    fn reference_states_need_the_order_three_case() {
        let table = build_case_table(PairClass::FiveA).unwrap();
        let err = c3_reference_states(&table).unwrap_err();
        assert!(matches!(err, GriessError::UnsupportedClass(_)));
    }

    #[test]
    fn mismatched_matrices_are_rejected() {
        let single = QFMatrix::identity(2);
        let err = w4_discrepancies(&c3_tabulated_matrix(), &single).unwrap_err();
        assert!(matches!(err, GriessError::DimensionMismatch { .. }));
    }
}
