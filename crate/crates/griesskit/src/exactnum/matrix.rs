//! Dense matrices over a quadratic field with exact Gaussian elimination.
//!
//! [`QFMatrix`] stores row-major [`QFElement`] entries that share one
//! discriminant (rational entries mix freely). [`QFMatrix::reduce`] performs
//! exact elimination and returns rank, determinant, reduced row echelon form,
//! and a normalized right null space basis in one pass.


use super::{ExactError, QFElement};

/// A dense `rows x cols` matrix of exact field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<QFElement>,
}

/// The result of exact Gaussian elimination on a [`QFMatrix`].
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Number of pivots found.
    pub rank: usize,
    /// Exact determinant; `None` for non-square inputs.
    pub det: Option<QFElement>,
    /// Basis of the right null space, each vector scaled so its first
    /// nonzero coordinate is 1, ordered by free column.
    pub kernel: Vec<Vec<QFElement>>,
    /// The reduced row echelon form.
    pub rref: QFMatrix,
    /// Columns containing pivots, in increasing order.
    pub pivot_cols: Vec<usize>,
}

impl QFMatrix {
    /// Builds a matrix from rows. Fails if the rows are empty, ragged, or mix
    /// two different irrational discriminants.
    pub fn from_rows(rows: Vec<Vec<QFElement>>) -> Result<Self, ExactError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(ExactError::Shape(
                "matrix needs at least one row and one column".to_string(),
            ));
        }
        let cols = rows[0].len();
        let mut disc = 1u64;
        for row in &rows {
            if row.len() != cols {
                return Err(ExactError::Shape(format!(
                    "ragged rows: expected {} columns, found {}",
                    cols,
                    row.len()
                )));
            }
            for entry in row {
                let d = entry.disc();
                if d != 1 {
                    if disc != 1 && disc != d {
                        return Err(ExactError::DiscMismatch(disc, d));
                    }
                    disc = d;
                }
            }
        }
        let n_rows = rows.len();
        Ok(QFMatrix {
            rows: n_rows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> QFElement,
    ) -> Result<Self, ExactError> {
        let data = (0..rows)
            .map(|i| (0..cols).map(|j| f(i, j)).collect())
            .collect();
        Self::from_rows(data)
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                QFElement::one()
            } else {
                QFElement::zero()
            }
        })
        .expect("identity dimensions are valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &QFElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: QFElement) {
        self.entries[i * self.cols + j] = value;
    }

    /// Iterates over one row.
    pub fn row(&self, i: usize) -> &[QFElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// True if all entries are zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QFElement::is_zero)
    }

    /// True if the matrix equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
            .expect("transpose dimensions are valid")
    }

    /// Exact matrix sum.
    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_with(other, |a, b| a.try_add(b))
    }

    /// Exact matrix difference.
    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_with(other, |a, b| a.try_sub(b))
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&QFElement, &QFElement) -> Result<QFElement, ExactError>,
    ) -> Result<Self, ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::Shape(format!(
                "dimension mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            entries.push(f(a, b)?);
        }
        Ok(QFMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Scales every entry.
    pub fn try_scale(&self, s: &QFElement) -> Result<Self, ExactError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for a in &self.entries {
            entries.push(a.try_mul(s)?);
        }
        Ok(QFMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Exact matrix product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = QFElement::zero();
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                out.push(acc);
            }
        }
        Ok(QFMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[QFElement]) -> Result<Vec<QFElement>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::Shape(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = QFElement::zero();
            for (k, vk) in v.iter().enumerate() {
                acc = acc.try_add(&self.get(i, k).try_mul(vk)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Exact Gaussian elimination.
    ///
    /// Pivot choice: among the nonzero candidates in the current column, take
    /// the entry of smallest [`QFElement::height`] (lowest row index on ties),
    /// which keeps intermediate fractions small and is fully deterministic.
    ///
    /// Conventions for degenerate inputs: a zero matrix has rank 0, the kernel
    /// of a full-column-rank matrix is empty, and `det` is `None` unless the
    /// matrix is square.
    pub fn reduce(&self) -> Reduction {
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut det_acc = QFElement::one();
        let mut swaps = 0usize;
        let mut pivot_row = 0usize;

        for col in 0..a.cols {
            if pivot_row >= a.rows {
                break;
            }
            let candidate = (pivot_row..a.rows)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| (a.get(r, col).height(), r));
            let row = match candidate {
                Some(r) => r,
                None => continue,
            };
            if row != pivot_row {
                for j in 0..a.cols {
                    let hi = row * a.cols + j;
                    let lo = pivot_row * a.cols + j;
                    a.entries.swap(hi, lo);
                }
                swaps += 1;
            }
            let pivot = a.get(pivot_row, col).clone();
            det_acc = &det_acc * &pivot;
            // Scale the pivot row to a unit pivot.
            for j in 0..a.cols {
                let scaled = a.get(pivot_row, j) / &pivot;
                a.set(pivot_row, j, scaled);
            }
            // Clear the column everywhere else.
            for r in 0..a.rows {
                if r == pivot_row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..a.cols {
                    let updated = a.get(r, j) - &(&factor * a.get(pivot_row, j));
                    a.set(r, j, updated);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }

        let rank = pivot_cols.len();
        let det = if self.rows == self.cols {
            if rank == self.cols {
                if swaps % 2 == 1 {
                    det_acc = -det_acc;
                }
                Some(det_acc)
            } else {
                Some(QFElement::zero())
            }
        } else {
            None
        };

        let mut kernel = Vec::new();
        for free in 0..a.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![QFElement::zero(); a.cols];
            v[free] = QFElement::one();
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = -a.get(r, free).clone();
            }
            normalize_first_nonzero(&mut v);
            kernel.push(v);
        }

        Reduction {
            rank,
            det,
            kernel,
            rref: a,
            pivot_cols,
        }
    }
}

/// Scales a vector so that its first nonzero coordinate is 1.
fn normalize_first_nonzero(v: &mut [QFElement]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x = &*x / &lead;
        }
    }
}

/// Exact elimination entry point: rank, determinant, and kernel basis.
pub fn mat_reduce(m: &QFMatrix) -> Reduction {
    m.reduce()
}

/// True if `target` lies in the linear span of `vectors` (all of equal length).
pub fn in_span(vectors: &[Vec<QFElement>], target: &[QFElement]) -> Result<bool, ExactError> {
    if vectors.is_empty() {
        return Ok(target.iter().all(QFElement::is_zero));
    }
    let base = QFMatrix::from_rows(vectors.to_vec())?;
    let mut extended = vectors.to_vec();
    extended.push(target.to_vec());
    let ext = QFMatrix::from_rows(extended)?;
    Ok(base.reduce().rank == ext.reduce().rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> QFMatrix {
        QFMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| QFElement::integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_reduction() {
        let red = QFMatrix::identity(2).reduce();
        assert_eq!(red.rank, 2);
        assert_eq!(red.det, Some(QFElement::one()));
        assert!(red.kernel.is_empty());
    }

    #[test]
    fn two_by_two_determinant() {
        let red = m(&[&[1, 2], &[3, 4]]).reduce();
        assert_eq!(red.rank, 2);
        assert_eq!(red.det, Some(QFElement::integer(-2)));
    }

    #[test]
    fn equal_rows_have_zero_determinant() {
        let red = m(&[&[2, 5], &[2, 5]]).reduce();
        assert_eq!(red.det, Some(QFElement::zero()));
        assert_eq!(red.rank, 1);
        assert_eq!(red.kernel.len(), 1);
    }

    #[test]
    fn non_square_has_no_determinant() {
        let red = m(&[&[1, 2, 3], &[4, 5, 6]]).reduce();
        assert_eq!(red.det, None);
        assert_eq!(red.rank, 2);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let red = a.reduce();
        assert_eq!(red.rank + red.kernel.len(), a.cols());
        for v in &red.kernel {
            let image = a.mul_vec(v).unwrap();
            assert!(image.iter().all(QFElement::is_zero));
            // Normalization: first nonzero coordinate is 1.
            let lead = v.iter().find(|x| !x.is_zero()).unwrap();
            assert_eq!(lead, &QFElement::one());
        }
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let a = m(&[&[0, 0], &[0, 0]]);
        let red = a.reduce();
        assert_eq!(red.rank, 0);
        assert_eq!(red.kernel.len(), 2);
        assert_eq!(red.det, Some(QFElement::zero()));
    }

    #[test]
    fn quadratic_entries_eliminate_exactly() {
        // [[sqrt(2), 1], [1, sqrt(2)/2]] has rank 1: rows are proportional.
        let s2 = QFElement::sqrt_disc(2).unwrap();
        let half_s2 = &s2 * &QFElement::ratio(1, 2);
        let a = QFMatrix::from_rows(vec![
            vec![s2.clone(), QFElement::one()],
            vec![QFElement::one(), half_s2],
        ])
        .unwrap();
        let red = a.reduce();
        assert_eq!(red.rank, 1);
        assert_eq!(red.det, Some(QFElement::zero()));
        assert_eq!(red.kernel.len(), 1);
    }

    #[test]
    fn mixed_discs_are_rejected() {
        let s2 = QFElement::sqrt_disc(2).unwrap();
        let s3 = QFElement::sqrt_disc(3).unwrap();
        let err = QFMatrix::from_rows(vec![vec![s2], vec![s3]]).unwrap_err();
        assert_eq!(err, ExactError::DiscMismatch(2, 3));
    }

    #[test]
    fn span_membership() {
        let v1 = vec![QFElement::integer(1), QFElement::integer(0)];
        let v2 = vec![QFElement::integer(1), QFElement::integer(1)];
        let target = vec![QFElement::integer(3), QFElement::integer(2)];
        assert!(in_span(&[v1.clone(), v2], &target).unwrap());
        assert!(!in_span(&[v1], &target).unwrap());
    }

    #[test]
    fn matrix_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.try_mul(&b).unwrap(), m(&[&[2, 1], &[4, 3]]));
    }
}
