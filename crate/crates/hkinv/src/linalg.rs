//! Exact row reduction, kernels, and span arithmetic over Q(i,√2).
//!
//! Pivoting is deterministic (leftmost pivot column, first nonzero row), so
//! every reduced form is canonical: two spans are equal iff their canonical
//! bases are equal as lists.
//!
//! ```
//! use hkinv::linalg::kernel_basis;
//! use hkinv::matrix::ExactMatrix;
//! use hkinv::scalar::Scalar;
//!
//! let a = ExactMatrix::from_int_rows(&[&[1, 1]]).unwrap();
//! let kernel = kernel_basis(&a);
//! assert_eq!(kernel, vec![vec![Scalar::from_int(1), Scalar::from_int(-1)]]);
//! ```

use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// Reduces rows in place to reduced row echelon form.
///
/// Returns the pivot columns in order. Zero rows sink to the bottom.
pub fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pivot_row) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pivot_row);
        let inv = rows[next_row][col].inv().expect("pivot is nonzero");
        scale_row(&mut rows[next_row], &inv);
        for r in 0..rows.len() {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                sub_scaled(rows, r, next_row, &factor);
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}

fn scale_row(row: &mut [Scalar], k: &Scalar) {
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v = &*v * k;
        }
    }
}

/// Row operation `rows[dst] -= k·rows[src]`.
fn sub_scaled(rows: &mut [Vec<Scalar>], dst: usize, src: usize, k: &Scalar) {
    let (a, b) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x = &*x - &(k * y);
        }
    }
}

/// Rank of a matrix, computed by row reduction.
pub fn rank(m: &ExactMatrix) -> usize {
    let mut rows = matrix_rows(m);
    rref(&mut rows).len()
}

/// Canonical basis of the right null space of `a`.
///
/// Vectors satisfy `a·v = 0` exactly; the list is the reduced echelon form of
/// the free-variable kernel basis, so equal kernels yield equal lists.
pub fn kernel_basis(a: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let cols = a.cols();
    let mut rows = matrix_rows(a);
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let pivots = rref(&mut rows);
    let mut raw = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&rows[r][free];
        }
        raw.push(v);
    }
    span_canonical(&raw)
}

/// Canonical basis of the span of the given vectors: reduced echelon rows
/// with zero rows dropped. Span equality is list equality of canonical bases.
pub fn span_canonical(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut rows: Vec<Vec<Scalar>> = vectors.to_vec();
    rref(&mut rows);
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    rows
}

/// Flattens a matrix into its row-major entry vector.
pub fn matrix_to_vec(m: &ExactMatrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

fn matrix_rows(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect())
        .collect()
}

/// Membership and coordinate queries against a fixed list of spanning vectors.
///
/// Precomputes the reduced form of the spanning rows together with the
/// change-of-basis transform, so each query costs one reduction pass.
pub struct SpanSolver {
    ambient: usize,
    reduced: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// `transform[r]` expresses `reduced[r]` in the original vectors.
    transform: Vec<Vec<Scalar>>,
}

impl SpanSolver {
    /// Builds a solver from spanning vectors of equal length.
    pub fn new(vectors: &[Vec<Scalar>]) -> Self {
        let ambient = vectors.first().map_or(0, Vec::len);
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let d = vectors.len();
        // Reduce [V | I] so the identity tail records the row operations.
        let mut rows: Vec<Vec<Scalar>> = vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut row = v.clone();
                row.extend((0..d).map(|j| {
                    if j == k {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..ambient {
            let Some(pivot_row) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next_row, pivot_row);
            let inv = rows[next_row][col].inv().expect("pivot is nonzero");
            scale_row(&mut rows[next_row], &inv);
            for r in 0..rows.len() {
                if r != next_row && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    sub_scaled(&mut rows, r, next_row, &factor);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == rows.len() {
                break;
            }
        }
        let mut reduced = Vec::new();
        let mut transform = Vec::new();
        for row in rows.into_iter().take(pivots.len()) {
            reduced.push(row[..ambient].to_vec());
            transform.push(row[ambient..].to_vec());
        }
        SpanSolver {
            ambient,
            reduced,
            pivots,
            transform,
        }
    }

    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True iff the original vectors were linearly independent.
    pub fn is_independent(&self, count: usize) -> bool {
        self.rank() == count
    }

    /// True iff `v` lies in the span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coefficients expressing `v` in the original vectors, or `None` if `v`
    /// is outside the span. With a dependent spanning list the coefficients
    /// are the canonical ones produced by the reduction.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        debug_assert_eq!(v.len(), self.ambient);
        let d = self.transform.first().map_or(0, Vec::len);
        let mut residual = v.to_vec();
        let mut coords = vec![Scalar::zero(); d];
        for (r, &p) in self.pivots.iter().enumerate() {
            let lambda = residual[p].clone();
            if lambda.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(&self.reduced[r]) {
                if !y.is_zero() {
                    *x = &*x - &(&lambda * y);
                }
            }
            for (x, y) in coords.iter_mut().zip(&self.transform[r]) {
                if !y.is_zero() {
                    *x = &*x + &(&lambda * y);
                }
            }
        }
        if residual.iter().all(Scalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_row_sum() {
        let a = ExactMatrix::from_int_rows(&[&[1, 1]]).unwrap();
        assert_eq!(kernel_basis(&a), vec![ints(&[1, -1])]);
    }

    #[test]
    fn kernel_with_two_free_columns() {
        let a = ExactMatrix::from_int_rows(&[&[1, 2, 0, 3], &[0, 0, 1, 4]]).unwrap();
        let kernel = kernel_basis(&a);
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            let m = ExactMatrix::from_flat(4, 1, v.clone()).unwrap();
            assert!(a.mat_mul(&m).unwrap().is_zero());
        }
        assert_eq!(kernel, span_canonical(&kernel));
    }

    #[test]
    fn span_canonical_is_idempotent_and_order_free() {
        let a = vec![ints(&[1, 1, 0]), ints(&[0, 1, 1])];
        let b = vec![ints(&[1, 2, 1]), ints(&[0, -1, -1]), ints(&[1, 1, 0])];
        assert_eq!(span_canonical(&a), span_canonical(&b));
    }

    #[test]
    fn solver_coordinates_round_trip() {
        let basis = vec![ints(&[1, 0, 1]), ints(&[0, 2, 0])];
        let solver = SpanSolver::new(&basis);
        assert!(solver.is_independent(2));
        let coords = solver.coordinates(&ints(&[2, 2, 2])).unwrap();
        assert_eq!(coords, vec![Scalar::from_int(2), Scalar::from_int(1)]);
        assert!(solver.coordinates(&ints(&[1, 0, 0])).is_none());
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-4i64..=4, -2i64..=2), rows * cols).prop_map(
            move |entries| {
                ExactMatrix::from_fn(rows, cols, |i, j| {
                    let (a, b) = entries[i * cols + j];
                    Scalar::new(ratio(a, 1), ratio(b, 1), ratio(0, 1), ratio(0, 1))
                })
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rank_nullity_and_exact_kernel(a in arb_matrix(3, 5)) {
            let kernel = kernel_basis(&a);
            prop_assert_eq!(rank(&a) + kernel.len(), a.cols());
            for v in &kernel {
                let m = ExactMatrix::from_flat(5, 1, v.clone()).unwrap();
                prop_assert!(a.mat_mul(&m).unwrap().is_zero());
            }
        }

        #[test]
        fn solver_agrees_with_membership(a in arb_matrix(4, 3), coeff in proptest::collection::vec(-3i64..=3, 4)) {
            let basis: Vec<Vec<Scalar>> = (0..a.rows())
                .map(|i| (0..a.cols()).map(|j| a[(i, j)].clone()).collect())
                .collect();
            let solver = SpanSolver::new(&basis);
            // A combination of the rows is inside; coordinates reproduce it.
            let mut v = vec![Scalar::zero(); a.cols()];
            for (k, row) in basis.iter().enumerate() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = &*x + &(&Scalar::from_int(coeff[k]) * y);
                }
            }
            let coords = solver.coordinates(&v).unwrap();
            let mut back = vec![Scalar::zero(); a.cols()];
            for (k, row) in basis.iter().enumerate() {
                for (x, y) in back.iter_mut().zip(row) {
                    *x = &*x + &(&coords[k] * y);
                }
            }
            prop_assert_eq!(back, v);
        }
    }
}
