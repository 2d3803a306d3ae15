//! Dense matrices over Q(i,√2): products, commutators, Kronecker products,
//! determinants, inverses, and the 4×4 Pfaffian.
//!
//! All structural predicates (skewness, orthogonality, equality) are decided
//! exactly, never by tolerance.
//!
//! ```
//! use hkinv::matrix::ExactMatrix;
//!
//! let a = ExactMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]).unwrap();
//! assert!(a.is_skew());
//! assert_eq!(a.mat_mul(&a).unwrap(), ExactMatrix::identity(2).neg());
//! ```

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix of [`Scalar`] entries.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from entry rows; rows must all have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeError("rows must be nonempty and rectangular".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from a row-major entry vector.
    pub fn from_flat(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = ExactMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Replaces entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = value;
    }

    /// True iff the matrix is square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True iff every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// True iff `A = −Aᵀ`.
    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| (&self[(i, j)] + &self[(j, i)]).is_zero()))
    }

    /// True iff `A·Aᵀ = I` exactly.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square()
            && self
                .mat_mul(&self.transpose())
                .is_ok_and(|p| p == ExactMatrix::identity(self.rows))
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, |x, y| x + y)
    }

    /// Entry-wise difference.
    pub fn sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, |x, y| x - y)
    }

    fn zip_with(
        &self,
        rhs: &ExactMatrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<ExactMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionError(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(x, y)| f(x, y))
                .collect(),
        })
    }

    /// Entry-wise negation.
    pub fn neg(&self) -> ExactMatrix {
        self.map(|x| -x)
    }

    /// Scales every entry.
    pub fn scale(&self, k: &Scalar) -> ExactMatrix {
        self.map(|x| x * k)
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Exact matrix product.
    pub fn mat_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionError(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ExactMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = &self[(i, k)];
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let r = &rhs[(k, j)];
                    if r.is_zero() {
                        continue;
                    }
                    let cur = &out[(i, j)] + &(lhs * r);
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Commutator `AB − BA`.
    pub fn commutator(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if !self.is_square() || self.rows != rhs.rows {
            return Err(Error::DimensionError(
                "commutator needs equal square matrices".into(),
            ));
        }
        self.mat_mul(rhs)?.sub(&rhs.mat_mul(self)?)
    }

    /// Kronecker product `A ⊗ B = (a_{ij}·B)`: block `(i, j)` of the result
    /// is `a_{ij}·B`.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zero(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for p in 0..rhs.rows {
                    for q in 0..rhs.cols {
                        let v = a * &rhs[(p, q)];
                        out.set(i * rhs.rows + p, j * rhs.cols + q, v);
                    }
                }
            }
        }
        out
    }

    /// Transpose.
    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeError("trace needs a square matrix".into()));
        }
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = &t + &self[(i, i)];
        }
        Ok(t)
    }

    /// Exact determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeError("determinant needs a square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !work[(r, col)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if pivot != col {
                work.swap_rows(pivot, col);
                det = -det;
            }
            let p = work[(col, col)].clone();
            det = &det * &p;
            let p_inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = &work[(r, col)] * &p_inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &work[(r, c)] - &(&factor * &work[(col, c)]);
                    work.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeError("inverse needs a square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut out = ExactMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            work.swap_rows(pivot, col);
            out.swap_rows(pivot, col);
            let p_inv = work[(col, col)].inv().expect("pivot is nonzero");
            work.scale_row(col, &p_inv);
            out.scale_row(col, &p_inv);
            for r in 0..n {
                if r == col || work[(r, col)].is_zero() {
                    continue;
                }
                let factor = work[(r, col)].clone();
                work.sub_scaled_row(r, col, &factor);
                out.sub_scaled_row(r, col, &factor);
            }
        }
        Ok(out)
    }

    /// Pfaffian of a 4×4 skew matrix: `a₁₂a₃₄ − a₁₃a₂₄ + a₁₄a₂₃`.
    /// Its square is the determinant.
    pub fn pfaffian4(&self) -> Result<Scalar> {
        if self.rows != 4 || self.cols != 4 {
            return Err(Error::ShapeError("pfaffian4 needs a 4x4 matrix".into()));
        }
        if !self.is_skew() {
            return Err(Error::ShapeError("pfaffian4 needs a skew matrix".into()));
        }
        let term = |p: (usize, usize), q: (usize, usize)| &self[p] * &self[q];
        Ok(&(&term((0, 1), (2, 3)) - &term((0, 2), (1, 3))) + &term((0, 3), (1, 2)))
    }

    /// Extracts the `size`×`size` block at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> Result<ExactMatrix> {
        if (bi + 1) * size > self.rows || (bj + 1) * size > self.cols {
            return Err(Error::ShapeError(format!(
                "block ({bi},{bj}) of size {size} exceeds {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(ExactMatrix::from_fn(size, size, |i, j| {
            self[(bi * size + i, bj * size + j)].clone()
        }))
    }

    /// Assembles a block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
        if blocks.is_empty() || blocks.iter().any(|b| !b.is_square()) {
            return Err(Error::ShapeError("block_diag needs square blocks".into()));
        }
        let total: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = ExactMatrix::zero(total, total);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(offset + i, offset + j, b[(i, j)].clone());
                }
            }
            offset += b.rows;
        }
        Ok(out)
    }

    /// True iff the matrix is square, its size is a multiple of `size`, and
    /// all entries outside the diagonal `size`×`size` blocks are zero.
    pub fn is_block_diagonal(&self, size: usize) -> bool {
        if !self.is_square() || size == 0 || !self.rows.is_multiple_of(size) {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i / size != j / size && !self[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for c in 0..self.cols {
            let v = &self[(r, c)] * k;
            self.set(r, c, v);
        }
    }

    /// Row operation `row[r] -= k·row[src]`.
    fn sub_scaled_row(&mut self, r: usize, src: usize, k: &Scalar) {
        for c in 0..self.cols {
            let v = &self[(r, c)] - &(k * &self[(src, c)]);
            self.set(r, c, v);
        }
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for ExactMatrix {
    /// Serializes as a JSON array of rows of entry strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&Scalar>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        ExactMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
