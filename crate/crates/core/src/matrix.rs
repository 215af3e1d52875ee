//! Dense matrices over an exact [`Field`].
//!
//! Zero-sized matrices are ordinary values: a `3x0` matrix is the unique map
//! from the zero space to a 3-dimensional space. Vectors are columns and maps
//! act by left multiplication.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result, Shape};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::rref`]: `transform * m == reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F> {
    pub reduced: Matrix<F>,
    pub pivot_cols: Vec<usize>,
    pub transform: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Row-major entries; panics if `entries.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<F>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix {
            rows,
            cols,
            data: entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(rows, cols, entries.iter().map(|&x| F::from_i64(x)).collect())
    }

    /// Builds from rows; the column count of an empty row list is `cols_if_empty`.
    /// Returns `None` for ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>, cols_if_empty: usize) -> Option<Self> {
        let cols = rows.first().map_or(cols_if_empty, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn column_vector(entries: Vec<F>) -> Self {
        let n = entries.len();
        Self::from_vec(n, 1, entries)
    }

    pub fn scalar(n: usize, s: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Shape {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", F::add_ref)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", F::sub_ref)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul_ref(s)).collect(),
        }
    }

    pub fn column(&self, c: usize) -> Self {
        Self::from_fn(self.rows, 1, |r, _| self[(r, c)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |r, c| self[(rows[r], c)].clone())
    }

    /// Horizontal concatenation; all parts must have `rows` rows.
    pub fn hstack(rows: usize, parts: &[&Self]) -> Result<Self> {
        if let Some(bad) = parts.iter().find(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: (rows, 0),
                right: bad.shape(),
            });
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            for r in 0..rows {
                for c in 0..p.cols {
                    out[(r, offset + c)] = p[(r, c)].clone();
                }
            }
            offset += p.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation; all parts must have `cols` columns.
    pub fn vstack(cols: usize, parts: &[&Self]) -> Result<Self> {
        if let Some(bad) = parts.iter().find(|p| p.cols != cols) {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: (0, cols),
                right: bad.shape(),
            });
        }
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn block_diag(parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for r in 0..p.rows {
                for c in 0..p.cols {
                    out[(r0 + r, c0 + c)] = p[(r, c)].clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Gauss-Jordan elimination in place, looking for pivots only in the first
    /// `pivot_limit` columns. The pivot of each column is the first nonzero
    /// entry at or below the current row.
    fn eliminate(&mut self, pivot_limit: usize) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_limit.min(cols) {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r * cols + col].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.data[row * cols + col].inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for c in col..cols {
                    let idx = row * cols + c;
                    if !self.data[idx].is_zero() {
                        self.data[idx] = self.data[idx].mul_ref(&inv);
                    }
                }
            }
            let pivot_row: Vec<F> = self.data[row * cols..(row + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.data[r * cols + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..cols {
                    self.data[r * cols + c].sub_mul_assign(&factor, &pivot_row[c]);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref<F> {
        let mut aug = Self::hstack(self.rows, &[self, &Self::identity(self.rows)]).expect("row counts agree");
        let pivot_cols = aug.eliminate(self.cols);
        let all: Vec<usize> = (0..self.cols).collect();
        let rest: Vec<usize> = (self.cols..self.cols + self.rows).collect();
        Rref {
            reduced: aug.select_columns(&all),
            pivot_cols,
            transform: aug.select_columns(&rest),
        }
    }

    /// Reduced row echelon form and pivot columns, without the transform.
    pub fn rref_only(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_only().1.len()
    }

    /// Columns form a basis of `{v : self * v = 0}`, one per free column.
    pub fn kernel_basis(&self) -> Self {
        let (reduced, pivots) = self.rref_only();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = reduced[(r, f)].neg_ref();
            }
        }
        basis
    }

    /// The pivot columns of `self`: a basis of the column space.
    pub fn image_basis(&self) -> Self {
        let (_, pivots) = self.rref_only();
        self.select_columns(&pivots)
    }

    /// Nonzero rows of the reduced echelon form: the canonical basis of the
    /// row space. Equal row spaces give equal results.
    pub fn row_basis(&self) -> Self {
        let (reduced, pivots) = self.rref_only();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        reduced.select_rows(&keep)
    }

    /// Canonical column basis of the column space.
    pub fn column_space(&self) -> Self {
        self.transpose().row_basis().transpose()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.shape()));
        }
        let r = self.rref();
        if r.pivot_cols.len() != self.rows {
            return Err(Error::NotInvertible);
        }
        Ok(r.transform)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some solution `x` of `self * x = rhs`, or `None` when inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Self>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut aug = Self::hstack(self.rows, &[self, rhs])?;
        let pivots = aug.eliminate(self.cols);
        for r in pivots.len()..self.rows {
            if (0..rhs.cols).any(|c| !aug[(r, self.cols + c)].is_zero()) {
                return Ok(None);
            }
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = aug[(r, self.cols + c)].clone();
            }
        }
        Ok(Some(x))
    }

    /// Indices of the columns of `extra` that extend the column span of
    /// `base` to the span of `[base | extra]`, chosen greedily left to right.
    pub fn extension_columns(base: &Self, extra: &Self) -> Result<Vec<usize>> {
        let aug = Self::hstack(base.rows, &[base, extra])?;
        let (_, pivots) = aug.rref_only();
        Ok(pivots
            .into_iter()
            .filter(|&p| p >= base.cols)
            .map(|p| p - base.cols)
            .collect())
    }

    /// `self^k` for square matrices.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.shape()));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = self.matmul(&out)?;
        }
        Ok(out)
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Panics on a shape mismatch; use [`Matrix::matmul`] for a checked product.
impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        match self.matmul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|r| &self.data[r * self.cols..(r + 1) * self.cols]))
            .finish()
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
            if i + 1 < cells.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussianRational, Rational};

    type M = Matrix<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn matmul_examples() {
        let m = M::from_i64(2, 2, &[1, 2, 3, 4]);
        assert_eq!(M::identity(2).matmul(&m).unwrap(), m);
        let v = M::from_i64(2, 1, &[0, 1]);
        assert_eq!(m.matmul(&v).unwrap(), M::from_i64(2, 1, &[2, 4]));
        let e = M::zeros(2, 0).matmul(&M::zeros(0, 3)).unwrap();
        assert_eq!(e, M::zeros(2, 3));
    }

    #[test]
    fn matmul_shape_error_names_both_shapes() {
        let err = M::zeros(2, 3).matmul(&M::zeros(2, 3)).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                op: "matmul",
                left: (2, 3),
                right: (2, 3)
            }
        );
        assert!(err.to_string().contains("(2, 3)"));
    }

    #[test]
    fn rref_examples() {
        let r = M::zeros(2, 2).rref();
        assert_eq!(r.reduced, M::zeros(2, 2));
        assert!(r.pivot_cols.is_empty());
        assert_eq!(r.transform, M::identity(2));

        let swap = M::from_i64(2, 2, &[0, 1, 1, 0]);
        let r = swap.rref();
        assert_eq!(r.reduced, M::identity(2));
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(&r.transform * &swap, r.reduced);

        let prop = M::from_i64(2, 2, &[1, 2, 2, 4]);
        let r = prop.rref();
        assert_eq!(r.reduced, M::from_i64(2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(&r.transform * &prop, r.reduced);
        assert!(r.transform.is_invertible());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(M::zeros(3, 4).rank(), 0);
        assert_eq!(M::identity(3).rank(), 3);
        assert_eq!(M::from_i64(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(M::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(M::identity(2).kernel_basis().ncols(), 0);
        let k = M::from_i64(1, 2, &[1, 0]).kernel_basis();
        assert_eq!(k, M::from_i64(2, 1, &[0, 1]));
        let m = M::from_i64(2, 2, &[1, 2, 2, 4]);
        let k = m.kernel_basis();
        assert_eq!(k, M::from_i64(2, 1, &[-2, 1]));
        assert!((&m * &k).is_zero());
        // Zero-column matrix: kernel is the zero space.
        assert_eq!(M::zeros(3, 0).kernel_basis().shape(), (0, 0));
        // Zero-row matrix: kernel is everything.
        assert_eq!(M::zeros(0, 2).kernel_basis(), M::identity(2));
    }

    #[test]
    fn image_examples() {
        assert_eq!(M::zeros(2, 2).image_basis().ncols(), 0);
        let i = M::identity(2).image_basis();
        assert_eq!(i.rank(), 2);
        let i = M::from_i64(2, 2, &[1, 2, 2, 4]).image_basis();
        assert_eq!(i, M::from_i64(2, 1, &[1, 2]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(M::identity(3).inverse().unwrap(), M::identity(3));
        let d = M::from_vec(2, 2, vec![q(2, 1), q(0, 1), q(0, 1), q(1, 2)]);
        assert_eq!(
            d.inverse().unwrap(),
            M::from_vec(2, 2, vec![q(1, 2), q(0, 1), q(0, 1), q(2, 1)])
        );
        let u = M::from_i64(2, 2, &[1, 1, 0, 1]);
        assert_eq!(u.inverse().unwrap(), M::from_i64(2, 2, &[1, -1, 0, 1]));
        assert_eq!(M::from_i64(2, 2, &[1, 2, 2, 4]).inverse(), Err(Error::NotInvertible));
        assert_eq!(M::zeros(2, 3).inverse(), Err(Error::NotSquare((2, 3))));
        assert_eq!(M::zeros(0, 0).inverse().unwrap(), M::zeros(0, 0));
    }

    #[test]
    fn solve_and_extension() {
        let a = M::from_i64(2, 2, &[1, 2, 2, 4]);
        let b = M::from_i64(2, 1, &[3, 6]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(&a * &x, b);
        assert!(a.solve(&M::from_i64(2, 1, &[1, 0])).unwrap().is_none());

        let base = M::from_i64(3, 1, &[1, 1, 0]);
        let extra = M::identity(3);
        // e1 extends, e2 is then dependent on {base, e1}, e3 extends.
        assert_eq!(M::extension_columns(&base, &extra).unwrap(), vec![0, 2]);
    }

    #[test]
    fn row_basis_is_canonical() {
        let a = M::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = M::from_i64(2, 3, &[5, 7, 9, 3, 3, 3]);
        assert_eq!(a.row_basis(), b.row_basis());
    }

    #[test]
    fn gaussian_elimination() {
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        let m = Matrix::from_vec(2, 2, vec![one.clone(), i.clone(), i.clone(), one.neg_ref()]);
        // Second row is i times the first.
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert!((&m * &k).is_zero());
        let n = Matrix::from_vec(2, 2, vec![one.clone(), i.clone(), i.neg_ref(), one.clone()]);
        assert_eq!(n.rank(), 1);
        let p = Matrix::from_vec(2, 2, vec![one.clone(), i.clone(), GaussianRational::zero(), one]);
        let inv = p.inverse().unwrap();
        assert!((&p * &inv).is_identity());
    }
}
