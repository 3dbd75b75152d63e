//! Exact linear algebra over the rationals.
//!
//! Everything else in the crate reduces to ranks, kernels and linear solves
//! of matrices produced here. Elimination always picks the first nonzero
//! entry as pivot, so reduced forms are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::rational::{zeros, Rational};
use num::{One, Zero};
use std::fmt;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: zeros(rows * cols),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.data[i * size + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from its rows; all rows must share one length.
    /// `cols` fixes the width when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RatMatrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_fn(self.rows, cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Reduced row echelon form by Gauss-Jordan elimination. Zero rows are
    /// dropped, so the result has exactly `rank` rows.
    pub fn rref(&self) -> Echelon {
        let mut rows: Vec<Vec<Rational>> = self
            .row_vecs()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, found);
            let inv = rows[top][col].recip();
            if !inv.is_one() {
                for x in rows[top][col..].iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pivot_row = std::mem::take(&mut rows[top]);
            let support: Vec<usize> = (col..self.cols).filter(|&c| !pivot_row[c].is_zero()).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == top || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for &c in &support {
                    let delta = &factor * &pivot_row[c];
                    row[c] -= delta;
                }
            }
            rows[top] = pivot_row;
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        let rank = rows.len();
        let data = rows.into_iter().flatten().collect();
        Echelon {
            matrix: RatMatrix {
                rows: rank,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    /// Forward elimination only; cheaper than a full [`RatMatrix::rref`].
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Rational>> = self
            .row_vecs()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut top = 0;
        for col in 0..self.cols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = std::mem::take(&mut rows[top]);
            let inv = pivot_row[col].recip();
            let support: Vec<usize> = (col + 1..self.cols).filter(|&c| !pivot_row[c].is_zero()).collect();
            for row in rows[top + 1..].iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] * &inv;
                for &c in &support {
                    let delta = &factor * &pivot_row[c];
                    row[c] -= delta;
                }
                row[col].set_zero();
            }
            rows[top] = pivot_row;
            top += 1;
        }
        top
    }

    /// Basis of the right kernel, one vector per free column, in reduced
    /// echelon form: the free coordinate is 1, the other free coordinates 0.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let ech = self.rref();
        ech.kernel_basis()
    }

    /// Any exact solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug = self.hstack(&RatMatrix::from_columns(self.rows, &[b.to_vec()])?)?;
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zeros(self.cols);
        for (i, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.matrix.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.matrix.cols).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let cols = self.matrix.cols;
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = zeros(cols);
                v[f] = Rational::one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    let e = self.matrix.get(i, f);
                    if !e.is_zero() {
                        v[p] = -e.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Reduces `v` against the echelon rows; the result is the canonical
    /// representative of `v` modulo the row space (zero at every pivot).
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (c, x) in self.matrix.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[c] -= &factor * x;
                }
            }
        }
        out
    }
}

/// A linear subspace of `Q^ambient`, stored as the reduced echelon basis of
/// its span (one row per basis vector).
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    echelon: Echelon,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.echelon.matrix)
    }
}

impl PartialEq for Echelon {
    fn eq(&self, other: &Self) -> bool {
        self.pivots == other.pivots && self.matrix == other.matrix
    }
}

impl Eq for Echelon {}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let m = RatMatrix::from_rows(ambient, vectors.to_vec())?;
        Ok(Subspace {
            ambient,
            echelon: m.rref(),
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            echelon: RatMatrix::zeros(0, ambient).rref(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            echelon: RatMatrix::identity(ambient).rref(),
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Rational>> = indices.iter().map(|&i| crate::rational::unit(ambient, i)).collect();
        Self::span(ambient, &vs).expect("unit vectors have the ambient length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.echelon.matrix.row_vecs()
    }

    pub fn basis_matrix(&self) -> &RatMatrix {
        &self.echelon.matrix
    }

    pub fn pivots(&self) -> &[usize] {
        &self.echelon.pivots
    }

    /// Coordinates not used as pivots: the standard basis vectors at these
    /// positions span a complement of the subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        self.echelon.free_columns()
    }

    /// Canonical coset representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        self.echelon.reduce(v)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        self.check_len(v.len())?;
        Ok(self.reduce(v).iter().all(Zero::is_zero))
    }

    /// `other ⊆ self`, decided by rank(self) == rank(self + other).
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        let stacked = self.echelon.matrix.vstack(&other.echelon.matrix)?;
        Ok(stacked.rank() == self.dim())
    }

    /// Equality by mutual containment.
    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.echelon.matrix.vstack(&other.echelon.matrix)?;
        Ok(Subspace {
            ambient: self.ambient,
            echelon: stacked.rref(),
        })
    }

    pub fn with_vectors(&self, vectors: &[Vec<Rational>]) -> Result<Subspace> {
        self.sum(&Subspace::span(self.ambient, vectors)?)
    }

    /// Intersection via the kernel of `[A^T | -B^T]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let a = self.echelon.matrix.transpose();
        let b = other.echelon.matrix.transpose();
        let neg_b = RatMatrix::from_fn(b.rows(), b.cols(), |r, c| -b.get(r, c).clone());
        let system = a.hstack(&neg_b)?;
        let da = self.dim();
        let vectors: Vec<Vec<Rational>> = system
            .kernel_basis()
            .into_iter()
            .map(|x| a.mul_vec(&x[..da]).expect("sizes agree"))
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// Image of the subspace under `m` (which must have `ambient` columns).
    pub fn image_under(&self, m: &RatMatrix) -> Result<Subspace> {
        let vs = self
            .basis()
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(m.rows(), &vs)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: len,
            });
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        self.check_len(other.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        RatMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        assert_eq!(RatMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(m(&[&[1, 2, 3], &[2, 4, 6]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(2).kernel_basis().is_empty());
        let k = RatMatrix::zeros(1, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        assert_eq!(Subspace::span(3, &k).unwrap().dim(), 3);
        assert_eq!(m(&[&[1, 1]]).kernel_basis(), vec![v(&[-1, 1])]);
    }

    #[test]
    fn kernel_is_reduced_echelon() {
        let k = m(&[&[1, 2, 0, 3], &[0, 0, 1, 4]]).kernel_basis();
        assert_eq!(k, vec![v(&[-2, 1, 0, 0]), v(&[-3, 0, -4, 1])]);
    }

    #[test]
    fn subspace_examples() {
        let e12 = Subspace::coordinate(3, &[0, 1]);
        let e1 = Subspace::coordinate(3, &[0]);
        let e23 = Subspace::coordinate(3, &[1, 2]);
        assert!(e12.contains(&e1).unwrap());
        assert!(!e1.contains(&e12).unwrap());
        let meet = e12.intersect(&e23).unwrap();
        assert!(meet.same_as(&Subspace::coordinate(3, &[1])).unwrap());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(m(&[&[1, 0], &[0, 0]]).solve(&v(&[0, 1])).unwrap(), None);
        let x = m(&[&[2, 1], &[1, 3]]).solve(&v(&[3, 4])).unwrap().unwrap();
        assert_eq!(x, v(&[1, 1]));
        let x = m(&[&[1, 1]]).solve(&[rat(1, 2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], rat(1, 2));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.contains(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.intersect(&b).is_err());
        assert!(m(&[&[1, 0]]).solve(&v(&[1, 2])).is_err());
    }

    #[test]
    fn reduce_gives_canonical_representative() {
        let s = Subspace::span(3, &[v(&[1, 1, 0])]).unwrap();
        let a = s.reduce(&v(&[2, 0, 5]));
        let b = s.reduce(&v(&[0, -2, 5]));
        assert_eq!(a, b);
        assert_eq!(a[0], int(0));
    }
}
