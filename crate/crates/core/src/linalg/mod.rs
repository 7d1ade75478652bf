//! Dense exact matrices.
//!
//! [`Matrix`] is generic over any [`Scalar`]. Echelon forms, rank and
//! kernels need decidable pivoting and are offered only over a [`Field`];
//! matrices of rational functions get a fraction-free determinant instead.

mod echelon;

pub use echelon::Echelon;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Poly, RationalFunction, Scalar};
use crate::GaussianRational;

/// Exact fields over which row reduction is offered.
pub trait Field: Scalar {}

impl Field for GaussianRational {}
impl Field for BigRational {}

impl Scalar for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Panics on ragged or empty input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect()).expect("nonempty matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn column(entries: Vec<T>) -> Self {
        let n = entries.len();
        Matrix::new(n, 1, entries).expect("nonempty column")
    }

    pub fn row_vector(entries: Vec<T>) -> Self {
        let n = entries.len();
        Matrix::new(1, n, entries).expect("nonempty row")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} {} {}x{}",
                self.rows, self.cols, op, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "+")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "-")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * other.cols + c;
                    let term = a.clone() * b;
                    out.data[idx] = std::mem::replace(&mut out.data[idx], T::zero()) + term;
                }
            }
        }
        Ok(out)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p_inv = a.get(col, col).inv().ok_or(Error::Singular)?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_row_multiple(r, col, &f);
                    inv.sub_row_multiple(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, s: &T) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = self.data[idx].clone() * s;
        }
    }

    /// row[target] -= factor * row[source]
    pub(crate) fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, c).clone() - factor.clone() * s;
            self.set(target, c, v);
        }
    }

    /// Embeds a `k x k` block at diagonal position `i` (1-based) of the
    /// `m x m` identity: `I_{i-1} (+) block (+) I_{m-i-k+1}`.
    pub fn block_embed(block: &Self, i: usize, m: usize) -> Result<Self> {
        let k = block.rows;
        if !block.is_square() {
            return Err(Error::DimensionMismatch("block must be square".into()));
        }
        if i == 0 || i + k > m + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "block of size {} at position {} in degree {}",
                k, i, m
            )));
        }
        let mut out = Self::identity(m);
        let off = i - 1;
        for r in 0..k {
            for c in 0..k {
                out.set(off + r, off + c, block.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// `self <- self * embed(block, i)`, touching only columns `i..i+k`.
    pub fn apply_block_right(&mut self, block: &Self, i: usize) -> Result<()> {
        let k = block.rows;
        if i == 0 || i + k > self.cols + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "block of size {} at position {} in degree {}",
                k, i, self.cols
            )));
        }
        let off = i - 1;
        for r in 0..self.rows {
            let old: Vec<T> = (0..k).map(|c| self.get(r, off + c).clone()).collect();
            for c in 0..k {
                let mut acc = T::zero();
                for (j, x) in old.iter().enumerate() {
                    let b = block.get(j, c);
                    if !x.is_zero() && !b.is_zero() {
                        acc = acc + x.clone() * b;
                    }
                }
                self.set(r, off + c, acc);
            }
        }
        Ok(())
    }

    /// Entries rendered in canonical scalar form, row-major.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(Scalar::render).collect())
            .collect()
    }
}

impl<T: Scalar> std::ops::Mul for &Matrix<T> {
    type Output = Matrix<T>;
    /// Panics on incompatible shapes; see [`Matrix::try_mul`].
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("compatible shapes")
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(T::zero());
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a.get(col, col).clone();
            let p_inv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone() * &p_inv;
                    a.sub_row_multiple(r, col, &f);
                }
            }
            det = det * &p;
        }
        Ok(det)
    }
}

impl<C: Scalar> Matrix<Poly<C>> {
    /// Fraction-free Bareiss determinant; every division is exact.
    pub fn bareiss_det(&self) -> Result<Poly<C>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = Poly::one();
        let mut prev = Poly::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return Ok(Poly::zero());
                };
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(i, j).clone() * a.get(k, k) - a.get(i, k).clone() * a.get(k, j);
                    let q = num.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, q);
                }
                a.set(i, k, Poly::zero());
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }
}

impl<C: Scalar> Matrix<RationalFunction<C>> {
    /// Determinant of a rational-function matrix: clear to a common
    /// denominator `D`, run Bareiss on the polynomial matrix, divide by
    /// `D^n`.
    pub fn det_fraction_free(&self) -> Result<RationalFunction<C>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut dens: Vec<Poly<C>> = Vec::new();
        for x in &self.data {
            if !x.is_zero() && !dens.contains(x.denom()) {
                dens.push(x.denom().clone());
            }
        }
        let common = dens.iter().fold(Poly::one(), |acc, d| acc * d);
        let clear = |x: &RationalFunction<C>| -> Poly<C> {
            if x.is_zero() {
                return Poly::zero();
            }
            let cofactor = common.div_exact(x.denom()).expect("common denominator");
            x.numer().clone() * cofactor
        };
        let poly_mat = Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(clear).collect(),
        };
        let det = poly_mat.bareiss_det()?;
        RationalFunction::new(det, common.pow(self.rows as u32))
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .render_rows()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
