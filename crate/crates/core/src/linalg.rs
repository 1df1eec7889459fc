//! Dense matrices over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ExactScalar;

pub fn rational(n: i64, d: i64) -> ExactScalar {
    ExactScalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(n))
}

/// Exact `base^exp` for a rational base.
pub fn pow(base: &ExactScalar, exp: usize) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Serialized form `p/q` (or `p` for integers).
pub fn format_scalar(x: &ExactScalar) -> String {
    x.to_string()
}

pub fn parse_scalar(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(ExactScalar::new(parse_int(p)?, q))
        }
        None => Ok(ExactScalar::from_integer(parse_int(s)?)),
    }
}

pub fn to_f64(x: &ExactScalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ExactScalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(ExactScalar::zero(), |a, b| a + b)
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn sum_entries(&self) -> ExactScalar {
        self.data.iter().fold(ExactScalar::zero(), |a, b| a + b)
    }

    /// Kronecker product, first factor most significant.
    pub fn kron(&self, other: &ExactMatrix) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        let b = other.get(p, q);
                        if !b.is_zero() {
                            out.set(i * other.rows + p, j * other.cols + q, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in col..m.cols {
                        let v = m.get(r, j) - &factor * m.get(row, j);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.is_integral() {
            return integer_rank(self);
        }
        self.rref().1.len()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if self.is_integral() {
            return integer_inverse(self);
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, ExactScalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Columns forming a basis of the column space (leftmost choice).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Symmetric reflexive generalized inverse of a symmetric matrix: the inverse
    /// of the principal submatrix on a maximal independent set of columns, padded
    /// with zeros.
    pub fn symmetric_pseudo_inverse(&self) -> Result<ExactMatrix> {
        if !self.is_symmetric() {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        let idx = self.pivot_columns();
        let sub = self.submatrix(&idx, &idx);
        let inv = sub
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("principal pivot block is singular".into()))?;
        let mut out = Self::zeros(self.rows, self.cols);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(i, j, inv.get(a, b).clone());
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Leading principal minors, via fraction-free elimination without pivoting.
    /// Stops (returning the minors so far) at the first vanishing pivot.
    pub fn leading_principal_minors(&self) -> Vec<ExactScalar> {
        let n = self.rows.min(self.cols);
        let mut minors = Vec::with_capacity(n);
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            minors.push(self.submatrix(&idx, &idx).determinant());
        }
        minors
    }

    pub fn determinant(&self) -> ExactScalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = ExactScalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return ExactScalar::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for j in col..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Entry-wise `"p/q"` strings, row-major.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_scalar(self.get(i, j))).collect())
            .collect()
    }

    pub fn max_abs_entry(&self) -> ExactScalar {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(ExactScalar::zero)
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
fn integer_rank(m: &ExactMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).to_integer()).collect())
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&a[rank][col] * &a[r][j] - &a[r][col] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Inverse of an integer matrix: fraction-free Gauss-Jordan on `[A | I]`, dividing
/// by the final common pivot at the end.
fn integer_inverse(m: &ExactMatrix) -> Option<ExactMatrix> {
    let n = m.rows;
    if n == 0 {
        return Some(ExactMatrix::zeros(0, 0));
    }
    let width = 2 * n;
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..n).map(|j| m.get(i, j).to_integer()).collect();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for r in 0..n {
            if r == k {
                continue;
            }
            let factor = a[r][k].clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                let v = (&pivot * &a[r][j] - &factor * &a[k][j]) / &prev;
                a[r][j] = v;
            }
            a[r][k] = BigInt::zero();
        }
        prev = pivot;
    }
    // every diagonal entry now equals the determinant `prev`
    Some(ExactMatrix::from_fn(n, n, |i, j| {
        ExactScalar::new(a[i][n + j].clone(), a[i][i].clone())
    }))
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("shape mismatch")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format_scalar(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExactMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.to_string_rows())?;
        st.end()
    }
}
