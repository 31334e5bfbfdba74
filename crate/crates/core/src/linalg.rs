//! Dense exact linear algebra over [`CycNum`].
//!
//! Pivoting is deterministic (first nonzero entry, columns left to right, rows
//! top to bottom) so echelon forms and kernel bases are reproducible.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;

use crate::cyclo::{CycField, CycNum};
use crate::{Error, Result};

/// A column vector.
pub type Vector = Vec<CycNum>;

#[derive(Clone)]
pub struct Mat {
    field: Arc<CycField>,
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Mat {
    pub fn zeros(field: &Arc<CycField>, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: alloc::vec![CycNum::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, CycNum::one(field));
        }
        m
    }

    /// Builds a matrix from rows, embedding every entry into `field`.
    pub fn from_rows(field: &Arc<CycField>, rows: Vec<Vec<CycNum>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for x in row {
                data.push(x.coerce_to(field)?);
            }
        }
        Ok(Mat {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Arc<CycField>, rows: usize, cols: &[Vector]) -> Mat {
        let mut m = Mat::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_int_rows(field: &Arc<CycField>, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, CycNum::from_int(field, x));
            }
        }
        m
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// Embeds every entry into a field whose conductor is a multiple of ours.
    pub fn coerce_to(&self, target: &Arc<CycField>) -> Result<Mat> {
        Ok(Mat {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| x.coerce_to(target))
                .collect::<Result<_>>()?,
        })
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

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycNum) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(&self.field);
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Mat::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix dimensions")
    }
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Mat {}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| self.data.cmp(&other.data))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Mat) -> Rref {
    let mut r = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r.cols {
        if row == r.rows {
            break;
        }
        let Some(p) = (row..r.rows).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..r.cols {
                r.data.swap(p * r.cols + j, row * r.cols + j);
            }
        }
        let inv = r.get(row, col).inv().expect("nonzero pivot");
        for j in col..r.cols {
            let x = r.get(row, j);
            if !x.is_zero() {
                let y = x * &inv;
                r.set(row, j, y);
            }
        }
        let pivot_row: Vec<CycNum> = r.row(row).to_vec();
        for i in 0..r.rows {
            if i == row {
                continue;
            }
            let f = r.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            for j in col..r.cols {
                if !pivot_row[j].is_zero() {
                    let idx = i * r.cols + j;
                    r.data[idx] -= &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { matrix: r, pivots }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).rank()
}

/// Basis of the right null space. Each vector has a 1 in one free coordinate and
/// 0 in the others.
pub fn kernel_basis(m: &Mat) -> Vec<Vector> {
    let Rref { matrix: r, pivots } = rref(m);
    let field = m.field();
    let mut basis = Vec::new();
    let mut is_pivot = alloc::vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols).filter(|&j| !is_pivot[j]) {
        let mut v = alloc::vec![CycNum::zero(field); m.cols];
        v[free] = CycNum::one(field);
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, free);
        }
        basis.push(v);
    }
    debug_assert_eq!(pivots.len() + basis.len(), m.cols);
    basis
}

/// Canonical basis of the span of `vectors`: the nonzero rows of their echelon form.
pub fn span_basis(field: &Arc<CycField>, len: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_columns(field, len, vectors).transpose();
    let r = rref(&m);
    (0..r.rank()).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Dimension of the span of `vectors`.
pub fn span_rank(field: &Arc<CycField>, len: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Mat::from_columns(field, len, vectors))
}

/// Canonical basis of the column space of `m`.
pub fn column_space_basis(m: &Mat) -> Vec<Vector> {
    let r = rref(&m.transpose());
    (0..r.rank()).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Basis of `span(a) ∩ span(b)` inside a space of dimension `len`.
pub fn intersection(field: &Arc<CycField>, len: usize, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i - Σ y_j b_j = 0, keep Σ x_i a_i.
    let mut cols: Vec<Vector> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
    let system = Mat::from_columns(field, len, &cols);
    let solutions = kernel_basis(&system);
    let images: Vec<Vector> = solutions
        .iter()
        .map(|sol| {
            let mut acc = alloc::vec![CycNum::zero(field); len];
            for (coef, v) in sol.iter().zip(a) {
                if coef.is_zero() {
                    continue;
                }
                for (slot, x) in acc.iter_mut().zip(v) {
                    *slot += &(coef * x);
                }
            }
            acc
        })
        .collect();
    span_basis(field, len, &images)
}

pub fn det(m: &Mat) -> Result<CycNum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut acc = CycNum::one(m.field());
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
            return Ok(CycNum::zero(m.field()));
        };
        if p != col {
            for j in 0..n {
                a.data.swap(p * n + j, col * n + j);
            }
            acc = -acc;
        }
        let pivot = a.get(col, col).clone();
        acc = &acc * &pivot;
        let inv = pivot.inv()?;
        for i in col + 1..n {
            let f = a.get(i, col) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let delta = &f * a.get(col, j);
                let idx = i * n + j;
                a.data[idx] -= &delta;
            }
        }
    }
    Ok(acc)
}

/// Inverse of a square matrix.
pub fn inverse(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut aug = Mat::zeros(m.field(), n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, CycNum::one(m.field()));
    }
    let r = rref(&aug);
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return Err(Error::DivisionByZero);
    }
    let mut out = Mat::zeros(m.field(), n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, r.matrix.get(i, n + j).clone());
        }
    }
    Ok(out)
}

pub fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let field = a.first().or(b.first()).map(|x| x.field().clone());
    let Some(field) = field else {
        panic!("dot product of empty vectors has no field");
    };
    let mut acc = CycNum::zero(&field);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}
