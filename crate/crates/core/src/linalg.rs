//! Dense matrices over Q(s) with fraction-based Gauss-Jordan elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalars::QScalar;

pub type Vector = Vec<QScalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QScalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = QScalar;
    fn index(&self, (r, c): (usize, usize)) -> &QScalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut QScalar {
        &mut self.data[r * self.cols + c]
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![QScalar::zero(); n]
}

pub fn is_zero_vector(v: &[QScalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vectors(a: &[QScalar], b: &[QScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[QScalar], b: &[QScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &QScalar, v: &[QScalar]) -> Vector {
    if c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| if x.is_zero() { QScalar::zero() } else { c * x }).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [QScalar], c: &QScalar, v: &[QScalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub fn dot(a: &[QScalar], b: &[QScalar]) -> QScalar {
    let mut acc = QScalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x * y;
        }
    }
    acc
}

/// Result of row reduction: reduced row echelon form and pivot columns.
struct Echelon {
    rref: Matrix,
    pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![QScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QScalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[QScalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<QScalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Build from column vectors.
    pub fn from_cols(cols: &[Vector], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
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

    pub fn row(&self, r: usize) -> &[QScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[QScalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = &out[(r, c)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[QScalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// `v^T * self`
    pub fn vec_mul(&self, v: &[QScalar]) -> Vector {
        assert_eq!(self.rows, v.len());
        let mut out = zero_vector(self.cols);
        for (r, x) in v.iter().enumerate() {
            axpy(&mut out, x, self.row(r));
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vectors(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vectors(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &QScalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vector(c, &self.data) }
    }

    /// Submatrix from the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Stack `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Gauss-Jordan on the first `limit` columns, choosing the lightest pivot in each column.
    fn echelon(&self, limit: usize) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..limit {
            if prow == m.rows {
                break;
            }
            let best = (prow..m.rows)
                .filter(|&r| !m[(r, c)].is_zero())
                .min_by_key(|&r| m[(r, c)].weight());
            let Some(best) = best else { continue };
            m.swap_rows(prow, best);
            let inv = m[(prow, c)].inv();
            for j in c..m.cols {
                if !m[(prow, j)].is_zero() {
                    m[(prow, j)] = &m[(prow, j)] * &inv;
                }
            }
            for r in 0..m.rows {
                if r == prow || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for j in c..m.cols {
                    let p = &m[(prow, j)];
                    if !p.is_zero() {
                        let v = &m[(r, j)] - &(&f * p);
                        m[(r, j)] = v;
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Echelon { rref: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon(self.cols).pivots.len()
    }

    /// Basis of the right kernel {x : self x = 0}.
    pub fn kernel(&self) -> Vec<Vector> {
        let e = self.echelon(self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = zero_vector(self.cols);
                x[f] = QScalar::one();
                for (i, &p) in e.pivots.iter().enumerate() {
                    x[p] = -&e.rref[(i, f)];
                }
                x
            })
            .collect()
    }

    /// Solve `self X = B`; `None` if inconsistent. Free variables are set to zero.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let e = aug.echelon(self.cols);
        let rank = e.pivots.len();
        for r in rank..self.rows {
            if (0..b.cols).any(|j| !e.rref[(r, self.cols + j)].is_zero()) {
                return None;
            }
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in e.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = e.rref[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn solve(&self, b: &[QScalar]) -> Option<Vector> {
        let bm = Matrix::from_cols(&[b.to_vec()], self.rows);
        self.solve_matrix(&bm).map(|x| x.col(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn det(&self) -> QScalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = QScalar::one();
        for c in 0..n {
            let best = (c..n).filter(|&r| !m[(r, c)].is_zero()).min_by_key(|&r| m[(r, c)].weight());
            let Some(best) = best else { return QScalar::zero() };
            if best != c {
                m.swap_rows(c, best);
                det = -det;
            }
            let p = m[(c, c)].clone();
            det = &det * &p;
            let inv = p.inv();
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let v = &m[(r, j)] - &(&f * &m[(c, j)]);
                        m[(r, j)] = v;
                    }
                }
            }
        }
        det
    }

    /// Indices of a maximal set of linearly independent columns, chosen greedily left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon(self.cols).pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> QScalar {
        QScalar::q_pow(k)
    }

    fn i(n: i64) -> QScalar {
        QScalar::from_int(n)
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(vec![vec![q(1), i(1)], vec![i(1), q(-1)]]);
        // det = 1 - 1 = 0
        assert!(m.det().is_zero());
        assert!(m.inverse().is_none());
        let n = Matrix::from_rows(vec![vec![q(1), i(1)], vec![i(0), q(2)]]);
        let inv = n.inverse().unwrap();
        assert!(n.mul(&inv).is_identity());
        assert_eq!(n.det(), q(3));
    }

    #[test]
    fn kernel_and_solve() {
        let m = Matrix::from_rows(vec![vec![i(1), q(1), i(0)], vec![i(2), &q(1) * &i(2), i(1)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vector(&m.mul_vec(&k[0])));
        let b = vec![i(1), i(3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_rows(vec![vec![i(1)], vec![i(1)]]);
        assert!(m.solve(&[i(1), i(2)]).is_none());
    }
}
