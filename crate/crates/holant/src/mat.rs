//! Small dense matrices over [`Scalar`]. Everything here is desk-scale:
//! dimensions are powers of the domain size, so plain row-major storage wins.

use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat::new(rows, cols, data)
    }

    pub fn from_rows_f64(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Mat::from_fn(r, c, |i, j| Scalar::from_f64(rows[i][j]))
    }

    pub fn from_rows_int(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Mat::from_fn(r, c, |i, j| Scalar::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Scalar::is_exact)
    }

    pub fn to_float(&self) -> Mat {
        Mat::new(self.rows, self.cols, self.data.iter().map(Scalar::to_float).collect())
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_f64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc += &(&self[(i, k)] * &rhs[(k, j)]);
            }
            acc
        })
    }

    pub fn kron(&self, rhs: &Mat) -> Mat {
        Mat::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            &self[(i / rhs.rows, j / rhs.cols)] * &rhs[(i % rhs.rows, j % rhs.cols)]
        })
    }

    /// n-fold Kronecker power; the 0th power is the 1x1 identity.
    pub fn kron_pow(&self, n: usize) -> Mat {
        let mut acc = Mat::identity(1);
        for _ in 0..n {
            acc = acc.kron(self);
        }
        acc
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| c * &self[(i, j)])
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc += &self[(i, i)];
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Mat) -> f64 {
        self.sub(rhs).max_abs()
    }

    pub fn is_diagonal_within(&self, tol: f64) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || self[(i, j)].abs_f64() <= tol)
        })
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn from_diagonal(d: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// `‖AᵀA − I‖_max`, the orthogonality defect.
    pub fn orthogonality_defect(&self) -> f64 {
        assert!(self.is_square());
        self.transpose().matmul(self).max_abs_diff(&Mat::identity(self.rows))
    }

    /// Submatrix with rows and columns drawn from the given index sets.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat {
        Mat::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])].clone()
        })
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A `q x q` matrix validated to be orthogonal within a tolerance
/// (exact equality on the exact backend, where the defect is 0 or not).
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMap {
    mat: Mat,
    tol: f64,
}

impl OrthogonalMap {
    pub fn new(mat: Mat, tol: f64) -> Result<Self, f64> {
        assert!(mat.is_square());
        let defect = mat.orthogonality_defect();
        if defect > tol {
            return Err(defect);
        }
        Ok(OrthogonalMap { mat, tol })
    }

    pub fn identity(q: usize) -> Self {
        OrthogonalMap { mat: Mat::identity(q), tol: 0.0 }
    }

    pub fn q(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Exact rational orthogonal matrix from a rational skew-symmetric matrix via
/// the Cayley transform `(I - S)(I + S)^{-1}`. Handy for exact-backend tests.
pub fn cayley_orthogonal(skew: &Mat) -> Mat {
    assert!(skew.is_square());
    let n = skew.rows();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(skew[(i, j)], -&skew[(j, i)], "input not skew-symmetric");
        }
    }
    let i_mat = Mat::identity(n);
    let num = i_mat.sub(skew);
    let den = i_mat.add(skew);
    num.matmul(&invert_exact(&den).expect("I + S is always invertible for skew S"))
}

/// Gauss-Jordan inverse on the exact backend. Returns `None` when singular.
pub fn invert_exact(m: &Mat) -> Option<Mat> {
    assert!(m.is_square() && m.is_exact());
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = Mat::identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
        if pivot != col {
            for j in 0..n {
                let (x, y) = (a[(pivot, j)].clone(), a[(col, j)].clone());
                a[(pivot, j)] = y;
                a[(col, j)] = x;
                let (x, y) = (inv[(pivot, j)].clone(), inv[(col, j)].clone());
                inv[(pivot, j)] = y;
                inv[(col, j)] = x;
            }
        }
        let p = a[(col, col)].clone();
        for j in 0..n {
            a[(col, j)] = &a[(col, j)] / &p;
            inv[(col, j)] = &inv[(col, j)] / &p;
        }
        for r in 0..n {
            if r != col && !a[(r, col)].is_zero() {
                let f = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = &a[(r, j)] - &(&f * &a[(col, j)]);
                    inv[(r, j)] = &inv[(r, j)] - &(&f * &inv[(col, j)]);
                }
            }
        }
    }
    Some(inv)
}

/// Reduced row echelon form in place; returns the pivot columns.
/// Exact when the input is exact.
pub fn row_reduce(m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let (x, y) = (m[(p, j)].clone(), m[(r, j)].clone());
                m[(p, j)] = y;
                m[(r, j)] = x;
            }
        }
        let piv = m[(r, c)].clone();
        for j in 0..cols {
            m[(r, j)] = &m[(r, j)] / &piv;
        }
        for i in 0..rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in 0..cols {
                    m[(i, j)] = &m[(i, j)] - &(&f * &m[(r, j)]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace of `m` (exact backend).
pub fn nullspace_exact(m: &Mat) -> Vec<Vec<Scalar>> {
    let cols = m.cols();
    let mut red = m.clone();
    let pivots = row_reduce(&mut red);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(); cols];
            v[fc] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&red[(r, fc)];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_and_kron() {
        let a = Mat::from_rows_int(&[vec![1, 2], vec![3, 4]]);
        let b = Mat::from_rows_int(&[vec![0, 1], vec![1, 0]]);
        let ab = a.matmul(&b);
        assert_eq!(ab, Mat::from_rows_int(&[vec![2, 1], vec![4, 3]]));
        let k = a.kron(&Mat::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 0)], Scalar::from_int(1));
        assert_eq!(k[(1, 3)], Scalar::from_int(2));
        assert_eq!(k[(2, 1)], Scalar::from_int(0));
    }

    #[test]
    fn cayley_gives_exact_orthogonal() {
        let s = Mat::from_fn(3, 3, |i, j| {
            if i < j {
                Scalar::from_ratio((i + j) as i64, 3)
            } else if i > j {
                -&Scalar::from_ratio((i + j) as i64, 3)
            } else {
                Scalar::zero()
            }
        });
        let h = cayley_orthogonal(&s);
        assert!(h.is_exact());
        assert_eq!(h.transpose().matmul(&h), Mat::identity(3));
    }

    #[test]
    fn invert_and_nullspace() {
        let m = Mat::from_rows_int(&[vec![2, 1], vec![1, 1]]);
        let inv = invert_exact(&m).unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(2));

        let singular = Mat::from_rows_int(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = nullspace_exact(&singular);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let mut acc = Scalar::zero();
            for (j, x) in v.iter().enumerate() {
                acc += &(&singular[(0, j)] * x);
            }
            assert!(acc.is_zero());
        }
    }
}
