//! Dense matrices over a [`Scalar`] backend, exact row reduction, and the
//! floating-point spectral routines used by positivity and rank checks.

use nalgebra::DMatrix;

use crate::scalar::{Scalar, C64};

/// Dense row-major matrix. As a linear map, column `j` is the image of the
/// `j`-th source basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_rows(cols: usize, rows: &[Vec<S>]) -> Self {
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    /// Applies the map to a coordinate vector, skipping zero coordinates.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in Matrix::apply");
        let mut out = vec![S::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    o.mul_acc(m, x);
                }
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in Matrix::compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for c in 0..other.cols {
            let col = self.apply(&other.column(c));
            for (r, v) in col.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn adjoint(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn max_diff(&self, other: &Matrix<S>) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        crate::scalar::max_diff(&self.data, &other.data)
    }

    pub fn to_c64(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).to_c64())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pub reduced: Matrix<S>,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols()).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Gauss-Jordan elimination. Exact backends pivot on the first nonzero entry;
/// the float backend pivots on the largest modulus and treats entries of
/// modulus at most `tol` as zero.
pub fn rref<S: Scalar>(mut m: Matrix<S>, tol: f64) -> Echelon<S> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        if lead == rows {
            break;
        }
        let candidate = if S::EXACT {
            (lead..rows).find(|&r| !m.get(r, c).is_zero())
        } else {
            (lead..rows)
                .map(|r| (r, m.get(r, c).modulus()))
                .filter(|&(_, v)| v > tol)
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(r, _)| r)
        };
        let Some(p) = candidate else {
            if !S::EXACT {
                for r in lead..rows {
                    m.set(r, c, S::zero());
                }
            }
            continue;
        };
        if p != lead {
            for k in 0..cols {
                m.data.swap(p * cols + k, lead * cols + k);
            }
        }
        let inv = S::one() / m.get(lead, c).clone();
        for k in c..cols {
            let v = m.get(lead, k).mul_ref(&inv);
            m.set(lead, k, v);
        }
        let pivot_row: Vec<S> = m.row(lead).to_vec();
        for r in 0..rows {
            if r == lead {
                continue;
            }
            let factor = m.get(r, c).clone();
            if factor.is_zero() {
                continue;
            }
            for k in c..cols {
                if pivot_row[k].is_zero() {
                    continue;
                }
                let v = m.get(r, k).sub_ref(&factor.mul_ref(&pivot_row[k]));
                m.set(r, k, v);
            }
            if !S::EXACT {
                m.set(r, c, S::zero());
            }
        }
        pivots.push(c);
        lead += 1;
    }
    Echelon { reduced: m, pivots }
}

/// Basis of the kernel of `m`. Each basis vector has a one in its own free
/// column and zeros in every other free column, so the free-column entries of
/// any kernel vector are its coordinates in this basis.
pub fn nullspace<S: Scalar>(m: &Matrix<S>, tol: f64) -> (Vec<Vec<S>>, Vec<usize>) {
    let ech = rref(m.clone(), tol);
    let free = ech.free_columns();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![S::zero(); m.cols()];
            v[f] = S::one();
            for (row, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced.get(row, f).clone();
            }
            v
        })
        .collect();
    (basis, free)
}

/// Rank of `m`. Exact backends use row reduction; the float backend counts
/// singular values above `tol`.
pub fn rank<S: Scalar>(m: &Matrix<S>, tol: f64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    if S::EXACT {
        rref(m.clone(), tol).rank()
    } else {
        singular_values(&m.to_c64()).iter().filter(|&&s| s > tol).count()
    }
}

/// Some solution of `m x = rhs`, or `None` when the system is inconsistent.
pub fn solve<S: Scalar>(m: &Matrix<S>, rhs: &[S], tol: f64) -> Option<Vec<S>> {
    assert_eq!(m.rows(), rhs.len());
    let cols = m.cols();
    let augmented = Matrix::from_fn(m.rows(), cols + 1, |r, c| {
        if c < cols {
            m.get(r, c).clone()
        } else {
            rhs[r].clone()
        }
    });
    let ech = rref(augmented, tol);
    if ech.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (row, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.reduced.get(row, cols).clone();
    }
    Some(x)
}

/// Reduces a spanning set to a basis of its span (rows of the echelon form).
pub fn span_basis<S: Scalar>(vectors: &[Vec<S>], dim: usize, tol: f64) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let ech = rref(Matrix::from_rows(dim, vectors), tol);
    (0..ech.rank()).map(|r| ech.reduced.row(r).to_vec()).collect()
}

/// Eigenvalues of the hermitian part of a square matrix, together with the
/// largest entry of its anti-hermitian part.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub asymmetry: f64,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::INFINITY)
    }
}

pub fn hermitian_spectrum(m: &DMatrix<C64>) -> Spectrum {
    assert_eq!(m.nrows(), m.ncols(), "spectrum of a non-square matrix");
    if m.nrows() == 0 {
        return Spectrum {
            eigenvalues: Vec::new(),
            asymmetry: 0.0,
        };
    }
    let adj = m.adjoint();
    let asymmetry = (m - &adj).iter().map(|z| z.norm()).fold(0.0, f64::max) / 2.0;
    let sym = (m + &adj).scale(0.5);
    let mut eigenvalues: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    Spectrum { eigenvalues, asymmetry }
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Smallest singular value relevant to injectivity (the `cols`-th largest).
pub fn min_singular_value(m: &DMatrix<C64>) -> f64 {
    let sv = singular_values(m);
    if sv.len() < m.ncols() {
        0.0
    } else {
        sv.last().copied().unwrap_or(0.0)
    }
}

/// Inverse square root of a hermitian positive-definite matrix.
pub fn inverse_sqrt(m: &DMatrix<C64>) -> DMatrix<C64> {
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = herm.symmetric_eigen();
    let inv_sqrt = eig.eigenvalues.map(|l| C64::new(1.0 / l.sqrt(), 0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&inv_sqrt) * eig.eigenvectors.adjoint()
}
