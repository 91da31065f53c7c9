//! Dense matrices over 𝔽_p.
//!
//! Vectors are coordinate columns throughout the crate; a matrix acts on the
//! left, so a map `f: V → W` is stored as a `dim W × dim V` matrix and
//! composition `f ∘ g` is `f.matmul(&g)`. One convention everywhere keeps the
//! higher tensor plumbing free of transpose bugs.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{fp, is_prime, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u32,
    data: Vec<u32>, // row-major, entries reduced mod `modulus`
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u32) -> Matrix {
        debug_assert!(is_prime(modulus));
        Matrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u32) -> Matrix {
        let mut m = Matrix::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod p.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u32) -> Result<Matrix> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::dims("ragged matrix rows", ncols, row.len()));
            }
            for &v in row {
                data.push(Scalar::reduced(v, modulus).value());
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            modulus,
            data,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        modulus: u32,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Matrix {
        let mut m = Matrix::zeros(rows, cols, modulus);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// A column vector as an n×1 matrix.
    pub fn column(v: &[u32], modulus: u32) -> Matrix {
        Matrix {
            rows: v.len(),
            cols: 1,
            modulus,
            data: v.iter().map(|&x| x % modulus).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    pub fn scalar(&self, i: usize, j: usize) -> Scalar {
        Scalar::reduced(self.get(i, j) as i64, self.modulus)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v % self.modulus;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[u32]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self.set(i, j, v[i]);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &Matrix) {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp::add(a, b, self.modulus))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp::sub(a, b, self.modulus))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        let data = self
            .data
            .iter()
            .map(|&a| fp::neg(a, self.modulus))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let c = c % self.modulus;
        let data = self
            .data
            .iter()
            .map(|&a| fp::mul(a, c, self.modulus))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let p = self.modulus as u64;
        let mut out = Matrix::zeros(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u64;
                    out.data[i * other.cols + j] = ((cur + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        let p = self.modulus as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) as u64 * v[j] as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.modulus, |i, j| self.get(j, i))
    }

    /// Kronecker product with the row-major pairing convention:
    /// `(a ⊗ b)(e_i ⊗ e_j) = a·e_i ⊗ b·e_j` where the pair `(i, j)` flattens
    /// to `i * b.cols + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols, self.modulus);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let v = fp::mul(a, other.get(i2, j2), self.modulus);
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, v);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.modulus, other.modulus);
        Matrix::from_fn(self.rows, self.cols + other.cols, self.modulus, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.modulus, other.modulus);
        Matrix::from_fn(self.rows + other.rows, self.cols, self.modulus, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                other.get(i - self.rows, j)
            }
        })
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus);
        Matrix::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            self.modulus,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j)
                } else if i >= self.rows && j >= self.cols {
                    other.get(i - self.rows, j - self.cols)
                } else {
                    0
                }
            },
        )
    }

    /// Reduced row-echelon form together with the pivot columns.
    /// Zero rows are kept (and end up at the bottom), so the shape is
    /// preserved.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.modulus;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            // find a row with a nonzero entry in column c
            let mut pivot_row = None;
            for i in r..m.rows {
                if m.get(i, c) != 0 {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot_row else { continue };
            if pi != r {
                for j in 0..m.cols {
                    let a = m.get(r, j);
                    let b = m.get(pi, j);
                    m.set(r, j, b);
                    m.set(pi, j, a);
                }
            }
            let inv = fp::inv(m.get(r, c), p);
            for j in 0..m.cols {
                let v = fp::mul(m.get(r, j), inv, p);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = fp::sub(m.get(i, j), fp::mul(factor, m.get(r, j), p), p);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n, self.modulus));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        Some(Matrix::from_fn(n, n, self.modulus, |i, j| r.get(i, n + j)))
    }

    /// Columns of the matrix as flat vectors (used to flatten linear maps
    /// into coordinates of hom spaces).
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, modulus: u32, flat: &[u32]) -> Matrix {
        assert_eq!(flat.len(), rows * cols);
        Matrix {
            rows,
            cols,
            modulus,
            data: flat.iter().map(|&x| x % modulus).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} mod {} [", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Helpers for coordinate vectors (plain `Vec<u32>` columns).
pub mod vecs {
    use crate::field::fp;

    pub fn zero(n: usize) -> Vec<u32> {
        vec![0; n]
    }

    pub fn unit(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    pub fn add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| fp::add(x, y, p)).collect()
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| fp::sub(x, y, p)).collect()
    }

    pub fn scale(a: &[u32], c: u32, p: u32) -> Vec<u32> {
        a.iter().map(|&x| fp::mul(x, c, p)).collect()
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Kronecker product of coordinate vectors, matching [`super::Matrix::kron`].
    pub fn kron(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for &x in a {
            for &y in b {
                out.push(fp::mul(x, y, p));
            }
        }
        out
    }

    /// All vectors of 𝔽_p^n in lexicographic order (most significant
    /// coordinate first). Intended for small exhaustive scans.
    pub fn enumerate(n: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
        let total = (p as u128).checked_pow(n as u32).expect("space too large");
        (0..total).map(move |mut idx| {
            let mut v = vec![0u32; n];
            for i in (0..n).rev() {
                v[i] = (idx % p as u128) as u32;
                idx /= p as u128;
            }
            v
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_spec_cases() {
        // [[1,1],[1,1]] over F_2 -> [[1,1],[0,0]], pivots [0]
        let m = Matrix::from_rows(&[vec![1, 1], vec![1, 1]], 2).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r, Matrix::from_rows(&[vec![1, 1], vec![0, 0]], 2).unwrap());
        assert_eq!(pivots, vec![0]);

        // identity fixed
        let id = Matrix::identity(2, 2);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1]);

        // zero 3x3 -> zero, no pivots
        let z = Matrix::zeros(3, 3, 2);
        let (r, pivots) = z.rref();
        assert_eq!(r, z);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_mod_three_normalizes_pivots() {
        let m = Matrix::from_rows(&[vec![2, 1], vec![1, 1]], 3).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, Matrix::identity(2, 3));
    }

    #[test]
    fn matmul_and_inverse() {
        let m = Matrix::from_rows(&[vec![1, 1], vec![0, 1]], 2).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(2, 2));
        let singular = Matrix::from_rows(&[vec![1, 1], vec![1, 1]], 2).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn kron_matches_vector_kron() {
        let a = Matrix::from_rows(&[vec![1, 2], vec![0, 1]], 3).unwrap();
        let b = Matrix::from_rows(&[vec![2, 0], vec![1, 1]], 3).unwrap();
        let k = a.kron(&b);
        for i in 0..2 {
            for j in 0..2 {
                let ei = vecs::unit(2, i);
                let ej = vecs::unit(2, j);
                let lhs = k.matvec(&vecs::kron(&ei, &ej, 3));
                let rhs = vecs::kron(&a.matvec(&ei), &b.matvec(&ej), 3);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn enumerate_is_lexicographic_and_complete() {
        let all: Vec<_> = vecs::enumerate(2, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
