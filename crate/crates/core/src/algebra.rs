//! Finite-dimensional associative algebras over 𝔽_p, given by structure
//! constants. A unit is optional: absence models rings that are not
//! necessarily unital.

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::matrix::{vecs, Matrix};
use crate::solve;

/// An algebra of dimension n with basis e_0..e_{n-1}. We store the left
/// multiplication operators L_i (column j of L_i is e_i·e_j), which is
/// equivalent to the structure constants c[i][j][k].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    modulus: u32,
    dim: usize,
    left_mult: Vec<Matrix>,
    unit: Option<Vec<u32>>,
}

impl Algebra {
    /// Builds an algebra from structure constants `c[i][j][k]`
    /// (e_i·e_j = Σ_k c[i][j][k] e_k) and validates associativity, and the
    /// unit law when a unit is supplied.
    pub fn from_structure_constants(
        c: &[Vec<Vec<i64>>],
        unit: Option<Vec<i64>>,
        modulus: u32,
    ) -> Result<Algebra> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        let dim = c.len();
        let mut left_mult = Vec::with_capacity(dim);
        for (i, ci) in c.iter().enumerate() {
            if ci.len() != dim {
                return Err(Error::dims("structure constants", dim, ci.len()));
            }
            let mut l = Matrix::zeros(dim, dim, modulus);
            for (j, cij) in ci.iter().enumerate() {
                if cij.len() != dim {
                    return Err(Error::dims("structure constants", dim, cij.len()));
                }
                for (k, &v) in cij.iter().enumerate() {
                    let r = ((v % modulus as i64) + modulus as i64) % modulus as i64;
                    l.set(k, j, r as u32);
                }
                let _ = i;
            }
            left_mult.push(l);
        }
        let unit = unit.map(|u| {
            u.iter()
                .map(|&v| (((v % modulus as i64) + modulus as i64) % modulus as i64) as u32)
                .collect::<Vec<u32>>()
        });
        let alg = Algebra {
            modulus,
            dim,
            left_mult,
            unit,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub(crate) fn from_left_mult_unchecked(
        left_mult: Vec<Matrix>,
        unit: Option<Vec<u32>>,
        modulus: u32,
    ) -> Algebra {
        let dim = left_mult.len();
        Algebra {
            modulus,
            dim,
            left_mult,
            unit,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for l in &self.left_mult {
            if l.rows() != self.dim || l.cols() != self.dim {
                return Err(Error::dims("multiplication operator", self.dim, l.rows()));
            }
        }
        // associativity on all basis triples
        for i in 0..self.dim {
            for j in 0..self.dim {
                let eij = self.left_mult[i].col(j);
                for k in 0..self.dim {
                    let lhs = self.mul(&eij, &vecs::unit(self.dim, k));
                    let ejk = self.left_mult[j].col(k);
                    let rhs = self.mul(&vecs::unit(self.dim, i), &ejk);
                    if lhs != rhs {
                        return Err(Error::axiom(format!(
                            "associativity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            if u.len() != self.dim {
                return Err(Error::dims("unit vector", self.dim, u.len()));
            }
            for k in 0..self.dim {
                let e = vecs::unit(self.dim, k);
                if self.mul(u, &e) != e || self.mul(&e, u) != e {
                    return Err(Error::axiom(format!(
                        "declared unit does not act as identity on basis element {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&[u32]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// Left multiplication operator of a basis element: x ↦ e_i · x.
    pub fn left_mult_basis(&self, i: usize) -> &Matrix {
        &self.left_mult[i]
    }

    /// Left multiplication operator of an arbitrary element.
    pub fn left_mult(&self, a: &[u32]) -> Matrix {
        assert_eq!(a.len(), self.dim);
        let mut out = Matrix::zeros(self.dim, self.dim, self.modulus);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.left_mult[i].scale(c));
            }
        }
        out
    }

    /// Right multiplication operator: x ↦ x · a.
    pub fn right_mult(&self, a: &[u32]) -> Matrix {
        assert_eq!(a.len(), self.dim);
        let mut out = Matrix::zeros(self.dim, self.dim, self.modulus);
        for j in 0..self.dim {
            let col = self.mul(&vecs::unit(self.dim, j), a);
            out.set_col(j, &col);
        }
        out
    }

    pub fn right_mult_basis(&self, j: usize) -> Matrix {
        self.right_mult(&vecs::unit(self.dim, j))
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = vecs::zero(self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = vecs::scale(&self.left_mult[i].matvec(b), c, self.modulus);
            out = vecs::add(&out, &term, self.modulus);
        }
        out
    }

    /// Structure constants c[i][j][k], recovered from the operators.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.left_mult[i].col(j)).collect())
            .collect()
    }

    /// Searches for a two-sided unit by solving the linear system
    /// u·e_k = e_k = e_k·u for all basis k.
    pub fn find_unit(&self) -> Option<Vec<u32>> {
        if self.dim == 0 {
            return None;
        }
        let mut blocks = Vec::new();
        for k in 0..self.dim {
            // unknown u: Σ_i u_i (e_i·e_k) = e_k  and  Σ_i u_i (e_k·e_i) = e_k
            let mut left = Matrix::zeros(self.dim, self.dim, self.modulus);
            let mut right = Matrix::zeros(self.dim, self.dim, self.modulus);
            for i in 0..self.dim {
                left.set_col(i, &self.left_mult[i].col(k));
                right.set_col(i, &self.left_mult[k].col(i));
            }
            let ek = vecs::unit(self.dim, k);
            blocks.push((left, ek.clone()));
            blocks.push((right, ek));
        }
        solve::solve_stacked(&blocks).map(|s| s.particular().to_vec())
    }

    /// Records a two-sided unit on the algebra, validating the unit law.
    pub fn with_unit(mut self, unit: Vec<u32>) -> Result<Algebra> {
        self.unit = Some(unit);
        self.validate()?;
        Ok(self)
    }

    // ---- standard constructors ----

    /// The ground field k = 𝔽_p as a one-dimensional algebra.
    pub fn ground_field(modulus: u32) -> Algebra {
        Algebra::from_structure_constants(&[vec![vec![1]]], Some(vec![1]), modulus)
            .expect("ground field is associative")
    }

    /// Full matrix algebra M_n(𝔽_p) with basis e_{rc} ordered row-major.
    pub fn matrix_algebra(n: usize, modulus: u32) -> Algebra {
        let dim = n * n;
        let idx = |r: usize, c: usize| r * n + c;
        let mut consts = vec![vec![vec![0i64; dim]; dim]; dim];
        for r in 0..n {
            for c in 0..n {
                for r2 in 0..n {
                    for c2 in 0..n {
                        if c == r2 {
                            consts[idx(r, c)][idx(r2, c2)][idx(r, c2)] = 1;
                        }
                    }
                }
            }
        }
        let mut unit = vec![0i64; dim];
        for r in 0..n {
            unit[idx(r, r)] = 1;
        }
        Algebra::from_structure_constants(&consts, Some(unit), modulus)
            .expect("matrix algebra is associative")
    }

    /// Truncated polynomial algebra k[x]/(x^m) with basis 1, x, …, x^{m-1}.
    pub fn truncated_poly(m: usize, modulus: u32) -> Algebra {
        assert!(m >= 1);
        let mut consts = vec![vec![vec![0i64; m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    consts[i][j][i + j] = 1;
                }
            }
        }
        let mut unit = vec![0i64; m];
        unit[0] = 1;
        Algebra::from_structure_constants(&consts, Some(unit), modulus)
            .expect("truncated polynomial algebra is associative")
    }

    /// The dual numbers k[x]/(x²).
    pub fn dual_numbers(modulus: u32) -> Algebra {
        Algebra::truncated_poly(2, modulus)
    }

    /// The first-row subalgebra {[[a,b],[0,0]]} of M₂(𝔽_p): it has a left
    /// unit e₁₁ but no right unit, so no two-sided unit. Basis: e₁₁, e₁₂.
    pub fn row_algebra(modulus: u32) -> Algebra {
        // e11·e11 = e11, e11·e12 = e12, e12·e11 = 0, e12·e12 = 0
        let consts = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 0], vec![0, 0]],
        ];
        Algebra::from_structure_constants(&consts, None, modulus)
            .expect("row algebra is associative")
    }

    /// One-dimensional nilpotent algebra span{x} with x² = 0.
    pub fn nilpotent_line(modulus: u32) -> Algebra {
        Algebra::from_structure_constants(&[vec![vec![0]]], None, modulus)
            .expect("zero multiplication is associative")
    }

    /// Direct product, with block-diagonal structure constants. Unital iff
    /// every factor is.
    pub fn product(factors: &[&Algebra]) -> Algebra {
        assert!(!factors.is_empty());
        let p = factors[0].modulus;
        assert!(factors.iter().all(|a| a.modulus == p));
        let dim: usize = factors.iter().map(|a| a.dim).sum();
        let mut left_mult = Vec::with_capacity(dim);
        let mut offset = 0usize;
        for f in factors {
            for i in 0..f.dim {
                let mut l = Matrix::zeros(dim, dim, p);
                for j in 0..f.dim {
                    for k in 0..f.dim {
                        l.set(offset + k, offset + j, f.left_mult[i].get(k, j));
                    }
                }
                left_mult.push(l);
            }
            offset += f.dim;
        }
        let unit = if factors.iter().all(|a| a.unit.is_some()) {
            let mut u = vecs::zero(dim);
            let mut off = 0usize;
            for f in factors {
                for (i, &c) in f.unit.as_ref().unwrap().iter().enumerate() {
                    u[off + i] = c;
                }
                off += f.dim;
            }
            Some(u)
        } else {
            None
        };
        let alg = Algebra::from_left_mult_unchecked(left_mult, unit, p);
        debug_assert!(alg.validate().is_ok());
        alg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_field_is_unital() {
        let k = Algebra::ground_field(2);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.unit(), Some(&[1u32][..]));
        assert_eq!(k.mul(&[1], &[1]), vec![1]);
    }

    #[test]
    fn matrix_algebra_relations() {
        let a = Algebra::matrix_algebra(2, 2);
        assert_eq!(a.dim(), 4);
        // e11·e12 = e12, e12·e21 = e11, e12·e12 = 0
        let e11 = vecs::unit(4, 0);
        let e12 = vecs::unit(4, 1);
        let e21 = vecs::unit(4, 2);
        assert_eq!(a.mul(&e11, &e12), e12);
        assert_eq!(a.mul(&e12, &e21), e11);
        assert_eq!(a.mul(&e12, &e12), vecs::zero(4));
        assert_eq!(a.find_unit(), Some(vec![1, 0, 0, 1]));
    }

    #[test]
    fn non_associative_constants_rejected() {
        // e0·e0 = e1, e0·e1 = e0, rest zero: (e0 e0) e0 = e1 e0 = 0 but
        // e0 (e0 e0) = e0 e1 = e0.
        let consts = vec![
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, 0]],
        ];
        let err = Algebra::from_structure_constants(&consts, None, 2).unwrap_err();
        assert!(matches!(err, Error::AxiomFailed(_)));
    }

    #[test]
    fn row_algebra_has_no_two_sided_unit() {
        let r = Algebra::row_algebra(2);
        assert!(r.find_unit().is_none());
        // but e11 is a left unit
        let e11 = vecs::unit(2, 0);
        for k in 0..2 {
            let e = vecs::unit(2, k);
            assert_eq!(r.mul(&e11, &e), e);
        }
    }

    #[test]
    fn product_of_fields() {
        let k = Algebra::ground_field(2);
        let kk = Algebra::product(&[&k, &k]);
        assert_eq!(kk.dim(), 2);
        assert_eq!(kk.mul(&[1, 0], &[0, 1]), vec![0, 0]);
        assert_eq!(kk.unit(), Some(&[1u32, 1][..]));
    }

    #[test]
    fn truncated_poly_nilpotency() {
        let a = Algebra::truncated_poly(3, 3);
        let x = vecs::unit(3, 1);
        let x2 = a.mul(&x, &x);
        assert_eq!(x2, vecs::unit(3, 2));
        assert_eq!(a.mul(&x2, &x), vecs::zero(3));
    }

    #[test]
    fn right_mult_is_anti_multiplicative() {
        let a = Algebra::matrix_algebra(2, 3);
        for i in 0..4 {
            for j in 0..4 {
                let ei = vecs::unit(4, i);
                let ej = vecs::unit(4, j);
                let prod = a.mul(&ei, &ej);
                let lhs = a.right_mult(&prod);
                let rhs = a.right_mult(&ej).matmul(&a.right_mult(&ei));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
