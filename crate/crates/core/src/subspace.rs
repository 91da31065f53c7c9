//! Subspaces of 𝔽_p^n in reduced row-echelon form.

use crate::field::fp;
use crate::matrix::{vecs, Matrix};

/// A subspace stored by its canonical rref basis (rows = basis vectors,
/// pivot columns strictly increasing, no zero rows). Two subspaces are equal
/// iff their canonical bases are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    modulus: u32,
    basis: Matrix, // dim × ambient, rref
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, modulus: u32) -> Subspace {
        Subspace {
            ambient,
            modulus,
            basis: Matrix::zeros(0, ambient, modulus),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize, modulus: u32) -> Subspace {
        Subspace {
            ambient,
            modulus,
            basis: Matrix::identity(ambient, modulus),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonicalizes a spanning set given as matrix rows.
    pub fn from_spanning_rows(rows: &Matrix) -> Subspace {
        let (r, pivots) = rows.rref();
        let dim = pivots.len();
        let basis = Matrix::from_fn(dim, rows.cols(), rows.modulus(), |i, j| r.get(i, j));
        Subspace {
            ambient: rows.cols(),
            modulus: rows.modulus(),
            basis,
            pivots,
        }
    }

    pub fn from_spanning_vectors(vectors: &[Vec<u32>], ambient: usize, modulus: u32) -> Subspace {
        let mut m = Matrix::zeros(vectors.len(), ambient, modulus);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient, "spanning vector of wrong length");
            for (j, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Subspace::from_spanning_rows(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        self.basis.row(i).to_vec()
    }

    /// Canonical coset representative: subtracts the unique combination of
    /// basis rows that clears every pivot coordinate of `v`.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient {
                out[j] = fp::sub(out[j], fp::mul(c, self.basis.get(k, j), self.modulus), self.modulus);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        vecs::is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the rref basis, if `v` is a member.
    pub fn coordinates_of(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 {
            return other.clone();
        }
        if other.dim() == 0 {
            return self.clone();
        }
        Subspace::from_spanning_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient, self.modulus);
        }
        // Solve basisᵀ·u + other_basisᵀ·w = 0; the A-part of each kernel
        // vector spans the intersection.
        let stacked = self.basis.transpose().hstack(&other.basis.transpose());
        let ker = crate::solve::kernel(&stacked);
        let mut vectors = Vec::new();
        for i in 0..ker.dim() {
            let kv = ker.basis_vector(i);
            let u = &kv[..self.dim()];
            let member = self.basis.transpose().matvec(u);
            vectors.push(member);
        }
        Subspace::from_spanning_vectors(&vectors, self.ambient, self.modulus)
    }

    /// Image of the subspace under a linear map (matrix acting on columns).
    pub fn map_by(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let mut vectors = Vec::new();
        for i in 0..self.dim() {
            vectors.push(m.matvec(self.basis.row(i)));
        }
        Subspace::from_spanning_vectors(&vectors, m.rows(), self.modulus)
    }

    /// Closes the subspace under the given operators (smallest invariant
    /// subspace containing it).
    pub fn saturate(&self, ops: &[&Matrix]) -> Subspace {
        let mut current = self.clone();
        loop {
            let mut vectors: Vec<Vec<u32>> = (0..current.dim())
                .map(|i| current.basis_vector(i))
                .collect();
            for op in ops {
                for i in 0..current.dim() {
                    vectors.push(op.matvec(&current.basis_vector(i)));
                }
            }
            let next = Subspace::from_spanning_vectors(&vectors, self.ambient, self.modulus);
            if next.dim() == current.dim() {
                return next;
            }
            current = next;
        }
    }

    /// All members, for small exhaustive scans. The caller is responsible
    /// for keeping `p^dim` reasonable.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        vecs::enumerate(self.dim(), self.modulus).map(move |coeffs| {
            let mut out = vecs::zero(self.ambient);
            for (k, &c) in coeffs.iter().enumerate() {
                let scaled = vecs::scale(self.basis.row(k), c, self.modulus);
                out = vecs::add(&out, &scaled, self.modulus);
            }
            out
        })
    }
}

/// Image (column space) of a matrix.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::from_spanning_rows(&m.transpose())
}

/// Every subspace of 𝔽_p^n, found by canonicalizing all n×n spanning
/// matrices. Exhaustive and only sensible for p^(n²) small (n ≤ 3 at the
/// desk-scale primes).
pub fn all_subspaces(ambient: usize, modulus: u32) -> Vec<Subspace> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for flat in vecs::enumerate(ambient * ambient, modulus) {
        let m = Matrix::from_flat(ambient, ambient, modulus, &flat);
        let s = Subspace::from_spanning_rows(&m);
        let key = (s.dim(), s.basis().flatten());
        if seen.insert(key) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_basis_and_membership() {
        let s = Subspace::from_spanning_vectors(&[vec![1, 1, 0], vec![0, 0, 1]], 3, 2);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 1, 1]));
        assert!(!s.contains(&[1, 0, 0]));
        assert_eq!(s.coordinates_of(&[1, 1, 1]), Some(vec![1, 1]));
        assert_eq!(s.coordinates_of(&[1, 0, 0]), None);
    }

    #[test]
    fn spanning_order_does_not_matter() {
        let a = Subspace::from_spanning_vectors(&[vec![1, 1], vec![1, 0]], 2, 2);
        let b = Subspace::from_spanning_vectors(&[vec![1, 0], vec![0, 1]], 2, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::from_spanning_vectors(&[vec![1, 0, 0], vec![0, 1, 0]], 3, 2);
        let b = Subspace::from_spanning_vectors(&[vec![0, 1, 0], vec![0, 0, 1]], 3, 2);
        let s = a.sum(&b);
        assert_eq!(s.dim(), 3);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 1, 0]));
    }

    #[test]
    fn intersection_dimension_formula_f3() {
        // dim(A) + dim(B) = dim(A+B) + dim(A∩B)
        let a = Subspace::from_spanning_vectors(&[vec![1, 2, 0], vec![0, 1, 1]], 3, 3);
        let b = Subspace::from_spanning_vectors(&[vec![1, 0, 1], vec![0, 1, 2]], 3, 3);
        let lhs = a.dim() + b.dim();
        let rhs = a.sum(&b).dim() + a.intersect(&b).dim();
        assert_eq!(lhs, rhs);
        let inter = a.intersect(&b);
        for v in inter.elements() {
            assert!(a.contains(&v) && b.contains(&v));
        }
    }

    #[test]
    fn elements_enumerates_whole_space() {
        let s = Subspace::from_spanning_vectors(&[vec![1, 1]], 2, 2);
        let members: Vec<_> = s.elements().collect();
        assert_eq!(members, vec![vec![0, 0], vec![1, 1]]);
    }
}
