//! Quotients of 𝔽_p^n by a subspace, with an explicit projection/section
//! pair. These carry every ⊗_A and ⊗_B in the crate.

use crate::field::fp;
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// V/U with projection π and section σ chosen on the non-pivot coordinates
/// of U's rref basis, so π∘σ = id and ker π = U. The choice is deterministic,
/// which keeps every reported representative reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    ambient: usize,
    modulus: u32,
    relations: Subspace,
    projection: Matrix, // dim × ambient
    section: Matrix,    // ambient × dim
}

impl QuotientSpace {
    pub fn new(ambient: usize, relations: Subspace) -> QuotientSpace {
        assert_eq!(relations.ambient_dim(), ambient);
        let p = relations.modulus();
        let pivots = relations.pivots();
        let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        let dim = free.len();

        // π(e_j): reduce e_j modulo the relations, then read off the free
        // coordinates. For a free j that is e_j itself; for the k-th pivot it
        // is minus the k-th basis row restricted to the free coordinates.
        let mut projection = Matrix::zeros(dim, ambient, p);
        for (qi, &fc) in free.iter().enumerate() {
            projection.set(qi, fc, 1);
        }
        for (k, &pc) in pivots.iter().enumerate() {
            for (qi, &fc) in free.iter().enumerate() {
                projection.set(qi, pc, fp::neg(relations.basis().get(k, fc), p));
            }
        }

        let mut section = Matrix::zeros(ambient, dim, p);
        for (qi, &fc) in free.iter().enumerate() {
            section.set(fc, qi, 1);
        }

        QuotientSpace {
            ambient,
            modulus: p,
            relations,
            projection,
            section,
        }
    }

    pub fn trivial(ambient: usize, modulus: u32) -> QuotientSpace {
        QuotientSpace::new(ambient, Subspace::zero(ambient, modulus))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        self.projection.matvec(v)
    }

    pub fn lift(&self, q: &[u32]) -> Vec<u32> {
        self.section.matvec(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vecs;

    #[test]
    fn spec_cases() {
        // dim 2, U = span{(1,1)} over F_2: quotient dim 1, π(1,0) = π(0,1)
        let u = Subspace::from_spanning_vectors(&[vec![1, 1]], 2, 2);
        let q = QuotientSpace::new(2, u);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&[1, 0]), q.project(&[0, 1]));

        // U = 0: quotient ≅ ambient with identity maps
        let q = QuotientSpace::trivial(3, 2);
        assert_eq!(q.dim(), 3);
        assert_eq!(q.projection(), &Matrix::identity(3, 2));
        assert_eq!(q.section(), &Matrix::identity(3, 2));

        // U = full: quotient dim 0
        let q = QuotientSpace::new(2, Subspace::full(2, 2));
        assert_eq!(q.dim(), 0);
    }

    #[test]
    fn projection_section_identities() {
        for p in [2u32, 3] {
            let u = Subspace::from_spanning_vectors(&[vec![1, 2, 0, 1], vec![0, 0, 1, 1]], 4, p);
            let q = QuotientSpace::new(4, u.clone());
            assert_eq!(q.dim(), 4 - u.dim());
            // π∘σ = id
            assert_eq!(
                q.projection().matmul(q.section()),
                Matrix::identity(q.dim(), p)
            );
            // π annihilates the relations
            for i in 0..u.dim() {
                assert!(vecs::is_zero(&q.project(u.basis().row(i))));
            }
            // ker π = U exactly (dimensions match and U ⊆ ker)
            let ker = crate::solve::kernel(q.projection());
            assert_eq!(ker, u);
        }
    }
}
