//! Kernels and affine linear systems — the engine behind every local-unit,
//! dual-basis and counit search in the crate.

use crate::field::fp;
use crate::matrix::{vecs, Matrix};
use crate::subspace::Subspace;

/// Null space {v : m·v = 0} as a canonical [`Subspace`] of 𝔽_p^cols.
pub fn kernel(m: &Matrix) -> Subspace {
    let p = m.modulus();
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vecs::zero(m.cols());
        v[f] = 1;
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = fp::neg(r.get(k, f), p);
        }
        basis.push(v);
    }
    Subspace::from_spanning_vectors(&basis, m.cols(), p)
}

/// The solution set of a feasible system a·x = b: a particular solution plus
/// the kernel of `a`. Every member is `particular + u` with `u` in the kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSet {
    particular: Vec<u32>,
    kernel: Subspace,
}

impl AffineSet {
    pub fn particular(&self) -> &[u32] {
        &self.particular
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn is_unique(&self) -> bool {
        self.kernel.dim() == 0
    }

    /// Number of solutions, if it fits in u128.
    pub fn count(&self, p: u32) -> Option<u128> {
        (p as u128).checked_pow(self.kernel.dim() as u32)
    }

    /// All solutions; intended for budget-bounded enumeration.
    pub fn members<'a>(&'a self, p: u32) -> impl Iterator<Item = Vec<u32>> + 'a {
        self.kernel
            .elements()
            .map(move |u| vecs::add(&self.particular, &u, p))
    }
}

/// Solves a·x = b exactly. `None` means the system is infeasible
/// (b is not in the column space of a).
pub fn solve_affine(a: &Matrix, b: &[u32]) -> Option<AffineSet> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let p = a.modulus();
    let aug = a.hstack(&Matrix::column(b, p));
    let (r, pivots) = aug.rref();
    if pivots.contains(&a.cols()) {
        return None; // a pivot in the rhs column: inconsistent
    }
    let mut x = vecs::zero(a.cols());
    for (k, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(k, a.cols());
    }
    Some(AffineSet {
        particular: x,
        kernel: kernel(a),
    })
}

/// Stacks several (matrix, rhs) blocks into one system and solves it.
/// All blocks must constrain the same unknown vector.
pub fn solve_stacked(blocks: &[(Matrix, Vec<u32>)]) -> Option<AffineSet> {
    assert!(!blocks.is_empty());
    let cols = blocks[0].0.cols();
    let p = blocks[0].0.modulus();
    let mut a = Matrix::zeros(0, cols, p);
    let mut b: Vec<u32> = Vec::new();
    for (m, rhs) in blocks {
        assert_eq!(m.cols(), cols, "stacked blocks disagree on unknowns");
        a = a.vstack(m);
        b.extend_from_slice(rhs);
    }
    solve_affine(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_spec_cases() {
        // [[1,1]] over F_2 -> span{(1,1)}
        let m = Matrix::from_rows(&[vec![1, 1]], 2).unwrap();
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[1, 1]));

        // invertible -> zero subspace
        let inv = Matrix::from_rows(&[vec![1, 1], vec![0, 1]], 2).unwrap();
        assert_eq!(kernel(&inv).dim(), 0);

        // zero map on dim 3 -> full space
        let z = Matrix::zeros(2, 3, 2);
        assert_eq!(kernel(&z).dim(), 3);
    }

    #[test]
    fn rank_nullity() {
        for p in [2u32, 3] {
            let m = Matrix::from_rows(&[vec![1, 2, 1], vec![0, 1, 1]], p).unwrap();
            assert_eq!(kernel(&m).dim() + m.rank(), m.cols());
        }
    }

    #[test]
    fn solve_spec_cases() {
        // a=[[1,0]], b=(1) over F_2 -> x0=(1,0), kernel=span{(0,1)}
        let a = Matrix::from_rows(&[vec![1, 0]], 2).unwrap();
        let sol = solve_affine(&a, &[1]).unwrap();
        assert_eq!(sol.particular(), &[1, 0]);
        assert_eq!(sol.kernel().dim(), 1);
        assert!(sol.kernel().contains(&[0, 1]));

        // identity -> unique solution b
        let id = Matrix::identity(3, 2);
        let sol = solve_affine(&id, &[1, 0, 1]).unwrap();
        assert_eq!(sol.particular(), &[1, 0, 1]);
        assert!(sol.is_unique());

        // zero matrix, nonzero rhs -> infeasible
        let z = Matrix::zeros(2, 2, 2);
        assert!(solve_affine(&z, &[1, 0]).is_none());
    }

    #[test]
    fn every_member_solves() {
        let a = Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]], 3).unwrap();
        let b = vec![2, 1];
        let sol = solve_affine(&a, &b).unwrap();
        for x in sol.members(3) {
            assert_eq!(a.matvec(&x), b);
        }
    }

    #[test]
    fn stacked_blocks_constrain_jointly() {
        let a1 = Matrix::from_rows(&[vec![1, 0]], 2).unwrap();
        let a2 = Matrix::from_rows(&[vec![0, 1]], 2).unwrap();
        let sol = solve_stacked(&[(a1, vec![1]), (a2, vec![1])]).unwrap();
        assert_eq!(sol.particular(), &[1, 1]);
        assert!(sol.is_unique());
    }
}
