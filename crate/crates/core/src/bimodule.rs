//! Bimodules over a pair of algebras, given by action matrices, and the
//! matrix-backed morphisms between them.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::{vecs, Matrix};
use crate::subspace::Subspace;

/// A (B,A)-bimodule: left action matrices L_b for the basis of B, right
/// action matrices R_a for the basis of A, acting on coordinate columns.
///
/// The left action is an algebra map (L_{b·b'} = L_b∘L_{b'}), the right
/// action an anti-map (R_{a·a'} = R_{a'}∘R_a), the two commute, and a
/// declared unit of either algebra must act as the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    left_algebra: Algebra,
    right_algebra: Algebra,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        left_algebra: Algebra,
        right_algebra: Algebra,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let b = Bimodule::new_unchecked(left_algebra, right_algebra, dim, left_action, right_action);
        b.validate()?;
        Ok(b)
    }

    /// Assembles the carrier without validating the module axioms, so that
    /// diagnostic checkers can run on deliberately broken data.
    pub fn new_unchecked(
        left_algebra: Algebra,
        right_algebra: Algebra,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Bimodule {
        Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left_action,
            right_action,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.left_algebra.modulus();
        if self.right_algebra.modulus() != p {
            return Err(Error::ModulusMismatch(p, self.right_algebra.modulus()));
        }
        if self.left_action.len() != self.left_algebra.dim() {
            return Err(Error::dims(
                "left action matrices",
                self.left_algebra.dim(),
                self.left_action.len(),
            ));
        }
        if self.right_action.len() != self.right_algebra.dim() {
            return Err(Error::dims(
                "right action matrices",
                self.right_algebra.dim(),
                self.right_action.len(),
            ));
        }
        for m in self.left_action.iter().chain(&self.right_action) {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::dims("action matrix shape", self.dim, m.rows()));
            }
        }
        // left action is an algebra map on basis pairs
        let bdim = self.left_algebra.dim();
        for i in 0..bdim {
            for j in 0..bdim {
                let prod = self.left_algebra.mul(&vecs::unit(bdim, i), &vecs::unit(bdim, j));
                let lhs = self.left_action_of(&prod);
                let rhs = self.left_action[i].matmul(&self.left_action[j]);
                if lhs != rhs {
                    return Err(Error::axiom(format!(
                        "left action not multiplicative on basis pair ({i},{j})"
                    )));
                }
            }
        }
        // right action is an anti-map on basis pairs
        let adim = self.right_algebra.dim();
        for i in 0..adim {
            for j in 0..adim {
                let prod = self
                    .right_algebra
                    .mul(&vecs::unit(adim, i), &vecs::unit(adim, j));
                let lhs = self.right_action_of(&prod);
                let rhs = self.right_action[j].matmul(&self.right_action[i]);
                if lhs != rhs {
                    return Err(Error::axiom(format!(
                        "right action not anti-multiplicative on basis pair ({i},{j})"
                    )));
                }
            }
        }
        // actions commute
        for l in &self.left_action {
            for r in &self.right_action {
                if l.matmul(r) != r.matmul(l) {
                    return Err(Error::axiom("left and right actions do not commute"));
                }
            }
        }
        // declared units act as the identity
        if let Some(u) = self.left_algebra.unit() {
            if self.left_action_of(u) != Matrix::identity(self.dim, p) {
                return Err(Error::axiom("left unit does not act as identity"));
            }
        }
        if let Some(u) = self.right_algebra.unit() {
            if self.right_action_of(u) != Matrix::identity(self.dim, p) {
                return Err(Error::axiom("right unit does not act as identity"));
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u32 {
        self.left_algebra.modulus()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Algebra {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Algebra {
        &self.right_algebra
    }

    pub fn left_action_basis(&self, i: usize) -> &Matrix {
        &self.left_action[i]
    }

    pub fn right_action_basis(&self, i: usize) -> &Matrix {
        &self.right_action[i]
    }

    /// Action operator of an arbitrary element b of the left algebra.
    pub fn left_action_of(&self, b: &[u32]) -> Matrix {
        let p = self.modulus();
        let mut out = Matrix::zeros(self.dim, self.dim, p);
        for (i, &c) in b.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.left_action[i].scale(c));
            }
        }
        out
    }

    pub fn right_action_of(&self, a: &[u32]) -> Matrix {
        let p = self.modulus();
        let mut out = Matrix::zeros(self.dim, self.dim, p);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.right_action[i].scale(c));
            }
        }
        out
    }

    pub fn act_left(&self, b: &[u32], m: &[u32]) -> Vec<u32> {
        self.left_action_of(b).matvec(m)
    }

    pub fn act_right(&self, m: &[u32], a: &[u32]) -> Vec<u32> {
        self.right_action_of(a).matvec(m)
    }

    // ---- constructors ----

    /// A as an (A,A)-bimodule by multiplication.
    pub fn regular(a: &Algebra) -> Bimodule {
        let dim = a.dim();
        let left = (0..dim).map(|i| a.left_mult_basis(i).clone()).collect();
        let right = (0..dim).map(|i| a.right_mult_basis(i)).collect();
        let b = Bimodule {
            left_algebra: a.clone(),
            right_algebra: a.clone(),
            dim,
            left_action: left,
            right_action: right,
        };
        debug_assert!(b.validate().is_ok());
        b
    }

    /// 𝔽_p^dim as a (k,k)-bimodule with scalar actions.
    pub fn ground(dim: usize, modulus: u32) -> Bimodule {
        let k = Algebra::ground_field(modulus);
        let id = Matrix::identity(dim, modulus);
        Bimodule {
            left_algebra: k.clone(),
            right_algebra: k,
            dim,
            left_action: vec![id.clone()],
            right_action: vec![id],
        }
    }

    /// Reinterprets the carrier as a (k, right)-bimodule, forgetting the left
    /// structure (the k-action is scalar multiplication). This is the
    /// "B = ℤ" view used when a statement is about plain right modules.
    pub fn forget_left(&self) -> Bimodule {
        let k = Algebra::ground_field(self.modulus());
        Bimodule {
            left_algebra: k,
            right_algebra: self.right_algebra.clone(),
            dim: self.dim,
            left_action: vec![Matrix::identity(self.dim, self.modulus())],
            right_action: self.right_action.clone(),
        }
    }

    pub fn forget_right(&self) -> Bimodule {
        let k = Algebra::ground_field(self.modulus());
        Bimodule {
            left_algebra: self.left_algebra.clone(),
            right_algebra: k,
            dim: self.dim,
            left_action: self.left_action.clone(),
            right_action: vec![Matrix::identity(self.dim, self.modulus())],
        }
    }

    /// Both outer structures forgotten.
    pub fn forget_both(&self) -> Bimodule {
        self.forget_left().forget_right()
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.left_algebra != other.left_algebra || self.right_algebra != other.right_algebra {
            return Err(Error::invalid("direct sum of bimodules over different algebras"));
        }
        let left = self
            .left_action
            .iter()
            .zip(&other.left_action)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        let right = self
            .right_action
            .iter()
            .zip(&other.right_action)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Bimodule::new(
            self.left_algebra.clone(),
            self.right_algebra.clone(),
            self.dim + other.dim,
            left,
            right,
        )
    }

    /// Checks that a subspace is stable under both actions.
    pub fn is_invariant(&self, s: &Subspace) -> bool {
        let stable = |m: &Matrix| {
            (0..s.dim()).all(|i| s.contains(&m.matvec(&s.basis_vector(i))))
        };
        self.left_action.iter().all(&stable) && self.right_action.iter().all(&stable)
    }

    /// Restricts the bimodule structure to an invariant subspace; the result
    /// uses the subspace's canonical basis as coordinates.
    pub fn sub_bimodule(&self, s: &Subspace) -> Result<Bimodule> {
        if s.ambient_dim() != self.dim {
            return Err(Error::dims("subspace ambient", self.dim, s.ambient_dim()));
        }
        if !self.is_invariant(s) {
            return Err(Error::invalid("subspace is not action-invariant"));
        }
        let restrict = |m: &Matrix| -> Result<Matrix> {
            let mut out = Matrix::zeros(s.dim(), s.dim(), self.modulus());
            for j in 0..s.dim() {
                let img = m.matvec(&s.basis_vector(j));
                let coords = s
                    .coordinates_of(&img)
                    .ok_or_else(|| Error::invalid("image left the subspace"))?;
                out.set_col(j, &coords);
            }
            Ok(out)
        };
        let left = self
            .left_action
            .iter()
            .map(restrict)
            .collect::<Result<Vec<_>>>()?;
        let right = self
            .right_action
            .iter()
            .map(restrict)
            .collect::<Result<Vec<_>>>()?;
        Bimodule::new(
            self.left_algebra.clone(),
            self.right_algebra.clone(),
            s.dim(),
            left,
            right,
        )
    }
}

/// A morphism of bimodules, stored as a `target.dim × source.dim` matrix
/// commuting with both actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleMap {
    source: Bimodule,
    target: Bimodule,
    matrix: Matrix,
}

impl BimoduleMap {
    pub fn new(source: Bimodule, target: Bimodule, matrix: Matrix) -> Result<BimoduleMap> {
        let m = BimoduleMap {
            source,
            target,
            matrix,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds the map without checking equivariance (for intermediate
    /// composites whose equivariance is certified elsewhere).
    pub fn new_unchecked(source: Bimodule, target: Bimodule, matrix: Matrix) -> BimoduleMap {
        BimoduleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return Err(Error::dims(
                "morphism matrix shape",
                self.target.dim(),
                self.matrix.rows(),
            ));
        }
        if self.source.left_algebra() != self.target.left_algebra() {
            return Err(Error::invalid("source/target left algebras differ"));
        }
        if self.source.right_algebra() != self.target.right_algebra() {
            return Err(Error::invalid("source/target right algebras differ"));
        }
        for i in 0..self.source.left_algebra().dim() {
            let lhs = self.matrix.matmul(self.source.left_action_basis(i));
            let rhs = self.target.left_action_basis(i).matmul(&self.matrix);
            if lhs != rhs {
                return Err(Error::axiom(format!(
                    "map does not commute with left action of basis element {i}"
                )));
            }
        }
        for i in 0..self.source.right_algebra().dim() {
            let lhs = self.matrix.matmul(self.source.right_action_basis(i));
            let rhs = self.target.right_action_basis(i).matmul(&self.matrix);
            if lhs != rhs {
                return Err(Error::axiom(format!(
                    "map does not commute with right action of basis element {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(on: &Bimodule) -> BimoduleMap {
        BimoduleMap {
            source: on.clone(),
            target: on.clone(),
            matrix: Matrix::identity(on.dim(), on.modulus()),
        }
    }

    pub fn zero(source: &Bimodule, target: &Bimodule) -> BimoduleMap {
        BimoduleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.dim(), source.dim(), source.modulus()),
        }
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.matvec(v)
    }

    pub fn compose(&self, inner: &BimoduleMap) -> BimoduleMap {
        assert_eq!(
            inner.target.dim(),
            self.source.dim(),
            "composition dimension mismatch"
        );
        BimoduleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.matmul(&inner.matrix),
        }
    }

    pub fn add(&self, other: &BimoduleMap) -> BimoduleMap {
        BimoduleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &BimoduleMap) -> BimoduleMap {
        BimoduleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_bimodule_validates() {
        for a in [
            Algebra::ground_field(2),
            Algebra::matrix_algebra(2, 2),
            Algebra::row_algebra(3),
            Algebra::truncated_poly(3, 2),
        ] {
            let b = Bimodule::regular(&a);
            assert!(b.validate().is_ok());
        }
    }

    #[test]
    fn twisted_left_action_rejected() {
        // over k, a "left action" sending 1 ↦ 0 breaks the unit axiom
        let k = Algebra::ground_field(2);
        let bad = Bimodule::new(
            k.clone(),
            k.clone(),
            1,
            vec![Matrix::zeros(1, 1, 2)],
            vec![Matrix::identity(1, 2)],
        );
        assert!(matches!(bad, Err(Error::AxiomFailed(_))));
    }

    #[test]
    fn sub_bimodule_of_row_in_matrix_algebra() {
        let m2 = Algebra::matrix_algebra(2, 2);
        let reg = Bimodule::regular(&m2);
        // the first-row subspace span{e11, e12} is right-invariant but not
        // left-invariant, so restrict the right structure only
        let right_only = reg.forget_left();
        let row = Subspace::from_spanning_vectors(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], 4, 2);
        assert!(right_only.is_invariant(&row));
        let sub = right_only.sub_bimodule(&row).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(!reg.is_invariant(&row));
    }

    #[test]
    fn map_validation_catches_non_equivariance() {
        let kk = Algebra::product(&[&Algebra::ground_field(2), &Algebra::ground_field(2)]);
        let reg = Bimodule::regular(&kk);
        // the swap map does not commute with the k×k action
        let swap = Matrix::from_rows(&[vec![0, 1], vec![1, 0]], 2).unwrap();
        assert!(BimoduleMap::new(reg.clone(), reg.clone(), swap).is_err());
        // but the identity does
        assert!(BimoduleMap::new(reg.clone(), reg.clone(), Matrix::identity(2, 2)).is_ok());
    }

    #[test]
    fn direct_sum_dims() {
        let a = Algebra::ground_field(3);
        let b1 = Bimodule::regular(&a);
        let sum = b1.direct_sum(&b1).unwrap();
        assert_eq!(sum.dim(), 2);
        assert!(sum.validate().is_ok());
    }
}
