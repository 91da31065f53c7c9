//! Hom-spaces of module maps into the base algebra: the duals M* = Hom_A(M,A)
//! and *M = _AHom(M,A), materialized with explicit functional bases.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::solve::kernel;
use crate::subspace::Subspace;

/// Which linearity the functionals respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualSide {
    /// Hom_A(M, A): right A-linear functionals on a (B,A)-bimodule; the
    /// result is an (A,B)-bimodule via (a·f·b)(m) = a·f(b·m).
    Right,
    /// _AHom(M, A): left A-linear functionals on an (A,B)-bimodule; the
    /// result is a (B,A)-bimodule via (b·f·a)(m) = f(m·b)·a.
    Left,
}

/// A dual module: the carrier bimodule together with the functional each
/// basis coordinate denotes (a dim(A) × dim(M) matrix).
#[derive(Debug, Clone)]
pub struct DualModule {
    side: DualSide,
    source: Bimodule,
    algebra: Algebra,
    module: Bimodule,
    functionals: Vec<Matrix>,
    space: Subspace, // flattened functional matrices, for coordinates_of
}

impl DualModule {
    pub fn side(&self) -> DualSide {
        self.side
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// The dual as a bimodule ((A,B) for `Right`, (B,A) for `Left`).
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn functional(&self, i: usize) -> &Matrix {
        &self.functionals[i]
    }

    /// The functional matrix of an element given in dual coordinates.
    pub fn functional_of(&self, coords: &[u32]) -> Matrix {
        assert_eq!(coords.len(), self.dim());
        let p = self.module.modulus();
        let mut out = Matrix::zeros(self.algebra.dim(), self.source.dim(), p);
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.functionals[i].scale(c));
            }
        }
        out
    }

    /// Evaluates an element of the dual on an element of M.
    pub fn eval(&self, coords: &[u32], m: &[u32]) -> Vec<u32> {
        self.functional_of(coords).matvec(m)
    }

    /// Coordinates of a functional matrix, if it lies in the dual.
    pub fn coordinates_of(&self, f: &Matrix) -> Option<Vec<u32>> {
        self.space.coordinates_of(&f.flatten())
    }
}

/// Hom_A(M, A) for a (B,A)-bimodule M over a unital A, as an (A,B)-bimodule.
///
/// Functionals are dim(A) × dim(M) matrices F with F∘R^M_a = R^A_a∘F; the
/// solution space is computed as one kernel. Actions follow
/// (a·f·b)(m) = a·f(b·m).
pub fn hom_right(m: &Bimodule, a: &Algebra) -> Result<DualModule> {
    if m.right_algebra() != a {
        return Err(Error::invalid("module is not a right module over the given algebra"));
    }
    if !a.is_unital() {
        return Err(Error::invalid("hom_right requires a unital algebra"));
    }
    let constraints = |x: usize| {
        // row block expressing F∘R^M_{e_x} − R^A_{e_x}∘F = 0 in flat coords
        let r_m = m.right_action_basis(x).clone();
        let r_a = Bimodule::regular(a).right_action_basis(x).clone();
        (r_m, r_a)
    };
    build_dual(m, a, DualSide::Right, constraints)
}

/// _AHom(M, A) for an (A,B)-bimodule M over a unital A, as a (B,A)-bimodule.
pub fn hom_left(m: &Bimodule, a: &Algebra) -> Result<DualModule> {
    if m.left_algebra() != a {
        return Err(Error::invalid("module is not a left module over the given algebra"));
    }
    if !a.is_unital() {
        return Err(Error::invalid("hom_left requires a unital algebra"));
    }
    let constraints = |x: usize| {
        let l_m = m.left_action_basis(x).clone();
        let l_a = Bimodule::regular(a).left_action_basis(x).clone();
        (l_m, l_a)
    };
    build_dual(m, a, DualSide::Left, constraints)
}

fn build_dual(
    m: &Bimodule,
    a: &Algebra,
    side: DualSide,
    constraints: impl Fn(usize) -> (Matrix, Matrix),
) -> Result<DualModule> {
    let p = m.modulus();
    let da = a.dim();
    let dm = m.dim();
    let flat = da * dm;

    // Linear constraints on the flattened functional matrix: for each basis
    // element x of A, F∘Act_x = Mult_x∘F. Flattening is row-major, so
    // F ↦ F·X is (I ⊗ Xᵀ) and F ↦ Y·F is (Y ⊗ I) on flat coordinates.
    let mut rows = Matrix::zeros(0, flat, p);
    for x in 0..da {
        let (on_m, on_a) = constraints(x);
        let lhs = Matrix::identity(da, p).kron(&on_m.transpose());
        let rhs = on_a.kron(&Matrix::identity(dm, p));
        rows = rows.vstack(&lhs.sub(&rhs));
    }
    let space = kernel(&rows);
    let dim = space.dim();
    let functionals: Vec<Matrix> = (0..dim)
        .map(|i| Matrix::from_flat(da, dm, p, &space.basis_vector(i)))
        .collect();

    // Action of the dual bimodule, expressed in the kernel basis.
    let reg = Bimodule::regular(a);
    let act = |i: usize, f: &Matrix, left: bool| -> Result<Vec<u32>> {
        let img = match (side, left) {
            // Right dual: (a·f)(m) = a·f(m); (f·b)(m) = f(b·m)
            (DualSide::Right, true) => reg.left_action_basis(i).matmul(f),
            (DualSide::Right, false) => f.matmul(m.left_action_basis(i)),
            // Left dual: (b·f)(m) = f(m·b); (f·a)(m) = f(m)·a
            (DualSide::Left, true) => f.matmul(m.right_action_basis(i)),
            (DualSide::Left, false) => reg.right_action_basis(i).matmul(f),
        };
        space
            .coordinates_of(&img.flatten())
            .ok_or_else(|| Error::axiom("dual action left the functional space"))
    };

    let (left_alg, right_alg) = match side {
        DualSide::Right => (a.clone(), m.left_algebra().clone()),
        DualSide::Left => (m.right_algebra().clone(), a.clone()),
    };
    let mut left_action = Vec::with_capacity(left_alg.dim());
    for i in 0..left_alg.dim() {
        let mut mat = Matrix::zeros(dim, dim, p);
        for j in 0..dim {
            mat.set_col(j, &act(i, &functionals[j], true)?);
        }
        left_action.push(mat);
    }
    let mut right_action = Vec::with_capacity(right_alg.dim());
    for i in 0..right_alg.dim() {
        let mut mat = Matrix::zeros(dim, dim, p);
        for j in 0..dim {
            mat.set_col(j, &act(i, &functionals[j], false)?);
        }
        right_action.push(mat);
    }

    let module = Bimodule::new(left_alg, right_alg, dim, left_action, right_action)?;
    Ok(DualModule {
        side,
        source: m.clone(),
        algebra: a.clone(),
        module,
        functionals,
        space,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vecs;

    #[test]
    fn dual_of_ground_field() {
        let k = Algebra::ground_field(2);
        let m = Bimodule::regular(&k);
        let d = hom_right(&m, &k).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.eval(&[1], &[1]), vec![1]);
    }

    #[test]
    fn dual_of_plane_over_k() {
        let k = Algebra::ground_field(2);
        let m = Bimodule::ground(2, 2);
        let d = hom_right(&m, &k).unwrap();
        assert_eq!(d.dim(), 2);
    }

    #[test]
    fn dual_of_row_module_over_matrix_algebra() {
        // M = e11·M2(F_2) as a right M2-module: dim(M*) = 2.
        let m2 = Algebra::matrix_algebra(2, 2);
        let reg = Bimodule::regular(&m2).forget_left();
        let row = Subspace::from_spanning_vectors(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], 4, 2);
        let m = reg.sub_bimodule(&row).unwrap();
        let d = hom_right(&m, &m2).unwrap();
        assert_eq!(d.dim(), 2);
        // the dual is an (A, k)-bimodule
        assert_eq!(d.module().left_algebra(), &m2);
    }

    #[test]
    fn functionals_are_right_linear() {
        let m2 = Algebra::matrix_algebra(2, 2);
        let m = Bimodule::regular(&m2);
        let d = hom_right(&m, &m2).unwrap();
        assert_eq!(d.dim(), 4);
        for i in 0..d.dim() {
            let f = d.functional(i);
            for x in 0..4 {
                for v in 0..4 {
                    let mv = m.act_right(&vecs::unit(4, v), &vecs::unit(4, x));
                    let lhs = f.matvec(&mv);
                    let rhs = m2.mul(&f.matvec(&vecs::unit(4, v)), &vecs::unit(4, x));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn left_dual_of_column_module() {
        // *M for M = M2 regular as a left module: dim 4.
        let m2 = Algebra::matrix_algebra(2, 3);
        let m = Bimodule::regular(&m2);
        let d = hom_left(&m, &m2).unwrap();
        assert_eq!(d.dim(), 4);
        assert_eq!(d.module().right_algebra(), &m2);
    }
}
