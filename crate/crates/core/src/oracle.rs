//! Brute-force oracles: exhaustive enumerations that certify the linear
//! searches from first principles. They evaluate the defining predicates
//! directly (matrix-vector products and elementwise comparison) and never
//! call `rref`, `kernel` or `solve_affine`, so agreement with the solver
//! path is a genuine cross-check.

use crate::matrix::{vecs, Matrix};
use crate::ring_over::ModuleOver;

/// The side a (local) unit is required to act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// All solutions of m·v = 0, found by scanning 𝔽_p^cols.
pub fn kernel_members(m: &Matrix) -> Vec<Vec<u32>> {
    vecs::enumerate(m.cols(), m.modulus())
        .filter(|v| vecs::is_zero(&m.matvec(v)))
        .collect()
}

/// All solutions of a·x = b, found by scanning 𝔽_p^cols.
pub fn solution_members(a: &Matrix, b: &[u32]) -> Vec<Vec<u32>> {
    vecs::enumerate(a.cols(), a.modulus())
        .filter(|v| a.matvec(v) == b)
        .collect()
}

/// Whether `e` acts as a unit on every vector of `f` on the requested side.
pub fn is_unit_on(module: &ModuleOver, e: &[u32], f: &[Vec<u32>], side: Side) -> bool {
    f.iter().all(|v| match side {
        Side::Right => module.act_right(v, e) == *v,
        Side::Left => module.act_left(e, v) == *v,
        Side::TwoSided => module.act_right(v, e) == *v && module.act_left(e, v) == *v,
    })
}

/// All central (idempotent, if requested) local units on `f`, by scanning
/// the whole ring. Centrality is evaluated against the base action
/// directly: b·e = e·b for every basis b of B.
pub fn local_units_by_enumeration(
    module: &ModuleOver,
    f: &[Vec<u32>],
    side: Side,
    idempotent: bool,
) -> Vec<Vec<u32>> {
    let ring = module.ring();
    let carrier = ring.carrier();
    let bdim = ring.base().dim();
    vecs::enumerate(ring.dim(), ring.modulus())
        .filter(|e| {
            (0..bdim).all(|b| {
                let eb = vecs::unit(bdim, b);
                carrier.act_left(&eb, e) == carrier.act_right(e, &eb)
            })
        })
        .filter(|e| !idempotent || ring.mul_elements(e, e) == *e)
        .filter(|e| is_unit_on(module, e, f, side))
        .collect()
}

/// The s-unital test of a single element: r, r' with r·u = u = u·r',
/// found by scanning R × R.
pub fn s_unital_witnesses(module: &ModuleOver, u: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let ring = module.ring();
    let left = vecs::enumerate(ring.dim(), ring.modulus())
        .find(|r| module.act_left(r, u) == *u)?;
    let right = vecs::enumerate(ring.dim(), ring.modulus())
        .find(|r| module.act_right(u, r) == *u)?;
    Some((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::ring_over::RingOver;

    #[test]
    fn kernel_members_matches_definition() {
        let m = Matrix::from_rows(&[vec![1, 1]], 2).unwrap();
        let members = kernel_members(&m);
        assert_eq!(members, vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn unit_scan_on_row_algebra() {
        let r = RingOver::from_algebra(&Algebra::row_algebra(2));
        let m = ModuleOver::regular_bimodule(&r);
        let basis = vec![vec![1, 0], vec![0, 1]];
        let left_units = local_units_by_enumeration(&m, &basis, Side::Left, false);
        // [[1,b],[0,0]] is a left unit for any b
        assert_eq!(left_units, vec![vec![1, 0], vec![1, 1]]);
        let right_units = local_units_by_enumeration(&m, &basis, Side::Right, false);
        assert!(right_units.is_empty());
    }
}
