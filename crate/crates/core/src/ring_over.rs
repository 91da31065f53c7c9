//! B-rings: bimodules with an associative balanced multiplication, no unit
//! required, and modules over them.
//!
//! Multiplications and actions are cached as raw-space matrices (on the
//! Kronecker space, before the ⊗_B quotient); every law is checked there,
//! where surjectivity of the projection makes raw equality equivalent to
//! equality on the quotient.

use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::matrix::{vecs, Matrix};
use crate::solve;
use crate::tensor::TensorChain;

/// Itemized diagnostic for the B-ring axioms. `None` means the law holds,
/// `Some(msg)` names the violation.
#[derive(Debug, Clone, Default)]
pub struct RingReport {
    pub carrier_bimodule: Option<String>,
    pub mult_balanced: Option<String>,
    pub mult_bimodule_map: Option<String>,
    pub associative: Option<String>,
}

impl RingReport {
    pub fn ok(&self) -> bool {
        self.carrier_bimodule.is_none()
            && self.mult_balanced.is_none()
            && self.mult_bimodule_map.is_none()
            && self.associative.is_none()
    }

    pub fn failures(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(m) = &self.carrier_bimodule {
            out.push(("carrier bimodule axioms", m.clone()));
        }
        if let Some(m) = &self.mult_balanced {
            out.push(("multiplication balanced over base", m.clone()));
        }
        if let Some(m) = &self.mult_bimodule_map {
            out.push(("multiplication is a bimodule map", m.clone()));
        }
        if let Some(m) = &self.associative {
            out.push(("associativity", m.clone()));
        }
        out
    }
}

/// Checks the B-ring axioms for a candidate (base, carrier, raw mult),
/// where `mult_raw` is a dim(R)² → dim(R) matrix on the raw Kronecker space.
pub fn check_ring_over(base: &Algebra, carrier: &Bimodule, mult_raw: &Matrix) -> RingReport {
    let mut report = RingReport::default();
    if let Err(e) = carrier.validate() {
        report.carrier_bimodule = Some(e.to_string());
    }
    if carrier.left_algebra() != base || carrier.right_algebra() != base {
        report.carrier_bimodule = Some("carrier is not a (B,B)-bimodule over the base".into());
        return report;
    }
    let d = carrier.dim();
    let p = carrier.modulus();
    if mult_raw.rows() != d || mult_raw.cols() != d * d {
        report.mult_bimodule_map = Some(format!(
            "multiplication matrix has shape {}×{}, expected {}×{}",
            mult_raw.rows(),
            mult_raw.cols(),
            d,
            d * d
        ));
        return report;
    }

    // balancedness: (r·b)⊗r' − r⊗(b·r') ↦ 0
    'bal: for b in 0..base.dim() {
        let rb = carrier.right_action_basis(b);
        let lb = carrier.left_action_basis(b);
        for i in 0..d {
            for j in 0..d {
                let gen = vecs::sub(
                    &vecs::kron(&rb.col(i), &vecs::unit(d, j), p),
                    &vecs::kron(&vecs::unit(d, i), &lb.col(j), p),
                    p,
                );
                if !vecs::is_zero(&mult_raw.matvec(&gen)) {
                    report.mult_balanced = Some(format!(
                        "balanced relation (e_{i}·b_{b})⊗e_{j} − e_{i}⊗(b_{b}·e_{j}) not killed"
                    ));
                    break 'bal;
                }
            }
        }
    }

    // outer bilinearity: μ∘(L_b⊗I) = L_b∘μ and μ∘(I⊗R_b) = R_b∘μ
    let eye = Matrix::identity(d, p);
    for b in 0..base.dim() {
        let lb = carrier.left_action_basis(b);
        let rb = carrier.right_action_basis(b);
        if mult_raw.matmul(&lb.kron(&eye)) != lb.matmul(mult_raw) {
            report.mult_bimodule_map =
                Some(format!("multiplication not left B-linear at basis element {b}"));
            break;
        }
        if mult_raw.matmul(&eye.kron(rb)) != rb.matmul(mult_raw) {
            report.mult_bimodule_map =
                Some(format!("multiplication not right B-linear at basis element {b}"));
            break;
        }
    }

    // associativity on the raw triple space
    let lhs = mult_raw.matmul(&mult_raw.kron(&eye));
    let rhs = mult_raw.matmul(&eye.kron(mult_raw));
    if lhs != rhs {
        report.associative = Some("μ∘(μ⊗R) ≠ μ∘(R⊗μ)".into());
    }
    report
}

/// A B-ring: carrier (B,B)-bimodule R with an associative multiplication
/// μ: R⊗_B R → R. No unit is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingOver {
    base: Algebra,
    carrier: Bimodule,
    tensor_rr: TensorChain,
    mult: BimoduleMap,
    mult_raw: Matrix,
}

impl RingOver {
    /// Builds and validates a B-ring from a raw multiplication matrix
    /// (dim R² → dim R on the Kronecker space).
    pub fn from_raw_mult(base: Algebra, carrier: Bimodule, mult_raw: Matrix) -> Result<RingOver> {
        let report = check_ring_over(&base, &carrier, &mult_raw);
        if let Some((law, msg)) = report.failures().into_iter().next() {
            return Err(Error::axiom(format!("{law}: {msg}")));
        }
        let tensor_rr = TensorChain::pair(&carrier, &carrier, &base)?;
        let mult_matrix = mult_raw.matmul(tensor_rr.sigma());
        let mult = BimoduleMap::new(tensor_rr.carrier().clone(), carrier.clone(), mult_matrix)?;
        Ok(RingOver {
            base,
            carrier,
            tensor_rr,
            mult,
            mult_raw,
        })
    }

    /// An algebra viewed as a ring over the ground field.
    pub fn from_algebra(a: &Algebra) -> RingOver {
        let p = a.modulus();
        let d = a.dim();
        let carrier = Bimodule::ground(d, p);
        let mut raw = Matrix::zeros(d, d * d, p);
        for i in 0..d {
            for j in 0..d {
                let prod = a.mul(&vecs::unit(d, i), &vecs::unit(d, j));
                raw.set_col(i * d + j, &prod);
            }
        }
        RingOver::from_raw_mult(Algebra::ground_field(p), carrier, raw)
            .expect("algebra multiplication is a valid ring structure")
    }

    /// An algebra as a ring over itself (carrier = regular bimodule).
    pub fn from_algebra_over_self(a: &Algebra) -> RingOver {
        let d = a.dim();
        let p = a.modulus();
        let carrier = Bimodule::regular(a);
        let mut raw = Matrix::zeros(d, d * d, p);
        for i in 0..d {
            for j in 0..d {
                let prod = a.mul(&vecs::unit(d, i), &vecs::unit(d, j));
                raw.set_col(i * d + j, &prod);
            }
        }
        RingOver::from_raw_mult(a.clone(), carrier, raw)
            .expect("regular multiplication is a valid ring structure")
    }

    /// Reinterprets the ring over the ground field, dropping centrality
    /// constraints (the ℤ-ring view of the paper's statements).
    pub fn as_ground_ring(&self) -> RingOver {
        let carrier = self.carrier.forget_both();
        RingOver::from_raw_mult(
            Algebra::ground_field(self.modulus()),
            carrier,
            self.mult_raw.clone(),
        )
        .expect("forgetting the base preserves the ring axioms")
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn tensor_rr(&self) -> &TensorChain {
        &self.tensor_rr
    }

    pub fn mult(&self) -> &BimoduleMap {
        &self.mult
    }

    /// The multiplication on the raw Kronecker space.
    pub fn mult_raw(&self) -> &Matrix {
        &self.mult_raw
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn modulus(&self) -> u32 {
        self.carrier.modulus()
    }

    pub fn mul_elements(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.mult_raw.matvec(&vecs::kron(x, y, self.modulus()))
    }

    /// Centrality constraints for R^B = {r | b·r = r·b for all b}: the
    /// subspace of the carrier commuting with the base action.
    pub fn centralizer_constraints(&self) -> Matrix {
        let d = self.dim();
        let p = self.modulus();
        let mut rows = Matrix::zeros(0, d, p);
        for b in 0..self.base.dim() {
            let diff = self
                .carrier
                .left_action_basis(b)
                .sub(self.carrier.right_action_basis(b));
            rows = rows.vstack(&diff);
        }
        rows
    }

    pub fn is_central(&self, r: &[u32]) -> bool {
        vecs::is_zero(&self.centralizer_constraints().matvec(r))
    }

    /// Searches for a two-sided unit by a linear solve.
    pub fn find_unit(&self) -> Option<Vec<u32>> {
        let d = self.dim();
        let p = self.modulus();
        if d == 0 {
            return None;
        }
        // unknown e: e·r_k = r_k and r_k·e = r_k for every basis r_k
        let mut blocks = Vec::new();
        for k in 0..d {
            let mut left = Matrix::zeros(d, d, p);
            let mut right = Matrix::zeros(d, d, p);
            for i in 0..d {
                left.set_col(i, &self.mul_elements(&vecs::unit(d, i), &vecs::unit(d, k)));
                right.set_col(i, &self.mul_elements(&vecs::unit(d, k), &vecs::unit(d, i)));
            }
            blocks.push((left, vecs::unit(d, k)));
            blocks.push((right, vecs::unit(d, k)));
        }
        solve::solve_stacked(&blocks).map(|s| s.particular().to_vec())
    }

    pub fn report(&self) -> RingReport {
        check_ring_over(&self.base, &self.carrier, &self.mult_raw)
    }
}

/// Itemized diagnostic for module axioms over a B-ring.
#[derive(Debug, Clone, Default)]
pub struct ModuleReport {
    pub carrier_bimodule: Option<String>,
    pub action_balanced: Option<String>,
    pub action_linear: Option<String>,
    pub associative: Option<String>,
    pub bimodule_compatible: Option<String>,
}

impl ModuleReport {
    pub fn ok(&self) -> bool {
        self.carrier_bimodule.is_none()
            && self.action_balanced.is_none()
            && self.action_linear.is_none()
            && self.associative.is_none()
            && self.bimodule_compatible.is_none()
    }
}

/// A module over a B-ring, with a right action M⊗_B R → M, a left action
/// R⊗_B M → M, or both. Actions are stored on the raw Kronecker space.
#[derive(Debug, Clone)]
pub struct ModuleOver {
    ring: RingOver,
    carrier: Bimodule,
    right_action_raw: Option<Matrix>, // dim(M)·dim(R) → dim(M)
    left_action_raw: Option<Matrix>,  // dim(R)·dim(M) → dim(M)
}

impl ModuleOver {
    pub fn new(
        ring: RingOver,
        carrier: Bimodule,
        right_action_raw: Option<Matrix>,
        left_action_raw: Option<Matrix>,
    ) -> Result<ModuleOver> {
        let m = ModuleOver {
            ring,
            carrier,
            right_action_raw,
            left_action_raw,
        };
        let report = m.report();
        if !report.ok() {
            let msg = [
                report.carrier_bimodule,
                report.action_balanced,
                report.action_linear,
                report.associative,
                report.bimodule_compatible,
            ]
            .into_iter()
            .flatten()
            .next()
            .unwrap_or_default();
            return Err(Error::axiom(msg));
        }
        Ok(m)
    }

    /// R acting on itself on the right.
    pub fn regular_right(ring: &RingOver) -> ModuleOver {
        ModuleOver {
            ring: ring.clone(),
            carrier: ring.carrier().clone(),
            right_action_raw: Some(ring.mult_raw().clone()),
            left_action_raw: None,
        }
    }

    /// R acting on itself on the left.
    pub fn regular_left(ring: &RingOver) -> ModuleOver {
        ModuleOver {
            ring: ring.clone(),
            carrier: ring.carrier().clone(),
            right_action_raw: None,
            left_action_raw: Some(ring.mult_raw().clone()),
        }
    }

    /// R acting on itself on both sides.
    pub fn regular_bimodule(ring: &RingOver) -> ModuleOver {
        ModuleOver {
            ring: ring.clone(),
            carrier: ring.carrier().clone(),
            right_action_raw: Some(ring.mult_raw().clone()),
            left_action_raw: Some(ring.mult_raw().clone()),
        }
    }

    pub fn ring(&self) -> &RingOver {
        &self.ring
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn modulus(&self) -> u32 {
        self.carrier.modulus()
    }

    pub fn right_action_raw(&self) -> Option<&Matrix> {
        self.right_action_raw.as_ref()
    }

    pub fn left_action_raw(&self) -> Option<&Matrix> {
        self.left_action_raw.as_ref()
    }

    pub fn act_right(&self, m: &[u32], r: &[u32]) -> Vec<u32> {
        let act = self.right_action_raw.as_ref().expect("no right action");
        act.matvec(&vecs::kron(m, r, self.modulus()))
    }

    pub fn act_left(&self, r: &[u32], m: &[u32]) -> Vec<u32> {
        let act = self.left_action_raw.as_ref().expect("no left action");
        act.matvec(&vecs::kron(r, m, self.modulus()))
    }

    pub fn report(&self) -> ModuleReport {
        let mut report = ModuleReport::default();
        if let Err(e) = self.carrier.validate() {
            report.carrier_bimodule = Some(e.to_string());
        }
        let p = self.modulus();
        let dm = self.dim();
        let dr = self.ring.dim();
        let base = self.ring.base();
        let eye_m = Matrix::identity(dm, p);
        let eye_r = Matrix::identity(dr, p);

        if let Some(act) = &self.right_action_raw {
            if act.rows() != dm || act.cols() != dm * dr {
                report.action_linear = Some("right action matrix shape".into());
                return report;
            }
            // balanced over B: (m·b)⊗r − m⊗(b·r) ↦ 0; needs M right-B
            if self.carrier.right_algebra() == base {
                for b in 0..base.dim() {
                    let mb = self.carrier.right_action_basis(b);
                    let br = self.ring.carrier().left_action_basis(b);
                    let lhs = act.matmul(&mb.kron(&eye_r));
                    let rhs = act.matmul(&eye_m.kron(br));
                    if lhs != rhs {
                        report.action_balanced =
                            Some(format!("right action unbalanced at base element {b}"));
                        break;
                    }
                }
                // right B-linearity: ν(m⊗(r·b)) = ν(m⊗r)·b
                for b in 0..base.dim() {
                    let rb = self.ring.carrier().right_action_basis(b);
                    let mb = self.carrier.right_action_basis(b);
                    if act.matmul(&eye_m.kron(rb)) != mb.matmul(act) {
                        report.action_linear =
                            Some(format!("right action not B-linear at base element {b}"));
                        break;
                    }
                }
            } else {
                report.action_balanced =
                    Some("carrier is not a right module over the base algebra".into());
            }
            // associativity: ν∘(ν⊗R) = ν∘(M⊗μ)
            let lhs = act.matmul(&act.kron(&eye_r));
            let rhs = act.matmul(&eye_m.kron(self.ring.mult_raw()));
            if lhs != rhs {
                report.associative = Some("right action not associative over the ring".into());
            }
        }

        if let Some(act) = &self.left_action_raw {
            if act.rows() != dm || act.cols() != dm * dr {
                report.action_linear = Some("left action matrix shape".into());
                return report;
            }
            if self.carrier.left_algebra() == base {
                for b in 0..base.dim() {
                    let rb = self.ring.carrier().right_action_basis(b);
                    let bm = self.carrier.left_action_basis(b);
                    let lhs = act.matmul(&rb.kron(&eye_m));
                    let rhs = act.matmul(&eye_r.kron(bm));
                    if lhs != rhs {
                        report.action_balanced =
                            Some(format!("left action unbalanced at base element {b}"));
                        break;
                    }
                }
                for b in 0..base.dim() {
                    let br = self.ring.carrier().left_action_basis(b);
                    let bm = self.carrier.left_action_basis(b);
                    if act.matmul(&br.kron(&eye_m)) != bm.matmul(act) {
                        report.action_linear =
                            Some(format!("left action not B-linear at base element {b}"));
                        break;
                    }
                }
            } else {
                report.action_balanced =
                    Some("carrier is not a left module over the base algebra".into());
            }
            // associativity: λ∘(μ⊗M) = λ∘(R⊗λ)
            let lhs = act.matmul(&self.ring.mult_raw().kron(&eye_m));
            let rhs = act.matmul(&eye_r.kron(act));
            if lhs != rhs {
                report.associative = Some("left action not associative over the ring".into());
            }
        }

        if let (Some(right), Some(left)) = (&self.right_action_raw, &self.left_action_raw) {
            // (r·m)·r' = r·(m·r')
            let lhs = right.matmul(&left.kron(&eye_r));
            let rhs = left.matmul(&eye_r.kron(right));
            if lhs != rhs {
                report.bimodule_compatible = Some("left and right ring actions clash".into());
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_algebra_as_ring() {
        let r = RingOver::from_algebra(&Algebra::matrix_algebra(2, 2));
        assert!(r.report().ok());
        assert_eq!(r.find_unit(), Some(vec![1, 0, 0, 1]));
    }

    #[test]
    fn nilpotent_line_ring_passes_and_has_no_unit() {
        let r = RingOver::from_algebra(&Algebra::nilpotent_line(2));
        assert!(r.report().ok());
        assert!(r.find_unit().is_none());
        assert_eq!(r.mul_elements(&[1], &[1]), vec![0]);
    }

    #[test]
    fn twisted_action_flagged_by_name() {
        // dim-1 carrier with x·x = x but a zero left action of k (violating
        // the unital-action law): the checker names the bimodule axiom.
        let k = Algebra::ground_field(2);
        let carrier = crate::bimodule::Bimodule::new_unchecked(
            k.clone(),
            k.clone(),
            1,
            vec![Matrix::zeros(1, 1, 2)],
            vec![Matrix::identity(1, 2)],
        );
        let raw = Matrix::from_rows(&[vec![1]], 2).unwrap();
        let report = check_ring_over(&k, &carrier, &raw);
        assert!(!report.ok());
        assert!(report.carrier_bimodule.is_some());
        assert!(report.associative.is_none());
    }

    #[test]
    fn regular_modules_validate() {
        for a in [
            Algebra::matrix_algebra(2, 2),
            Algebra::row_algebra(2),
            Algebra::truncated_poly(2, 3),
        ] {
            let r = RingOver::from_algebra_over_self(&a);
            assert!(ModuleOver::regular_right(&r).report().ok());
            assert!(ModuleOver::regular_left(&r).report().ok());
            assert!(ModuleOver::regular_bimodule(&r).report().ok());
        }
    }

    #[test]
    fn centralizer_over_self() {
        let a = Algebra::matrix_algebra(2, 2);
        let r = RingOver::from_algebra_over_self(&a);
        // center of M2 is the scalars
        assert!(r.is_central(&[1, 0, 0, 1]));
        assert!(!r.is_central(&[1, 0, 0, 0]));
        // over the ground field everything is central
        let rg = r.as_ground_ring();
        assert!(rg.is_central(&[1, 0, 0, 0]));
    }
}
