//! Corings (coassociative comultiplication, counit optional), comodules,
//! the dual convolution ring, the cotensor product, and the two concrete
//! constructions: comatrix corings and the Dorroh counit adjunction.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::dual_pairs::DualBasisCertificate;
use crate::error::{Error, Result};
use crate::hom::{hom_left, hom_right, DualModule};
use crate::matrix::{vecs, Matrix};
use crate::ring_over::{check_ring_over, ModuleOver, RingOver, RingReport};
use crate::solve;
use crate::subspace::Subspace;
use crate::tensor::TensorChain;

/// An A-bimodule with a comultiplication Δ: C → C⊗_A C and an optional
/// ε: C → A. Shapes are validated at construction; the coring laws are
/// checked by [`check_coring`], so deliberately lawless candidates can be
/// assembled and diagnosed.
#[derive(Debug, Clone)]
pub struct PreCoring {
    algebra: Algebra,
    carrier: Bimodule,
    t_cc: TensorChain,
    t_ccc: TensorChain,
    delta: Matrix,           // dim(C⊗C) × dim C
    epsilon: Option<Matrix>, // dim A × dim C
}

impl PreCoring {
    pub fn new(
        algebra: Algebra,
        carrier: Bimodule,
        delta: Matrix,
        epsilon: Option<Matrix>,
    ) -> Result<PreCoring> {
        if carrier.left_algebra() != &algebra || carrier.right_algebra() != &algebra {
            return Err(Error::invalid("coring carrier is not an A-bimodule"));
        }
        let t_cc = TensorChain::pair(&carrier, &carrier, &algebra)?;
        let t_ccc = TensorChain::new(&[&carrier, &carrier, &carrier], &[&algebra, &algebra])?;
        if delta.rows() != t_cc.dim() || delta.cols() != carrier.dim() {
            return Err(Error::dims("comultiplication matrix", t_cc.dim(), delta.rows()));
        }
        if let Some(e) = &epsilon {
            if e.rows() != algebra.dim() || e.cols() != carrier.dim() {
                return Err(Error::dims("counit matrix", algebra.dim(), e.rows()));
            }
        }
        Ok(PreCoring {
            algebra,
            carrier,
            t_cc,
            t_ccc,
            delta,
            epsilon,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
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

    pub fn tensor_cc(&self) -> &TensorChain {
        &self.t_cc
    }

    pub fn tensor_ccc(&self) -> &TensorChain {
        &self.t_ccc
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn epsilon(&self) -> Option<&Matrix> {
        self.epsilon.as_ref()
    }

    pub fn with_epsilon(mut self, epsilon: Option<Matrix>) -> Result<PreCoring> {
        if let Some(e) = &epsilon {
            if e.rows() != self.algebra.dim() || e.cols() != self.carrier.dim() {
                return Err(Error::dims("counit matrix", self.algebra.dim(), e.rows()));
            }
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: Matrix) -> Result<PreCoring> {
        if delta.rows() != self.t_cc.dim() || delta.cols() != self.carrier.dim() {
            return Err(Error::dims("comultiplication matrix", self.t_cc.dim(), delta.rows()));
        }
        self.delta = delta;
        Ok(self)
    }

    /// Contraction C⊗C → C, c⊗c' ↦ c·f(c'), on the raw Kronecker space.
    pub fn contract_right(&self, f: &Matrix) -> Matrix {
        let d = self.dim();
        let p = self.modulus();
        let mut out = Matrix::zeros(d, d * d, p);
        for i in 0..d {
            for j in 0..d {
                let alpha = f.col(j);
                out.set_col(i * d + j, &self.carrier.act_right(&vecs::unit(d, i), &alpha));
            }
        }
        out
    }

    /// Contraction C⊗C → C, c⊗c' ↦ f(c)·c', on the raw Kronecker space.
    pub fn contract_left(&self, f: &Matrix) -> Matrix {
        let d = self.dim();
        let p = self.modulus();
        let mut out = Matrix::zeros(d, d * d, p);
        for i in 0..d {
            for j in 0..d {
                let alpha = f.col(i);
                out.set_col(i * d + j, &self.carrier.act_left(&alpha, &vecs::unit(d, j)));
            }
        }
        out
    }

    /// (C⊗ε')∘Δ' for the given delta and counit-like map.
    pub fn psi_right_of(&self, delta: &Matrix, eps: &Matrix) -> Matrix {
        self.contract_right(eps)
            .matmul(self.t_cc.sigma())
            .matmul(delta)
    }

    /// (ε'⊗C)∘Δ'.
    pub fn psi_left_of(&self, delta: &Matrix, eps: &Matrix) -> Matrix {
        self.contract_left(eps)
            .matmul(self.t_cc.sigma())
            .matmul(delta)
    }

    /// (Δ'⊗C)∘Δ as a map C → C⊗C⊗C; both deltas are quotient-level.
    pub fn left_expand(&self, outer: &Matrix, inner: &Matrix) -> Matrix {
        let d = self.dim();
        let p = self.modulus();
        let raw_outer = self.t_cc.sigma().matmul(outer); // C → raw C⊗C
        let step = raw_outer.kron(&Matrix::identity(d, p)); // raw C⊗C → raw C⊗C⊗C on first slot
        self.t_ccc
            .pi()
            .matmul(&step)
            .matmul(self.t_cc.sigma())
            .matmul(inner)
    }

    /// (C⊗Δ')∘Δ as a map C → C⊗C⊗C.
    pub fn right_expand(&self, outer: &Matrix, inner: &Matrix) -> Matrix {
        let d = self.dim();
        let p = self.modulus();
        let raw_outer = self.t_cc.sigma().matmul(outer);
        let step = Matrix::identity(d, p).kron(&raw_outer);
        self.t_ccc
            .pi()
            .matmul(&step)
            .matmul(self.t_cc.sigma())
            .matmul(inner)
    }

    pub fn is_coassociative(&self, delta: &Matrix) -> bool {
        self.left_expand(delta, delta) == self.right_expand(delta, delta)
    }

    /// Whether a map C → C⊗C commutes with both A-actions.
    pub fn is_bimodule_map_to_cc(&self, delta: &Matrix) -> bool {
        let t = self.t_cc.carrier();
        (0..self.algebra.dim()).all(|x| {
            delta.matmul(self.carrier.left_action_basis(x))
                == t.left_action_basis(x).matmul(delta)
                && delta.matmul(self.carrier.right_action_basis(x))
                    == t.right_action_basis(x).matmul(delta)
        })
    }

    pub fn is_bimodule_map_to_a(&self, eps: &Matrix) -> bool {
        let reg = Bimodule::regular(&self.algebra);
        (0..self.algebra.dim()).all(|x| {
            eps.matmul(self.carrier.left_action_basis(x))
                == reg.left_action_basis(x).matmul(eps)
                && eps.matmul(self.carrier.right_action_basis(x))
                    == reg.right_action_basis(x).matmul(eps)
        })
    }

    /// Solves the linear system for a counit of Δ (bimodule map with both
    /// counit laws). Returns the lexicographically smallest one, if any.
    pub fn find_counit(&self) -> Option<Matrix> {
        let d = self.dim();
        let da = self.algebra.dim();
        let p = self.modulus();
        let unknowns = da * d;
        let eye_d = Matrix::identity(d, p);
        let eye_a = Matrix::identity(da, p);
        let reg = Bimodule::regular(&self.algebra);
        let mut blocks: Vec<(Matrix, Vec<u32>)> = Vec::new();
        // bimodule map: ε∘L_x − L^A_x∘ε = 0 and the right version
        for x in 0..da {
            let lhs = eye_a.kron(&self.carrier.left_action_basis(x).transpose());
            let rhs = reg.left_action_basis(x).kron(&eye_d);
            blocks.push((lhs.sub(&rhs), vecs::zero(unknowns)));
            let lhs = eye_a.kron(&self.carrier.right_action_basis(x).transpose());
            let rhs = reg.right_action_basis(x).kron(&eye_d);
            blocks.push((lhs.sub(&rhs), vecs::zero(unknowns)));
        }
        // counit laws are linear in ε: (C⊗ε)∘Δ = id and (ε⊗C)∘Δ = id
        let raw_delta = self.t_cc.sigma().matmul(&self.delta); // d² × d
        let mut right_block = Matrix::zeros(d * d, unknowns, p);
        let mut left_block = Matrix::zeros(d * d, unknowns, p);
        for u in 0..unknowns {
            let mut eps = vecs::zero(unknowns);
            eps[u] = 1;
            let eps_m = Matrix::from_flat(da, d, p, &eps);
            right_block.set_col(u, &self.contract_right(&eps_m).matmul(&raw_delta).flatten());
            left_block.set_col(u, &self.contract_left(&eps_m).matmul(&raw_delta).flatten());
        }
        blocks.push((right_block, eye_d.flatten()));
        blocks.push((left_block, eye_d.flatten()));
        let sol = solve::solve_stacked(&blocks)?;
        let flat = sol.kernel().reduce(sol.particular());
        Some(Matrix::from_flat(da, d, p, &flat))
    }

    // ---- standard constructors ----

    /// The grouplike coring on k^d: Δ(e_i) = e_i⊗e_i, ε = 1 on every basis
    /// vector. Counital.
    pub fn grouplike(d: usize, p: u32) -> PreCoring {
        let k = Algebra::ground_field(p);
        let carrier = Bimodule::ground(d, p);
        let t = TensorChain::pair(&carrier, &carrier, &k).unwrap();
        let mut delta = Matrix::zeros(t.dim(), d, p);
        for i in 0..d {
            let col = t.project(&vecs::kron(&vecs::unit(d, i), &vecs::unit(d, i), p));
            delta.set_col(i, &col);
        }
        let eps = Matrix::from_fn(1, d, p, |_, _| 1);
        PreCoring::new(k, carrier, delta, Some(eps)).unwrap()
    }

    /// Grouplike on the first `served` basis vectors, Δ = 0 on the rest;
    /// no counit can exist when served < d (and none is attached).
    pub fn partial_grouplike(d: usize, served: usize, p: u32) -> PreCoring {
        let k = Algebra::ground_field(p);
        let carrier = Bimodule::ground(d, p);
        let t = TensorChain::pair(&carrier, &carrier, &k).unwrap();
        let mut delta = Matrix::zeros(t.dim(), d, p);
        for i in 0..served.min(d) {
            let col = t.project(&vecs::kron(&vecs::unit(d, i), &vecs::unit(d, i), p));
            delta.set_col(i, &col);
        }
        PreCoring::new(k, carrier, delta, None).unwrap()
    }

    /// A as the trivial A-coring: C = A, Δ the canonical iso A ≅ A⊗_A A,
    /// ε = id.
    pub fn trivial(a: &Algebra) -> Result<PreCoring> {
        let carrier = Bimodule::regular(a);
        let t = TensorChain::pair(&carrier, &carrier, a)?;
        let d = a.dim();
        let p = a.modulus();
        let unit = a
            .unit()
            .ok_or_else(|| Error::invalid("trivial coring needs a unital algebra"))?
            .to_vec();
        let mut delta = Matrix::zeros(t.dim(), d, p);
        for i in 0..d {
            let col = t.project(&vecs::kron(&unit, &vecs::unit(d, i), p));
            delta.set_col(i, &col);
        }
        PreCoring::new(a.clone(), carrier, delta, Some(Matrix::identity(d, p)))
    }
}

/// Itemized coring diagnostics. When no ε was declared, the counit entries
/// report on the solvability of the counit system instead.
#[derive(Debug, Clone, Default)]
pub struct CoringReport {
    pub delta_bimodule_map: Option<String>,
    pub epsilon_bimodule_map: Option<String>,
    pub coassociative: Option<String>,
    pub counit_right: Option<String>,
    pub counit_left: Option<String>,
}

impl CoringReport {
    /// All laws including the counit laws.
    pub fn counital_ok(&self) -> bool {
        self.pre_ok() && self.counit_right.is_none() && self.counit_left.is_none()
    }

    /// The laws a counit-free coring must satisfy.
    pub fn pre_ok(&self) -> bool {
        self.delta_bimodule_map.is_none()
            && self.epsilon_bimodule_map.is_none()
            && self.coassociative.is_none()
    }
}

pub fn check_coring(c: &PreCoring) -> CoringReport {
    let mut report = CoringReport::default();
    if !c.is_bimodule_map_to_cc(c.delta()) {
        report.delta_bimodule_map = Some("Δ does not commute with the A-actions".into());
    }
    if !c.is_coassociative(c.delta()) {
        report.coassociative = Some("(Δ⊗C)∘Δ ≠ (C⊗Δ)∘Δ".into());
    }
    match c.epsilon() {
        Some(eps) => {
            if !c.is_bimodule_map_to_a(eps) {
                report.epsilon_bimodule_map = Some("ε does not commute with the A-actions".into());
            }
            let eye = Matrix::identity(c.dim(), c.modulus());
            if c.psi_right_of(c.delta(), eps) != eye {
                report.counit_right = Some("(C⊗ε)∘Δ ≠ id".into());
            }
            if c.psi_left_of(c.delta(), eps) != eye {
                report.counit_left = Some("(ε⊗C)∘Δ ≠ id".into());
            }
        }
        None => {
            if c.find_counit().is_none() {
                report.counit_right = Some("no counit declared and none exists".into());
                report.counit_left = Some("no counit declared and none exists".into());
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Comodules
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoSide {
    Right,
    Left,
}

/// A (right or left) comodule over a pre-coring: coassociativity is
/// enforced; counitality is a separate query because the coring itself may
/// lack a counit.
#[derive(Debug, Clone)]
pub struct Comodule {
    coring: PreCoring,
    carrier: Bimodule,
    side: CoSide,
    t_one: TensorChain,
    t_two: TensorChain,
    rho: Matrix,
}

impl Comodule {
    pub fn new(
        coring: &PreCoring,
        carrier: Bimodule,
        rho: Matrix,
        side: CoSide,
    ) -> Result<Comodule> {
        let m = Comodule::new_unchecked(coring, carrier, rho, side)?;
        if !m.is_coaction_linear() {
            return Err(Error::axiom("coaction is not A-linear"));
        }
        if !m.is_coassociative() {
            return Err(Error::axiom("coaction is not coassociative"));
        }
        Ok(m)
    }

    /// Builds the carrier chains without checking the comodule laws, for
    /// exhaustive scans over candidate coactions.
    pub fn new_unchecked(
        coring: &PreCoring,
        carrier: Bimodule,
        rho: Matrix,
        side: CoSide,
    ) -> Result<Comodule> {
        let a = coring.algebra().clone();
        let c = coring.carrier();
        let (t_one, t_two) = match side {
            CoSide::Right => (
                TensorChain::pair(&carrier, c, &a)?,
                TensorChain::new(&[&carrier, c, c], &[&a, &a])?,
            ),
            CoSide::Left => (
                TensorChain::pair(c, &carrier, &a)?,
                TensorChain::new(&[c, c, &carrier], &[&a, &a])?,
            ),
        };
        if rho.rows() != t_one.dim() || rho.cols() != carrier.dim() {
            return Err(Error::dims("coaction matrix", t_one.dim(), rho.rows()));
        }
        Ok(Comodule {
            coring: coring.clone(),
            carrier,
            side,
            t_one,
            t_two,
            rho,
        })
    }

    pub fn coring(&self) -> &PreCoring {
        &self.coring
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn side(&self) -> CoSide {
        self.side
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn tensor_mc(&self) -> &TensorChain {
        &self.t_one
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// A-linearity of the coaction on the module side.
    pub fn is_coaction_linear(&self) -> bool {
        self.is_linear_for(&self.rho)
    }

    fn is_linear_for(&self, rho: &Matrix) -> bool {
        let t = self.t_one.carrier();
        match self.side {
            CoSide::Right => (0..self.coring.algebra().dim()).all(|x| {
                rho.matmul(self.carrier.right_action_basis(x))
                    == t.right_action_basis(x).matmul(rho)
            }),
            CoSide::Left => (0..self.coring.algebra().dim()).all(|x| {
                rho.matmul(self.carrier.left_action_basis(x))
                    == t.left_action_basis(x).matmul(rho)
            }),
        }
    }

    pub fn is_coassociative(&self) -> bool {
        self.is_coassociative_for(&self.rho, self.coring.delta())
    }

    /// (ρ⊗C)∘ρ = (M⊗Δ')∘ρ for a candidate coaction and comultiplication.
    pub fn is_coassociative_for(&self, rho: &Matrix, delta: &Matrix) -> bool {
        let p = self.carrier.modulus();
        let dm = self.carrier.dim();
        let dc = self.coring.dim();
        match self.side {
            CoSide::Right => {
                let raw_rho = self.t_one.sigma().matmul(rho); // M → raw M⊗C
                let lhs = self
                    .t_two
                    .pi()
                    .matmul(&raw_rho.kron(&Matrix::identity(dc, p)))
                    .matmul(self.t_one.sigma())
                    .matmul(rho);
                let raw_delta = self.coring.tensor_cc().sigma().matmul(delta);
                let rhs = self
                    .t_two
                    .pi()
                    .matmul(&Matrix::identity(dm, p).kron(&raw_delta))
                    .matmul(self.t_one.sigma())
                    .matmul(rho);
                lhs == rhs
            }
            CoSide::Left => {
                let raw_rho = self.t_one.sigma().matmul(rho); // N → raw C⊗N
                let lhs = self
                    .t_two
                    .pi()
                    .matmul(&Matrix::identity(dc, p).kron(&raw_rho))
                    .matmul(self.t_one.sigma())
                    .matmul(rho);
                let raw_delta = self.coring.tensor_cc().sigma().matmul(delta);
                let rhs = self
                    .t_two
                    .pi()
                    .matmul(&raw_delta.kron(&Matrix::identity(dm, p)))
                    .matmul(self.t_one.sigma())
                    .matmul(rho);
                lhs == rhs
            }
        }
    }

    /// (M⊗f)∘ρ (resp. (f⊗N)∘ρ): contraction of the coring slot by a
    /// functional f: C → A.
    pub fn contract(&self, f: &Matrix) -> Matrix {
        let p = self.carrier.modulus();
        let dm = self.carrier.dim();
        let dc = self.coring.dim();
        let mut raw = Matrix::zeros(dm, self.t_one.raw_dim(), p);
        match self.side {
            CoSide::Right => {
                for i in 0..dm {
                    for j in 0..dc {
                        let alpha = f.col(j);
                        raw.set_col(i * dc + j, &self.carrier.act_right(&vecs::unit(dm, i), &alpha));
                    }
                }
            }
            CoSide::Left => {
                for j in 0..dc {
                    for i in 0..dm {
                        let alpha = f.col(j);
                        raw.set_col(j * dm + i, &self.carrier.act_left(&alpha, &vecs::unit(dm, i)));
                    }
                }
            }
        }
        raw.matmul(self.t_one.sigma()).matmul(&self.rho)
    }

    /// (M⊗ε)∘ρ = id, for the coring's declared counit.
    pub fn is_counital(&self) -> bool {
        match self.coring.epsilon() {
            Some(eps) => {
                self.contract(eps) == Matrix::identity(self.dim(), self.carrier.modulus())
            }
            None => false,
        }
    }

    /// The coring as a comodule over itself via Δ.
    pub fn regular(coring: &PreCoring, side: CoSide) -> Result<Comodule> {
        Comodule::new(coring, coring.carrier().clone(), coring.delta().clone(), side)
    }
}

/// The cotensor product M □ N ⊆ M⊗_A N: the kernel of ρ_M⊗N − M⊗λ_N.
pub fn cotensor(m: &Comodule, n: &Comodule) -> Result<Subspace> {
    if m.side() != CoSide::Right || n.side() != CoSide::Left {
        return Err(Error::invalid("cotensor expects a right and a left comodule"));
    }
    if m.coring().delta() != n.coring().delta() {
        return Err(Error::invalid("comodules over different corings"));
    }
    let a = m.coring().algebra().clone();
    let c = m.coring().carrier();
    let p = m.carrier().modulus();
    let t_mn = TensorChain::pair(m.carrier(), n.carrier(), &a)?;
    let t_mcn = TensorChain::new(&[m.carrier(), c, n.carrier()], &[&a, &a])?;
    let raw_rho = m.tensor_mc().sigma().matmul(m.rho()); // M → raw M⊗C
    let raw_lam = n.tensor_mc().sigma().matmul(n.rho()); // N → raw C⊗N
    let lhs = t_mcn
        .pi()
        .matmul(&raw_rho.kron(&Matrix::identity(n.dim(), p)))
        .matmul(t_mn.sigma());
    let rhs = t_mcn
        .pi()
        .matmul(&Matrix::identity(m.dim(), p).kron(&raw_lam))
        .matmul(t_mn.sigma());
    Ok(solve::kernel(&lhs.sub(&rhs)))
}

// ---------------------------------------------------------------------------
// Convolution ring
// ---------------------------------------------------------------------------

/// The left dual *C = _AHom(C,A) with the convolution product
/// (f*g)(c) = g(c_(1)·f(c_(2))), an A-ring with unit ε when C is counital.
#[derive(Debug, Clone)]
pub struct ConvolutionRing {
    coring: PreCoring,
    dual: DualModule,
    ring: RingOver,
    unit: Option<Vec<u32>>,
}

/// The raw convolution multiplication matrix on the given dual basis,
/// together with its ring diagnostics (associativity fails exactly when the
/// comultiplication is not coassociative enough).
pub fn convolution_mult_raw(c: &PreCoring, delta: &Matrix, dual: &DualModule) -> Result<(Matrix, RingReport)> {
    let dd = dual.dim();
    let p = c.modulus();
    let raw_delta = c.tensor_cc().sigma().matmul(delta);
    let mut mult = Matrix::zeros(dd, dd * dd, p);
    for i in 0..dd {
        let fi = dual.functional(i).clone();
        let inner = c.contract_right(&fi).matmul(&raw_delta); // c ↦ c_(1)·f_i(c_(2))
        for j in 0..dd {
            let fj = dual.functional(j).clone();
            let prod = fj.matmul(&inner);
            let coords = dual
                .coordinates_of(&prod)
                .ok_or_else(|| Error::axiom("convolution left the dual space"))?;
            mult.set_col(i * dd + j, &coords);
        }
    }
    let report = check_ring_over(c.algebra(), dual.module(), &mult);
    Ok((mult, report))
}

/// Builds *C as a validated A-ring. Requires the convolution to satisfy the
/// ring axioms, which holds whenever Δ is a coassociative bimodule map.
pub fn dual_ring(c: &PreCoring) -> Result<ConvolutionRing> {
    let dual = hom_left(c.carrier(), c.algebra())?;
    let (mult, _report) = convolution_mult_raw(c, c.delta(), &dual)?;
    let ring = RingOver::from_raw_mult(c.algebra().clone(), dual.module().clone(), mult)?;
    let unit = match c.epsilon() {
        Some(eps) if check_coring(c).counital_ok() => dual.coordinates_of(eps),
        _ => None,
    };
    Ok(ConvolutionRing {
        coring: c.clone(),
        dual,
        ring,
        unit,
    })
}

impl ConvolutionRing {
    pub fn coring(&self) -> &PreCoring {
        &self.coring
    }

    pub fn dual(&self) -> &DualModule {
        &self.dual
    }

    pub fn ring(&self) -> &RingOver {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    /// ε as an element of *C, when the coring is counital.
    pub fn unit(&self) -> Option<&[u32]> {
        self.unit.as_deref()
    }

    pub fn convolve(&self, f: &[u32], g: &[u32]) -> Vec<u32> {
        self.ring.mul_elements(f, g)
    }

    /// A comodule as a module over *C via m·f := (M⊗f)∘ρ(m).
    pub fn comodule_as_module(&self, m: &Comodule) -> Result<ModuleOver> {
        if m.coring().delta() != self.coring.delta() {
            return Err(Error::invalid("comodule belongs to a different coring"));
        }
        let dm = m.dim();
        let dd = self.dim();
        let p = self.ring.modulus();
        match m.side() {
            CoSide::Right => {
                let mut act = Matrix::zeros(dm, dm * dd, p);
                for f in 0..dd {
                    let action = m.contract(self.dual.functional(f));
                    for i in 0..dm {
                        act.set_col(i * dd + f, &action.col(i));
                    }
                }
                let carrier = if m.carrier().right_algebra() == self.coring.algebra() {
                    m.carrier().clone()
                } else {
                    return Err(Error::invalid("carrier is not a right A-module"));
                };
                ModuleOver::new(self.ring.clone(), carrier, Some(act), None)
            }
            CoSide::Left => {
                let mut act = Matrix::zeros(dm, dd * dm, p);
                for f in 0..dd {
                    let action = m.contract(self.dual.functional(f));
                    for i in 0..dm {
                        act.set_col(f * dm + i, &action.col(i));
                    }
                }
                ModuleOver::new(self.ring.clone(), m.carrier().clone(), None, Some(act))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Comatrix corings
// ---------------------------------------------------------------------------

/// The comatrix coring C = M*⊗_B M of a finitely generated projective right
/// A-module, built from an idempotent dual basis e = Σ u_i⊗f_i that serves
/// all of M: Δ(f⊗m) = Σ_i f⊗u_i ⊗ f_i⊗m and ε(f⊗m) = f(m),
/// with the canonical coactions on M and M*.
pub struct ComatrixCoring {
    pub coring: PreCoring,
    pub chain: TensorChain, // M*⊗_B M
    pub dual: DualModule,
    pub m_comodule: Comodule,
    pub dual_comodule: Comodule,
}

pub fn comatrix_coring(
    m: &Bimodule,
    a: &Algebra,
    cert: &DualBasisCertificate,
) -> Result<ComatrixCoring> {
    let p = m.modulus();
    let dm = m.dim();
    let dual = hom_right(m, a)?;
    let dd = dual.dim();
    let b = m.left_algebra().clone();

    // e in raw M⊗M* coordinates, functionals translated to full-dual coords
    let mut e_raw = vecs::zero(dm * dd);
    for (j, f) in cert.functionals.iter().enumerate() {
        let coords = dual
            .coordinates_of(f)
            .ok_or_else(|| Error::invalid("certificate functional is not right A-linear"))?;
        let u_j = cert.coefficients.col(j);
        let term = vecs::kron(&u_j, &coords, p);
        e_raw = vecs::add(&e_raw, &term, p);
    }

    // the certificate must serve all of M and be idempotent and central
    if cert.projector(m) != Matrix::identity(dm, p) {
        return Err(Error::invalid("dual basis does not serve all of M"));
    }
    let t_s = TensorChain::pair(m, dual.module(), a)?;
    let e_s = t_s.project(&e_raw);
    for x in 0..b.dim() {
        let lhs = t_s.carrier().left_action_basis(x).matvec(&e_s);
        let rhs = t_s.carrier().right_action_basis(x).matvec(&e_s);
        if lhs != rhs {
            return Err(Error::invalid("dual basis element is not in (M⊗M*)^B"));
        }
    }

    let chain = TensorChain::pair(dual.module(), m, &b)?;
    let qc = chain.dim();
    let raw_c = dd * dm;

    // Δ on the raw C: (f,m) ↦ Σ_{u,g} e[u,g] (f⊗u)⊗(g⊗m)
    let mut insert = Matrix::zeros(raw_c * raw_c, raw_c, p);
    for f in 0..dd {
        for mm in 0..dm {
            let mut col = vecs::zero(raw_c * raw_c);
            for u in 0..dm {
                for g in 0..dd {
                    let cval = e_raw[u * dd + g];
                    if cval == 0 {
                        continue;
                    }
                    let idx = (f * dm + u) * raw_c + (g * dm + mm);
                    col[idx] = cval;
                }
            }
            insert.set_col(f * dm + mm, &col);
        }
    }
    let t_cc = TensorChain::pair(chain.carrier(), chain.carrier(), a)?;
    let delta = t_cc
        .pi()
        .matmul(&chain.pi().kron(chain.pi()))
        .matmul(&insert)
        .matmul(chain.sigma());

    // ε(f⊗m) = f(m)
    let mut eval = Matrix::zeros(a.dim(), raw_c, p);
    for f in 0..dd {
        for mm in 0..dm {
            eval.set_col(f * dm + mm, &dual.functional(f).col(mm));
        }
    }
    let eps = eval.matmul(chain.sigma());

    let coring = PreCoring::new(a.clone(), chain.carrier().clone(), delta, Some(eps))?;
    let report = check_coring(&coring);
    if !report.counital_ok() {
        return Err(Error::axiom(format!(
            "comatrix construction failed the coring laws: {report:?}"
        )));
    }

    // ρ^r(m) = e⊗m on M
    let t_mc = TensorChain::pair(&m.forget_left(), coring.carrier(), a)?;
    let mut rho_raw = Matrix::zeros(dm * qc, dm, p);
    for mm in 0..dm {
        let mut col = vecs::zero(dm * qc);
        for u in 0..dm {
            for g in 0..dd {
                let cval = e_raw[u * dd + g];
                if cval == 0 {
                    continue;
                }
                let c_coords = chain.project(&kron_unit(g, dm, mm, raw_c, p));
                for (k, &v) in c_coords.iter().enumerate() {
                    let idx = u * qc + k;
                    col[idx] = crate::field::fp::add(
                        col[idx],
                        crate::field::fp::mul(cval, v, p),
                        p,
                    );
                }
            }
        }
        rho_raw.set_col(mm, &col);
    }
    let rho = t_mc.pi().matmul(&rho_raw);
    let m_comodule = Comodule::new(&coring, m.forget_left(), rho, CoSide::Right)?;

    // ρ^l(f) = f⊗e on M*
    let t_cd = TensorChain::pair(coring.carrier(), &dual.module().forget_left(), a)?;
    let mut lam_raw = Matrix::zeros(qc * dd, dd, p);
    for f in 0..dd {
        let mut col = vecs::zero(qc * dd);
        for u in 0..dm {
            for g in 0..dd {
                let cval = e_raw[u * dd + g];
                if cval == 0 {
                    continue;
                }
                let c_coords = chain.project(&kron_unit(f, dm, u, raw_c, p));
                for (k, &v) in c_coords.iter().enumerate() {
                    let idx = k * dd + g;
                    col[idx] = crate::field::fp::add(
                        col[idx],
                        crate::field::fp::mul(cval, v, p),
                        p,
                    );
                }
            }
        }
        lam_raw.set_col(f, &col);
    }
    let lam = t_cd.pi().matmul(&lam_raw);
    let dual_comodule = Comodule::new(&coring, dual.module().forget_left(), lam, CoSide::Left)?;

    Ok(ComatrixCoring {
        coring,
        chain,
        dual,
        m_comodule,
        dual_comodule,
    })
}

fn kron_unit(i: usize, d2: usize, j: usize, total: usize, _p: u32) -> Vec<u32> {
    let mut v = vecs::zero(total);
    v[i * d2 + j] = 1;
    v
}

// ---------------------------------------------------------------------------
// The Dorroh coring
// ---------------------------------------------------------------------------

/// The counital coring Ĉ = C×A adjoined to a coring without counit, with
/// the canonical projection and injection and the comodule transport in
/// both directions.
pub struct DorrohCoring {
    pub base: PreCoring,
    pub coring: PreCoring,
    /// π: Ĉ → C
    pub pi: Matrix,
    /// ι: A → Ĉ
    pub iota: Matrix,
}

pub fn dorroh_coring(c: &PreCoring) -> Result<DorrohCoring> {
    if !c.is_coassociative(c.delta()) {
        return Err(Error::invalid("input comultiplication is not coassociative"));
    }
    if !c.is_bimodule_map_to_cc(c.delta()) {
        return Err(Error::invalid("input comultiplication is not a bimodule map"));
    }
    let a = c.algebra().clone();
    let unit = a
        .unit()
        .ok_or_else(|| Error::invalid("Dorroh adjunction needs a unital base"))?
        .to_vec();
    let p = c.modulus();
    let dc = c.dim();
    let da = a.dim();
    let dh = dc + da;

    // Ĉ = C × A with blockwise actions
    let reg = Bimodule::regular(&a);
    let left: Vec<Matrix> = (0..da)
        .map(|x| {
            c.carrier()
                .left_action_basis(x)
                .block_diag(reg.left_action_basis(x))
        })
        .collect();
    let right: Vec<Matrix> = (0..da)
        .map(|x| {
            c.carrier()
                .right_action_basis(x)
                .block_diag(reg.right_action_basis(x))
        })
        .collect();
    let carrier = Bimodule::new(a.clone(), a.clone(), dh, left, right)?;
    let t_hh = TensorChain::pair(&carrier, &carrier, &a)?;

    let embed = |v: &[u32]| -> Vec<u32> {
        let mut out = vecs::zero(dh);
        out[..dc].copy_from_slice(v);
        out
    };
    let iota_vec = |v: &[u32]| -> Vec<u32> {
        let mut out = vecs::zero(dh);
        out[dc..].copy_from_slice(v);
        out
    };
    let one_hat = iota_vec(&unit);

    // Δ̂(c,a) = (c₍₁₎,0)⊗(c₍₂₎,0) + (0,1)⊗(c,a) + (c,a)⊗(0,1) − (0,a)⊗(0,1)
    let raw_delta = c.tensor_cc().sigma().matmul(c.delta()); // C → raw C⊗C
    let mut delta_hat = Matrix::zeros(t_hh.dim(), dh, p);
    for v in 0..dh {
        let is_c_part = v < dc;
        let mut acc = vecs::zero(t_hh.dim());
        if is_c_part {
            let dv = raw_delta.col(v); // Σ c₍₁₎⊗c₍₂₎ over raw C⊗C
            for i in 0..dc {
                for j in 0..dc {
                    let cval = dv[i * dc + j];
                    if cval == 0 {
                        continue;
                    }
                    let term = t_hh.project(&vecs::kron(
                        &embed(&vecs::unit(dc, i)),
                        &embed(&vecs::unit(dc, j)),
                        p,
                    ));
                    acc = vecs::add(&acc, &vecs::scale(&term, cval, p), p);
                }
            }
        }
        let basis_v = vecs::unit(dh, v);
        let t2 = t_hh.project(&vecs::kron(&one_hat, &basis_v, p));
        let t3 = t_hh.project(&vecs::kron(&basis_v, &one_hat, p));
        acc = vecs::add(&acc, &t2, p);
        acc = vecs::add(&acc, &t3, p);
        if !is_c_part {
            let a_part = iota_vec(&vecs::unit(da, v - dc));
            let t4 = t_hh.project(&vecs::kron(&a_part, &one_hat, p));
            acc = vecs::sub(&acc, &t4, p);
        }
        delta_hat.set_col(v, &acc);
    }

    // ε̂(c,a) = a
    let eps_hat = Matrix::from_fn(da, dh, p, |i, j| u32::from(j >= dc && j - dc == i));

    let coring = PreCoring::new(a.clone(), carrier, delta_hat, Some(eps_hat))?;
    let report = check_coring(&coring);
    if !report.counital_ok() {
        return Err(Error::axiom(format!(
            "Dorroh construction failed the coring laws: {report:?}"
        )));
    }

    let pi = Matrix::from_fn(dc, dh, p, |i, j| u32::from(i == j));
    let iota = Matrix::from_fn(dh, da, p, |i, j| u32::from(i >= dc && i - dc == j));
    Ok(DorrohCoring {
        base: c.clone(),
        coring,
        pi,
        iota,
    })
}

impl DorrohCoring {
    /// π is comultiplicative (Δ∘π = (π⊗π)∘Δ̂) and surjective. The counit
    /// half of the morphism condition is vacuous: the base has no counit.
    pub fn pi_is_coring_morphism(&self) -> bool {
        let lhs = self.base.delta().matmul(&self.pi);
        let raw = self
            .coring
            .tensor_cc()
            .sigma();
        let pp = self.pi.kron(&self.pi);
        let rhs = self
            .base
            .tensor_cc()
            .pi()
            .matmul(&pp)
            .matmul(raw)
            .matmul(self.coring.delta());
        lhs == rhs && self.pi.rank() == self.base.dim()
    }

    /// ι intertwines the trivial coring structure of A with Ĉ and preserves
    /// the counit; it is injective.
    pub fn iota_is_coring_morphism(&self) -> Result<bool> {
        let a = self.base.algebra();
        let p = self.base.modulus();
        let da = a.dim();
        let unit = a.unit().expect("validated unital").to_vec();
        // counit: ε̂∘ι = id_A
        let eps = self.coring.epsilon().expect("Dorroh coring is counital");
        if eps.matmul(&self.iota) != Matrix::identity(da, p) {
            return Ok(false);
        }
        // comultiplication: Δ̂(ι(a)) = π(ι(1)⊗ι(a))
        let t_hh = self.coring.tensor_cc();
        let mut ok = true;
        for j in 0..da {
            let lhs = self.coring.delta().matvec(&self.iota.col(j));
            let rhs = t_hh.project(&vecs::kron(
                &self.iota.matvec(&unit),
                &self.iota.col(j),
                p,
            ));
            ok &= lhs == rhs;
        }
        Ok(ok && self.iota.rank() == da)
    }

    /// C×0 is a coideal: ε̂ kills it and Δ̂(C×0) ⊆ Ĉ⊗(C×0) + (C×0)⊗Ĉ.
    pub fn coideal_check(&self) -> bool {
        let p = self.base.modulus();
        let dc = self.base.dim();
        let dh = self.coring.dim();
        let eps = self.coring.epsilon().expect("counital");
        let t_hh = self.coring.tensor_cc();
        // ε̂(C×0) = 0
        for i in 0..dc {
            if !vecs::is_zero(&eps.matvec(&vecs::unit(dh, i))) {
                return false;
            }
        }
        // span of Ĉ⊗(C×0) and (C×0)⊗Ĉ in the quotient
        let mut gens = Vec::new();
        for x in 0..dh {
            for i in 0..dc {
                gens.push(t_hh.project(&vecs::kron(&vecs::unit(dh, x), &vecs::unit(dh, i), p)));
                gens.push(t_hh.project(&vecs::kron(&vecs::unit(dh, i), &vecs::unit(dh, x), p)));
            }
        }
        let span = Subspace::from_spanning_vectors(&gens, t_hh.dim(), p);
        (0..dc).all(|i| span.contains(&self.coring.delta().matvec(&vecs::unit(dh, i))))
    }

    /// The dual of the classical remark that the Dorroh quotient is not a
    /// ring morphism: Δ̂(C×0) is not contained in (C×0)⊗(C×0) (degenerately
    /// false for C = 0).
    pub fn base_is_not_subcoring(&self) -> bool {
        let p = self.base.modulus();
        let dc = self.base.dim();
        let t_hh = self.coring.tensor_cc();
        let mut gens = Vec::new();
        for i in 0..dc {
            for j in 0..dc {
                gens.push(t_hh.project(&vecs::kron(
                    &vecs::unit(self.coring.dim(), i),
                    &vecs::unit(self.coring.dim(), j),
                    p,
                )));
            }
        }
        let span = Subspace::from_spanning_vectors(&gens, t_hh.dim(), p);
        (0..dc).any(|i| {
            !span.contains(
                &self
                    .coring
                    .delta()
                    .matvec(&vecs::unit(self.coring.dim(), i)),
            )
        })
    }

    /// Transports a C-comodule to a counital Ĉ-comodule:
    /// δ̂(m) = m₍₀₎⊗(m₍₁₎,0) + m⊗(0,1).
    pub fn hat(&self, m: &Comodule) -> Result<Comodule> {
        if m.side() != CoSide::Right {
            return Err(Error::invalid("hat transports right comodules"));
        }
        let p = self.base.modulus();
        let dc = self.base.dim();
        let dh = self.coring.dim();
        let dm = m.dim();
        let a = self.base.algebra().clone();
        let unit = a.unit().expect("unital").to_vec();
        let t_mh = TensorChain::pair(m.carrier(), self.coring.carrier(), &a)?;
        let raw_rho = m.tensor_mc().sigma().matmul(m.rho()); // M → raw M⊗C
        let mut rho_hat = Matrix::zeros(t_mh.dim(), dm, p);
        let mut one_hat = vecs::zero(dh);
        one_hat[dc..].copy_from_slice(&unit);
        for v in 0..dm {
            let rv = raw_rho.col(v);
            let mut acc = vecs::zero(t_mh.dim());
            for i in 0..dm {
                for j in 0..dc {
                    let cval = rv[i * dc + j];
                    if cval == 0 {
                        continue;
                    }
                    let mut emb = vecs::zero(dh);
                    emb[j] = 1;
                    let term = t_mh.project(&vecs::kron(&vecs::unit(dm, i), &emb, p));
                    acc = vecs::add(&acc, &vecs::scale(&term, cval, p), p);
                }
            }
            let t2 = t_mh.project(&vecs::kron(&vecs::unit(dm, v), &one_hat, p));
            acc = vecs::add(&acc, &t2, p);
            rho_hat.set_col(v, &acc);
        }
        Comodule::new(&self.coring, m.carrier().clone(), rho_hat, CoSide::Right)
    }

    /// Transports a Ĉ-comodule back: δ = (M⊗π)∘δ̂.
    pub fn unhat(&self, m: &Comodule) -> Result<Comodule> {
        if m.side() != CoSide::Right {
            return Err(Error::invalid("unhat transports right comodules"));
        }
        let p = self.base.modulus();
        let dm = m.dim();
        let a = self.base.algebra().clone();
        let t_mc = TensorChain::pair(m.carrier(), self.base.carrier(), &a)?;
        let raw = m.tensor_mc().sigma().matmul(m.rho()); // M → raw M⊗Ĉ
        let proj = Matrix::identity(dm, p).kron(&self.pi);
        let rho = t_mc.pi().matmul(&proj).matmul(&raw);
        Comodule::new(&self.base, m.carrier().clone(), rho, CoSide::Right)
    }

    /// The space of colinear endomorphisms of a comodule (used to transport
    /// morphisms through hat/unhat).
    pub fn colinear_endos(m: &Comodule) -> Subspace {
        let p = m.carrier().modulus();
        let dm = m.dim();
        let eye_m = Matrix::identity(dm, p);
        // δ∘f = (f⊗C)∘δ: both sides linear in f
        let t = m.tensor_mc();
        let dc = t.factors()[1].dim();
        let raw_rho = t.sigma().matmul(m.rho());
        let mut rows = Matrix::zeros(0, dm * dm, p);
        // flatten(ρ·f) = (I_{t} ⊗ fᵀ)... build column by column instead
        let mut block = Matrix::zeros(t.dim() * dm, dm * dm, p);
        for u in 0..dm * dm {
            let mut fv = vecs::zero(dm * dm);
            fv[u] = 1;
            let f = Matrix::from_flat(dm, dm, p, &fv);
            let lhs = m.rho().matmul(&f);
            let rhs = t
                .pi()
                .matmul(&f.kron(&Matrix::identity(dc, p)))
                .matmul(&raw_rho);
            block.set_col(u, &lhs.sub(&rhs).flatten());
        }
        rows = rows.vstack(&block);
        let _ = eye_m;
        solve::kernel(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_coring_passes() {
        for a in [
            Algebra::ground_field(2),
            Algebra::product(&[&Algebra::ground_field(3), &Algebra::ground_field(3)]),
            Algebra::matrix_algebra(2, 2),
        ] {
            let c = PreCoring::trivial(&a).unwrap();
            let report = check_coring(&c);
            assert!(report.counital_ok(), "{report:?}");
        }
    }

    #[test]
    fn grouplike_coring_passes_and_zero_delta_has_no_counit() {
        let c = PreCoring::grouplike(2, 2);
        assert!(check_coring(&c).counital_ok());

        let z = PreCoring::partial_grouplike(1, 0, 2);
        let report = check_coring(&z);
        assert!(report.coassociative.is_none());
        assert!(report.counit_right.is_some());
    }

    #[test]
    fn dual_ring_of_grouplike_is_componentwise() {
        let c = PreCoring::grouplike(2, 2);
        let conv = dual_ring(&c).unwrap();
        assert_eq!(conv.dim(), 2);
        // componentwise product on the coordinate functionals
        assert_eq!(conv.convolve(&[1, 0], &[1, 0]), vec![1, 0]);
        assert_eq!(conv.convolve(&[1, 0], &[0, 1]), vec![0, 0]);
        // ε = (1,1) is the unit
        assert_eq!(conv.unit(), Some(&[1u32, 1][..]));
    }

    #[test]
    fn dual_ring_of_trivial_coring_over_m2() {
        let a = Algebra::matrix_algebra(2, 2);
        let c = PreCoring::trivial(&a).unwrap();
        let conv = dual_ring(&c).unwrap();
        // *A ≅ A for the trivial coring
        assert_eq!(conv.dim(), 4);
        assert!(conv.unit().is_some());
    }

    #[test]
    fn zero_delta_gives_zero_convolution() {
        let z = PreCoring::partial_grouplike(2, 0, 2);
        let conv = dual_ring(&z).unwrap();
        assert!(conv
            .convolve(&vecs::unit(2, 0), &vecs::unit(2, 1))
            .iter()
            .all(|&x| x == 0));
    }

    #[test]
    fn cotensor_of_counital_coring_recovers_c() {
        for c in [PreCoring::grouplike(2, 2), PreCoring::trivial(&Algebra::ground_field(3)).unwrap()] {
            let right = Comodule::regular(&c, CoSide::Right).unwrap();
            let left = Comodule::regular(&c, CoSide::Left).unwrap();
            let cot = cotensor(&right, &left).unwrap();
            assert_eq!(cot.dim(), c.dim());
        }
    }

    #[test]
    fn cotensor_with_zero_coactions_is_everything() {
        let z = PreCoring::partial_grouplike(2, 0, 2);
        let carrier = Bimodule::ground(2, 2);
        let t = TensorChain::pair(&carrier, z.carrier(), &Algebra::ground_field(2)).unwrap();
        let right =
            Comodule::new(&z, carrier.clone(), Matrix::zeros(t.dim(), 2, 2), CoSide::Right)
                .unwrap();
        let t2 = TensorChain::pair(z.carrier(), &carrier, &Algebra::ground_field(2)).unwrap();
        let left =
            Comodule::new(&z, carrier.clone(), Matrix::zeros(t2.dim(), 2, 2), CoSide::Left)
                .unwrap();
        let cot = cotensor(&right, &left).unwrap();
        assert_eq!(cot.dim(), 4);
    }

    #[test]
    fn comatrix_coring_over_ground_field() {
        use crate::dual_pairs::find_dual_basis;
        let k = Algebra::ground_field(2);
        let m = Bimodule::ground(2, 2);
        let dual = hom_right(&m, &k).unwrap();
        let full = Subspace::full(dual.dim(), 2);
        let basis: Vec<Vec<u32>> = (0..2).map(|i| vecs::unit(2, i)).collect();
        let cert = find_dual_basis(&m, &dual, &full, &basis, false, true, 1 << 16)
            .unwrap()
            .found()
            .unwrap();
        let com = comatrix_coring(&m, &k, &cert).unwrap();
        assert_eq!(com.coring.dim(), 4);
        assert!(check_coring(&com.coring).counital_ok());
        assert!(com.m_comodule.is_counital());
        assert!(com.dual_comodule.is_counital());
    }

    #[test]
    fn dorroh_on_dim_one_zero_delta() {
        let c = PreCoring::partial_grouplike(1, 0, 2);
        let d = dorroh_coring(&c).unwrap();
        assert_eq!(d.coring.dim(), 2);
        assert!(check_coring(&d.coring).counital_ok());
        // Δ̂(c,0) = (0,1)⊗(c,0) + (c,0)⊗(0,1)
        let t = d.coring.tensor_cc();
        let expected = vecs::add(
            &t.project(&vecs::kron(&[0, 1], &[1, 0], 2)),
            &t.project(&vecs::kron(&[1, 0], &[0, 1], 2)),
            2,
        );
        assert_eq!(d.coring.delta().col(0), expected);
        assert!(d.pi_is_coring_morphism());
        assert!(d.iota_is_coring_morphism().unwrap());
        assert!(d.coideal_check());
        assert!(d.base_is_not_subcoring());
    }

    #[test]
    fn dorroh_on_counital_grouplike() {
        let c = PreCoring::grouplike(2, 2);
        let stripped = c.clone().with_epsilon(None).unwrap();
        let d = dorroh_coring(&stripped).unwrap();
        assert_eq!(d.coring.dim(), 3);
        assert!(check_coring(&d.coring).counital_ok());
        assert!(d.pi_is_coring_morphism());
    }

    #[test]
    fn dorroh_hat_unhat_round_trip() {
        let c = PreCoring::partial_grouplike(2, 1, 2);
        let d = dorroh_coring(&c).unwrap();
        // a comodule over C: M = k with δ(m) = m⊗e1
        let carrier = Bimodule::ground(1, 2);
        let t = TensorChain::pair(&carrier, c.carrier(), &Algebra::ground_field(2)).unwrap();
        let mut rho = Matrix::zeros(t.dim(), 1, 2);
        rho.set_col(0, &t.project(&vecs::kron(&[1], &[1, 0], 2)));
        let m = Comodule::new(&c, carrier, rho, CoSide::Right).unwrap();
        let hatted = d.hat(&m).unwrap();
        assert!(hatted.is_counital());
        let back = d.unhat(&hatted).unwrap();
        assert_eq!(back.rho(), m.rho());
    }

    #[test]
    fn dorroh_preserves_cocommutativity_over_ground_field() {
        // over k the tensor quotient is the raw space; swap fixes Δ̂
        let c = PreCoring::partial_grouplike(2, 1, 2);
        let d = dorroh_coring(&c).unwrap();
        let dh = d.coring.dim();
        let p = 2;
        let swap = Matrix::from_fn(dh * dh, dh * dh, p, |r, s| {
            let (i, j) = (r / dh, r % dh);
            u32::from(s == j * dh + i)
        });
        // base C is cocommutative (grouplike); check Δ̂ is too
        let raw_delta = d.coring.tensor_cc().sigma().matmul(d.coring.delta());
        let swapped = d.coring.tensor_cc().pi().matmul(&swap).matmul(&raw_delta);
        let original = d.coring.tensor_cc().pi().matmul(&raw_delta);
        assert_eq!(swapped, original);
    }

    #[test]
    fn convolution_module_structure_on_comodules() {
        let c = PreCoring::grouplike(2, 2);
        let conv = dual_ring(&c).unwrap();
        let reg = Comodule::regular(&c, CoSide::Right).unwrap();
        let module = conv.comodule_as_module(&reg).unwrap();
        assert!(module.report().ok());
        // ε acts as the identity
        let eps = conv.unit().unwrap().to_vec();
        for i in 0..2 {
            assert_eq!(module.act_right(&vecs::unit(2, i), &eps), vecs::unit(2, i));
        }
    }
}
