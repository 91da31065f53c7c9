//! Tensor products of bimodules over (possibly noncommutative, possibly
//! nonunital) algebras, materialized as quotients of the raw Kronecker space
//! by the balanced relations (m·a)⊗n − m⊗(a·n).
//!
//! A chain M₁ ⊗_{A₁} M₂ ⊗_{A₂} … ⊗ M_k is flattened: the quotient of the raw
//! k-fold space by all adjacent balanced relations. Iterated two-factor
//! quotients produce the same relation space, so any bracketing of a
//! composite can be computed on the raw space and projected at the end —
//! no reassociation isomorphisms are ever needed.

use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::field::fp;
use crate::matrix::{vecs, Matrix};
use crate::quotient::QuotientSpace;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorChain {
    factors: Vec<Bimodule>,
    links: Vec<Algebra>,
    quotient: QuotientSpace,
    carrier: Bimodule,
}

impl TensorChain {
    /// Builds M₁ ⊗_{links[0]} M₂ ⊗ … ⊗ M_k. Each link must equal the right
    /// algebra of the factor before it and the left algebra of the factor
    /// after it.
    pub fn new(factors: &[&Bimodule], links: &[&Algebra]) -> Result<TensorChain> {
        if factors.is_empty() {
            return Err(Error::invalid("empty tensor chain"));
        }
        if links.len() + 1 != factors.len() {
            return Err(Error::dims("tensor chain links", factors.len() - 1, links.len()));
        }
        let p = factors[0].modulus();
        for (t, link) in links.iter().enumerate() {
            if factors[t].right_algebra() != *link {
                return Err(Error::invalid(format!(
                    "factor {t} is not a right module over link algebra {t}"
                )));
            }
            if factors[t + 1].left_algebra() != *link {
                return Err(Error::invalid(format!(
                    "factor {} is not a left module over link algebra {t}",
                    t + 1
                )));
            }
        }

        let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
        let raw_dim: usize = dims.iter().product();

        // Balanced relations at every adjacent slot.
        let mut rel_rows: Vec<Vec<u32>> = Vec::new();
        for t in 0..links.len() {
            let d_t = dims[t];
            let d_u = dims[t + 1];
            let pre: usize = dims[..t].iter().product();
            let post: usize = dims[t + 2..].iter().product();
            for a in 0..links[t].dim() {
                let r_a = factors[t].right_action_basis(a);
                let l_a = factors[t + 1].left_action_basis(a);
                for i in 0..d_t {
                    let ri = r_a.col(i);
                    for j in 0..d_u {
                        let lj = l_a.col(j);
                        for pre_i in 0..pre {
                            for post_i in 0..post {
                                let mut v = vecs::zero(raw_dim);
                                for (x, &c) in ri.iter().enumerate() {
                                    if c != 0 {
                                        let idx =
                                            ((pre_i * d_t + x) * d_u + j) * post + post_i;
                                        v[idx] = fp::add(v[idx], c, p);
                                    }
                                }
                                for (y, &c) in lj.iter().enumerate() {
                                    if c != 0 {
                                        let idx =
                                            ((pre_i * d_t + i) * d_u + y) * post + post_i;
                                        v[idx] = fp::sub(v[idx], c, p);
                                    }
                                }
                                if !vecs::is_zero(&v) {
                                    rel_rows.push(v);
                                }
                            }
                        }
                    }
                }
            }
        }
        let relations = Subspace::from_spanning_vectors(&rel_rows, raw_dim, p);
        let quotient = QuotientSpace::new(raw_dim, relations);

        // Outer actions descend to the quotient; verify and restrict.
        let rest_after_first: usize = dims[1..].iter().product();
        let rest_before_last: usize = dims[..dims.len() - 1].iter().product();
        let left_outer = factors[0].left_algebra().clone();
        let right_outer = factors[factors.len() - 1].right_algebra().clone();
        let eye_after = Matrix::identity(rest_after_first, p);
        let eye_before = Matrix::identity(rest_before_last, p);

        let descend = |raw: &Matrix| -> Result<Matrix> {
            for i in 0..quotient.relations().dim() {
                let img = raw.matvec(&quotient.relations().basis_vector(i));
                if !quotient.relations().contains(&img) {
                    return Err(Error::invalid(
                        "action-compatibility violation in inputs: outer action does not preserve balanced relations",
                    ));
                }
            }
            Ok(quotient
                .projection()
                .matmul(raw)
                .matmul(quotient.section()))
        };

        let mut left_action = Vec::with_capacity(left_outer.dim());
        for b in 0..left_outer.dim() {
            let raw = factors[0].left_action_basis(b).kron(&eye_after);
            left_action.push(descend(&raw)?);
        }
        let mut right_action = Vec::with_capacity(right_outer.dim());
        for a in 0..right_outer.dim() {
            let raw = eye_before.kron(factors[factors.len() - 1].right_action_basis(a));
            right_action.push(descend(&raw)?);
        }

        let carrier = Bimodule::new(
            left_outer,
            right_outer,
            quotient.dim(),
            left_action,
            right_action,
        )?;

        Ok(TensorChain {
            factors: factors.iter().map(|f| (*f).clone()).collect(),
            links: links.iter().map(|l| (*l).clone()).collect(),
            quotient,
            carrier,
        })
    }

    pub fn pair(m: &Bimodule, n: &Bimodule, over: &Algebra) -> Result<TensorChain> {
        TensorChain::new(&[m, n], &[over])
    }

    pub fn factors(&self) -> &[Bimodule] {
        &self.factors
    }

    pub fn links(&self) -> &[Algebra] {
        &self.links
    }

    pub fn raw_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn modulus(&self) -> u32 {
        self.quotient.modulus()
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    pub fn pi(&self) -> &Matrix {
        self.quotient.projection()
    }

    pub fn sigma(&self) -> &Matrix {
        self.quotient.section()
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn project(&self, raw: &[u32]) -> Vec<u32> {
        self.quotient.project(raw)
    }

    pub fn lift(&self, q: &[u32]) -> Vec<u32> {
        self.quotient.lift(q)
    }

    /// Projects the pure tensor of the given coordinate vectors.
    pub fn pure(&self, parts: &[&[u32]]) -> Vec<u32> {
        assert_eq!(parts.len(), self.factors.len());
        let p = self.modulus();
        let mut raw = parts[0].to_vec();
        for part in &parts[1..] {
            raw = vecs::kron(&raw, part, p);
        }
        self.project(&raw)
    }

    /// Induces a map on quotients from a raw-space matrix, checking that it
    /// carries the source relations into the target relations.
    pub fn induce(&self, raw: &Matrix, target: &TensorChain) -> Result<Matrix> {
        if raw.cols() != self.raw_dim() || raw.rows() != target.raw_dim() {
            return Err(Error::dims("raw map shape", self.raw_dim(), raw.cols()));
        }
        for i in 0..self.quotient.relations().dim() {
            let img = raw.matvec(&self.quotient.relations().basis_vector(i));
            if !target.quotient.relations().contains(&img) {
                return Err(Error::invalid(
                    "induced map not well-defined on the quotient (unbalanced input map)",
                ));
            }
        }
        Ok(target.pi().matmul(raw).matmul(self.sigma()))
    }
}

/// The induced map f⊗g on two-factor tensor quotients. Fails if the raw
/// Kronecker map does not descend, which signals an unbalanced input pair.
pub fn map_on_tensor(
    f: &BimoduleMap,
    g: &BimoduleMap,
    src: &TensorChain,
    tgt: &TensorChain,
) -> Result<BimoduleMap> {
    if src.factors().len() != 2 || tgt.factors().len() != 2 {
        return Err(Error::invalid("map_on_tensor expects two-factor chains"));
    }
    let raw = f.matrix().kron(g.matrix());
    let induced = src.induce(&raw, tgt)?;
    Ok(BimoduleMap::new_unchecked(
        src.carrier().clone(),
        tgt.carrier().clone(),
        induced,
    ))
}

/// The induced map f₁⊗…⊗f_k on arbitrary chains, given the factor matrices.
pub fn map_on_chain(maps: &[&Matrix], src: &TensorChain, tgt: &TensorChain) -> Result<Matrix> {
    if maps.len() != src.factors().len() || maps.len() != tgt.factors().len() {
        return Err(Error::dims("chain map count", src.factors().len(), maps.len()));
    }
    let mut raw = maps[0].clone();
    for m in &maps[1..] {
        raw = raw.kron(m);
    }
    src.induce(&raw, tgt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_field_tensor_dims() {
        // k ⊗_k k has dim 1; k² ⊗_k k³ has dim 6 (no relations over k)
        let k1 = Bimodule::ground(1, 2);
        let k2 = Bimodule::ground(2, 2);
        let k3 = Bimodule::ground(3, 2);
        let k = Algebra::ground_field(2);
        assert_eq!(TensorChain::pair(&k1, &k1, &k).unwrap().dim(), 1);
        assert_eq!(TensorChain::pair(&k2, &k3, &k).unwrap().dim(), 6);
    }

    #[test]
    fn m_tensor_a_isomorphic_to_m_for_unital_a() {
        // M ⊗_A A ≅ M for A = F_2×F_2 and M = A: dimension 2 and
        // π(m ⊗ 1) = m realizes the isomorphism.
        let k = Algebra::ground_field(2);
        let a = Algebra::product(&[&k, &k]);
        let reg = Bimodule::regular(&a);
        let t = TensorChain::pair(&reg, &reg, &a).unwrap();
        assert_eq!(t.dim(), 2);
        // m ↦ π(m⊗1) is injective (hence an isomorphism in dim 2)
        let unit = a.unit().unwrap().to_vec();
        let mut iso = Matrix::zeros(t.dim(), 2, 2);
        for j in 0..2 {
            let col = t.pure(&[&vecs::unit(2, j), &unit]);
            iso.set_col(j, &col);
        }
        assert!(iso.is_invertible());
    }

    #[test]
    fn regular_tensor_over_matrix_algebra() {
        // A ⊗_A A ≅ A for A = M₂(F_2): dim 4.
        let a = Algebra::matrix_algebra(2, 2);
        let reg = Bimodule::regular(&a);
        let t = TensorChain::pair(&reg, &reg, &a).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn balanced_relations_map_to_zero() {
        let a = Algebra::product(&[&Algebra::ground_field(3), &Algebra::ground_field(3)]);
        let reg = Bimodule::regular(&a);
        let t = TensorChain::pair(&reg, &reg, &a).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for x in 0..a.dim() {
                    let ma = reg.act_right(&vecs::unit(2, i), &vecs::unit(2, x));
                    let an = reg.act_left(&vecs::unit(2, x), &vecs::unit(2, j));
                    let lhs = t.pure(&[&ma, &vecs::unit(2, j)]);
                    let rhs = t.pure(&[&vecs::unit(2, i), &an]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn triple_chain_matches_iterated_dimension() {
        let a = Algebra::matrix_algebra(2, 2);
        let reg = Bimodule::regular(&a);
        let t3 = TensorChain::new(&[&reg, &reg, &reg], &[&a, &a]).unwrap();
        // A⊗_A A⊗_A A ≅ A
        assert_eq!(t3.dim(), 4);
    }

    #[test]
    fn map_on_tensor_identity_and_zero() {
        let k = Algebra::ground_field(2);
        let m = Bimodule::ground(2, 2);
        let t = TensorChain::pair(&m, &m, &k).unwrap();
        let id = BimoduleMap::identity(&m);
        let idid = map_on_tensor(&id, &id, &t, &t).unwrap();
        assert_eq!(idid.matrix(), &Matrix::identity(4, 2));
        let z = BimoduleMap::zero(&m, &m);
        let z2 = map_on_tensor(&z, &id, &t, &t).unwrap();
        assert!(z2.matrix().is_zero());
    }

    #[test]
    fn functoriality_on_random_instances() {
        // (f∘f') ⊗ (g∘g') = (f⊗g) ∘ (f'⊗g') on the quotient carriers.
        let a = Algebra::product(&[&Algebra::ground_field(2), &Algebra::ground_field(2)]);
        let reg = Bimodule::regular(&a);
        let t = TensorChain::pair(&reg, &reg, &a).unwrap();
        // equivariant maps over k×k are the diagonal matrices
        let f = Matrix::from_rows(&[vec![1, 0], vec![0, 0]], 2).unwrap();
        let g = Matrix::from_rows(&[vec![0, 0], vec![0, 1]], 2).unwrap();
        let fm = BimoduleMap::new(reg.clone(), reg.clone(), f).unwrap();
        let gm = BimoduleMap::new(reg.clone(), reg.clone(), g).unwrap();
        let fg = map_on_tensor(&fm, &gm, &t, &t).unwrap();
        let ff = fm.compose(&fm);
        let gg = gm.compose(&gm);
        let both = map_on_tensor(&ff, &gg, &t, &t).unwrap();
        assert_eq!(both.matrix(), &fg.compose(&fg).matrix().clone());
    }
}
