//! Exact-arithmetic workbench for rings with local units and corings with
//! local structure maps (local comultiplications, local counits, local
//! multiplications), over small prime fields.
//!
//! Everything is finite and deterministic: algebras are given by structure
//! constants, bimodules by action matrices, tensor products are materialized
//! quotients with explicit projection/section pairs, and every certificate a
//! search returns re-validates against the law it claims to witness.

pub mod algebra;
pub mod bimodule;
pub mod corings;
pub mod dual_pairs;
pub mod error;
pub mod field;
pub mod hom;
pub mod local_costructure;
pub mod local_units;
pub mod matrix;
pub mod oracle;
pub mod quotient;
pub mod ring_over;
pub mod solve;
pub mod subspace;
pub mod tensor;

pub use algebra::Algebra;
pub use bimodule::{Bimodule, BimoduleMap};
pub use error::{Error, Result, SearchOutcome};
pub use field::Scalar;
pub use matrix::Matrix;
pub use quotient::QuotientSpace;
pub use solve::{solve_affine, AffineSet};
pub use subspace::Subspace;
pub use tensor::TensorChain;
