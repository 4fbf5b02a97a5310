//! Exact cohomology of Lie poset algebras.
//!
//! A finite poset on `{1..N}` compatible with the integer order determines a
//! solvable subalgebra `g(P) = h ⋉ k` of `sl(N)`, spanned by the Cartan
//! elements `η_i = e_ii − e_{i+1,i+1}` and the matrix units `e_ij` with
//! `i ≺ j`. This crate builds these algebras over `Q` or `F_p`, assembles
//! their Chevalley–Eilenberg complexes with trivial and adjoint coefficients,
//! and checks the structural isomorphisms relating them to the order complex
//! (nerve) of the poset. It also constructs polynomial one-parameter
//! deformations and certifies their Jacobi identity exactly.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod ce;
pub mod deform;
pub mod field;
pub mod linalg;
pub mod nerve;
pub mod poset;
pub mod verify;
pub mod weights;

pub use algebra::{build_algebra, module_create, AlgebraError, BasisIndex, GModule, LiePosetAlgebra, ModuleKind};
pub use ce::{cohomology, Acting, CeError, Cochain, CochainComplex, CochainKey, CohomologyOptions, CohomologyReport};
pub use deform::{DeformError, DeformedBracket, H2Decomposition, JacobiCertificate, Poly};
pub use field::{FieldCtx, FieldError, FieldKind, Scalar};
pub use linalg::{LinalgError, SparseMatrix, SparseVec, Subspace};
pub use nerve::{SimplicialCochain, SimplicialComplex};
pub use poset::{Poset, PosetError};
pub use verify::{verify_suite, CheckResult, VerificationReport, VerifyOptions};
pub use weights::WeightVector;
