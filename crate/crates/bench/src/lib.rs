//! Benchmark fixtures shared by the criterion targets.

use std::sync::Arc;

use lieposet::{build_algebra, Acting, CochainComplex, FieldCtx, LiePosetAlgebra, ModuleKind, Poset};

pub fn algebra(poset: &Poset, field: FieldCtx) -> Arc<LiePosetAlgebra> {
    Arc::new(build_algebra(poset, field).expect("fixture posets admit the field"))
}

/// The full adjoint complex of `g(P)`.
pub fn adjoint_complex(poset: &Poset, field: FieldCtx) -> CochainComplex {
    CochainComplex::new(algebra(poset, field), ModuleKind::Adjoint, Acting::Full, false)
}

pub fn fields() -> [(&'static str, FieldCtx); 2] {
    [("q", FieldCtx::rationals()), ("fp7", FieldCtx::prime(7).expect("7 is prime"))]
}
