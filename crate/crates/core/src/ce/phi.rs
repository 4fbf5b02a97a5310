//! The comparison map `Φ` from nerve cochains to `C*(k, g)_0`, and the
//! tensor factorization of `H*(g, M)`.

use std::sync::Arc;

use serde::Serialize;

use super::{cohomology, Acting, CeError, Cochain, CochainComplex, CochainKey, CohomologyOptions};
use crate::algebra::{LiePosetAlgebra, ModuleKind};
use crate::linalg::{self, SparseMatrix};
use crate::nerve::{build_nerve, simplicial_cohomology, SimplicialCochain, SimplicialComplex};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `Φf` for a nerve cochain of dimension `n ≥ 0`.
///
/// In degree 0 the vertex function is first shifted to have zero sum and then
/// read as a trace-zero diagonal matrix; in higher degrees a chain
/// `i_0 < … < i_n` goes to the cochain sending `(e_{i_0 i_1}, …, e_{i_{n-1} i_n})`
/// to `f(i_0 … i_n)·e_{i_0 i_n}`.
pub fn phi(algebra: &LiePosetAlgebra, f: &SimplicialCochain) -> Result<Cochain, CeError> {
    let field = algebra.field();
    if f.dim < 0 {
        return Err(CeError::DimensionMismatch("the augmentation cochain has no image".into()));
    }
    let n = f.dim as usize;
    let module = ModuleKind::AdjointRestrictedToIdeal;
    if n == 0 {
        let size = algebra.n();
        let mut d = vec![field.zero(); size + 1];
        for (s, v) in &f.values {
            match s.as_slice() {
                [i] if (1..=size).contains(i) => d[*i] = v.clone(),
                _ => return Err(CeError::DimensionMismatch(format!("{s:?} is not a vertex"))),
            }
        }
        let total = d.iter().fold(field.zero(), |acc, x| &acc + x);
        let mean = total.checked_div(&field.from_i64(size as i64)).expect("characteristic exceeds N");
        let mut out = Cochain::zero(0, module, field);
        let mut partial = field.zero();
        for k in 1..size {
            partial = &partial + &(&d[k] - &mean);
            out.add_term(CochainKey { args: Vec::new(), module: algebra.eta(k) }, partial.clone());
        }
        return Ok(out);
    }
    let mut out = Cochain::zero(n, module, field);
    for (s, v) in &f.values {
        if s.len() != n + 1 {
            return Err(CeError::DimensionMismatch(format!("{s:?} in a {n}-cochain")));
        }
        let args: Option<Vec<usize>> = s.windows(2).map(|w| algebra.unit(w[0], w[1])).collect();
        let target = algebra.unit(s[0], s[n]);
        let (Some(args), Some(target)) = (args, target) else {
            return Err(CeError::DimensionMismatch(format!("{s:?} is not a chain of the poset")));
        };
        out.add_term(CochainKey { args, module: target }, v.clone());
    }
    Ok(out)
}

/// Matrix of `Φ^n` from nerve simplices of dimension `n` into the basis of
/// the weight-zero complex `C^n(k, g)_0`.
pub fn phi_matrix(complex: &CochainComplex, nerve: &SimplicialComplex, n: usize) -> Result<SparseMatrix, CeError> {
    let field = complex.field();
    let simplices = nerve.simplices(n as i32);
    let mut triplets = Vec::new();
    for (col, s) in simplices.iter().enumerate() {
        let image = phi(complex.algebra(), &SimplicialCochain::from_values(n as i32, [(s.clone(), field.one())]))?;
        for (row, v) in complex.to_vec(&image)? {
            triplets.push((row, col, v));
        }
    }
    Ok(SparseMatrix::from_triplets(complex.dim_cochains(n), simplices.len(), field, triplets)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiDegreeReport {
    pub degree: usize,
    pub simplices: usize,
    pub cochains: usize,
    pub rank: usize,
    /// `δΦ^n = Φ^{n+1}δ` as matrices.
    pub chain_map: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl PhiDegreeReport {
    /// Bijective for `n ≥ 1`; in degree 0 the kernel must be the constants.
    pub fn passed(&self) -> bool {
        let bijective_enough =
            if self.degree == 0 { self.rank + 1 == self.simplices || self.simplices == 0 } else { self.injective };
        self.chain_map && self.surjective && bijective_enough
    }
}

/// Checks `Φ` in every degree where the nerve has simplices.
pub fn phi_check(algebra: Arc<LiePosetAlgebra>) -> Result<Vec<PhiDegreeReport>, CeError> {
    let complex = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Adjoint, Acting::Ideal, true);
    let nerve = build_nerve(algebra.poset(), false);
    let top = nerve.max_dim().max(0) as usize;
    let field = algebra.field();
    let mut out = Vec::new();
    let mut current = phi_matrix(&complex, &nerve, 0)?;
    for n in 0..=top {
        let next = phi_matrix(&complex, &nerve, n + 1)?;
        let left = complex.coboundary(n).mul(&current)?;
        let right = next.mul(&nerve.coboundary(n as i32, field))?;
        let rank = linalg::rank(&current);
        out.push(PhiDegreeReport {
            degree: n,
            simplices: current.cols(),
            cochains: current.rows(),
            rank,
            chain_map: left == right,
            injective: rank == current.cols(),
            surjective: rank == current.rows(),
        });
        current = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationRow {
    pub degree: usize,
    /// `dim H^n(g, M)`.
    pub lhs: usize,
    /// `Σ_r C(N−1, r)·dim H^{n−r}(k, M)_0`.
    pub rhs: usize,
    /// `dim H^n(k, M)_0`.
    pub ideal_weight_zero: usize,
    /// `dim H̃^n(Σ)`, for adjoint coefficients.
    pub nerve: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorFactorizationReport {
    pub module: ModuleKind,
    pub rows: Vec<FactorizationRow>,
}

impl TensorFactorizationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.lhs == r.rhs && r.nerve.is_none_or(|d| d == r.ideal_weight_zero))
    }
}

/// Computes both sides of the factorization in degrees `0..=max_degree`.
pub fn tensor_factorization_check(
    algebra: Arc<LiePosetAlgebra>,
    kind: ModuleKind,
    max_degree: usize,
) -> Result<TensorFactorizationReport, CeError> {
    let kind = if kind == ModuleKind::AdjointRestrictedToIdeal { ModuleKind::Adjoint } else { kind };
    let full = CochainComplex::new(Arc::clone(&algebra), kind, Acting::Full, false);
    let max_degree = max_degree.min(full.top_degree());
    let lhs = cohomology(&full, 0..=max_degree, CohomologyOptions::default())?;
    let ideal = CochainComplex::new(Arc::clone(&algebra), kind, Acting::Ideal, true);
    let ideal_top = max_degree.min(ideal.top_degree());
    let mut hk = cohomology(&ideal, 0..=ideal_top, CohomologyOptions::default())?.dims();
    hk.resize(max_degree + 1, 0);
    let nerve = if kind == ModuleKind::Adjoint {
        let sigma_plus = build_nerve(algebra.poset(), true);
        let h = simplicial_cohomology(&sigma_plus, algebra.field())
            .map_err(|e| CeError::DimensionMismatch(e.to_string()))?;
        Some((0..=max_degree).map(|m| h.dim_h(m as i32)).collect::<Vec<_>>())
    } else {
        None
    };
    let rank_h = algebra.n_eta();
    let rows = (0..=max_degree)
        .map(|n| FactorizationRow {
            degree: n,
            lhs: lhs.dim_h(n).unwrap_or(0),
            rhs: (0..=n.min(rank_h)).map(|r| binomial(rank_h, r) * hk[n - r]).sum(),
            ideal_weight_zero: hk[n],
            nerve: nerve.as_ref().map(|d| d[n]),
        })
        .collect();
    Ok(TensorFactorizationReport { module: kind, rows })
}
