//! A reproducible battery of structural checks on one poset.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{build_algebra, LiePosetAlgebra, ModuleKind};
use crate::ce::{self, binomial, cohomology, Acting, CeError, Cochain, CochainComplex, CohomologyOptions};
use crate::deform::{h2_decomposition, DeformError};
use crate::field::{FieldCtx, Scalar};
use crate::nerve::{build_nerve, simplicial_cohomology};
use crate::poset::Poset;
use crate::weights::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The statement being checked, in words.
    pub claim: String,
    pub passed: bool,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub field: String,
    pub dim_g: usize,
    pub max_degree: usize,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Random cochains drawn per identity.
    pub samples: usize,
    pub seed: u64,
    /// Highest degree for full-complex cohomology; `None` picks [`default_max_degree`].
    pub max_degree: Option<usize>,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 50, seed: 0, max_degree: None, timings: false }
    }
}

/// Every degree for algebras of dimension at most 10, otherwise degrees up to 4.
pub fn default_max_degree(algebra: &LiePosetAlgebra) -> usize {
    if algebra.dim() <= 10 {
        algebra.dim()
    } else {
        4.min(algebra.dim())
    }
}

fn to_i64(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

struct Recorder {
    checks: Vec<CheckResult>,
    timings: bool,
}

impl Recorder {
    fn run<E>(
        &mut self,
        name: &str,
        claim: &str,
        f: impl FnOnce() -> Result<(Vec<i64>, Vec<i64>, bool), E>,
    ) -> Result<(), E> {
        let start = Instant::now();
        let (lhs, rhs, passed) = f()?;
        self.checks.push(CheckResult {
            name: name.to_string(),
            claim: claim.to_string(),
            passed,
            lhs,
            rhs,
            runtime_ms: self.timings.then(|| start.elapsed().as_millis()),
        });
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error("nerve: {0}")]
    Nerve(String),
}

/// Runs the whole suite on `poset` over `field`.
pub fn verify_suite(poset: &Poset, field: FieldCtx, options: VerifyOptions) -> Result<VerificationReport, VerifyError> {
    let algebra = Arc::new(build_algebra(poset, field)?);
    let max_degree = options.max_degree.unwrap_or_else(|| default_max_degree(&algebra)).min(algebra.dim());
    let all_degrees = max_degree == algebra.dim();
    let mut rec = Recorder { checks: Vec::new(), timings: options.timings };
    let rank_h = algebra.n_eta();
    let cmp = CohomologyOptions { compare_weight_zero: true, representatives: false };

    let trivial = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Trivial, Acting::Full, false);
    let htriv = cohomology(&trivial, 0..=max_degree, cmp)?;
    rec.run::<VerifyError>("trivial-cohomology", "dim H^n(g, k) = C(N-1, n)", || {
        let lhs = to_i64(&htriv.dims());
        let rhs: Vec<i64> = (0..=max_degree).map(|n| binomial(rank_h, n) as i64).collect();
        Ok((lhs.clone(), rhs.clone(), lhs == rhs))
    })?;

    let adjoint = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Adjoint, Acting::Full, false);
    let hadj = cohomology(&adjoint, 0..=max_degree, cmp)?;
    for (label, h) in [("trivial", &htriv), ("adjoint", &hadj)] {
        rec.run::<VerifyError>(
            &format!("viviani-{label}"),
            "cohomology equals that of the weight-zero subcomplex",
            || {
                let lhs = to_i64(&h.dims());
                let rhs: Vec<i64> = h.degrees.iter().map(|d| d.weight_zero.map_or(-1, |w| w.1 as i64)).collect();
                Ok((lhs.clone(), rhs.clone(), lhs == rhs))
            },
        )?;
    }

    let factor = ce::tensor_factorization_check(Arc::clone(&algebra), ModuleKind::Adjoint, max_degree)?;
    rec.run::<VerifyError>("adjoint-factorization", "dim H^n(g, g) = sum_r C(N-1, r) dim H^{n-r}(k, g)_0", || {
        let lhs: Vec<i64> = factor.rows.iter().map(|r| r.lhs as i64).collect();
        let rhs: Vec<i64> = factor.rows.iter().map(|r| r.rhs as i64).collect();
        Ok((lhs.clone(), rhs.clone(), lhs == rhs))
    })?;
    rec.run::<VerifyError>("nerve-comparison", "dim H^m(k, g)_0 = dim of reduced H^m of the nerve", || {
        let lhs: Vec<i64> = factor.rows.iter().map(|r| r.ideal_weight_zero as i64).collect();
        let rhs: Vec<i64> = factor.rows.iter().map(|r| r.nerve.unwrap_or(0) as i64).collect();
        Ok((lhs.clone(), rhs.clone(), lhs == rhs))
    })?;

    // alternating sums over every degree; the weight-zero complexes stand in
    // when the full range was not computed
    for (label, kind, full) in [("trivial", ModuleKind::Trivial, &htriv), ("adjoint", ModuleKind::Adjoint, &hadj)] {
        rec.run::<VerifyError>(&format!("euler-{label}"), "the alternating sum of dim H^n vanishes", || {
            let chi = if all_degrees {
                full.euler_characteristic.expect("all degrees computed")
            } else {
                let zero = CochainComplex::new(Arc::clone(&algebra), kind, Acting::Full, true);
                cohomology(&zero, 0..=zero.top_degree(), CohomologyOptions::default())?
                    .euler_characteristic
                    .expect("all degrees computed")
            };
            Ok((vec![chi], vec![0], chi == 0))
        })?;
    }

    rec.run::<VerifyError>("center-nerve", "dim center(g) = dim of reduced H^0 of the nerve", || {
        let h =
            simplicial_cohomology(&build_nerve(poset, true), field).map_err(|e| VerifyError::Nerve(e.to_string()))?;
        let (lhs, rhs) = (algebra.center().dim() as i64, h.dim_h(0) as i64);
        Ok((vec![lhs], vec![rhs], lhs == rhs))
    })?;

    rec.run::<VerifyError>(
        "phi-isomorphism",
        "Phi is a chain isomorphism onto C*(k, g)_0 (kernel = constants in degree 0)",
        || {
            let reports = ce::phi_check(Arc::clone(&algebra))?;
            let lhs = reports.iter().map(|r| r.rank as i64).collect();
            let rhs = reports.iter().map(|r| r.cochains as i64).collect();
            Ok((lhs, rhs, reports.iter().all(|r| r.passed())))
        },
    )?;

    if max_degree >= 2 {
        rec.run::<VerifyError>("h2-decomposition", "dim H^2(g, g) splits into types (2,0), (1,1), (0,2)", || {
            let h = h2_decomposition(Arc::clone(&algebra))?;
            let (a, b, c) = h.dims();
            Ok((vec![a as i64, b as i64, c as i64], vec![h.dim_h2 as i64], h.consistent()))
        })?;
    }

    let start = Instant::now();
    let identities = identity_suite(Arc::clone(&algebra), options.samples, options.seed)?;
    let elapsed = start.elapsed().as_millis();
    for check in identities {
        rec.checks.push(CheckResult { runtime_ms: rec.timings.then_some(elapsed), ..check });
    }

    Ok(VerificationReport {
        n: poset.len(),
        field: field.to_string(),
        dim_g: algebra.dim(),
        max_degree,
        checks: rec.checks,
    })
}

/// A random cochain with up to `terms` basis terms and coefficients in `[-3, 3]`.
pub fn random_cochain(complex: &CochainComplex, n: usize, terms: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let keys = complex.basis(n).keys();
    let field = complex.field();
    let mut f = Cochain::zero(n, complex.module_kind(), field);
    if keys.is_empty() {
        return f;
    }
    for _ in 0..terms {
        let k = keys[rng.gen_range(0..keys.len())].clone();
        f.add_term(k, field.from_i64(rng.gen_range(-3..=3)));
    }
    f
}

fn random_h(algebra: &LiePosetAlgebra, rng: &mut ChaCha8Rng) -> Vec<(usize, Scalar)> {
    let field = algebra.field();
    (0..algebra.n_eta()).map(|k| (k, field.from_i64(rng.gen_range(-3..=3)))).filter(|(_, v)| !v.is_zero()).collect()
}

/// Randomized algebraic identities, each sampled `samples` times.
pub fn identity_suite(
    algebra: Arc<LiePosetAlgebra>,
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckResult>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = algebra.field();
    let top = algebra.dim();
    let full = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Adjoint, Acting::Full, false);
    let zero = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Adjoint, Acting::Full, true);
    let triv = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Trivial, Acting::Full, false);
    let ideal = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Adjoint, Acting::Ideal, true);
    let nerve = build_nerve(algebra.poset(), false);
    let mut out = Vec::new();
    let mut push = |name: &str, claim: &str, failures: usize| {
        out.push(CheckResult {
            name: name.into(),
            claim: claim.into(),
            passed: failures == 0,
            lhs: vec![failures as i64],
            rhs: vec![0],
            runtime_ms: None,
        });
    };

    // keys grouped by integer weight, per degree, for homogeneous sampling
    let mut by_weight: Vec<Vec<Vec<_>>> = Vec::new();
    for n in 0..=top {
        let mut groups: BTreeMap<WeightVector, Vec<_>> = BTreeMap::new();
        for k in full.basis(n).keys() {
            groups.entry(full.key_weight(k)).or_default().push(k.clone());
        }
        by_weight.push(groups.into_values().collect());
    }
    let mut failures = 0;
    for _ in 0..samples {
        let n = rng.gen_range(0..=top);
        let groups = &by_weight[n];
        if groups.is_empty() {
            continue;
        }
        let g = &groups[rng.gen_range(0..groups.len())];
        let mut f = Cochain::zero(n, ModuleKind::Adjoint, field);
        for _ in 0..3 {
            f.add_term(g[rng.gen_range(0..g.len())].clone(), field.from_i64(rng.gen_range(-3..=3)));
        }
        if !full.weight_identity_check(&random_h(&algebra, &mut rng), &f)? {
            failures += 1;
        }
    }
    push("weight-identity", "i_h dF + d i_h F = w(h) F for homogeneous F", failures);

    let mut failures = 0;
    for _ in 0..samples {
        let n = rng.gen_range(1..=top);
        let f = random_cochain(&zero, n, 6, &mut rng);
        let h = random_h(&algebra, &mut rng);
        let lhs = ce::contract(&h, &zero.apply_coboundary(&f));
        let rhs = zero.apply_coboundary(&ce::contract(&h, &f)).scale(&field.from_i64(-1));
        if lhs != rhs {
            failures += 1;
        }
    }
    push("contraction-anticommutes", "i_h d F = -d i_h F at weight zero", failures);

    let mut failures = 0;
    for _ in 0..samples {
        let n = rng.gen_range(0..top.saturating_sub(1).max(1));
        let f = random_cochain(&full, n, 6, &mut rng);
        let once = full.apply_coboundary(&f);
        if !full.apply_coboundary(&once).is_zero() || full.apply_coboundary_matrix(&f)? != once {
            failures += 1;
        }
    }
    push("delta-squared", "d d F = 0, and both coboundary assemblies agree", failures);

    let mut failures = 0;
    for _ in 0..samples {
        let r = rng.gen_range(0..=2.min(top));
        let s = rng.gen_range(0..=2.min(top - r));
        let f = random_cochain(&triv, r, 4, &mut rng);
        let g = random_cochain(&full, s, 4, &mut rng);
        let lhs = full.apply_coboundary(&ce::cup(&f, &g)?);
        let t1 = ce::cup(&triv.apply_coboundary(&f), &g)?;
        let t2 = ce::cup(&f, &full.apply_coboundary(&g))?;
        let rhs = if r % 2 == 0 { t1.add(&t2) } else { t1.sub(&t2) };
        if lhs != rhs {
            failures += 1;
        }
    }
    push("cup-leibniz", "d(F u G) = dF u G + (-1)^r F u dG", failures);

    let mut failures = 0;
    let rank_h = algebra.n_eta();
    for _ in 0..samples {
        let n = rng.gen_range(0..=ideal.top_degree().min(3));
        let r = rng.gen_range(0..=rank_h);
        let labels: Vec<Vec<usize>> = {
            let mut v = Vec::new();
            let items: Vec<usize> = (1..=rank_h).collect();
            collect_subsets(&items, r, &mut Vec::new(), &mut v);
            v
        };
        let label = labels[rng.gen_range(0..labels.len())].clone();
        let g = random_cochain(&ideal, n, 4, &mut rng);
        let f = ce::rho(&algebra, &label, &g)?;
        let ok = ce::sigma(&algebra, &f, r)?
            .into_iter()
            .all(|(l, part)| if l == label { part == g } else { part.is_zero() });
        if !ok {
            failures += 1;
        }
    }
    push("sigma-rho", "sigma(rho(I, G)) = eta_I^v (x) G", failures);

    let mut failures = 0;
    for _ in 0..samples {
        let n = rng.gen_range(0..top);
        let f = random_cochain(&zero, n, 6, &mut rng);
        for part in ce::bigraded_decompose(&algebra, &f) {
            let image = zero.apply_coboundary(&part.cochain);
            if ce::bigraded_decompose(&algebra, &image).iter().any(|q| q.r != part.r) {
                failures += 1;
            }
        }
    }
    push("bigrading", "d preserves the number of Cartan arguments", failures);

    let mut failures = 0;
    let top_simplex = nerve.max_dim();
    for _ in 0..samples {
        if top_simplex < 0 {
            break;
        }
        let dim = rng.gen_range(0..=top_simplex);
        let f = crate::nerve::SimplicialCochain::from_values(
            dim,
            nerve.simplices(dim).iter().map(|s| (s.clone(), field.from_i64(rng.gen_range(-3..=3)))),
        );
        let lhs = ideal.apply_coboundary(&ce::phi(&algebra, &f)?);
        let df = nerve.apply_coboundary(&f, field).map_err(|e| VerifyError::Nerve(e.to_string()))?;
        let rhs = ce::phi(&algebra, &df)?;
        if lhs != rhs {
            failures += 1;
        }
    }
    push("phi-chain-map", "d Phi f = Phi d f", failures);
    Ok(out)
}

fn collect_subsets(items: &[usize], r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().map_or(0, |&x| items.iter().position(|&i| i == x).unwrap() + 1);
    for k in start..items.len() {
        cur.push(items[k]);
        collect_subsets(items, r, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_sphere1() {
        let r = verify_suite(&Poset::sphere(1), FieldCtx::rationals(), VerifyOptions::default()).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
        assert!(r.checks.iter().all(|c| c.runtime_ms.is_none()));
    }

    #[test]
    fn suite_is_deterministic() {
        let opts = VerifyOptions { samples: 10, seed: 5, ..Default::default() };
        let a = verify_suite(&Poset::chain(3).unwrap(), FieldCtx::prime(5).unwrap(), opts).unwrap();
        let b = verify_suite(&Poset::chain(3).unwrap(), FieldCtx::prime(5).unwrap(), opts).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn default_degree_rule() {
        let small = build_algebra(&Poset::sphere(1), FieldCtx::rationals()).unwrap();
        assert_eq!(default_max_degree(&small), 7);
        let big = build_algebra(&Poset::sphere(2), FieldCtx::rationals()).unwrap();
        assert_eq!(default_max_degree(&big), 4);
    }
}
