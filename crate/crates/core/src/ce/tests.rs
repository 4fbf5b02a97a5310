use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::build_algebra;
use crate::nerve::{build_nerve, SimplicialCochain};
use crate::poset::Poset;

fn q() -> FieldCtx {
    FieldCtx::rationals()
}

fn alg(p: Poset) -> Arc<LiePosetAlgebra> {
    Arc::new(build_algebra(&p, q()).unwrap())
}

fn sphere1() -> Arc<LiePosetAlgebra> {
    alg(Poset::sphere(1))
}

fn sl3_example() -> Arc<LiePosetAlgebra> {
    alg(Poset::from_relations(3, &[(1, 2)]).unwrap())
}

fn random_cochain(c: &CochainComplex, n: usize, terms: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let keys = c.basis(n).keys();
    let mut f = Cochain::zero(n, c.module_kind(), c.field());
    if keys.is_empty() {
        return f;
    }
    for _ in 0..terms {
        let k = keys[rng.gen_range(0..keys.len())].clone();
        f.add_term(k, c.field().from_i64(rng.gen_range(-3..=3)));
    }
    f
}

fn key(args: &[usize], module: usize) -> CochainKey {
    CochainKey { args: args.to_vec(), module }
}

#[test]
fn trivial_degree_zero_is_closed() {
    let c = CochainComplex::new(alg(Poset::chain(3).unwrap()), ModuleKind::Trivial, Acting::Full, false);
    assert!(c.coboundary(0).is_zero());
    let h = cohomology(&c, 0..=0, CohomologyOptions::default()).unwrap();
    assert_eq!(h.dims(), vec![1]);
}

#[test]
fn adjoint_degree_zero_kernel_is_center() {
    let c = CochainComplex::new(sl3_example(), ModuleKind::Adjoint, Acting::Full, false);
    assert_eq!(linalg::kernel_basis(&c.coboundary(0)).dim(), 1);
}

#[test]
fn delta_squared_vanishes_on_sphere1_adjoint() {
    let c = CochainComplex::new(sphere1(), ModuleKind::Adjoint, Acting::Full, false);
    for n in 0..c.top_degree() {
        assert!(c.coboundary(n + 1).mul(&c.coboundary(n)).unwrap().is_zero(), "degree {n}");
    }
}

#[test]
fn chain3_trivial_cohomology() {
    let c = CochainComplex::new(alg(Poset::chain(3).unwrap()), ModuleKind::Trivial, Acting::Full, false);
    let h = cohomology(&c, 0..=5, CohomologyOptions { compare_weight_zero: true, representatives: false }).unwrap();
    assert_eq!(h.dims(), vec![1, 2, 1, 0, 0, 0]);
    assert_eq!(h.viviani, Some(true));
    assert_eq!(h.euler_characteristic, Some(0));
}

#[test]
fn sphere1_adjoint_cohomology() {
    let c = CochainComplex::new(sphere1(), ModuleKind::Adjoint, Acting::Full, false);
    let h = cohomology(&c, 0..=7, CohomologyOptions { compare_weight_zero: true, representatives: false }).unwrap();
    assert_eq!(h.dims(), vec![0, 1, 3, 3, 1, 0, 0, 0]);
    assert_eq!(h.viviani, Some(true));
}

#[test]
fn ideal_center_of_sphere1_is_zero() {
    let c = CochainComplex::new(sphere1(), ModuleKind::Adjoint, Acting::Ideal, true);
    assert_eq!(c.module_kind(), ModuleKind::AdjointRestrictedToIdeal);
    assert_eq!(cohomology(&c, 0..=0, CohomologyOptions::default()).unwrap().dims(), vec![0]);
}

#[test]
fn degree_beyond_top_is_rejected() {
    let c = CochainComplex::new(alg(Poset::chain(2).unwrap()), ModuleKind::Trivial, Acting::Full, false);
    assert_eq!(cohomology(&c, 0..=3, CohomologyOptions::default()).unwrap_err(), CeError::DegreeOutOfRange(3, 2));
}

#[test]
fn representatives_are_nontrivial_cocycles() {
    let c = CochainComplex::new(sphere1(), ModuleKind::Adjoint, Acting::Full, false);
    let h = cohomology(&c, 2..=2, CohomologyOptions { compare_weight_zero: false, representatives: true }).unwrap();
    let reps = &h.representatives[&2];
    assert_eq!(reps.len(), 3);
    let d1 = c.coboundary(1);
    for r in reps {
        assert!(c.apply_coboundary(r).is_zero());
        assert!(!linalg::reduce_mod_image(&c.to_vec(r).unwrap(), &d1).is_empty());
    }
}

#[test]
fn weight_decomposition_examples() {
    let a = alg(Poset::chain(3).unwrap());
    let c = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Full, false);
    let single = Cochain::from_terms(1, ModuleKind::Adjoint, q(), [(key(&[2], 3), q().one())]);
    assert_eq!(c.weight_decompose(&single).len(), 1);
    // e12 -> e12 has weight 0, e12 -> e13 has weight w13 - w12
    let two = single.add(&Cochain::from_terms(1, ModuleKind::Adjoint, q(), [(key(&[2], 2), q().one())]));
    let parts = c.weight_decompose(&two);
    assert_eq!(parts.len(), 2);
    assert_eq!(c.weight_zero_part(&two).len(), 1);
}

#[test]
fn contraction_examples() {
    let a = sphere1();
    let f = Cochain::from_terms(1, ModuleKind::Adjoint, q(), [(key(&[0], 5), q().one())]);
    let eta1 = a.basis_element(0);
    assert_eq!(contract(&eta1, &f), Cochain::from_terms(0, ModuleKind::Adjoint, q(), [(key(&[], 5), q().one())]));
    let g =
        Cochain::from_terms(2, ModuleKind::Adjoint, q(), [(key(&[0, 4], 5), q().one()), (key(&[0, 1], 3), q().one())]);
    assert!(contract(&eta1, &contract(&eta1, &g)).is_zero());
}

#[test]
fn weight_identity_on_every_basis_cochain_of_sphere1() {
    let a = sphere1();
    let c = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Full, false);
    let eta1 = a.basis_element(0);
    for n in 0..=c.top_degree() {
        for k in c.basis(n).keys() {
            let f = Cochain::from_terms(n, ModuleKind::Adjoint, q(), [(k.clone(), q().one())]);
            assert!(c.weight_identity_check(&eta1, &f).unwrap(), "{k}");
        }
    }
}

#[test]
fn nonhomogeneous_is_rejected() {
    let a = alg(Poset::chain(3).unwrap());
    let c = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Full, false);
    let f = Cochain::from_terms(1, ModuleKind::Adjoint, q(), [(key(&[2], 2), q().one()), (key(&[2], 3), q().one())]);
    assert!(matches!(c.weight_identity_check(&a.basis_element(0), &f), Err(CeError::NotHomogeneous(..))));
}

#[test]
fn cup_examples() {
    let one = Cochain::from_terms(0, ModuleKind::Trivial, q(), [(key(&[], 0), q().one())]);
    let g = Cochain::from_terms(2, ModuleKind::Adjoint, q(), [(key(&[1, 3], 4), q().from_i64(5))]);
    assert_eq!(cup(&one, &g).unwrap(), g);
    let f =
        Cochain::from_terms(1, ModuleKind::Trivial, q(), [(key(&[0], 0), q().from_i64(2)), (key(&[1], 0), q().one())]);
    let h =
        Cochain::from_terms(1, ModuleKind::Trivial, q(), [(key(&[0], 0), q().one()), (key(&[1], 0), q().from_i64(3))]);
    let fh = cup(&f, &h).unwrap();
    // F(x)H(y) - F(y)H(x) at (x, y) = (0, 1): 2*3 - 1*1
    assert_eq!(fh.eval(&[0, 1]), vec![(0, q().from_i64(5))]);
    assert_eq!(fh.eval(&[1, 0]), vec![(0, q().from_i64(-5))]);
    assert!(matches!(cup(&g, &f), Err(CeError::IncompatiblePairing(..))));
}

#[test]
fn sigma_and_rho_examples() {
    let a = sphere1();
    let c = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Full, true);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = random_cochain(&c, 2, 6, &mut rng);
    let no_h = Cochain::from_terms(
        2,
        ModuleKind::Adjoint,
        q(),
        f.terms().filter(|(k, _)| k.args.iter().all(|&x| !a.is_eta(x))).map(|(k, v)| (k.clone(), v.clone())),
    );
    assert!(sigma(&a, &no_h, 1).unwrap().iter().all(|(_, g)| g.is_zero()));
    // r = 0 restricts F to the ideal
    assert_eq!(
        sigma(&a, &f, 0).unwrap(),
        vec![(vec![], no_h.clone().with_module(ModuleKind::AdjointRestrictedToIdeal))]
    );
    let k = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Ideal, true);
    let g = random_cochain(&k, 1, 3, &mut rng);
    assert_eq!(rho(&a, &[], &g).unwrap().with_module(ModuleKind::AdjointRestrictedToIdeal), g);
    let lifted = rho(&a, &[1, 3], &g).unwrap();
    let parts = bigraded_decompose(&a, &lifted);
    assert!(parts.len() <= 1);
    if let Some(p) = parts.first() {
        assert_eq!(p.r, 2);
    }
}

#[test]
fn phi_of_edge_indicator_on_chain3() {
    let a = alg(Poset::chain(3).unwrap());
    let f = SimplicialCochain::from_values(1, [(vec![1, 2], q().one())]);
    let e12 = a.unit(1, 2).unwrap();
    let expected = Cochain::from_terms(1, ModuleKind::AdjointRestrictedToIdeal, q(), [(key(&[e12], e12), q().one())]);
    assert_eq!(phi(&a, &f).unwrap(), expected);
    let bad = SimplicialCochain::from_values(1, [(vec![1, 1], q().one())]);
    assert!(phi(&a, &bad).is_err());
}

#[test]
fn phi_is_chain_isomorphism_on_sphere1() {
    for report in phi_check(sphere1()).unwrap() {
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn phi_commutes_with_delta_on_random_cochains() {
    let a = sphere1();
    let k = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Ideal, true);
    let nerve = build_nerve(a.poset(), false);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dim in 0..=1 {
        for _ in 0..20 {
            let f = SimplicialCochain::from_values(
                dim,
                nerve.simplices(dim).iter().map(|s| (s.clone(), q().from_i64(rng.gen_range(-4..=4)))),
            );
            let lhs = k.apply_coboundary(&phi(&a, &f).unwrap());
            let rhs = phi(&a, &nerve.apply_coboundary(&f, q()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tensor_factorization_examples() {
    let r = tensor_factorization_check(sphere1(), ModuleKind::Adjoint, 7).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.rows.iter().map(|x| x.ideal_weight_zero).collect::<Vec<_>>(), vec![0, 1, 0, 0, 0, 0, 0, 0]);
    let r = tensor_factorization_check(alg(Poset::chain(4).unwrap()), ModuleKind::Adjoint, 9).unwrap();
    assert!(r.passed());
    assert!(r.rows.iter().all(|x| x.lhs == 0 && x.rhs == 0));
    let r = tensor_factorization_check(sphere1(), ModuleKind::Trivial, 7).unwrap();
    assert!(r.passed());
    assert_eq!(r.rows.iter().map(|x| x.lhs).collect::<Vec<_>>(), vec![1, 3, 3, 1, 0, 0, 0, 0]);
}

#[test]
fn ideal_trivial_weight_zero_cohomology_is_concentrated_in_degree_zero() {
    for p in [Poset::sphere(1), Poset::chain(4).unwrap(), Poset::from_relations(5, &[(1, 3), (2, 3), (3, 5)]).unwrap()]
    {
        let c = CochainComplex::new(alg(p), ModuleKind::Trivial, Acting::Ideal, true);
        let h = cohomology(&c, 0..=c.top_degree(), CohomologyOptions::default()).unwrap();
        assert_eq!(h.dim_h(0), Some(1));
        assert!(h.degrees[1..].iter().all(|d| d.dim_h == 0));
    }
}

fn small_algebras() -> Vec<Arc<LiePosetAlgebra>> {
    vec![sphere1(), alg(Poset::chain(3).unwrap()), sl3_example()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_and_pushforward_coboundaries_agree(seed in any::<u64>(), which in 0usize..3, adjoint in any::<bool>(), wz in any::<bool>()) {
        let a = small_algebras()[which].clone();
        let kind = if adjoint { ModuleKind::Adjoint } else { ModuleKind::Trivial };
        let c = CochainComplex::new(a, kind, Acting::Full, wz);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..c.top_degree());
        let f = random_cochain(&c, n, 5, &mut rng);
        prop_assert_eq!(c.apply_coboundary_matrix(&f).unwrap(), c.apply_coboundary(&f));
    }

    #[test]
    fn weight_parts_partition_the_cochain(seed in any::<u64>()) {
        let a = sphere1();
        let c = CochainComplex::new(a, ModuleKind::Adjoint, Acting::Full, false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_cochain(&c, 2, 12, &mut rng);
        let parts = c.weight_decompose(&f);
        let mut sum = Cochain::zero(2, ModuleKind::Adjoint, q());
        let mut seen = std::collections::BTreeSet::new();
        for p in parts.values() {
            for k in p.keys() {
                prop_assert!(seen.insert(k.clone()));
            }
            sum = sum.add(p);
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let a = sphere1();
        let triv = CochainComplex::new(Arc::clone(&a), ModuleKind::Trivial, Acting::Full, false);
        let adj = CochainComplex::new(a, ModuleKind::Adjoint, Acting::Full, false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(0..3);
        let s = rng.gen_range(0..3);
        let f = random_cochain(&triv, r, 4, &mut rng);
        let g = random_cochain(&adj, s, 4, &mut rng);
        let lhs = adj.apply_coboundary(&cup(&f, &g).unwrap());
        let t1 = cup(&triv.apply_coboundary(&f), &g).unwrap();
        let t2 = cup(&f, &adj.apply_coboundary(&g)).unwrap();
        let rhs = if r % 2 == 0 { t1.add(&t2) } else { t1.sub(&t2) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_preserves_bigrading(seed in any::<u64>()) {
        let a = sphere1();
        let c = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Full, true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..5);
        let f = random_cochain(&c, n, 8, &mut rng);
        let parts = bigraded_decompose(&a, &f);
        prop_assert!(parts.len() <= n.min(a.n_eta()) + 1);
        for p in parts {
            for q in bigraded_decompose(&a, &c.apply_coboundary(&p.cochain)) {
                prop_assert_eq!(q.r, p.r);
            }
        }
    }

    #[test]
    fn sigma_inverts_rho(seed in any::<u64>()) {
        let a = sphere1();
        let k = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Ideal, true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..3);
        let r = rng.gen_range(0..=3);
        let labels = ops::subsets(3, r);
        let label = labels[rng.gen_range(0..labels.len())].clone();
        let g = random_cochain(&k, n, 4, &mut rng);
        let f = rho(&a, &label, &g).unwrap();
        for (l, part) in sigma(&a, &f, r).unwrap() {
            if l == label {
                prop_assert_eq!(&part, &g);
            } else {
                prop_assert!(part.is_zero());
            }
        }
    }

    #[test]
    fn contraction_anticommutes_with_delta_at_weight_zero(seed in any::<u64>()) {
        let a = sphere1();
        let c = CochainComplex::new(Arc::clone(&a), ModuleKind::Adjoint, Acting::Full, true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..5);
        let f = random_cochain(&c, n, 6, &mut rng);
        let h: Vec<(usize, Scalar)> = (0..3).map(|k| (k, q().from_i64(rng.gen_range(-2..=2)))).filter(|(_, v)| !v.is_zero()).collect();
        let lhs = contract(&h, &c.apply_coboundary(&f));
        let rhs = c.apply_coboundary(&contract(&h, &f)).scale(&q().from_i64(-1));
        prop_assert_eq!(lhs, rhs);
    }
}
