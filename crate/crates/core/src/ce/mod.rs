//! Chevalley–Eilenberg cochain complexes `C*(g, M)` and `C*(k, M)`.
//!
//! A basis cochain is a strictly increasing tuple of acting-algebra basis
//! positions together with one module basis vector. Every routine that has
//! to move arguments into that normal form goes through [`normalize`], so
//! the coboundary, contraction, cup product, `σ`, `ρ` and `Φ` share one sign
//! convention.

mod cochain;
mod ops;
mod phi;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{module_create, AlgebraError, GModule, LiePosetAlgebra, ModuleKind};
use crate::field::{FieldCtx, Scalar};
use crate::linalg::{self, LinalgError, SparseMatrix, SparseVec, Subspace};
use crate::weights::WeightVector;

pub use cochain::{normalize, Cochain, CochainKey};
pub use ops::{bigraded_decompose, contract, cup, rho, sigma, BigradedComponent};
pub use phi::{
    binomial, phi, phi_check, phi_matrix, tensor_factorization_check, FactorizationRow, PhiDegreeReport,
    TensorFactorizationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("cochain is not homogeneous: it mixes weights {0} and {1}")]
    NotHomogeneous(WeightVector, WeightVector),
    #[error("cannot pair a {0}-valued cochain with a {1}-valued one")]
    IncompatiblePairing(ModuleKind, ModuleKind),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("delta^{} o delta^{} is not zero", .0 + 1, .0)]
    CoboundaryNotNilpotent(usize),
    #[error("degree {0} exceeds the dimension {1} of the acting algebra")]
    DegreeOutOfRange(usize, usize),
    #[error("cochain key {0:?} is not a basis element of this complex")]
    NotInComplex(CochainKey),
}

/// Which algebra acts: all of `g`, or only the nilpotent ideal `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Acting {
    Full,
    Ideal,
}

/// Basis cochains of one degree, in lexicographic order.
#[derive(Debug)]
pub struct DegreeBasis {
    keys: Vec<CochainKey>,
    index: HashMap<CochainKey, usize>,
    collisions: usize,
}

impl DegreeBasis {
    pub fn keys(&self) -> &[CochainKey] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn position(&self, key: &CochainKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Keys with a nonzero integer weight that vanishes in the field.
    pub fn weight_collisions(&self) -> usize {
        self.collisions
    }
}

pub struct CochainComplex {
    algebra: Arc<LiePosetAlgebra>,
    module: GModule,
    acting: Vec<usize>,
    acting_kind: Acting,
    weight_zero: bool,
    bases: Vec<OnceLock<DegreeBasis>>,
    // for each basis position c, the pairs a < b of acting positions with c in [a, b]
    bracket_preimages: Vec<Vec<(usize, usize, Scalar)>>,
}

impl CochainComplex {
    /// `kind` is the coefficient module; with `Acting::Ideal` an adjoint module is
    /// restricted to the ideal.
    pub fn new(algebra: Arc<LiePosetAlgebra>, kind: ModuleKind, acting: Acting, weight_zero: bool) -> Self {
        let kind = match (kind, acting) {
            (ModuleKind::Adjoint, Acting::Ideal) => ModuleKind::AdjointRestrictedToIdeal,
            (ModuleKind::AdjointRestrictedToIdeal, _) => ModuleKind::AdjointRestrictedToIdeal,
            (k, _) => k,
        };
        let acting_kind = if kind == ModuleKind::AdjointRestrictedToIdeal { Acting::Ideal } else { acting };
        let module = module_create(&algebra, kind);
        let acting = match acting_kind {
            Acting::Full => (0..algebra.dim()).collect::<Vec<_>>(),
            Acting::Ideal => algebra.ideal_positions(),
        };
        let mut bracket_preimages = vec![Vec::new(); algebra.dim()];
        for (ia, &a) in acting.iter().enumerate() {
            for &b in &acting[ia + 1..] {
                for (c, v) in algebra.bracket_basis(a, b) {
                    bracket_preimages[*c].push((a, b, v.clone()));
                }
            }
        }
        let bases = (0..acting.len() + 2).map(|_| OnceLock::new()).collect();
        CochainComplex { algebra, module, acting, acting_kind, weight_zero, bases, bracket_preimages }
    }

    pub fn algebra(&self) -> &LiePosetAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<LiePosetAlgebra> {
        Arc::clone(&self.algebra)
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn module_kind(&self) -> ModuleKind {
        self.module.kind()
    }

    pub fn acting(&self) -> &[usize] {
        &self.acting
    }

    pub fn acting_kind(&self) -> Acting {
        self.acting_kind
    }

    pub fn field(&self) -> FieldCtx {
        self.algebra.field()
    }

    pub fn is_weight_zero(&self) -> bool {
        self.weight_zero
    }

    /// Highest degree with possibly nonzero cochains.
    pub fn top_degree(&self) -> usize {
        self.acting.len()
    }

    /// The same algebra and module, restricted (or not) to weight zero.
    pub fn with_weight_filter(&self, weight_zero: bool) -> CochainComplex {
        CochainComplex::new(self.algebra_arc(), self.module.kind(), self.acting_kind, weight_zero)
    }

    /// `weight(module) − Σ weight(args)`.
    pub fn key_weight(&self, key: &CochainKey) -> WeightVector {
        let mut w = self.module.weight(key.module).clone();
        for &a in &key.args {
            w = &w - self.algebra.weight(a);
        }
        w
    }

    pub fn basis(&self, n: usize) -> &DegreeBasis {
        static EMPTY: OnceLock<DegreeBasis> = OnceLock::new();
        if n >= self.bases.len() {
            return EMPTY.get_or_init(|| DegreeBasis { keys: Vec::new(), index: HashMap::new(), collisions: 0 });
        }
        self.bases[n].get_or_init(|| self.enumerate(n))
    }

    pub fn dim_cochains(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    fn enumerate(&self, n: usize) -> DegreeBasis {
        let field = self.field();
        let mut keys = Vec::new();
        let mut collisions = 0;
        for_each_combination(&self.acting, n, |args| {
            let mut arg_weight = WeightVector::zero(self.algebra.n_eta());
            for &a in args {
                arg_weight = &arg_weight + self.algebra.weight(a);
            }
            for m in 0..self.module.dim() {
                let w = self.module.weight(m) - &arg_weight;
                if self.weight_zero && !w.is_zero_in(field) {
                    continue;
                }
                if w.is_zero_in(field) && !w.is_integer_zero() {
                    collisions += 1;
                }
                keys.push(CochainKey { args: args.to_vec(), module: m });
            }
        });
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        DegreeBasis { keys, index, collisions }
    }

    /// Matrix of `δ: C^n → C^{n+1}`, assembled row by row from the defining formula.
    pub fn coboundary(&self, n: usize) -> SparseMatrix {
        let field = self.field();
        let source = self.basis(n);
        let target = self.basis(n + 1);
        let rows: Vec<SparseVec> = target
            .keys()
            .par_iter()
            .map(|key| {
                let mut terms: Vec<(usize, Scalar)> = Vec::new();
                let t = &key.args;
                for i in 0..t.len() {
                    let mut rest = t.clone();
                    let g = rest.remove(i);
                    for (m, c) in self.module.preimages(g, key.module) {
                        let col = source
                            .position(&CochainKey { args: rest.clone(), module: *m })
                            .expect("the action preserves weight");
                        terms.push((col, signed(i % 2 == 1, c)));
                    }
                }
                for i in 0..t.len() {
                    for j in i + 1..t.len() {
                        let bracket = self.algebra.bracket_basis(t[i], t[j]);
                        if bracket.is_empty() {
                            continue;
                        }
                        let rest: Vec<usize> =
                            t.iter().enumerate().filter(|(r, _)| *r != i && *r != j).map(|(_, a)| *a).collect();
                        for (c, v) in bracket {
                            let mut args = Vec::with_capacity(rest.len() + 1);
                            args.push(*c);
                            args.extend_from_slice(&rest);
                            let Some((negative, sorted)) = normalize(&args) else { continue };
                            let col = source
                                .position(&CochainKey { args: sorted, module: key.module })
                                .expect("the bracket preserves weight");
                            terms.push((col, signed(negative ^ ((i + j) % 2 == 1), v)));
                        }
                    }
                }
                linalg::sparse_from_pairs(field, terms)
            })
            .collect();
        SparseMatrix::from_rows(source.len(), field, rows)
    }

    /// `δF` computed by pushing each basis cochain of `F` forward; this never
    /// consults the degree bases and serves as an independent check on
    /// [`CochainComplex::coboundary`].
    pub fn apply_coboundary(&self, f: &Cochain) -> Cochain {
        let field = self.field();
        let mut out = Cochain::zero(f.degree + 1, f.module, field);
        let acting: BTreeSet<usize> = self.acting.iter().copied().collect();
        for (key, v) in f.terms() {
            let s = &key.args;
            for &x in &acting {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let pos = s.partition_point(|&a| a < x);
                let mut t = s.clone();
                t.insert(pos, x);
                for (m, c) in self.module.act(x, key.module) {
                    out.add_term(CochainKey { args: t.clone(), module: *m }, signed(pos % 2 == 1, &(c * v)));
                }
            }
            for (p, &c) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(p);
                for (a, b, kappa) in &self.bracket_preimages[c] {
                    if rest.binary_search(a).is_ok() || rest.binary_search(b).is_ok() {
                        continue;
                    }
                    let mut t = rest.clone();
                    let ia = t.partition_point(|&z| z < *a);
                    t.insert(ia, *a);
                    let ib = t.partition_point(|&z| z < *b);
                    t.insert(ib, *b);
                    let negative = (ia + ib + p) % 2 == 1;
                    out.add_term(CochainKey { args: t, module: key.module }, signed(negative, &(kappa * v)));
                }
            }
        }
        out
    }

    pub fn to_vec(&self, f: &Cochain) -> Result<SparseVec, CeError> {
        let basis = self.basis(f.degree);
        let mut v = Vec::with_capacity(f.len());
        for (key, x) in f.terms() {
            let i = basis.position(key).ok_or_else(|| CeError::NotInComplex(key.clone()))?;
            v.push((i, x.clone()));
        }
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn from_vec(&self, n: usize, v: &[(usize, Scalar)]) -> Cochain {
        let keys = self.basis(n).keys();
        Cochain::from_terms(n, self.module.kind(), self.field(), v.iter().map(|(i, x)| (keys[*i].clone(), x.clone())))
    }

    /// `δF` through the assembled matrix.
    pub fn apply_coboundary_matrix(&self, f: &Cochain) -> Result<Cochain, CeError> {
        let v = self.to_vec(f)?;
        Ok(self.from_vec(f.degree + 1, &self.coboundary(f.degree).mul_vec(&v)))
    }

    /// Splits `F` by integer weight of its basis cochains.
    pub fn weight_decompose(&self, f: &Cochain) -> BTreeMap<WeightVector, Cochain> {
        let mut parts: BTreeMap<WeightVector, Cochain> = BTreeMap::new();
        for (key, v) in f.terms() {
            parts
                .entry(self.key_weight(key))
                .or_insert_with(|| Cochain::zero(f.degree, f.module, f.field))
                .add_term(key.clone(), v.clone());
        }
        parts
    }

    /// Union of the parts whose weight vanishes in the field.
    pub fn weight_zero_part(&self, f: &Cochain) -> Cochain {
        let field = self.field();
        Cochain::from_terms(
            f.degree,
            f.module,
            f.field,
            f.terms().filter(|(k, _)| self.key_weight(k).is_zero_in(field)).map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    /// `ι_h δF + δ ι_h F = w(h)·F` for a homogeneous `F` of integer weight `w`.
    pub fn weight_identity_check(&self, h: &[(usize, Scalar)], f: &Cochain) -> Result<bool, CeError> {
        let mut weight: Option<WeightVector> = None;
        for key in f.keys() {
            let w = self.key_weight(key);
            match &weight {
                None => weight = Some(w),
                Some(prev) if *prev != w => return Err(CeError::NotHomogeneous(prev.clone(), w)),
                Some(_) => {}
            }
        }
        let Some(weight) = weight else { return Ok(true) };
        let lhs_a = contract(h, &self.apply_coboundary(f));
        let lhs = if f.degree == 0 { lhs_a } else { lhs_a.add(&self.apply_coboundary(&contract(h, f))) };
        let rhs = f.scale(&self.algebra.evaluate_weight(&weight, h));
        Ok(lhs == rhs)
    }

    /// Matrices `δ^n` for each requested `n`, with `δ^{n+1}δ^n = 0` verified
    /// whenever both neighbours are present.
    fn coboundaries(&self, needed: &BTreeSet<usize>) -> Result<BTreeMap<usize, SparseMatrix>, CeError> {
        let mats: BTreeMap<usize, SparseMatrix> =
            needed.par_iter().map(|&n| (n, self.coboundary(n))).collect::<Vec<_>>().into_iter().collect();
        let pairs: Vec<usize> = needed.iter().copied().filter(|n| needed.contains(&(n + 1))).collect();
        let bad = pairs.par_iter().find_any(|&&n| {
            let prod = mats[&(n + 1)].mul(&mats[&n]).expect("consecutive degrees compose");
            !prod.is_zero()
        });
        if let Some(&n) = bad {
            return Err(CeError::CoboundaryNotNilpotent(n));
        }
        Ok(mats)
    }
}

fn signed(negative: bool, v: &Scalar) -> Scalar {
    if negative {
        v.neg()
    } else {
        v.clone()
    }
}

/// Calls `f` on each `k`-subset of `items`, in lexicographic order.
fn for_each_combination(items: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            buf[j] = items[idx[j]];
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CohomologyOptions {
    /// Also compute the weight-zero subcomplex and compare dimensions.
    pub compare_weight_zero: bool,
    /// Produce canonical representative cocycles (small complexes only).
    pub representatives: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub dim_cochains: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub dim_h: usize,
    /// `(dim C^n_0, dim H^n_0)` of the weight-zero subcomplex, when compared.
    pub weight_zero: Option<(usize, usize)>,
    pub weight_collisions: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub module: ModuleKind,
    pub acting: Acting,
    pub weight_zero_only: bool,
    pub degrees: Vec<DegreeCohomology>,
    /// Whether every compared degree agrees with its weight-zero counterpart.
    pub viviani: Option<bool>,
    /// Alternating sum, present only when every degree was computed.
    pub euler_characteristic: Option<i64>,
    #[serde(skip)]
    pub representatives: BTreeMap<usize, Vec<Cochain>>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim_h).collect()
    }

    pub fn dim_h(&self, n: usize) -> Option<usize> {
        self.degrees.iter().find(|d| d.degree == n).map(|d| d.dim_h)
    }
}

struct RawDegree {
    dim_c: usize,
    rank_out: usize,
    rank_in: usize,
    reps: Option<Vec<Cochain>>,
}

fn raw_cohomology(
    complex: &CochainComplex,
    degrees: &RangeInclusive<usize>,
    representatives: bool,
) -> Result<BTreeMap<usize, RawDegree>, CeError> {
    let mut needed = BTreeSet::new();
    for n in degrees.clone() {
        needed.insert(n);
        if n > 0 {
            needed.insert(n - 1);
        }
    }
    // basis enumeration is cached per degree; warm it in parallel
    let warm: Vec<usize> = needed.iter().flat_map(|&n| [n, n + 1]).collect::<BTreeSet<_>>().into_iter().collect();
    warm.par_iter().for_each(|&n| {
        complex.basis(n);
    });
    let mats = complex.coboundaries(&needed)?;
    let ranks: BTreeMap<usize, usize> =
        mats.par_iter().map(|(n, m)| (*n, linalg::rank(m))).collect::<Vec<_>>().into_iter().collect();
    let mut out = BTreeMap::new();
    for n in degrees.clone() {
        let dim_c = complex.dim_cochains(n);
        let rank_out = ranks[&n];
        let rank_in = if n > 0 { ranks[&(n - 1)] } else { 0 };
        let reps = if representatives {
            let kernel = linalg::kernel_basis(&mats[&n]);
            let mut classes = Subspace::zero(dim_c, complex.field());
            let image =
                if n > 0 { Subspace::column_space(&mats[&(n - 1)]) } else { Subspace::zero(dim_c, complex.field()) };
            for z in kernel.basis() {
                classes.insert(image.reduce(&z));
            }
            Some(classes.basis().iter().map(|v| complex.from_vec(n, v)).collect())
        } else {
            None
        };
        out.insert(n, RawDegree { dim_c, rank_out, rank_in, reps });
    }
    Ok(out)
}

/// Cohomology dimensions `dim C^n − rank δ^n − rank δ^{n−1}` over the given degrees.
pub fn cohomology(
    complex: &CochainComplex,
    degrees: RangeInclusive<usize>,
    options: CohomologyOptions,
) -> Result<CohomologyReport, CeError> {
    let top = complex.top_degree();
    if *degrees.end() > top {
        return Err(CeError::DegreeOutOfRange(*degrees.end(), top));
    }
    let raw = raw_cohomology(complex, &degrees, options.representatives)?;
    let twin = if options.compare_weight_zero && !complex.is_weight_zero() {
        let filtered = complex.with_weight_filter(true);
        Some(raw_cohomology(&filtered, &degrees, false)?)
    } else {
        None
    };
    let mut report = CohomologyReport {
        module: complex.module_kind(),
        acting: complex.acting_kind(),
        weight_zero_only: complex.is_weight_zero(),
        degrees: Vec::new(),
        viviani: None,
        euler_characteristic: None,
        representatives: BTreeMap::new(),
    };
    let mut viviani = true;
    for (n, mut r) in raw {
        let dim_h = r.dim_c - r.rank_out - r.rank_in;
        let weight_zero = twin.as_ref().map(|t| {
            let w = &t[&n];
            (w.dim_c, w.dim_c - w.rank_out - w.rank_in)
        });
        if let Some((_, h0)) = weight_zero {
            viviani &= h0 == dim_h;
        }
        if let Some(reps) = r.reps.take() {
            report.representatives.insert(n, reps);
        }
        report.degrees.push(DegreeCohomology {
            degree: n,
            dim_cochains: r.dim_c,
            rank_out: r.rank_out,
            rank_in: r.rank_in,
            dim_h,
            weight_zero,
            weight_collisions: complex.basis(n).weight_collisions(),
        });
    }
    if twin.is_some() {
        report.viviani = Some(viviani);
    }
    if *degrees.start() == 0 && *degrees.end() == top {
        report.euler_characteristic = Some(
            report.degrees.iter().map(|d| if d.degree % 2 == 0 { d.dim_h as i64 } else { -(d.dim_h as i64) }).sum(),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
