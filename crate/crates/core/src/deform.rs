//! One-parameter deformations of Lie poset algebras with brackets polynomial
//! in `t`, exact Jacobi certification, and the three-way split of `H²(g, g)`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, BasisIndex, Element, LiePosetAlgebra, ModuleKind};
use crate::ce::{self, binomial, cohomology, Acting, CeError, Cochain, CochainComplex, CochainKey, CohomologyOptions};
use crate::field::{FieldCtx, Scalar};
use crate::linalg::{self, Subspace};
use crate::nerve::{build_nerve, simplicial_cohomology, SimplicialCochain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error("the element is not central")]
    NotCentral,
    #[error("the nerve cochain is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("the t-linear term is not a 2-cocycle, so the family is not a first-order deformation")]
    NotACocycleAtOrderOne,
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("nerve computation failed: {0}")]
    Nerve(String),
}

/// A polynomial in `t`; `coeffs[k]` multiplies `t^k`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b·t`.
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let field = self.coeffs[0].ctx();
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let field = t.ctx();
        self.coeffs.iter().rev().fold(field.zero(), |acc, a| &(&acc * t) + a)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})t")?,
                _ => write!(f, "({a})t^{k}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial element: `Σ p_c(t)·x_c`, sorted by basis position.
pub type PolyElement = Vec<(usize, Poly)>;

fn poly_axpy(y: &mut PolyElement, a: &Poly, x: &[(usize, Poly)]) {
    for (c, p) in x {
        let term = a.mul(p);
        if term.is_zero() {
            continue;
        }
        match y.binary_search_by_key(c, |e| e.0) {
            Ok(i) => {
                let s = y[i].1.add(&term);
                if s.is_zero() {
                    y.remove(i);
                } else {
                    y[i].1 = s;
                }
            }
            Err(i) => y.insert(i, (*c, term)),
        }
    }
}

fn constant_element(e: &Element) -> PolyElement {
    e.iter().map(|(c, v)| (*c, Poly::constant(v.clone()))).collect()
}

/// A bracket on the basis of `g` with structure constants in `k[t]`.
#[derive(Debug, Clone)]
pub struct DeformedBracket {
    algebra: Arc<LiePosetAlgebra>,
    table: Vec<Vec<PolyElement>>,
}

impl PartialEq for DeformedBracket {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.basis() == other.algebra.basis() && self.table == other.table
    }
}

/// Where a Jacobi certificate failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiWitness {
    /// `true` when antisymmetry itself fails (the third entry repeats the second).
    pub antisymmetry: bool,
    pub triple: (BasisIndex, BasisIndex, BasisIndex),
    pub t_power: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiCertificate {
    pub verdict: bool,
    pub triples_checked: usize,
    pub witness: Option<JacobiWitness>,
}

impl DeformedBracket {
    /// The undeformed bracket with constant coefficients.
    pub fn from_base(algebra: Arc<LiePosetAlgebra>) -> Self {
        let d = algebra.dim();
        let table = (0..d).map(|a| (0..d).map(|b| constant_element(algebra.bracket_basis(a, b))).collect()).collect();
        DeformedBracket { algebra, table }
    }

    pub fn algebra(&self) -> &LiePosetAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> FieldCtx {
        self.algebra.field()
    }

    pub fn get(&self, a: usize, b: usize) -> &PolyElement {
        &self.table[a][b]
    }

    /// Sets `[x_a, x_b]* = value` and `[x_b, x_a]* = −value`.
    pub fn set_bracket(&mut self, a: usize, b: usize, value: PolyElement) {
        let minus = self.field().from_i64(-1);
        let neg: PolyElement = value.iter().map(|(c, p)| (*c, p.scale(&minus))).collect();
        self.table[a][b] = value;
        self.table[b][a] = neg;
    }

    /// Sets only `[x_a, x_b]*`, leaving the transposed entry alone.
    pub fn set_entry_unchecked(&mut self, a: usize, b: usize, value: PolyElement) {
        self.table[a][b] = value;
    }

    pub fn bracket(&self, x: &[(usize, Poly)], y: &[(usize, Poly)]) -> PolyElement {
        let mut out = Vec::new();
        for (a, pa) in x {
            for (b, pb) in y {
                let t = &self.table[*a][*b];
                if !t.is_empty() {
                    poly_axpy(&mut out, &pa.mul(pb), t);
                }
            }
        }
        out
    }

    /// True when every structure constant is constant in `t`.
    pub fn is_undeformed(&self) -> bool {
        self.table.iter().flatten().flatten().all(|(_, p)| p.degree().unwrap_or(0) == 0)
    }

    /// Expands antisymmetry and the Jacobi sum on all basis triples as
    /// polynomials; the first failure in basis order is reported.
    pub fn jacobi_check(&self) -> JacobiCertificate {
        let d = self.algebra.dim();
        let basis = self.algebra.basis();
        let one = Poly::constant(self.field().one());
        let unit = |p: usize| vec![(p, one.clone())];
        let lowest = |e: &PolyElement| -> usize {
            e.iter().map(|(_, p)| p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0)).min().unwrap_or(0)
        };
        for a in 0..d {
            for b in a..d {
                let mut s = self.table[a][b].clone();
                poly_axpy(&mut s, &one, &self.table[b][a]);
                if !s.is_empty() {
                    return JacobiCertificate {
                        verdict: false,
                        triples_checked: 0,
                        witness: Some(JacobiWitness {
                            antisymmetry: true,
                            triple: (basis[a], basis[b], basis[b]),
                            t_power: lowest(&s),
                        }),
                    };
                }
            }
        }
        let triples: Vec<(usize, usize, usize)> =
            (0..d).flat_map(|a| (a + 1..d).flat_map(move |b| (b + 1..d).map(move |c| (a, b, c)))).collect();
        let failure = triples.par_iter().find_first(|&&(a, b, c)| {
            let mut s = self.bracket(&unit(a), &self.table[b][c]);
            poly_axpy(&mut s, &one, &self.bracket(&unit(b), &self.table[c][a]));
            poly_axpy(&mut s, &one, &self.bracket(&unit(c), &self.table[a][b]));
            !s.is_empty()
        });
        let witness = failure.map(|&(a, b, c)| {
            let mut s = self.bracket(&unit(a), &self.table[b][c]);
            poly_axpy(&mut s, &one, &self.bracket(&unit(b), &self.table[c][a]));
            poly_axpy(&mut s, &one, &self.bracket(&unit(c), &self.table[a][b]));
            JacobiWitness { antisymmetry: false, triple: (basis[a], basis[b], basis[c]), t_power: lowest(&s) }
        });
        JacobiCertificate { verdict: witness.is_none(), triples_checked: triples.len(), witness }
    }

    /// The bracket at a fixed value of `t`.
    pub fn specialize(&self, t: &Scalar) -> BracketTable {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.iter().map(|(c, p)| (*c, p.eval(t))).filter(|(_, v)| !v.is_zero()).collect())
                    .collect()
            })
            .collect();
        BracketTable { basis: self.algebra.basis().to_vec(), field: self.field(), table }
    }

    /// The `t`-linear coefficient as an adjoint 2-cochain on `g`.
    pub fn infinitesimal(&self) -> Cochain {
        let field = self.field();
        let d = self.algebra.dim();
        let mut out = Cochain::zero(2, ModuleKind::Adjoint, field);
        for a in 0..d {
            for b in a + 1..d {
                for (c, p) in &self.table[a][b] {
                    if let Some(v) = p.coeff(1) {
                        out.add_term(CochainKey { args: vec![a, b], module: *c }, v.clone());
                    }
                }
            }
        }
        out
    }

    /// Nonzero structure constants `[x_a, x_b]*` with `a < b`.
    pub fn entries(&self) -> Vec<BracketEntry> {
        let basis = self.algebra.basis();
        let mut out = Vec::new();
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                if self.table[a][b].is_empty() {
                    continue;
                }
                out.push(BracketEntry {
                    left: basis[a],
                    right: basis[b],
                    terms: self.table[a][b]
                        .iter()
                        .map(|(c, p)| (basis[*c], p.coeffs().iter().map(|x| x.to_string()).collect()))
                        .collect(),
                });
            }
        }
        out
    }
}

/// One structure constant; `terms` lists `(basis element, coefficients of 1, t, t², …)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketEntry {
    pub left: BasisIndex,
    pub right: BasisIndex,
    pub terms: Vec<(BasisIndex, Vec<String>)>,
}

/// `(x_a, x_b, [(x_c, coefficient)])` for `[x_a, x_b] = Σ coefficient · x_c`.
pub type TableEntry = (BasisIndex, BasisIndex, Vec<(BasisIndex, String)>);

/// A bracket with field coefficients on the basis of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    basis: Vec<BasisIndex>,
    field: FieldCtx,
    table: Vec<Vec<Element>>,
}

impl BracketTable {
    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn get(&self, a: usize, b: usize) -> &Element {
        &self.table[a][b]
    }

    fn bracket(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Element {
        let mut out = Vec::new();
        for (a, xa) in x {
            for (b, yb) in y {
                out = linalg::axpy(&out, &(xa * yb), &self.table[*a][*b]);
            }
        }
        out
    }

    /// Antisymmetry and Jacobi with field coefficients.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.basis.len();
        let one = self.field.one();
        let unit = |p: usize| vec![(p, one.clone())];
        for a in 0..d {
            for b in a..d {
                if !linalg::axpy(&self.table[a][b], &one, &self.table[b][a]).is_empty() {
                    return false;
                }
            }
        }
        (0..d).into_par_iter().all(|a| {
            (a + 1..d).all(|b| {
                (b + 1..d).all(|c| {
                    let s = self.bracket(&unit(a), &self.table[b][c]);
                    let s = linalg::axpy(&s, &one, &self.bracket(&unit(b), &self.table[c][a]));
                    linalg::axpy(&s, &one, &self.bracket(&unit(c), &self.table[a][b])).is_empty()
                })
            })
        })
    }

    /// Nonzero structure constants `[x_a, x_b]` with `a < b`.
    pub fn entries(&self) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for a in 0..self.basis.len() {
            for b in a + 1..self.basis.len() {
                if !self.table[a][b].is_empty() {
                    let terms = self.table[a][b].iter().map(|(c, v)| (self.basis[*c], v.to_string())).collect();
                    out.push((self.basis[a], self.basis[b], terms));
                }
            }
        }
        out
    }
}

/// `[η_i, η_j]* = t·c` for a central `c`; everything else unchanged.
pub fn deform_20(
    algebra: Arc<LiePosetAlgebra>,
    pair: (usize, usize),
    c: &[(usize, Scalar)],
) -> Result<DeformedBracket, DeformError> {
    let (i, j) = pair;
    if !(1 <= i && i < j && j <= algebra.n_eta()) {
        return Err(DeformError::BadIndex(format!("need 1 <= i < j <= {}, got ({i}, {j})", algebra.n_eta())));
    }
    if c.iter().any(|(p, _)| !algebra.is_eta(*p)) || !algebra.center().contains(c) {
        return Err(DeformError::NotCentral);
    }
    let field = algebra.field();
    let (ei, ej) = (algebra.eta(i), algebra.eta(j));
    let mut d = DeformedBracket::from_base(algebra);
    let value =
        c.iter().map(|(p, v)| (*p, Poly::linear(field.zero(), v.clone()))).filter(|(_, p)| !p.is_zero()).collect();
    d.set_bracket(ei, ej, value);
    Ok(d)
}

fn require_cocycle(algebra: &LiePosetAlgebra, f: &SimplicialCochain) -> Result<(), DeformError> {
    let nerve = build_nerve(algebra.poset(), false);
    let closed = nerve.is_cocycle(f, algebra.field()).map_err(|e| DeformError::NotACocycle(e.to_string()))?;
    if closed {
        Ok(())
    } else {
        Err(DeformError::NotACocycle(format!("delta f != 0 for the {}-cochain", f.dim)))
    }
}

/// `[h, e_ij]* = [h, e_ij] + t·⟨ξ, h⟩·f(i, j)·e_ij` for a nerve 1-cocycle `f`;
/// `xi[k-1]` is `⟨ξ, η_k⟩`.
pub fn deform_11(
    algebra: Arc<LiePosetAlgebra>,
    xi: &[Scalar],
    f: &SimplicialCochain,
) -> Result<DeformedBracket, DeformError> {
    if xi.len() != algebra.n_eta() {
        return Err(DeformError::BadIndex(format!("xi has {} entries, need {}", xi.len(), algebra.n_eta())));
    }
    if f.dim != 1 {
        return Err(DeformError::NotACocycle(format!("expected a 1-cochain, got dimension {}", f.dim)));
    }
    require_cocycle(&algebra, f)?;
    let field = algebra.field();
    let mut d = DeformedBracket::from_base(Arc::clone(&algebra));
    for (simplex, value) in &f.values {
        let e = algebra.unit(simplex[0], simplex[1]).expect("nerve edges are relations");
        for (k, x) in xi.iter().enumerate() {
            let eta = algebra.eta(k + 1);
            let base = algebra.weight(e).0[k];
            let p = Poly::linear(field.from_i64(base), x * value);
            d.set_bracket(eta, e, if p.is_zero() { Vec::new() } else { vec![(e, p)] });
        }
    }
    Ok(d)
}

/// `[e_ij, e_jk]* = (1 + t·f(i, j, k))·e_ik` for a nerve 2-cocycle `f`.
pub fn deform_02(algebra: Arc<LiePosetAlgebra>, f: &SimplicialCochain) -> Result<DeformedBracket, DeformError> {
    if f.dim != 2 {
        return Err(DeformError::NotACocycle(format!("expected a 2-cochain, got dimension {}", f.dim)));
    }
    require_cocycle(&algebra, f)?;
    let field = algebra.field();
    let mut d = DeformedBracket::from_base(Arc::clone(&algebra));
    for (s, value) in &f.values {
        let (i, j, k) = (s[0], s[1], s[2]);
        let (a, b, c) = (algebra.unit(i, j), algebra.unit(j, k), algebra.unit(i, k));
        let (Some(a), Some(b), Some(c)) = (a, b, c) else {
            return Err(DeformError::BadIndex(format!("{s:?} is not a chain")));
        };
        d.set_bracket(a, b, vec![(c, Poly::linear(field.one(), value.clone()))]);
    }
    Ok(d)
}

/// The three summands of `H²(g, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DeformationType {
    /// `Λ²h^∨ ⊗ c`
    T20,
    /// `h^∨ ⊗ H¹(Σ)`
    T11,
    /// `H²(Σ)`
    T02,
}

impl DeformationType {
    fn cartan_arguments(self) -> usize {
        match self {
            DeformationType::T20 => 2,
            DeformationType::T11 => 1,
            DeformationType::T02 => 0,
        }
    }
}

impl fmt::Display for DeformationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeformationType::T20 => "(2,0)",
            DeformationType::T11 => "(1,1)",
            DeformationType::T02 => "(0,2)",
        })
    }
}

#[derive(Debug, Clone)]
pub struct InfinitesimalClass {
    pub cocycle: Cochain,
    /// Canonical representative modulo coboundaries; zero iff the class is.
    pub reduced: Cochain,
    pub nonzero: bool,
    /// Summands in which the class has a nonzero component.
    pub types: Vec<DeformationType>,
}

/// Extracts the first-order term of a family and locates its class in `H²(g, g)`.
pub fn infinitesimal_of(d: &DeformedBracket) -> Result<InfinitesimalClass, DeformError> {
    let algebra = Arc::clone(&d.algebra);
    let f = d.infinitesimal();
    let full = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Adjoint, Acting::Full, false);
    if !full.apply_coboundary(&f).is_zero() {
        return Err(DeformError::NotACocycleAtOrderOne);
    }
    let d1 = full.coboundary(1);
    let reduced_vec = linalg::reduce_mod_image(&full.to_vec(&f)?, &d1);
    let reduced = full.from_vec(2, &reduced_vec);

    let zero = full.with_weight_filter(true);
    let d1_zero = zero.coboundary(1);
    let f0 = full.weight_zero_part(&f);
    let mut types = Vec::new();
    for part in ce::bigraded_decompose(&algebra, &f0) {
        let residue = linalg::reduce_mod_image(&zero.to_vec(&part.cochain)?, &d1_zero);
        if !residue.is_empty() {
            types.push(match part.r {
                2 => DeformationType::T20,
                1 => DeformationType::T11,
                _ => DeformationType::T02,
            });
        }
    }
    types.sort();
    Ok(InfinitesimalClass { cocycle: f, nonzero: !reduced.is_zero(), reduced, types })
}

#[derive(Debug, Clone, Serialize)]
pub struct H2Decomposition {
    pub dim_20: usize,
    pub dim_11: usize,
    pub dim_02: usize,
    /// `dim H²(g, g)` from the Chevalley–Eilenberg complex.
    pub dim_h2: usize,
    /// Whether the representatives are cocycles, independent modulo coboundaries.
    pub representatives_independent: bool,
    #[serde(skip)]
    pub representatives: Vec<(DeformationType, Cochain)>,
}

impl H2Decomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim_20, self.dim_11, self.dim_02)
    }

    pub fn consistent(&self) -> bool {
        self.dim_20 + self.dim_11 + self.dim_02 == self.dim_h2 && self.representatives_independent
    }
}

/// Summand dimensions from the center and the nerve, with representative
/// cocycles `ρ(I, Φf)`, compared against a direct computation of `H²`.
pub fn h2_decomposition(algebra: Arc<LiePosetAlgebra>) -> Result<H2Decomposition, DeformError> {
    let field = algebra.field();
    let rank_h = algebra.n_eta();
    let sigma_plus = build_nerve(algebra.poset(), true);
    let nerve_h = simplicial_cohomology(&sigma_plus, field).map_err(|e| DeformError::Nerve(e.to_string()))?;
    let center_dim = algebra.center().dim();
    let dim_20 = binomial(rank_h, 2) * center_dim;
    let dim_11 = rank_h * nerve_h.dim_h(1);
    let dim_02 = nerve_h.dim_h(2);

    let mut representatives = Vec::new();
    for ty in [DeformationType::T20, DeformationType::T11, DeformationType::T02] {
        let r = ty.cartan_arguments();
        let nerve_dim = 2 - r;
        let Some(classes) = nerve_h.representatives.get(&(nerve_dim as i32)) else { continue };
        for label in subsets(rank_h, r) {
            for f in classes {
                let g = ce::phi(&algebra, f)?;
                representatives.push((ty, ce::rho(&algebra, &label, &g)?));
            }
        }
    }

    let full = CochainComplex::new(Arc::clone(&algebra), ModuleKind::Adjoint, Acting::Full, false);
    let h2 = cohomology(&full, 2..=2, CohomologyOptions::default())?;
    let dim_h2 = h2.dim_h(2).unwrap_or(0);
    let d1 = full.coboundary(1);
    let image = Subspace::column_space(&d1);
    let mut span = Subspace::zero(full.dim_cochains(2), field);
    let mut independent = true;
    for (_, rep) in &representatives {
        independent &= full.apply_coboundary(rep).is_zero();
        independent &= span.insert(image.reduce(&full.to_vec(rep)?));
    }
    Ok(H2Decomposition {
        dim_20,
        dim_11,
        dim_02,
        dim_h2,
        representatives_independent: independent && representatives.len() == dim_20 + dim_11 + dim_02,
        representatives,
    })
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let start = s.last().map_or(1, |x| x + 1);
                (start..=n).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::poset::Poset;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn alg(p: Poset) -> Arc<LiePosetAlgebra> {
        Arc::new(build_algebra(&p, q()).unwrap())
    }

    fn sl3_example() -> Arc<LiePosetAlgebra> {
        alg(Poset::from_relations(3, &[(1, 2)]).unwrap())
    }

    fn sphere2_generator(a: &LiePosetAlgebra) -> SimplicialCochain {
        let h = simplicial_cohomology(&build_nerve(a.poset(), true), a.field()).unwrap();
        h.representatives[&2][0].clone()
    }

    #[test]
    fn poly_arithmetic() {
        let f = q();
        let p = Poly::linear(f.one(), f.from_i64(2));
        let sq = p.mul(&p);
        assert_eq!(sq.coeffs(), &[f.one(), f.from_i64(4), f.from_i64(4)]);
        assert_eq!(sq.eval(&f.from_i64(-1)), f.one());
        assert!(p.add(&p.scale(&f.from_i64(-1))).is_zero());
        assert_eq!(Poly::new(vec![f.zero(), f.zero()]).degree(), None);
        assert_eq!(p.to_string(), "1 + (2)t");
    }

    #[test]
    fn subsets_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn base_bracket_passes_jacobi() {
        let d = DeformedBracket::from_base(alg(Poset::sphere(1)));
        assert!(d.jacobi_check().verdict);
        assert!(d.is_undeformed());
    }

    #[test]
    fn deform_20_on_sl3_example() {
        let a = sl3_example();
        let c = a.center_elements()[0].clone();
        let d = deform_20(Arc::clone(&a), (1, 2), &c).unwrap();
        assert!(d.jacobi_check().verdict);
        let at_one = d.specialize(&q().one());
        assert!(at_one.jacobi_holds());
        assert!(!at_one.get(0, 1).is_empty());
        let class = infinitesimal_of(&d).unwrap();
        assert!(class.nonzero);
        assert_eq!(class.types, vec![DeformationType::T20]);
        assert_eq!(deform_20(Arc::clone(&a), (1, 2), &[]).unwrap(), DeformedBracket::from_base(a));
    }

    #[test]
    fn deform_20_requires_central_element() {
        let a = alg(Poset::chain(3).unwrap());
        let c = vec![(0, q().one())];
        assert_eq!(deform_20(a, (1, 2), &c).unwrap_err(), DeformError::NotCentral);
    }

    #[test]
    fn deform_11_on_sphere1() {
        let a = alg(Poset::sphere(1));
        let f = SimplicialCochain::from_values(1, [(vec![1, 3], q().one())]);
        let xi = vec![q().one(), q().zero(), q().zero()];
        let d = deform_11(Arc::clone(&a), &xi, &f).unwrap();
        assert!(d.jacobi_check().verdict);
        let class = infinitesimal_of(&d).unwrap();
        assert!(class.nonzero);
        assert_eq!(class.types, vec![DeformationType::T11]);

        let zero_xi = vec![q().zero(); 3];
        assert_eq!(deform_11(Arc::clone(&a), &zero_xi, &f).unwrap(), DeformedBracket::from_base(Arc::clone(&a)));

        // f = δ(indicator of vertex 3) is a coboundary
        let exact = SimplicialCochain::from_values(1, [(vec![1, 3], q().one()), (vec![2, 3], q().one())]);
        let class = infinitesimal_of(&deform_11(Arc::clone(&a), &xi, &exact).unwrap()).unwrap();
        assert!(!class.nonzero);
        assert!(class.types.is_empty());
    }

    #[test]
    fn deform_11_requires_cocycle() {
        let a = alg(Poset::chain(3).unwrap());
        let f = SimplicialCochain::from_values(1, [(vec![1, 2], q().one())]);
        let xi = vec![q().one(), q().zero()];
        assert!(matches!(deform_11(a, &xi, &f), Err(DeformError::NotACocycle(_))));
    }

    #[test]
    fn deform_02_on_sphere2() {
        let a = alg(Poset::sphere(2));
        let f = sphere2_generator(&a);
        let d = deform_02(Arc::clone(&a), &f).unwrap();
        let cert = d.jacobi_check();
        assert!(cert.verdict, "{cert:?}");
        let class = infinitesimal_of(&d).unwrap();
        assert!(class.nonzero);
        assert_eq!(class.types, vec![DeformationType::T02]);
        assert_eq!(
            deform_02(Arc::clone(&a), &SimplicialCochain::zero(2)).unwrap(),
            DeformedBracket::from_base(Arc::clone(&a))
        );
    }

    #[test]
    fn coboundary_input_gives_zero_class_on_sphere2() {
        let a = alg(Poset::sphere(2));
        let nerve = build_nerve(a.poset(), false);
        let g = SimplicialCochain::from_values(1, [(vec![1, 3], q().one()), (vec![3, 6], q().from_i64(2))]);
        let f = nerve.apply_coboundary(&g, q()).unwrap();
        let d = deform_02(Arc::clone(&a), &f).unwrap();
        let class = infinitesimal_of(&d).unwrap();
        assert!(!class.nonzero);
    }

    #[test]
    fn corrupted_table_fails_with_witness() {
        let a = alg(Poset::sphere(1));
        let mut d = DeformedBracket::from_base(Arc::clone(&a));
        let (e13, e14) = (a.unit(1, 3).unwrap(), a.unit(1, 4).unwrap());
        d.set_bracket(e13, e14, vec![(e13, Poly::linear(q().zero(), q().one()))]);
        let cert = d.jacobi_check();
        assert!(!cert.verdict);
        let w = cert.witness.unwrap();
        assert!(!w.antisymmetry);
        assert_eq!(w.t_power, 1);
    }

    #[test]
    fn base_bracket_has_zero_infinitesimal() {
        let class = infinitesimal_of(&DeformedBracket::from_base(sl3_example())).unwrap();
        assert!(!class.nonzero && class.cocycle.is_zero());
    }

    #[test]
    fn decompositions() {
        let h = h2_decomposition(alg(Poset::sphere(1))).unwrap();
        assert_eq!(h.dims(), (0, 3, 0));
        assert!(h.consistent(), "{h:?}");
        let h = h2_decomposition(sl3_example()).unwrap();
        assert_eq!(h.dims(), (1, 0, 0));
        assert!(h.consistent());
    }
}
