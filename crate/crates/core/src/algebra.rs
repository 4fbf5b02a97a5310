//! The Lie poset algebra `g(P) = h ⋉ k` and its coefficient modules.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, Scalar};
use crate::linalg::{self, SparseMatrix, SparseVec, Subspace};
use crate::poset::Poset;
use crate::weights::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(
        "characteristic {characteristic} is too small for N = {n}: the weight theory needs characteristic 0 or greater than N"
    )]
    CharacteristicTooSmall { characteristic: u64, n: usize },
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(BasisIndex, BasisIndex, BasisIndex),
    #[error("bracket table is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(BasisIndex, BasisIndex),
    #[error("{0} is not a basis element of this algebra")]
    NotInBasis(BasisIndex),
}

/// `Eta(i)` is `e_ii − e_{i+1,i+1}`; `E(i, j)` is the matrix unit with `i ≺ j`.
///
/// The derived order is the global basis order: all `Eta` first, then `E`
/// lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BasisIndex {
    Eta(usize),
    E(usize, usize),
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Eta(i) => write!(f, "eta{i}"),
            BasisIndex::E(i, j) => write!(f, "e{i},{j}"),
        }
    }
}

/// Elements are sparse vectors over the global basis positions.
pub type Element = SparseVec;

#[derive(Debug, Clone)]
pub struct LiePosetAlgebra {
    poset: Poset,
    field: FieldCtx,
    basis: Vec<BasisIndex>,
    position: HashMap<BasisIndex, usize>,
    weights: Vec<WeightVector>,
    // table[a][b] = [x_a, x_b]
    table: Vec<Vec<Element>>,
}

pub fn build_algebra(poset: &Poset, field: FieldCtx) -> Result<LiePosetAlgebra, AlgebraError> {
    let n = poset.len();
    if !field.admits(n) {
        return Err(AlgebraError::CharacteristicTooSmall { characteristic: field.characteristic(), n });
    }
    let mut basis: Vec<BasisIndex> = (1..n).map(BasisIndex::Eta).collect();
    basis.extend(poset.strict_pairs().iter().map(|&(i, j)| BasisIndex::E(i, j)));
    let position: HashMap<BasisIndex, usize> = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    let weights: Vec<WeightVector> = basis
        .iter()
        .map(|b| match *b {
            BasisIndex::Eta(_) => WeightVector::zero(n.saturating_sub(1)),
            BasisIndex::E(i, j) => WeightVector::of_unit(n, i, j),
        })
        .collect();

    let unit = |i: usize, j: usize| position[&BasisIndex::E(i, j)];
    let table = basis
        .iter()
        .enumerate()
        .map(|(apos, a)| {
            basis
                .iter()
                .enumerate()
                .map(|(bpos, b)| match (*a, *b) {
                    (BasisIndex::Eta(_), BasisIndex::Eta(_)) => Vec::new(),
                    (BasisIndex::Eta(k), BasisIndex::E(..)) => single(bpos, field.from_i64(weights[bpos].0[k - 1])),
                    (BasisIndex::E(..), BasisIndex::Eta(k)) => single(apos, field.from_i64(-weights[apos].0[k - 1])),
                    (BasisIndex::E(i, j), BasisIndex::E(k, l)) => {
                        let mut out = Vec::new();
                        if j == k {
                            out.push((unit(i, l), field.one()));
                        }
                        if l == i {
                            out.push((unit(k, j), field.from_i64(-1)));
                        }
                        out.sort_by_key(|e| e.0);
                        out
                    }
                })
                .collect()
        })
        .collect();

    let alg = LiePosetAlgebra { poset: poset.clone(), field, basis, position, weights, table };
    alg.check_jacobi()?;
    Ok(alg)
}

fn single(pos: usize, v: Scalar) -> Element {
    if v.is_zero() {
        Vec::new()
    } else {
        vec![(pos, v)]
    }
}

impl LiePosetAlgebra {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    /// `N`, the size of the matrices.
    pub fn n(&self) -> usize {
        self.poset.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of `η` basis elements; they occupy positions `0..n_eta()`.
    pub fn n_eta(&self) -> usize {
        self.n().saturating_sub(1)
    }

    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn position(&self, b: BasisIndex) -> Option<usize> {
        self.position.get(&b).copied()
    }

    pub fn eta(&self, i: usize) -> usize {
        i - 1
    }

    pub fn unit(&self, i: usize, j: usize) -> Option<usize> {
        self.position(BasisIndex::E(i, j))
    }

    pub fn is_eta(&self, pos: usize) -> bool {
        pos < self.n_eta()
    }

    /// Positions spanning the nilpotent ideal `k`.
    pub fn ideal_positions(&self) -> Vec<usize> {
        (self.n_eta()..self.dim()).collect()
    }

    pub fn weight_of(&self, b: BasisIndex) -> Result<&WeightVector, AlgebraError> {
        self.position(b).map(|p| &self.weights[p]).ok_or(AlgebraError::NotInBasis(b))
    }

    pub fn weight(&self, pos: usize) -> &WeightVector {
        &self.weights[pos]
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }

    /// `[x_a, x_b]` on basis positions.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &Element {
        &self.table[a][b]
    }

    pub fn bracket(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Element {
        let mut out = Vec::new();
        for (a, xa) in x {
            for (b, yb) in y {
                let t = &self.table[*a][*b];
                if !t.is_empty() {
                    out = linalg::axpy(&out, &(xa * yb), t);
                }
            }
        }
        out
    }

    pub fn basis_element(&self, pos: usize) -> Element {
        vec![(pos, self.field.one())]
    }

    /// `Σ c_k η_k` given the coefficients `c_1 … c_{N-1}`.
    pub fn eta_combination(&self, coeffs: &[Scalar]) -> Element {
        coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
    }

    /// `w(h)` for `h` in `h`, given as an element supported on the `η`.
    pub fn evaluate_weight(&self, w: &WeightVector, h: &[(usize, Scalar)]) -> Scalar {
        let mut acc = self.field.zero();
        for (k, c) in h {
            debug_assert!(self.is_eta(*k));
            acc = &acc + &(c * &self.field.from_i64(w.0[*k]));
        }
        acc
    }

    fn check_jacobi(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let ab = &self.table[a][b];
                let ba = &self.table[b][a];
                if !linalg::axpy(ab, &self.field.one(), ba).is_empty() {
                    return Err(AlgebraError::NotAntisymmetric(self.basis[a], self.basis[b]));
                }
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let (xa, xb, xc) = (self.basis_element(a), self.basis_element(b), self.basis_element(c));
                    let s1 = self.bracket(&xa, &self.table[b][c]);
                    let s2 = self.bracket(&xb, &self.table[c][a]);
                    let s3 = self.bracket(&xc, &self.table[a][b]);
                    let one = self.field.one();
                    if !linalg::axpy(&linalg::axpy(&s1, &one, &s2), &one, &s3).is_empty() {
                        return Err(AlgebraError::JacobiFailure(self.basis[a], self.basis[b], self.basis[c]));
                    }
                }
            }
        }
        Ok(())
    }

    /// The center, as a subspace of `h` in coordinates `η_1 … η_{N-1}`.
    pub fn center(&self) -> Subspace {
        let rows: Vec<SparseVec> = self.weights[self.n_eta()..]
            .iter()
            .map(|w| {
                w.0.iter()
                    .enumerate()
                    .map(|(k, &x)| (k, self.field.from_i64(x)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        linalg::kernel_basis(&SparseMatrix::from_rows(self.n_eta(), self.field, rows))
    }

    /// Basis of the center as algebra elements.
    pub fn center_elements(&self) -> Vec<Element> {
        self.center().basis()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleKind {
    Trivial,
    Adjoint,
    /// `g` with only the ideal `k` acting.
    AdjointRestrictedToIdeal,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::Trivial => "trivial",
            ModuleKind::Adjoint => "adjoint",
            ModuleKind::AdjointRestrictedToIdeal => "adjoint|k",
        })
    }
}

#[derive(Debug, Clone)]
pub struct GModule {
    kind: ModuleKind,
    dim: usize,
    acting: Vec<usize>,
    weights: Vec<WeightVector>,
    // action[g][m] = x_g . m_m; empty rows for non-acting g
    action: Vec<Vec<Element>>,
    // preimages[g][m'] = [(m, coefficient of m' in x_g . m_m)]
    preimages: Vec<Vec<Vec<(usize, Scalar)>>>,
}

pub fn module_create(algebra: &LiePosetAlgebra, kind: ModuleKind) -> GModule {
    let d = algebra.dim();
    let (dim, acting, weights): (usize, Vec<usize>, Vec<WeightVector>) = match kind {
        ModuleKind::Trivial => (1, (0..d).collect(), vec![WeightVector::zero(algebra.n_eta())]),
        ModuleKind::Adjoint => (d, (0..d).collect(), algebra.weights().to_vec()),
        ModuleKind::AdjointRestrictedToIdeal => (d, algebra.ideal_positions(), algebra.weights().to_vec()),
    };
    let mut action = vec![vec![Vec::new(); dim]; d];
    if kind != ModuleKind::Trivial {
        for &g in &acting {
            for m in 0..dim {
                action[g][m] = algebra.bracket_basis(g, m).clone();
            }
        }
    }
    let mut preimages = vec![vec![Vec::new(); dim]; d];
    for (g, row) in action.iter().enumerate() {
        for (m, image) in row.iter().enumerate() {
            for (target, c) in image {
                preimages[g][*target].push((m, c.clone()));
            }
        }
    }
    GModule { kind, dim, acting, weights, action, preimages }
}

impl GModule {
    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Positions of the algebra basis that act.
    pub fn acting(&self) -> &[usize] {
        &self.acting
    }

    pub fn weight(&self, m: usize) -> &WeightVector {
        &self.weights[m]
    }

    /// `x_g · m`.
    pub fn act(&self, g: usize, m: usize) -> &Element {
        &self.action[g][m]
    }

    /// Module basis vectors whose image under `x_g` involves `target`, with coefficients.
    pub fn preimages(&self, g: usize, target: usize) -> &[(usize, Scalar)] {
        &self.preimages[g][target]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn sl3_example() -> LiePosetAlgebra {
        build_algebra(&Poset::from_relations(3, &[(1, 2)]).unwrap(), q()).unwrap()
    }

    #[test]
    fn dimensions() {
        let a = build_algebra(&Poset::chain(3).unwrap(), q()).unwrap();
        assert_eq!(a.dim(), 5);
        use BasisIndex::*;
        assert_eq!(a.basis(), &[Eta(1), Eta(2), E(1, 2), E(1, 3), E(2, 3)]);
        let f7 = FieldCtx::prime(7).unwrap();
        assert_eq!(build_algebra(&Poset::sphere(1), f7).unwrap().dim(), 7);
    }

    #[test]
    fn small_characteristic_rejected() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(
            build_algebra(&Poset::sphere(1), f3).unwrap_err(),
            AlgebraError::CharacteristicTooSmall { characteristic: 3, n: 4 }
        );
    }

    #[test]
    fn brackets_of_matrix_units_and_cartan() {
        let a = build_algebra(&Poset::chain(3).unwrap(), q()).unwrap();
        let e12 = a.basis_element(a.unit(1, 2).unwrap());
        let e23 = a.basis_element(a.unit(2, 3).unwrap());
        let e13 = a.basis_element(a.unit(1, 3).unwrap());
        let eta1 = a.basis_element(a.eta(1));
        assert_eq!(a.bracket(&e12, &e23), e13);
        assert_eq!(a.bracket(&eta1, &e12), linalg::scale(&e12, &q().from_i64(2)));
        assert_eq!(a.bracket(&eta1, &e13), e13);
        assert_eq!(a.bracket(&e23, &e12), linalg::scale(&e13, &q().from_i64(-1)));
    }

    /// Brackets checked against literal matrix commutators in `gl(N)`.
    #[test]
    fn table_matches_matrix_commutators() {
        for poset in [Poset::sphere(1), Poset::chain(4).unwrap(), Poset::from_relations(4, &[(1, 3), (2, 4)]).unwrap()]
        {
            let a = build_algebra(&poset, q()).unwrap();
            let n = a.n();
            let to_matrix = |b: BasisIndex| {
                let mut m = vec![vec![0i64; n + 1]; n + 1];
                match b {
                    BasisIndex::Eta(i) => {
                        m[i][i] = 1;
                        m[i + 1][i + 1] = -1;
                    }
                    BasisIndex::E(i, j) => m[i][j] = 1,
                }
                m
            };
            let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| {
                let mut z = vec![vec![0i64; n + 1]; n + 1];
                for i in 1..=n {
                    for k in 1..=n {
                        for j in 1..=n {
                            z[i][j] += x[i][k] * y[k][j];
                        }
                    }
                }
                z
            };
            for (pa, ba) in a.basis().iter().enumerate() {
                for (pb, bb) in a.basis().iter().enumerate() {
                    let (x, y) = (to_matrix(*ba), to_matrix(*bb));
                    let (xy, yx) = (mul(&x, &y), mul(&y, &x));
                    let mut expected = vec![vec![0i64; n + 1]; n + 1];
                    for i in 1..=n {
                        for j in 1..=n {
                            expected[i][j] = xy[i][j] - yx[i][j];
                        }
                    }
                    let mut got = vec![vec![0i64; n + 1]; n + 1];
                    for (pos, c) in a.bracket_basis(pa, pb) {
                        let c: i64 = c.to_string().parse().unwrap();
                        let m = to_matrix(a.basis()[*pos]);
                        for i in 1..=n {
                            for j in 1..=n {
                                got[i][j] += c * m[i][j];
                            }
                        }
                    }
                    assert_eq!(got, expected, "[{ba}, {bb}]");
                }
            }
        }
    }

    #[test]
    fn weights() {
        let a = build_algebra(&Poset::chain(3).unwrap(), q()).unwrap();
        assert_eq!(a.weight_of(BasisIndex::Eta(2)).unwrap(), &WeightVector(vec![0, 0]));
        assert_eq!(a.weight_of(BasisIndex::E(1, 3)).unwrap(), &WeightVector(vec![1, 1]));
        assert_eq!(a.weight_of(BasisIndex::E(1, 2)).unwrap(), &WeightVector(vec![2, -1]));
    }

    #[test]
    fn toral_action_and_weight_additivity() {
        let a = build_algebra(&Poset::sphere(2), q()).unwrap();
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let b = a.bracket_basis(x, y);
                if x < a.n_eta() {
                    assert!(b.iter().all(|(p, _)| *p == y));
                }
                let w = a.weight(x) + a.weight(y);
                for (p, _) in b {
                    assert_eq!(a.weight(*p), &w);
                }
            }
        }
    }

    #[test]
    fn centers() {
        assert_eq!(build_algebra(&Poset::chain(3).unwrap(), q()).unwrap().center().dim(), 0);
        assert_eq!(build_algebra(&Poset::antichain(3).unwrap(), q()).unwrap().center().dim(), 2);
        let c = sl3_example().center_elements();
        assert_eq!(c, vec![vec![(0, q().one()), (1, q().from_i64(2))]]);
    }

    #[test]
    fn modules() {
        let a = build_algebra(&Poset::chain(3).unwrap(), q()).unwrap();
        let t = module_create(&a, ModuleKind::Trivial);
        assert_eq!(t.dim(), 1);
        assert!((0..a.dim()).all(|g| t.act(g, 0).is_empty()));
        let ad = module_create(&a, ModuleKind::Adjoint);
        assert_eq!(ad.dim(), 5);
        for g in 0..5 {
            for m in 0..5 {
                assert_eq!(ad.act(g, m), a.bracket_basis(g, m));
            }
        }
        let s = build_algebra(&Poset::sphere(1), q()).unwrap();
        let r = module_create(&s, ModuleKind::AdjointRestrictedToIdeal);
        assert_eq!((r.acting().len(), r.dim()), (4, 7));
    }

    #[test]
    fn preimages_invert_action() {
        let a = build_algebra(&Poset::chain(4).unwrap(), q()).unwrap();
        let ad = module_create(&a, ModuleKind::Adjoint);
        for g in 0..a.dim() {
            for m in 0..a.dim() {
                for (t, c) in ad.act(g, m) {
                    assert!(ad.preimages(g, *t).contains(&(m, c.clone())));
                }
            }
        }
    }
}
