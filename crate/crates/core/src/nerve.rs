//! The nerve of a poset (its order complex) and simplicial cohomology.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, Scalar};
use crate::linalg::{self, SparseMatrix, SparseVec, Subspace};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("characteristic {characteristic} must exceed the number of vertices {n}")]
    CharacteristicTooSmall { characteristic: u64, n: usize },
    #[error("no simplices of dimension {0}")]
    NoSuchDimension(i32),
    #[error("cochain does not match the complex: {0}")]
    DimensionMismatch(String),
}

/// Simplices of each dimension, in lexicographic order.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    n_vertices: usize,
    augmented: bool,
    simplices: BTreeMap<i32, Vec<Vec<usize>>>,
    index: BTreeMap<i32, HashMap<Vec<usize>, usize>>,
}

/// A function on the simplices of one dimension; absent simplices are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCochain {
    pub dim: i32,
    pub values: BTreeMap<Vec<usize>, Scalar>,
}

impl SimplicialCochain {
    pub fn zero(dim: i32) -> Self {
        SimplicialCochain { dim, values: BTreeMap::new() }
    }

    pub fn from_values(dim: i32, values: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> Self {
        let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        SimplicialCochain { dim, values }
    }

    pub fn value(&self, simplex: &[usize]) -> Option<&Scalar> {
        self.values.get(simplex)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn build_nerve(poset: &Poset, augmented: bool) -> SimplicialComplex {
    let mut simplices = BTreeMap::new();
    if augmented {
        simplices.insert(-1, vec![Vec::new()]);
    }
    for k in 1..=poset.height() {
        simplices.insert(k as i32 - 1, poset.chains(k));
    }
    let index = simplices
        .iter()
        .map(|(d, list)| (*d, list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()))
        .collect();
    SimplicialComplex { n_vertices: poset.len(), augmented, simplices, index }
}

impl SimplicialComplex {
    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn min_dim(&self) -> i32 {
        if self.augmented {
            -1
        } else {
            0
        }
    }

    /// Top dimension with at least one simplex (`-1` for an empty augmented complex).
    pub fn max_dim(&self) -> i32 {
        self.simplices.keys().next_back().copied().unwrap_or(-1)
    }

    pub fn simplices(&self, dim: i32) -> &[Vec<usize>] {
        self.simplices.get(&dim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, dim: i32) -> usize {
        self.simplices(dim).len()
    }

    pub fn position(&self, simplex: &[usize]) -> Option<usize> {
        let dim = simplex.len() as i32 - 1;
        self.index.get(&dim).and_then(|m| m.get(simplex)).copied()
    }

    /// Matrix of `δ: C^dim → C^{dim+1}`.
    pub fn coboundary(&self, dim: i32, field: FieldCtx) -> SparseMatrix {
        let rows = self.simplices(dim + 1);
        let cols = self.count(dim);
        let data: Vec<SparseVec> = rows
            .iter()
            .map(|s| {
                let mut row: SparseVec = (0..s.len())
                    .filter_map(|r| {
                        let mut face = s.clone();
                        face.remove(r);
                        let c = self.position(&face)?;
                        Some((c, field.from_i64(if r % 2 == 0 { 1 } else { -1 })))
                    })
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        SparseMatrix::from_rows(cols, field, data)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|(d, s)| if d.rem_euclid(2) == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum()
    }

    pub fn cochain_to_vec(&self, f: &SimplicialCochain) -> Result<SparseVec, NerveError> {
        let mut v = Vec::with_capacity(f.values.len());
        for (s, x) in &f.values {
            if s.len() as i32 - 1 != f.dim {
                return Err(NerveError::DimensionMismatch(format!("simplex {s:?} in a {}-cochain", f.dim)));
            }
            let i = self.position(s).ok_or_else(|| NerveError::DimensionMismatch(format!("{s:?} is not a simplex")))?;
            v.push((i, x.clone()));
        }
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn cochain_from_vec(&self, dim: i32, v: &[(usize, Scalar)]) -> SimplicialCochain {
        let list = self.simplices(dim);
        SimplicialCochain::from_values(dim, v.iter().map(|(i, x)| (list[*i].clone(), x.clone())))
    }

    /// `δf` as a cochain.
    pub fn apply_coboundary(&self, f: &SimplicialCochain, field: FieldCtx) -> Result<SimplicialCochain, NerveError> {
        let v = self.cochain_to_vec(f)?;
        let out = self.coboundary(f.dim, field).mul_vec(&v);
        Ok(self.cochain_from_vec(f.dim + 1, &out))
    }

    pub fn is_cocycle(&self, f: &SimplicialCochain, field: FieldCtx) -> Result<bool, NerveError> {
        Ok(self.apply_coboundary(f, field)?.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialDegree {
    pub dim: i32,
    pub simplices: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub dim_h: usize,
}

#[derive(Debug, Clone)]
pub struct SimplicialCohomology {
    pub degrees: Vec<SimplicialDegree>,
    pub representatives: BTreeMap<i32, Vec<SimplicialCochain>>,
}

impl SimplicialCohomology {
    pub fn dim_h(&self, dim: i32) -> usize {
        self.degrees.iter().find(|d| d.dim == dim).map_or(0, |d| d.dim_h)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|d| if d.dim.rem_euclid(2) == 0 { d.dim_h as i64 } else { -(d.dim_h as i64) }).sum()
    }
}

/// Cohomology in every dimension, with canonical representative cocycles.
pub fn simplicial_cohomology(complex: &SimplicialComplex, field: FieldCtx) -> Result<SimplicialCohomology, NerveError> {
    if complex.augmented && !field.admits(complex.n_vertices) {
        return Err(NerveError::CharacteristicTooSmall {
            characteristic: field.characteristic(),
            n: complex.n_vertices,
        });
    }
    let mut degrees = Vec::new();
    let mut representatives = BTreeMap::new();
    for dim in complex.min_dim()..=complex.max_dim() {
        let out = complex.coboundary(dim, field);
        let incoming = complex.coboundary(dim - 1, field);
        let kernel = linalg::kernel_basis(&out);
        let dim_h = linalg::quotient_dim(&kernel, &incoming).expect("simplicial delta squares to zero");
        let image = Subspace::column_space(&incoming);
        let mut classes = Subspace::zero(complex.count(dim), field);
        for z in kernel.basis() {
            classes.insert(image.reduce(&z));
        }
        debug_assert_eq!(classes.dim(), dim_h);
        representatives.insert(dim, classes.basis().iter().map(|v| complex.cochain_from_vec(dim, v)).collect());
        degrees.push(SimplicialDegree {
            dim,
            simplices: complex.count(dim),
            dim_kernel: kernel.dim(),
            dim_image: image.dim(),
            dim_h,
        });
    }
    Ok(SimplicialCohomology { degrees, representatives })
}
