use std::collections::BTreeMap;

use super::{axpy, lookup, scale, SparseMatrix, SparseVec};
use crate::field::{FieldCtx, Scalar};

/// A subspace held in reduced row echelon form.
///
/// Every basis vector has leading coefficient 1 at its pivot and is zero at
/// every other basis vector's pivot, so two subspaces are equal iff their
/// bases are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    field: FieldCtx,
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, field: FieldCtx) -> Self {
        Subspace { ambient_dim, field, rows: BTreeMap::new() }
    }

    pub fn full(ambient_dim: usize, field: FieldCtx) -> Self {
        let rows = (0..ambient_dim).map(|i| (i, vec![(i, field.one())])).collect();
        Subspace { ambient_dim, field, rows }
    }

    pub fn from_vectors(ambient_dim: usize, field: FieldCtx, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Self::zero(ambient_dim, field);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn column_space(m: &SparseMatrix) -> Self {
        Self::from_vectors(m.rows(), m.field(), m.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Basis vectors sorted by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().cloned().collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Canonical representative of `v` modulo this subspace: zero at every pivot.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        let hits: Vec<usize> = v.iter().map(|e| e.0).filter(|c| self.rows.contains_key(c)).collect();
        for c in hits {
            // other basis rows vanish at c, so the coefficient is still the original one
            if let Some(x) = lookup(&out, c).cloned() {
                out = axpy(&out, &x.neg(), &self.rows[&c]);
            }
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let r = scale(&r, &lead.inv().expect("nonzero leading coefficient"));
        for row in self.rows.values_mut() {
            if let Some(x) = lookup(row, pivot).cloned() {
                *row = axpy(row, &x.neg(), &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.values().all(|v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_order_independent() {
        let q = FieldCtx::rationals();
        let a: SparseVec = vec![(0, q.from_i64(2)), (2, q.from_i64(4))];
        let b: SparseVec = vec![(1, q.from_i64(3)), (2, q.from_i64(-1))];
        let c: SparseVec = vec![(0, q.one()), (1, q.one()), (2, q.one())];
        let s1 = Subspace::from_vectors(3, q, [a.clone(), b.clone(), c.clone()]);
        let s2 = Subspace::from_vectors(3, q, [c, b, a]);
        assert_eq!(s1, s2);
        assert_eq!(s1, Subspace::full(3, q));
    }

    #[test]
    fn reduce_zeroes_pivots() {
        let f = FieldCtx::prime(7).unwrap();
        let s = Subspace::from_vectors(3, f, [vec![(0, f.from_i64(3)), (1, f.one())]]);
        let r = s.reduce(&[(0, f.one()), (2, f.one())]);
        assert!(lookup(&r, 0).is_none());
        assert_eq!(r.len(), 2);
    }
}
