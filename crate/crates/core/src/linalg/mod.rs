//! Exact sparse matrices with rank, kernel and quotient computations.

mod elim;
mod subspace;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{FieldCtx, FieldError, Scalar};

pub use elim::rank;
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("image of the denominator is not contained in the numerator (is delta^2 != 0?)")]
    ImageNotContained,
    #[error("malformed matrix dump: {0}")]
    BadDump(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `y + a * x` for sparse vectors.
pub fn axpy(y: &[(usize, Scalar)], a: &Scalar, x: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            let v = a * &x[j].1;
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = &y[i].1 + &(a * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Scalar)], a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, a * x)).collect()
}

pub fn lookup(v: &[(usize, Scalar)], idx: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

/// Sums duplicate indices and drops zeros.
pub fn sparse_from_pairs(field: FieldCtx, pairs: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, v) in pairs {
        let e = acc.entry(i).or_insert_with(|| field.zero());
        *e = &*e + &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Row-major sparse matrix over one exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: FieldCtx,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldCtx) -> Self {
        SparseMatrix { rows, cols, field, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize, field: FieldCtx) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i].push((i, field.one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: FieldCtx,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::DimensionMismatch(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if !field.contains(&v) {
                return Err(FieldError::ContextMismatch(field.to_string(), v.ctx().to_string()).into());
            }
            let e = acc[r].entry(c).or_insert_with(|| field.zero());
            *e = &*e + &v;
        }
        let data = acc.into_iter().map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        Ok(SparseMatrix { rows, cols, field, data })
    }

    /// Rows given as sparse vectors (must already be sorted and zero-free).
    pub fn from_rows(cols: usize, field: FieldCtx, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(data.iter().flatten().all(|(c, v)| *c < cols && !v.is_zero()));
        SparseMatrix { rows: data.len(), cols, field, data }
    }

    pub fn from_dense(field: FieldCtx, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(c, &v)| (c, field.from_i64(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows: rows.len(), cols, field, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        lookup(&self.data[r], c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, field: self.field, data }
    }

    /// Column vectors of the matrix.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec = Vec::new();
                for (k, a) in row {
                    acc = axpy(&acc, a, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, field: self.field, data })
    }

    pub fn mul_vec(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let mut s = self.field.zero();
                let (mut i, mut j) = (0, 0);
                while i < row.len() && j < v.len() {
                    match row[i].0.cmp(&v[j].0) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            s = &s + &(&row[i].1 * &v[j].1);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                (!s.is_zero()).then_some((r, s))
            })
            .collect()
    }

    /// Reorders rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let triplets = self.entries().map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone()));
        SparseMatrix::from_triplets(self.rows, self.cols, self.field, triplets).expect("permutation preserves shape")
    }

    /// Debug dump: header `rows cols field`, then `row col value` per entry.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field);
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<SparseMatrix, LinalgError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| LinalgError::BadDump("empty input".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(LinalgError::BadDump(format!("bad header `{header}`")));
        }
        let parse_n = |s: &str| s.parse::<usize>().map_err(|_| LinalgError::BadDump(format!("bad integer `{s}`")));
        let (rows, cols) = (parse_n(h[0])?, parse_n(h[1])?);
        let field: FieldCtx = h[2].parse()?;
        let mut triplets = Vec::new();
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(LinalgError::BadDump(format!("bad entry `{line}`")));
            }
            triplets.push((parse_n(t[0])?, parse_n(t[1])?, field.parse_scalar(t[2])?));
        }
        SparseMatrix::from_triplets(rows, cols, field, triplets)
    }
}

/// Canonical basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    let rowspace = Subspace::from_vectors(m.cols(), m.field(), m.row_data().iter().cloned());
    let field = m.field();
    let pivots: Vec<usize> = rowspace.pivots().collect();
    let is_pivot = {
        let mut f = vec![false; m.cols()];
        for &p in &pivots {
            f[p] = true;
        }
        f
    };
    let basis = rowspace.basis();
    let mut kernel = Subspace::zero(m.cols(), field);
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v: SparseVec = vec![(free, field.one())];
        for b in &basis {
            if let Some(x) = lookup(b, free) {
                v.push((b[0].0, x.neg()));
            }
        }
        v.sort_by_key(|e| e.0);
        kernel.insert(v);
    }
    kernel
}

/// `dim(numerator) - rank(denominator)`, after checking the image is contained.
pub fn quotient_dim(numerator: &Subspace, denominator: &SparseMatrix) -> Result<usize, LinalgError> {
    if numerator.ambient_dim() != denominator.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "subspace of dim-{} space vs matrix with {} rows",
            numerator.ambient_dim(),
            denominator.rows()
        )));
    }
    for col in denominator.columns() {
        if !numerator.contains(&col) {
            return Err(LinalgError::ImageNotContained);
        }
    }
    Ok(numerator.dim() - rank(denominator))
}

/// Canonical representative of `v + im(m)`; zero iff `v` lies in the image.
pub fn reduce_mod_image(v: &[(usize, Scalar)], m: &SparseMatrix) -> SparseVec {
    Subspace::column_space(m).reduce(v)
}
