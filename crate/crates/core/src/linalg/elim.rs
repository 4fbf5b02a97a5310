//! Sparse rank computation.
//!
//! The matrix is first split into connected components of its row/column
//! incidence graph; each component is eliminated independently with a
//! Markowitz-style pivot choice (shortest row, then the column of that row
//! with the fewest live entries, ties broken by lowest index). Over `F_p`
//! this is plain Gaussian elimination on residues; over `Q` rows are scaled
//! to integers and eliminated fraction-free, dividing each updated row by its
//! content to keep entries small.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::SparseMatrix;
use crate::field::Scalar;

trait Ring: Sync {
    type E: Clone + Send;

    /// Makes the pivot row convenient for repeated use (e.g. unit pivot).
    fn prepare_pivot(&self, row: Vec<(usize, Self::E)>, col: usize) -> Vec<(usize, Self::E)>;

    /// Returns a row with the same span contribution as `target` but zero at `col`.
    fn eliminate(&self, target: &[(usize, Self::E)], pivot: &[(usize, Self::E)], col: usize) -> Vec<(usize, Self::E)>;
}

struct ModP(u64);

fn entry<E>(row: &[(usize, E)], col: usize) -> &E {
    &row[row.binary_search_by_key(&col, |e| e.0).expect("column present")].1
}

impl Ring for ModP {
    type E = u64;

    fn prepare_pivot(&self, row: Vec<(usize, u64)>, col: usize) -> Vec<(usize, u64)> {
        let p = self.0;
        let inv = crate::field::inv_mod(*entry(&row, col), p).expect("nonzero pivot");
        row.into_iter().map(|(c, v)| (c, ((v as u128 * inv as u128) % p as u128) as u64)).collect()
    }

    fn eliminate(&self, target: &[(usize, u64)], pivot: &[(usize, u64)], col: usize) -> Vec<(usize, u64)> {
        let p = self.0 as u128;
        let f = *entry(target, col) as u128;
        let neg = |v: u64| ((p - (f * v as u128) % p) % p) as u64;
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            if j == pivot.len() || (i < target.len() && target[i].0 < pivot[j].0) {
                out.push(target[i]);
                i += 1;
            } else if i == target.len() || pivot[j].0 < target[i].0 {
                out.push((pivot[j].0, neg(pivot[j].1)));
                j += 1;
            } else {
                let v = ((target[i].1 as u128 + neg(pivot[j].1) as u128) % p) as u64;
                if v != 0 {
                    out.push((target[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }
}

struct Integers;

fn primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            return row;
        }
    }
    if !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    row
}

impl Ring for Integers {
    type E = BigInt;

    fn prepare_pivot(&self, row: Vec<(usize, BigInt)>, _col: usize) -> Vec<(usize, BigInt)> {
        primitive(row)
    }

    fn eliminate(&self, target: &[(usize, BigInt)], pivot: &[(usize, BigInt)], col: usize) -> Vec<(usize, BigInt)> {
        let a = entry(pivot, col);
        let b = entry(target, col);
        let g = a.gcd(b);
        let (a, b) = (a / &g, b / &g);
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            if j == pivot.len() || (i < target.len() && target[i].0 < pivot[j].0) {
                out.push((target[i].0, &a * &target[i].1));
                i += 1;
            } else if i == target.len() || pivot[j].0 < target[i].0 {
                out.push((pivot[j].0, -(&b * &pivot[j].1)));
                j += 1;
            } else {
                let v = &a * &target[i].1 - &b * &pivot[j].1;
                if !v.is_zero() {
                    out.push((target[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        primitive(out)
    }
}

fn eliminate_component<R: Ring>(ring: &R, mut rows: Vec<Vec<(usize, R::E)>>) -> usize {
    let n = rows.len();
    let mut alive = vec![true; n];
    let mut col_rows: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut col_count: HashMap<usize, usize> = HashMap::new();
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows.entry(*c).or_default().push(r);
            *col_count.entry(*c).or_default() += 1;
        }
        if row.is_empty() {
            alive[r] = false;
        } else {
            queue.insert((row.len(), r));
        }
    }

    let mut rank = 0;
    while let Some((len, r)) = queue.pop_first() {
        debug_assert_eq!(len, rows[r].len());
        let col = rows[r].iter().map(|e| e.0).min_by_key(|c| (col_count[c], *c)).expect("nonempty row");
        let pivot = ring.prepare_pivot(std::mem::take(&mut rows[r]), col);
        alive[r] = false;
        for (c, _) in &pivot {
            *col_count.get_mut(c).unwrap() -= 1;
        }
        rank += 1;

        let mut targets = col_rows.remove(&col).unwrap_or_default();
        targets.sort_unstable();
        targets.dedup();
        for t in targets {
            if !alive[t] || rows[t].binary_search_by_key(&col, |e| e.0).is_err() {
                continue;
            }
            queue.remove(&(rows[t].len(), t));
            let old = std::mem::take(&mut rows[t]);
            for (c, _) in &old {
                *col_count.get_mut(c).unwrap() -= 1;
            }
            let new = ring.eliminate(&old, &pivot, col);
            for (c, _) in &new {
                *col_count.entry(*c).or_default() += 1;
                if old.binary_search_by_key(c, |e| e.0).is_err() {
                    col_rows.entry(*c).or_default().push(t);
                }
            }
            if new.is_empty() {
                alive[t] = false;
            } else {
                queue.insert((new.len(), t));
            }
            rows[t] = new;
        }
    }
    rank
}

/// Row indices grouped by connected component of the incidence graph.
fn components(m: &SparseMatrix) -> Vec<Vec<usize>> {
    let n = m.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: Vec<Option<usize>> = vec![None; m.cols()];
    for r in 0..n {
        for (c, _) in m.row(r) {
            match owner[*c] {
                None => owner[*c] = Some(r),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, r));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for r in (0..n).filter(|&r| !m.row(r).is_empty()) {
        let root = find(&mut parent, r);
        groups.entry(root).or_default().push(r);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_unstable_by_key(|g| g[0]);
    out
}

fn integer_row(row: &[(usize, Scalar)]) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(&v.to_fraction().1);
    }
    let ints = row
        .iter()
        .map(|(c, v)| {
            let (n, d) = v.to_fraction();
            (*c, n * (&lcm / d))
        })
        .collect();
    primitive(ints)
}

/// Exact rank over the matrix's field.
pub fn rank(m: &SparseMatrix) -> usize {
    let comps = components(m);
    let field = m.field();
    comps
        .into_par_iter()
        .map(|rows| {
            if rows.len() == 1 {
                return 1;
            }
            if field.is_rational() {
                let data = rows.iter().map(|&r| integer_row(m.row(r))).collect();
                eliminate_component(&Integers, data)
            } else {
                let data = rows
                    .iter()
                    .map(|&r| m.row(r).iter().map(|(c, v)| (*c, v.as_residue().unwrap())).collect())
                    .collect();
                eliminate_component(&ModP(field.characteristic()), data)
            }
        })
        .sum()
}
