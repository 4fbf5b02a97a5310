//! Integer weights of `h` on matrix units, and the uniqueness properties of
//! their sums that make the weight-zero complexes combinatorial.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::field::FieldCtx;

/// A weight recorded by its values on `η_1 … η_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![0; rank])
    }

    /// Weight of the matrix unit `e_ij` in `sl(n)`.
    pub fn of_unit(n: usize, i: usize, j: usize) -> Self {
        let ind = |a: bool| a as i64;
        WeightVector((1..n).map(|k| ind(i == k) - ind(i == k + 1) - ind(j == k) + ind(j == k + 1)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_integer_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Zero after reduction into the field.
    pub fn is_zero_in(&self, field: FieldCtx) -> bool {
        match field.characteristic() {
            0 => self.is_integer_zero(),
            p => self.0.iter().all(|&x| x.rem_euclid(p as i64) == 0),
        }
    }

    pub fn reduced(&self, field: FieldCtx) -> WeightVector {
        match field.characteristic() {
            0 => self.clone(),
            p => WeightVector(self.0.iter().map(|&x| x.rem_euclid(p as i64)).collect()),
        }
    }

    /// `w(h)` for `h = Σ c_k η_k` with integer coefficients.
    pub fn eval(&self, coords: &[i64]) -> i64 {
        self.0.iter().zip(coords).map(|(a, b)| a * b).sum()
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of the exhaustive weight-sum scan over all sets of positive roots of `sl(n)`.
/// A set of root vectors `e_ij`, listed by their index pairs.
pub type UnitSet = Vec<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightUniquenessReport {
    pub n: usize,
    pub characteristic: u64,
    pub subsets_checked: usize,
    /// Nonempty sets of distinct units whose weights sum to zero in the field.
    pub zero_sum_counterexamples: Vec<UnitSet>,
    /// Sets whose weight sum equals some `w_ij` without forming a path from `i` to `j`.
    pub path_counterexamples: Vec<(UnitSet, (usize, usize))>,
}

impl WeightUniquenessReport {
    pub fn passed(&self) -> bool {
        self.zero_sum_counterexamples.is_empty() && self.path_counterexamples.is_empty()
    }
}

/// Whether the units can be ordered `e_{i,i_2}, e_{i_2,i_3}, …, e_{i_k,j}`.
pub fn forms_path(units: &[(usize, usize)], from: usize, to: usize) -> bool {
    let mut sorted = units.to_vec();
    sorted.sort_unstable();
    let mut at = from;
    for &(i, j) in &sorted {
        if i != at {
            return false;
        }
        at = j;
    }
    !sorted.is_empty() && at == to
}

/// Scans every nonempty set of distinct `e_ij` (`i < j`) in `sl(n)`.
pub fn weight_uniqueness_scan(n: usize, field: FieldCtx) -> WeightUniquenessReport {
    let units: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let weights: Vec<WeightVector> =
        units.iter().map(|&(i, j)| WeightVector::of_unit(n, i, j).reduced(field)).collect();
    assert!(units.len() < 24, "exhaustive scan is only meant for small n");
    let mut report = WeightUniquenessReport {
        n,
        characteristic: field.characteristic(),
        subsets_checked: 0,
        zero_sum_counterexamples: Vec::new(),
        path_counterexamples: Vec::new(),
    };
    for mask in 1u32..(1 << units.len()) {
        let members: Vec<usize> = (0..units.len()).filter(|b| mask & (1 << b) != 0).collect();
        let mut sum = WeightVector::zero(n.saturating_sub(1));
        for &m in &members {
            sum = &sum + &weights[m];
        }
        let sum = sum.reduced(field);
        let set: Vec<(usize, usize)> = members.iter().map(|&m| units[m]).collect();
        report.subsets_checked += 1;
        if sum.is_zero_in(field) {
            report.zero_sum_counterexamples.push(set.clone());
        }
        for (t, target) in weights.iter().enumerate() {
            if &sum == target && !forms_path(&set, units[t].0, units[t].1) {
                report.path_counterexamples.push((set.clone(), units[t]));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_weights_in_sl3() {
        assert_eq!(WeightVector::of_unit(3, 1, 3), WeightVector(vec![1, 1]));
        assert_eq!(WeightVector::of_unit(3, 1, 2), WeightVector(vec![2, -1]));
        assert_eq!(WeightVector::of_unit(3, 2, 3), WeightVector(vec![-1, 2]));
    }

    #[test]
    fn weights_are_sums_of_simple_roots() {
        for n in 2..7 {
            for i in 1..n {
                for j in i + 1..=n {
                    let mut s = WeightVector::zero(n - 1);
                    for r in i..j {
                        s = &s + &WeightVector::of_unit(n, r, r + 1);
                    }
                    assert_eq!(s, WeightVector::of_unit(n, i, j));
                }
            }
        }
    }

    #[test]
    fn field_reduction() {
        let w = WeightVector(vec![7, -14]);
        assert!(!w.is_zero_in(FieldCtx::rationals()));
        assert!(w.is_zero_in(FieldCtx::prime(7).unwrap()));
    }

    #[test]
    fn paths() {
        assert!(forms_path(&[(2, 4), (1, 2)], 1, 4));
        assert!(!forms_path(&[(1, 2), (3, 4)], 1, 4));
        assert!(!forms_path(&[(1, 3), (1, 2)], 1, 3));
        assert!(!forms_path(&[], 1, 1));
    }

    #[test]
    fn small_scan_passes() {
        let r = weight_uniqueness_scan(3, FieldCtx::prime(5).unwrap());
        assert_eq!(r.subsets_checked, 7);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn scan_detects_failure_in_small_characteristic() {
        // in F_2 the weight (2,-1) of e_12 collapses to (0,1) = w_23 mod 2
        let r = weight_uniqueness_scan(3, FieldCtx::prime(2).unwrap());
        assert!(!r.passed());
    }
}
