use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::ModuleKind;
use crate::field::{FieldCtx, Scalar};

/// Sorts `args`, returning whether the permutation was odd; `None` on a repeat.
pub fn normalize(args: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v = args.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] >= v[j] {
            if v[j - 1] == v[j] {
                return None;
            }
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    Some((odd, v))
}

/// A basis cochain: strictly increasing argument positions and a module index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CochainKey {
    pub args: Vec<usize>,
    pub module: usize,
}

impl fmt::Display for CochainKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{}", self.args, self.module)
    }
}

/// A sparse alternating cochain; stored coefficients are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub module: ModuleKind,
    pub field: FieldCtx,
    coeffs: BTreeMap<CochainKey, Scalar>,
}

impl Cochain {
    pub fn zero(degree: usize, module: ModuleKind, field: FieldCtx) -> Self {
        Cochain { degree, module, field, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(
        degree: usize,
        module: ModuleKind,
        field: FieldCtx,
        terms: impl IntoIterator<Item = (CochainKey, Scalar)>,
    ) -> Self {
        let mut c = Self::zero(degree, module, field);
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    /// Adds `v` at `key`, which must already be in normal form.
    pub fn add_term(&mut self, key: CochainKey, v: Scalar) {
        debug_assert_eq!(key.args.len(), self.degree);
        debug_assert!(key.args.windows(2).all(|w| w[0] < w[1]));
        if v.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &v;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CochainKey, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CochainKey> {
        self.coeffs.keys()
    }

    pub fn get(&self, key: &CochainKey) -> Option<&Scalar> {
        self.coeffs.get(key)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `F(g_1, …, g_n)` on basis positions in any order, as a module element.
    pub fn eval(&self, args: &[usize]) -> Vec<(usize, Scalar)> {
        let Some((odd, sorted)) = normalize(args) else { return Vec::new() };
        let lo = CochainKey { args: sorted.clone(), module: 0 };
        let hi = CochainKey { args: sorted, module: usize::MAX };
        self.coeffs.range(lo..=hi).map(|(k, v)| (k.module, if odd { v.neg() } else { v.clone() })).collect()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, a: &Scalar) -> Cochain {
        Cochain::from_terms(self.degree, self.module, self.field, self.terms().map(|(k, v)| (k.clone(), a * v)))
    }

    /// Same coefficients, relabelled as valued in another module kind.
    pub fn with_module(mut self, module: ModuleKind) -> Cochain {
        self.module = module;
        self
    }
}
