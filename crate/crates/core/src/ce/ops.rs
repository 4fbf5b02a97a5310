//! Contraction, cup product, the maps `σ` and `ρ`, and the bigrading by
//! the number of Cartan arguments.

use super::{normalize, CeError, Cochain, CochainKey};
use crate::algebra::{LiePosetAlgebra, ModuleKind};
use crate::field::Scalar;

/// `(ι_h F)(g_1, …) = F(h, g_1, …)`; the zero cochain when `F` has degree 0.
pub fn contract(h: &[(usize, Scalar)], f: &Cochain) -> Cochain {
    let mut out = Cochain::zero(f.degree.saturating_sub(1), f.module, f.field);
    if f.degree == 0 {
        return out;
    }
    for (key, v) in f.terms() {
        for (x, c) in h {
            if let Ok(p) = key.args.binary_search(x) {
                let mut rest = key.args.clone();
                rest.remove(p);
                let val = c * v;
                out.add_term(CochainKey { args: rest, module: key.module }, if p % 2 == 1 { val.neg() } else { val });
            }
        }
    }
    out
}

/// Shuffle product of a scalar-valued `F` with a module-valued `G`.
pub fn cup(f: &Cochain, g: &Cochain) -> Result<Cochain, CeError> {
    if f.module != ModuleKind::Trivial {
        return Err(CeError::IncompatiblePairing(f.module, g.module));
    }
    let mut out = Cochain::zero(f.degree + g.degree, g.module, g.field);
    for (kf, a) in f.terms() {
        for (kg, b) in g.terms() {
            let mut args = kf.args.clone();
            args.extend_from_slice(&kg.args);
            if let Some((odd, sorted)) = normalize(&args) {
                let v = a * b;
                out.add_term(CochainKey { args: sorted, module: kg.module }, if odd { v.neg() } else { v });
            }
        }
    }
    Ok(out)
}

fn ideal_kind(m: ModuleKind) -> ModuleKind {
    match m {
        ModuleKind::Adjoint | ModuleKind::AdjointRestrictedToIdeal => ModuleKind::AdjointRestrictedToIdeal,
        ModuleKind::Trivial => ModuleKind::Trivial,
    }
}

fn full_kind(m: ModuleKind) -> ModuleKind {
    match m {
        ModuleKind::Adjoint | ModuleKind::AdjointRestrictedToIdeal => ModuleKind::Adjoint,
        ModuleKind::Trivial => ModuleKind::Trivial,
    }
}

fn eta_count(algebra: &LiePosetAlgebra, key: &CochainKey) -> usize {
    key.args.iter().take_while(|&&a| algebra.is_eta(a)).count()
}

/// `σ(F) = Σ_I η_I^∨ ⊗ ι_{η_I}F` restricted to ideal arguments, one entry per
/// `r`-subset `I ⊂ {1 … N−1}` in lexicographic order.
pub fn sigma(algebra: &LiePosetAlgebra, f: &Cochain, r: usize) -> Result<Vec<(Vec<usize>, Cochain)>, CeError> {
    if r > f.degree {
        return Err(CeError::DimensionMismatch(format!("r = {r} exceeds degree {}", f.degree)));
    }
    let labels = subsets(algebra.n_eta(), r);
    let mut out: Vec<(Vec<usize>, Cochain)> =
        labels.into_iter().map(|i| (i, Cochain::zero(f.degree - r, ideal_kind(f.module), f.field))).collect();
    for (key, v) in f.terms() {
        if eta_count(algebra, key) != r {
            continue;
        }
        let label: Vec<usize> = key.args[..r].iter().map(|&p| p + 1).collect();
        let slot = out.binary_search_by(|(l, _)| l.cmp(&label)).expect("label enumerated");
        out[slot].1.add_term(CochainKey { args: key.args[r..].to_vec(), module: key.module }, v.clone());
    }
    Ok(out)
}

/// The cochain equal to `G` on `(η_I, ideal arguments)` and zero on every
/// other normal-form argument tuple.
pub fn rho(algebra: &LiePosetAlgebra, label: &[usize], g: &Cochain) -> Result<Cochain, CeError> {
    if label.windows(2).any(|w| w[0] >= w[1]) || label.iter().any(|&i| i == 0 || i > algebra.n_eta()) {
        return Err(CeError::DimensionMismatch(format!("{label:?} is not an increasing set of Cartan labels")));
    }
    let prefix: Vec<usize> = label.iter().map(|&i| algebra.eta(i)).collect();
    let mut out = Cochain::zero(g.degree + label.len(), full_kind(g.module), g.field);
    for (key, v) in g.terms() {
        if key.args.iter().any(|&a| algebra.is_eta(a)) {
            return Err(CeError::DimensionMismatch(format!("argument tuple {:?} leaves the ideal", key.args)));
        }
        let mut args = prefix.clone();
        args.extend_from_slice(&key.args);
        out.add_term(CochainKey { args, module: key.module }, v.clone());
    }
    Ok(out)
}

/// The part of a cochain with exactly `r` Cartan arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedComponent {
    pub r: usize,
    pub cochain: Cochain,
}

/// Nonzero components in increasing `r`.
pub fn bigraded_decompose(algebra: &LiePosetAlgebra, f: &Cochain) -> Vec<BigradedComponent> {
    let mut parts: Vec<BigradedComponent> = Vec::new();
    for (key, v) in f.terms() {
        let r = eta_count(algebra, key);
        let slot = match parts.binary_search_by_key(&r, |c| c.r) {
            Ok(s) => s,
            Err(s) => {
                parts.insert(s, BigradedComponent { r, cochain: Cochain::zero(f.degree, f.module, f.field) });
                s
            }
        };
        parts[slot].cochain.add_term(key.clone(), v.clone());
    }
    parts
}

/// All `r`-subsets of `{1 … n}`, lexicographic.
pub(crate) fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    super::for_each_combination(&items, r, |s| out.push(s.to_vec()));
    out
}
