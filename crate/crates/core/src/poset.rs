//! Finite posets on `{1..N}` whose order refines the integer order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation ({0},{1}) is not compatible with the linear order (need i < j)")]
    IncompatiblePair(usize, usize),
    #[error("element {0} outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("bad family parameter: {0}")]
    BadParam(String),
    #[error("cannot parse poset JSON: {0}")]
    BadJson(String),
}

/// A transitively closed strict order `i ≺ j` on `{1..N}` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
    // less[i][j] for 1-based i, j
    less: Vec<Vec<bool>>,
}

/// The poset file schema: declared generating relations, closed on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub n: usize,
    pub relations: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Chain,
    Antichain,
    Sphere,
}

impl FromStr for Family {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chain" => Ok(Family::Chain),
            "antichain" => Ok(Family::Antichain),
            "sphere" => Ok(Family::Sphere),
            other => Err(PosetError::BadParam(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Chain => "chain",
            Family::Antichain => "antichain",
            Family::Sphere => "sphere",
        })
    }
}

impl Poset {
    /// Transitive closure of the declared relations.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut less = vec![vec![false; n + 1]; n + 1];
        for &(i, j) in pairs {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(PosetError::OutOfRange(x, n));
                }
            }
            if i >= j {
                return Err(PosetError::IncompatiblePair(i, j));
            }
            less[i][j] = true;
        }
        // i < k < j in the integer order, so one pass over k ascending suffices
        for k in 1..=n {
            for i in 1..k {
                if !less[i][k] {
                    continue;
                }
                for j in k + 1..=n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
        let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| less[i][j]).collect();
        Ok(Poset { n, pairs, less })
    }

    pub fn chain(n: usize) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::BadParam("chain needs at least one element".into()));
        }
        let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_relations(n, &pairs)
    }

    pub fn antichain(n: usize) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::BadParam("antichain needs at least one element".into()));
        }
        Self::from_relations(n, &[])
    }

    /// Iterated two-point suspension of two incomparable points; `2k+2` elements.
    pub fn sphere(k: usize) -> Self {
        let n = 2 * k + 2;
        let mut pairs = Vec::new();
        for level in 0..k {
            for a in [2 * level + 1, 2 * level + 2] {
                for b in [2 * level + 3, 2 * level + 4] {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_relations(n, &pairs).expect("suspension relations are compatible")
    }

    /// Closure of a random relation set: each `i < j` is declared with probability `density`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Self {
        let pairs: Vec<_> =
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|_| rng.gen_bool(density)).collect();
        Self::from_relations(n, &pairs).expect("pairs are increasing")
    }

    pub fn named(family: Family, param: usize) -> Result<Self, PosetError> {
        match family {
            Family::Chain => Self::chain(param),
            Family::Antichain => Self::antichain(param),
            Family::Sphere => Ok(Self::sphere(param)),
        }
    }

    /// Parses `name:param`, e.g. `sphere:2`.
    pub fn from_family_spec(spec: &str) -> Result<Self, PosetError> {
        let (name, param) =
            spec.split_once(':').ok_or_else(|| PosetError::BadParam(format!("expected name:param, got `{spec}`")))?;
        let param: usize = param.parse().map_err(|_| PosetError::BadParam(format!("bad parameter `{param}`")))?;
        Self::named(name.parse()?, param)
    }

    pub fn from_file(file: &PosetFile) -> Result<Self, PosetError> {
        let pairs: Vec<_> = file.relations.iter().map(|r| (r[0], r[1])).collect();
        Self::from_relations(file.n, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| PosetError::BadJson(e.to_string()))?;
        Self::from_file(&file)
    }

    /// The closed relation set as a file (a valid, idempotent reload).
    pub fn to_file(&self) -> PosetFile {
        PosetFile { n: self.n, relations: self.pairs.iter().map(|&(i, j)| [i, j]).collect() }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn strict_pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.less[i][j]
    }

    /// Cover relations of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().copied().filter(|&(i, j)| !(i + 1..j).any(|k| self.less[i][k] && self.less[k][j])).collect()
    }

    /// All `k`-element chains `i_0 ≺ … ≺ i_{k-1}`, lexicographically ordered.
    pub fn chains(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if k == 0 {
            return out;
        }
        let mut stack = Vec::with_capacity(k);
        fn extend(p: &Poset, k: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if stack.len() == k {
                out.push(stack.clone());
                return;
            }
            let start = stack.last().map_or(1, |&l| l + 1);
            for next in start..=p.n {
                if stack.last().is_none_or(|&l| p.less[l][next]) {
                    stack.push(next);
                    extend(p, k, stack, out);
                    stack.pop();
                }
            }
        }
        extend(self, k, &mut stack, &mut out);
        out
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        let mut best = vec![1usize; self.n + 1];
        for j in 1..=self.n {
            for i in 1..j {
                if self.less[i][j] {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best[1..].iter().copied().max().unwrap_or(0)
    }

    /// Connected components of the comparability graph, each sorted, ordered by least element.
    pub fn comparability_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for y in 1..=self.n {
                    if comp[y] == usize::MAX && (self.less[x][y] || self.less[y][x]) {
                        comp[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}
