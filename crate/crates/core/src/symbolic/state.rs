use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{MultiPoly, RationalFunction, SymbolicError};
use crate::seed::{ExtendedExchangeMatrix, Seed, SeedError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicCaps {
    pub max_states: usize,
    pub max_terms: usize,
}

impl Default for SymbolicCaps {
    fn default() -> Self {
        Self { max_states: 100_000, max_terms: 1_000_000 }
    }
}

/// A seed reached from `base` by mutations, with each exchangeable slot
/// holding its cluster variable written in the initial variables.
#[derive(Debug, Clone)]
pub struct LabeledSeedState {
    base: Arc<Seed>,
    assignment: Vec<RationalFunction>,
    matrix: ExtendedExchangeMatrix,
    history: Vec<usize>,
}

impl PartialEq for LabeledSeedState {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.assignment == other.assignment && self.matrix == other.matrix
    }
}

impl Eq for LabeledSeedState {}

impl LabeledSeedState {
    pub fn initial(base: impl Into<Arc<Seed>>) -> Self {
        let base = base.into();
        let total = base.len();
        let assignment = (0..base.n()).map(|i| RationalFunction::variable(total, i)).collect();
        let matrix = base.matrix().clone();
        Self { base, assignment, matrix, history: Vec::new() }
    }

    pub fn base(&self) -> &Seed {
        &self.base
    }

    pub fn assignment(&self) -> &[RationalFunction] {
        &self.assignment
    }

    pub fn matrix(&self) -> &ExtendedExchangeMatrix {
        &self.matrix
    }

    /// Slots mutated so far, in order.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// Names of the initial extended cluster, used for rendering.
    pub fn names(&self) -> Vec<String> {
        self.base.labels().map(str::to_string).collect()
    }

    fn value(&self, t: usize) -> RationalFunction {
        if t < self.base.n() {
            self.assignment[t].clone()
        } else {
            RationalFunction::variable(self.base.len(), t)
        }
    }

    /// The variable replacing slot `k` under mutation.
    pub fn exchange(&self, k: usize, caps: SymbolicCaps) -> Result<RationalFunction, SymbolicError> {
        let n = self.base.n();
        if k >= n {
            return Err(SeedError::IndexOutOfRange { index: k, rank: n }.into());
        }
        let total = self.base.len();
        let one = RationalFunction::from_poly(MultiPoly::one(total));
        let (mut pos, mut neg) = (one.clone(), one);
        for t in 0..total {
            let b = self.matrix.get(k, t);
            if b.is_zero() {
                continue;
            }
            let e = b.abs().to_u32().ok_or(SymbolicError::TermCap(caps.max_terms))?;
            let factor = self.value(t).pow(e, caps.max_terms)?;
            if b.is_positive() {
                pos = pos.mul(&factor, caps.max_terms)?;
            } else {
                neg = neg.mul(&factor, caps.max_terms)?;
            }
        }
        pos.add(&neg, caps.max_terms)?.div(&self.assignment[k], caps.max_terms)
    }

    pub fn mutate(&self, k: usize, caps: SymbolicCaps) -> Result<Self, SymbolicError> {
        let fresh = self.exchange(k, caps)?;
        let mut next = self.clone();
        next.assignment[k] = fresh;
        next.matrix = self.matrix.mutate(k)?;
        next.history.push(k);
        Ok(next)
    }

    pub fn cluster(&self) -> Cluster {
        let mut v = self.assignment.clone();
        v.sort();
        Cluster(v)
    }
}

/// Unordered cluster, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cluster(Vec<RationalFunction>);

impl Cluster {
    pub fn variables(&self) -> &[RationalFunction] {
        &self.0
    }

    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.0.iter().map(|f| f.render(names)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplorationStatus {
    /// No unseen cluster is reachable.
    Closed,
    /// Depth or resource limit hit while new clusters were still appearing.
    Truncated,
}

impl fmt::Display for ExplorationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExplorationStatus::Closed => "closed",
            ExplorationStatus::Truncated => "truncated",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ClusterEnumeration {
    /// Clusters in discovery order.
    pub clusters: Vec<Cluster>,
    pub status: ExplorationStatus,
    /// Depth of the deepest state with a new cluster.
    pub depth: usize,
}

/// Breadth-first search over mutations, deduplicated by unordered cluster.
///
/// The status is `Closed` only when expanding the last frontier produces no
/// unseen cluster; hitting `max_depth`, the state cap or the term cap while
/// new clusters remain gives `Truncated`. A non-Laurent exchange is an error.
pub fn enumerate_clusters(
    seed: &Seed,
    max_depth: usize,
    caps: SymbolicCaps,
) -> Result<ClusterEnumeration, SymbolicError> {
    let start = LabeledSeedState::initial(seed.clone());
    let n = seed.n();
    let mut seen: HashSet<Cluster> = HashSet::new();
    let first = start.cluster();
    seen.insert(first.clone());
    let mut clusters = vec![first];
    let mut frontier = vec![start];
    let mut depth = 0;
    loop {
        if frontier.is_empty() {
            return Ok(ClusterEnumeration { clusters, status: ExplorationStatus::Closed, depth });
        }
        let expanded: Vec<Result<Vec<LabeledSeedState>, SymbolicError>> = frontier
            .par_iter()
            .map(|s| (0..n).map(|k| s.mutate(k, caps)).collect())
            .collect();
        let mut next = Vec::new();
        let mut grew = false;
        for batch in expanded {
            let batch = match batch {
                Ok(b) => b,
                Err(SymbolicError::TermCap(_)) => {
                    return Ok(ClusterEnumeration { clusters, status: ExplorationStatus::Truncated, depth });
                }
                Err(e) => return Err(e),
            };
            for s in batch {
                let c = s.cluster();
                if seen.insert(c.clone()) {
                    grew = true;
                    if depth == max_depth || clusters.len() >= caps.max_states {
                        return Ok(ClusterEnumeration { clusters, status: ExplorationStatus::Truncated, depth });
                    }
                    clusters.push(c);
                    next.push(s);
                }
            }
        }
        if grew {
            depth += 1;
        }
        frontier = next;
    }
}
