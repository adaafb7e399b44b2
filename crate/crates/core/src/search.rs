//! Backtracking search for variable maps satisfying the sign and magnitude
//! conditions of a seed homomorphism.
//!
//! One engine serves endomorphism enumeration, isomorphism search and
//! section (right inverse) search. Conditions are checked pairwise as soon
//! as both ends are assigned. The sign condition is tracked as one sign per
//! connected component of the source's exchangeable adjacency graph, which
//! is equivalent to quantifying over all pairs of adjacent pairs.

use std::ops::ControlFlow;

use num_traits::ToPrimitive;

use crate::hom::HomError;
use crate::seed::Seed;
use crate::varset::{VarSet, MAX_VARS};

/// Exchange matrix entries as `i64`, row-major over `n x total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Weights {
    n: usize,
    total: usize,
    w: Vec<i64>,
}

impl Weights {
    pub(crate) fn of(seed: &Seed) -> Result<Self, HomError> {
        if seed.len() > MAX_VARS {
            return Err(HomError::TooManyVariables(seed.len()));
        }
        let total = seed.len();
        let mut w = Vec::with_capacity(seed.n() * total);
        for x in 0..seed.n() {
            for y in 0..total {
                let b = seed.b(x, y);
                w.push(b.to_i64().ok_or_else(|| HomError::WeightOverflow(b.clone()))?);
            }
        }
        Ok(Self { n: seed.n(), total, w })
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }

    #[inline]
    pub(crate) fn get(&self, x: usize, y: usize) -> i64 {
        self.w[x * self.total + y]
    }

    /// Nonzero `|b|` values in the row of `v` and in the column of `v`
    /// (restricted to exchangeable rows), each sorted; plus the kind.
    pub(crate) fn signature(&self, v: usize) -> (bool, Vec<u64>, Vec<u64>) {
        let mut row = Vec::new();
        if v < self.n {
            row = (0..self.total).map(|y| self.get(v, y).unsigned_abs()).filter(|&a| a != 0).collect();
            row.sort_unstable();
        }
        let mut col: Vec<u64> =
            (0..self.n).map(|x| self.get(x, v).unsigned_abs()).filter(|&a| a != 0).collect();
        col.sort_unstable();
        (v < self.n, row, col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchMode {
    /// `|b'| >= |b|`, maps need not be injective.
    Hom,
    /// `|b'| = |b|` and injective.
    Iso,
}

pub(crate) struct HomSearch<'a> {
    src: &'a Weights,
    tgt: &'a Weights,
    order: Vec<usize>,
    in_ex: Vec<bool>,
    comp: Vec<usize>,
    ncomp: usize,
    candidates: Vec<Vec<usize>>,
    mode: SearchMode,
}

impl<'a> HomSearch<'a> {
    /// `candidates[v]` lists allowed images of `v`; for `v` in `dom_ex` they
    /// must be exchangeable in the target.
    pub(crate) fn new(
        src: &'a Weights,
        tgt: &'a Weights,
        dom: VarSet,
        dom_ex: VarSet,
        candidates: Vec<Vec<usize>>,
        mode: SearchMode,
    ) -> Self {
        debug_assert!(dom_ex.is_subset(dom));
        debug_assert!(dom_ex.iter().all(|x| x < src.n()));
        let total = src.total();
        let mut in_ex = vec![false; total];
        for x in dom_ex.iter() {
            in_ex[x] = true;
        }
        let mut comp = vec![usize::MAX; total];
        let mut order = Vec::with_capacity(dom.len());
        let mut ncomp = 0;
        for root in dom_ex.iter() {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = ncomp;
            let start = order.len();
            order.push(root);
            let mut head = start;
            while head < order.len() {
                let x = order[head];
                head += 1;
                for z in dom_ex.iter() {
                    if comp[z] == usize::MAX && src.get(x, z) != 0 {
                        comp[z] = ncomp;
                        order.push(z);
                    }
                }
            }
            ncomp += 1;
        }
        order.extend(dom.difference(dom_ex).iter());
        Self { src, tgt, order, in_ex, comp, ncomp, candidates, mode }
    }

    /// Calls `visit` with every complete map (indexed by source variable,
    /// `None` outside the domain) until it breaks.
    pub(crate) fn run<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[Option<usize>]) -> ControlFlow<()>,
    {
        let mut state = State {
            map: vec![None; self.src.total()],
            signs: vec![0; self.ncomp],
            used: vec![false; self.tgt.total()],
        };
        self.descend(0, &mut state, &mut visit)
    }

    fn descend<F>(&self, depth: usize, st: &mut State, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Option<usize>]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(&st.map);
        }
        let v = self.order[depth];
        let mut fresh = Vec::new();
        for &a in &self.candidates[v] {
            if self.mode == SearchMode::Iso && st.used[a] {
                continue;
            }
            fresh.clear();
            if self.admissible(v, a, depth, st, &mut fresh) {
                st.map[v] = Some(a);
                st.used[a] = true;
                let flow = self.descend(depth + 1, st, visit);
                st.used[a] = false;
                st.map[v] = None;
                if flow.is_break() {
                    return flow;
                }
            }
            for &c in &fresh {
                st.signs[c] = 0;
            }
        }
        ControlFlow::Continue(())
    }

    fn admissible(&self, v: usize, a: usize, depth: usize, st: &mut State, fresh: &mut Vec<usize>) -> bool {
        for &u in &self.order[..depth] {
            let c = st.map[u].expect("assigned earlier");
            if self.in_ex[v] && !self.pair(v, u, a, c, st, fresh) {
                return false;
            }
            if self.in_ex[u] && !self.pair(u, v, c, a, st, fresh) {
                return false;
            }
        }
        self.mode == SearchMode::Hom || !self.in_ex[v] || self.tgt.get(a, a) == 0
    }

    #[inline]
    fn pair(&self, x: usize, y: usize, fx: usize, fy: usize, st: &mut State, fresh: &mut Vec<usize>) -> bool {
        let w = self.src.get(x, y);
        let wt = self.tgt.get(fx, fy);
        let ok = match self.mode {
            SearchMode::Hom => wt.unsigned_abs() >= w.unsigned_abs(),
            SearchMode::Iso => wt.unsigned_abs() == w.unsigned_abs(),
        };
        if !ok {
            return false;
        }
        if w != 0 {
            let s = (w.signum() * wt.signum()) as i8;
            let c = self.comp[x];
            if st.signs[c] == 0 {
                st.signs[c] = s;
                fresh.push(c);
            } else if st.signs[c] != s {
                return false;
            }
        }
        true
    }
}

struct State {
    map: Vec<Option<usize>>,
    signs: Vec<i8>,
    used: Vec<bool>,
}

/// Collects every map found by `search`.
pub(crate) fn collect_all(search: &HomSearch<'_>) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    let _ = search.run(|m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// First map found by `search`.
pub(crate) fn find_first(search: &HomSearch<'_>) -> Option<Vec<Option<usize>>> {
    let mut out = None;
    let _ = search.run(|m| {
        out = Some(m.to_vec());
        ControlFlow::Break(())
    });
    out
}
