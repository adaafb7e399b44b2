//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the library's search, composition or Green's
//! relation code: seeds are copied into plain `i64` matrices and every
//! definition is evaluated literally.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use partial_seeds::{PartialSeedHom, Seed};

/// A seed as a plain matrix. Variables `0..n` are exchangeable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainSeed {
    pub n: usize,
    pub m: usize,
    pub b: Vec<Vec<i64>>,
}

impl PlainSeed {
    pub fn of(seed: &Seed) -> Self {
        let b = (0..seed.n())
            .map(|x| (0..seed.len()).map(|y| seed.b(x, y).to_i64().expect("small entry")).collect())
            .collect();
        Self { n: seed.n(), m: seed.m(), b }
    }

    pub fn len(&self) -> usize {
        self.n + self.m
    }

    pub fn entry(&self, x: usize, y: usize) -> i64 {
        if x < self.n {
            self.b[x][y]
        } else {
            0
        }
    }
}

/// An element of `End_par`: `i0` and `i1` as sorted index sets, and the map
/// with `None` on `I1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlainHom {
    pub i0: BTreeSet<usize>,
    pub i1: BTreeSet<usize>,
    pub map: Vec<Option<usize>>,
}

impl PlainHom {
    pub fn of(f: &PartialSeedHom) -> Self {
        let i0 = f.spec().i0().iter().collect();
        let i1 = f.spec().i1().iter().collect();
        Self { i0, i1, map: f.map().to_vec() }
    }

    fn dom_ex(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|x| !self.i0.contains(x) && !self.i1.contains(x)).collect()
    }

    fn dom_fr(&self, len: usize, n: usize) -> Vec<usize> {
        (0..len).filter(|v| !self.i1.contains(v) && (*v >= n || self.i0.contains(v))).collect()
    }
}

/// Literal check of the seed homomorphism conditions for `map` defined on
/// the sub-seed `(i0, i1)` of `src`: images of exchangeable variables are
/// exchangeable, and for all adjacent pairs `(x,y)`, `(z,w)` the product
/// `(b'_{f(x)f(y)} b_{xy})(b'_{f(z)f(w)} b_{zw})` is non-negative and
/// `|b'_{f(x)f(y)}| >= |b_{xy}|`.
pub fn is_partial_hom(src: &PlainSeed, tgt: &PlainSeed, h: &PlainHom) -> bool {
    let ex = h.dom_ex(src.n);
    let all: Vec<usize> = (0..src.len()).filter(|v| !h.i1.contains(v)).collect();
    for v in 0..src.len() {
        if h.i1.contains(&v) != h.map[v].is_none() {
            return false;
        }
    }
    let f = |v: usize| h.map[v].unwrap();
    if ex.iter().any(|&x| f(x) >= tgt.n) {
        return false;
    }
    for &x in &ex {
        for &y in &all {
            if tgt.entry(f(x), f(y)).abs() < src.entry(x, y).abs() {
                return false;
            }
        }
    }
    for &x in &ex {
        for &z in &ex {
            if x != z && src.entry(x, z) == 0 {
                continue;
            }
            for &y in &all {
                for &w in &all {
                    let a = tgt.entry(f(x), f(y)) * src.entry(x, y);
                    let c = tgt.entry(f(z), f(w)) * src.entry(z, w);
                    if a.signum() * c.signum() < 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every sub-seed spec `(i0, i1)`.
pub fn all_specs(seed: &PlainSeed) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let mut out = vec![(BTreeSet::new(), BTreeSet::new())];
    for v in 0..seed.len() {
        let mut next = Vec::new();
        for (i0, i1) in &out {
            next.push((i0.clone(), i1.clone()));
            let mut d = i1.clone();
            d.insert(v);
            next.push((i0.clone(), d));
            if v < seed.n {
                let mut fr = i0.clone();
                fr.insert(v);
                next.push((fr, i1.clone()));
            }
        }
        out = next;
    }
    out
}

/// All partial seed endomorphisms, by trying every map on every spec.
pub fn enumerate_endpar(seed: &PlainSeed) -> Vec<PlainHom> {
    let len = seed.len();
    let mut out = Vec::new();
    for (i0, i1) in all_specs(seed) {
        let dom: Vec<usize> = (0..len).filter(|v| !i1.contains(v)).collect();
        let mut choice = vec![0usize; dom.len()];
        loop {
            let mut map = vec![None; len];
            for (k, &v) in dom.iter().enumerate() {
                map[v] = Some(choice[k]);
            }
            let h = PlainHom { i0: i0.clone(), i1: i1.clone(), map };
            if is_partial_hom(seed, seed, &h) {
                out.push(h);
            }
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < len {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    out.sort();
    out
}

/// `g ∘ f`: defined on exchangeable `x` with `f(x)` exchangeable in the
/// domain of `g`, and on frozen `x` with `f(x)` frozen in the domain of `g`.
pub fn compose(seed: &PlainSeed, g: &PlainHom, f: &PlainHom) -> PlainHom {
    let (n, len) = (seed.n, seed.len());
    let g_ex: BTreeSet<usize> = g.dom_ex(n).into_iter().collect();
    let g_fr: BTreeSet<usize> = g.dom_fr(len, n).into_iter().collect();
    let mut map = vec![None; len];
    for x in f.dom_ex(n) {
        let y = f.map[x].unwrap();
        if g_ex.contains(&y) {
            map[x] = g.map[y];
        }
    }
    for x in f.dom_fr(len, n) {
        let y = f.map[x].unwrap();
        if g_fr.contains(&y) {
            map[x] = g.map[y];
        }
    }
    let i1: BTreeSet<usize> = (0..len).filter(|&v| map[v].is_none()).collect();
    let i0: BTreeSet<usize> =
        f.dom_fr(len, n).into_iter().filter(|&x| x < n && map[x].is_some()).collect();
    PlainHom { i0, i1, map }
}

/// Elements with their product table, `product[i][j] = elems[i] ∘ elems[j]`.
pub struct PlainTable {
    pub elems: Vec<PlainHom>,
    pub product: Vec<Vec<usize>>,
}

pub fn table(seed: &PlainSeed) -> PlainTable {
    let elems = enumerate_endpar(seed);
    let index: HashMap<&PlainHom, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let product = elems
        .iter()
        .map(|g| elems.iter().map(|f| *index.get(&compose(seed, g, f)).expect("closed under composition")).collect())
        .collect();
    PlainTable { elems, product }
}

impl PlainTable {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// `S^1 x`.
    pub fn left_ideal(&self, x: usize) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = (0..self.len()).map(|a| self.product[a][x]).collect();
        s.insert(x);
        s
    }

    /// `x S^1`.
    pub fn right_ideal(&self, x: usize) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = (0..self.len()).map(|a| self.product[x][a]).collect();
        s.insert(x);
        s
    }

    /// `S^1 x S^1`.
    pub fn two_sided_ideal(&self, x: usize) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for l in self.left_ideal(x) {
            s.extend(self.right_ideal(l));
        }
        s
    }

    pub fn is_regular(&self, x: usize) -> bool {
        (0..self.len()).any(|g| self.product[self.product[x][g]][x] == x)
    }
}

/// Partition of `0..len` into blocks with equal keys, as a set of blocks.
pub fn blocks<K: Ord>(len: usize, key: impl Fn(usize) -> K) -> BTreeSet<BTreeSet<usize>> {
    let mut by: BTreeMap<K, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..len {
        by.entry(key(i)).or_default().insert(i);
    }
    by.into_values().collect()
}

/// `D = L ∘ R`: `x D y` iff some `z` has `x L z` and `z R y`.
pub fn d_blocks(t: &PlainTable) -> BTreeSet<BTreeSet<usize>> {
    let left: Vec<_> = (0..t.len()).map(|x| t.left_ideal(x)).collect();
    let right: Vec<_> = (0..t.len()).map(|x| t.right_ideal(x)).collect();
    blocks(t.len(), |x| {
        (0..t.len())
            .filter(|&y| (0..t.len()).any(|z| left[x] == left[z] && right[z] == right[y]))
            .collect::<BTreeSet<usize>>()
    })
}

pub fn mixing_subseed(seed: &PlainSeed, i0: &BTreeSet<usize>, i1: &BTreeSet<usize>) -> PlainSeed {
    let ex: Vec<usize> = (0..seed.n).filter(|x| !i0.contains(x) && !i1.contains(x)).collect();
    let fr: Vec<usize> = (0..seed.len()).filter(|v| !i1.contains(v) && !ex.contains(v)).collect();
    let cols: Vec<usize> = ex.iter().chain(&fr).copied().collect();
    let b = ex.iter().map(|&x| cols.iter().map(|&y| seed.entry(x, y)).collect()).collect();
    PlainSeed { n: ex.len(), m: fr.len(), b }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Some bijection preserving exchangeability and `|b|` that is also a seed
/// homomorphism, by trying every permutation.
pub fn is_isomorphic(a: &PlainSeed, b: &PlainSeed) -> bool {
    if a.n != b.n || a.m != b.m {
        return false;
    }
    for pe in permutations(a.n) {
        for pf in permutations(a.m) {
            let map: Vec<Option<usize>> =
                pe.iter().copied().chain(pf.iter().map(|&j| a.n + j)).map(Some).collect();
            let h = PlainHom { i0: BTreeSet::new(), i1: BTreeSet::new(), map };
            let f = |v: usize| h.map[v].unwrap();
            let same_abs = (0..a.n).all(|x| (0..a.len()).all(|y| a.entry(x, y).abs() == b.entry(f(x), f(y)).abs()));
            if same_abs && is_partial_hom(a, b, &h) {
                return true;
            }
        }
    }
    false
}

/// Number of isomorphism classes among all mixing-type sub-seeds.
pub fn subseed_iso_class_count(seed: &PlainSeed) -> usize {
    let mut reps: Vec<PlainSeed> = Vec::new();
    for (i0, i1) in all_specs(seed) {
        let s = mixing_subseed(seed, &i0, &i1);
        if !reps.iter().any(|r| is_isomorphic(r, &s)) {
            reps.push(s);
        }
    }
    reps.len()
}

/// Matrix mutation at `k`, straight from the entry formula.
pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..cols {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

/// Values of the cluster variables after mutating along `path`, computed by
/// applying the exchange relation to numbers at `point`.
pub fn numeric_cluster(b: &[Vec<i64>], point: &[BigRational], path: &[usize]) -> Vec<BigRational> {
    let n = b.len();
    let mut values = point.to_vec();
    let mut b = b.to_vec();
    for &k in path {
        let mut pos = BigRational::one();
        let mut neg = BigRational::one();
        for (t, &e) in b[k].iter().enumerate() {
            let p = num_traits::pow(values[t].clone(), e.unsigned_abs() as usize);
            if e > 0 {
                pos *= p;
            } else if e < 0 {
                neg *= p;
            }
        }
        values[k] = (pos + neg) / values[k].clone();
        b = mutate_matrix(&b, k);
    }
    values.truncate(n);
    values
}

pub fn rational(p: i64, q: i64) -> BigRational {
    assert!(!q.is_zero());
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
