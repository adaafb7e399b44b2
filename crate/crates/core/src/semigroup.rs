//! The finite semigroup of partial seed endomorphisms of a seed.
//!
//! Elements are enumerated exhaustively: for every sub-seed spec, the
//! search engine lists all maps satisfying the homomorphism conditions. The
//! product table stores `elements[i] ∘ elements[j]`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::hom::{compose_parts, HomError, PartialSeedHom, SubSeedSpec};
use crate::search::{collect_all, HomSearch, SearchMode, Weights};
use crate::seed::Seed;
use crate::varset::VarSet;

pub const DEFAULT_ELEMENT_CAP: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("element cap {cap} exceeded: {found} elements found before stopping")]
    CapExceeded { cap: usize, found: usize },
    #[error("product of elements {left} and {right} is not in the element list")]
    NotClosed { left: usize, right: usize },
    #[error("table has {0} elements; at most 2^32 - 1 are supported")]
    TooLarge(usize),
    #[error("seed is not a linear A_n quiver with unit weights")]
    NotLinearAn,
    #[error("{0}")]
    Violation(String),
}

/// `(I0 bits, map with 0xFF for undefined)`; determines the element.
type ElemKey = (u64, Vec<u8>);

fn key_of(spec: &SubSeedSpec, map: &[Option<usize>]) -> ElemKey {
    (spec.i0().bits(), map.iter().map(|a| a.map_or(u8::MAX, |a| a as u8)).collect())
}

/// Upper bound on the number of elements: each exchangeable variable is
/// deleted, kept exchangeable with `n` choices, or frozen with `n + m`
/// choices; each frozen one is deleted or mapped anywhere.
pub fn projected_element_bound(seed: &Seed) -> f64 {
    let (n, m) = (seed.n() as f64, seed.m() as f64);
    let total = n + m;
    (1.0 + n + total).powf(n) * (1.0 + total).powf(m)
}

#[derive(Debug, Clone)]
pub struct SemigroupTable {
    seed: Arc<Seed>,
    elements: Vec<PartialSeedHom>,
    product: Vec<u32>,
    zero: usize,
    index: HashMap<ElemKey, usize>,
}

/// Every element of `End_par(seed)`, plus the product table.
pub fn enumerate_endpar(seed: &Arc<Seed>, cap: usize) -> Result<SemigroupTable, SemigroupError> {
    let weights = Weights::of(seed)?;
    let specs = SubSeedSpec::all(seed)?;
    let n = seed.n();
    let total = seed.len();
    let per_spec: Vec<Vec<(SubSeedSpec, Vec<Option<usize>>)>> = specs
        .par_iter()
        .map(|spec| {
            let dom = spec.dom(seed);
            let dom_ex = spec.dom_ex(seed);
            let candidates = (0..total)
                .map(|v| if dom_ex.contains(v) { (0..n).collect() } else { (0..total).collect() })
                .collect();
            let search = HomSearch::new(&weights, &weights, dom, dom_ex, candidates, SearchMode::Hom);
            collect_all(&search).into_iter().map(|m| (*spec, m)).collect()
        })
        .collect();
    let found: usize = per_spec.iter().map(Vec::len).sum();
    if found > cap {
        return Err(SemigroupError::CapExceeded { cap, found });
    }
    if found >= u32::MAX as usize {
        return Err(SemigroupError::TooLarge(found));
    }
    let elements: Vec<PartialSeedHom> = per_spec
        .into_iter()
        .flatten()
        .map(|(spec, map)| PartialSeedHom::from_parts_unchecked(seed.clone(), seed.clone(), spec, map))
        .collect();
    SemigroupTable::from_elements(seed.clone(), elements)
}

fn build_index(seed: &Arc<Seed>, elements: &[PartialSeedHom]) -> Result<(HashMap<ElemKey, usize>, usize), SemigroupError> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if e.source() != seed || e.target() != seed {
            return Err(HomError::SeedMismatch.into());
        }
        if index.insert(key_of(e.spec(), e.map()), i).is_some() {
            return Err(SemigroupError::Violation(format!("element {i} is listed twice")));
        }
    }
    let zero_key = key_of(&SubSeedSpec::delete_all(seed), &vec![None; seed.len()]);
    let zero = *index
        .get(&zero_key)
        .ok_or_else(|| SemigroupError::Violation("the empty homomorphism is missing".into()))?;
    Ok((index, zero))
}

impl SemigroupTable {
    /// Builds the product table for a list of elements, which must be
    /// closed under composition.
    pub fn from_elements(seed: Arc<Seed>, elements: Vec<PartialSeedHom>) -> Result<Self, SemigroupError> {
        let size = elements.len();
        if size >= u32::MAX as usize {
            return Err(SemigroupError::TooLarge(size));
        }
        let (index, zero) = build_index(&seed, &elements)?;
        let dom_ex: Vec<VarSet> = elements.iter().map(PartialSeedHom::dom_ex).collect();
        let dom_fr: Vec<VarSet> = elements.iter().map(PartialSeedHom::dom_fr).collect();
        let rows: Vec<Result<Vec<u32>, SemigroupError>> = (0..size)
            .into_par_iter()
            .map(|i| {
                let g = &elements[i];
                (0..size)
                    .map(|j| {
                        let f = &elements[j];
                        let (spec, map) = compose_parts(&seed, f.spec(), f.map(), dom_ex[i], dom_fr[i], g.map());
                        index
                            .get(&key_of(&spec, &map))
                            .map(|&k| k as u32)
                            .ok_or(SemigroupError::NotClosed { left: i, right: j })
                    })
                    .collect()
            })
            .collect();
        let mut product = Vec::with_capacity(size * size);
        for row in rows {
            product.extend(row?);
        }
        Ok(Self { seed, elements, product, zero, index })
    }

    /// Wraps a stored product table without recomputing it. Only shape and
    /// index ranges are checked, so downstream checks see the table as given.
    pub fn with_products(
        seed: Arc<Seed>,
        elements: Vec<PartialSeedHom>,
        product: Vec<u32>,
    ) -> Result<Self, SemigroupError> {
        let size = elements.len();
        if product.len() != size * size || product.iter().any(|&p| p as usize >= size) {
            return Err(SemigroupError::Violation("product table has the wrong shape".into()));
        }
        let (index, zero) = build_index(&seed, &elements)?;
        Ok(Self { seed, elements, product, zero, index })
    }

    /// Row-major product table.
    pub fn products(&self) -> &[u32] {
        &self.product
    }

    pub fn seed(&self) -> &Arc<Seed> {
        &self.seed
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PartialSeedHom] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialSeedHom {
        &self.elements[i]
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    /// Index of `elements[i] ∘ elements[j]`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.product[i * self.len() + j] as usize
    }

    pub fn index_of(&self, f: &PartialSeedHom) -> Option<usize> {
        if f.source() != &self.seed || f.target() != &self.seed {
            return None;
        }
        self.index.get(&key_of(f.spec(), f.map())).copied()
    }

    /// Index of `id_{I0,I1}` for `spec`.
    pub fn identity_index(&self, spec: &SubSeedSpec) -> usize {
        let id = PartialSeedHom::identity_inclusion(self.seed.clone(), *spec);
        self.index_of(&id).expect("every identity inclusion is an element")
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.product(i, i) == i).collect()
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.product(i, i) == i
    }

    /// Some `g` with `f g f = f` for `f = elements[i]`.
    pub fn regular_witness(&self, i: usize) -> Option<usize> {
        (0..self.len()).find(|&g| self.product(self.product(i, g), i) == i)
    }

    pub fn regular_flags(&self) -> Vec<bool> {
        (0..self.len()).into_par_iter().map(|i| self.regular_witness(i).is_some()).collect()
    }

    /// Zero absorbs on both sides.
    pub fn check_zero(&self) -> Result<(), SemigroupError> {
        for i in 0..self.len() {
            if self.product(self.zero, i) != self.zero || self.product(i, self.zero) != self.zero {
                return Err(SemigroupError::Violation(format!("zero does not absorb element {i}")));
            }
        }
        Ok(())
    }

    /// Associativity on every triple when `|S|^3 <= exhaustive_limit`,
    /// otherwise on `samples` random triples from a seeded generator.
    /// Returns the number of triples checked.
    pub fn check_associativity(
        &self,
        exhaustive_limit: u64,
        samples: usize,
        rng_seed: u64,
    ) -> Result<u64, SemigroupError> {
        let size = self.len();
        let cube = (size as u64).saturating_pow(3);
        let check = |a: usize, b: usize, c: usize| -> Result<(), SemigroupError> {
            let left = self.product(self.product(a, b), c);
            let right = self.product(a, self.product(b, c));
            if left == right {
                Ok(())
            } else {
                Err(SemigroupError::Violation(format!("({a}*{b})*{c} != {a}*({b}*{c})")))
            }
        };
        if cube <= exhaustive_limit {
            (0..size).into_par_iter().try_for_each(|a| {
                for b in 0..size {
                    for c in 0..size {
                        check(a, b, c)?;
                    }
                }
                Ok::<(), SemigroupError>(())
            })?;
            Ok(cube)
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
            for _ in 0..samples {
                check(rng.gen_range(0..size), rng.gen_range(0..size), rng.gen_range(0..size))?;
            }
            Ok(samples as u64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(seed: Seed) -> SemigroupTable {
        enumerate_endpar(&Arc::new(seed), DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(table(Seed::empty()).len(), 1);
        // ∅ and the identity of the single frozen vertex.
        assert_eq!(table(Seed::trivial(&["y"]).unwrap()).len(), 2);
        // Maps on {y1, y2}: 4 total maps, 2 + 2 single-point maps, ∅.
        assert_eq!(table(Seed::trivial(&["y1", "y2"]).unwrap()).len(), 9);
    }

    #[test]
    fn a2_table_is_a_semigroup() {
        let t = table(Seed::from_arrows(&["x1", "x2"], &[], &[("x1", "x2", 1)]).unwrap());
        assert_eq!(t.len(), 19);
        t.check_zero().unwrap();
        assert_eq!(t.check_associativity(10_000_000, 0, 0).unwrap(), 19u64.pow(3));
        assert!(t.is_idempotent(t.zero_index()));
        for spec in SubSeedSpec::all(t.seed()).unwrap() {
            assert!(t.is_idempotent(t.identity_index(&spec)));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s = Arc::new(Seed::from_arrows(&["x1", "x2"], &[], &[("x1", "x2", 1)]).unwrap());
        assert_eq!(enumerate_endpar(&s, 5).unwrap_err(), SemigroupError::CapExceeded { cap: 5, found: 19 });
    }

    #[test]
    fn bound_dominates() {
        let s = Seed::from_arrows(&["x1", "x2"], &["y"], &[("x1", "x2", 1), ("y", "x1", 1)]).unwrap();
        let t = table(s.clone());
        assert!((t.len() as f64) <= projected_element_bound(&s));
    }
}
