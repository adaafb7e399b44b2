//! Mixing-type sub-seeds, partial seed homomorphisms and seed isomorphisms.
//!
//! A sub-seed of `seed` is given by a [`SubSeedSpec`] `(I0, I1)`: variables
//! in `I1` are deleted and exchangeable variables in `I0` are frozen. A
//! [`PartialSeedHom`] is a seed homomorphism from such a sub-seed into a
//! target seed, stored as a map on variable indices of the source.
//!
//! Variables keep their labels when passing to a sub-seed, so maps between
//! different seed objects are compared through labels.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::search::{collect_all, find_first, HomSearch, SearchMode, Weights};
use crate::seed::{ExtendedExchangeMatrix, Seed};
use crate::varset::{VarSet, MAX_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("seed has {0} variables; at most 64 are supported")]
    TooManyVariables(usize),
    #[error("matrix entry {0} does not fit in 64 bits")]
    WeightOverflow(BigInt),
    #[error("unknown variable label `{0}`")]
    UnknownLabel(String),
    #[error("invalid sub-seed: {0}")]
    InvalidSpec(String),
    #[error("the target of the inner map is not the source of the outer map")]
    SeedMismatch,
    #[error("not a partial seed homomorphism: {0}")]
    Violation(HomViolation),
}

/// First failed condition found by [`check_partial_hom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomViolation {
    /// The map has the wrong length.
    Shape { expected: usize, found: usize },
    /// A deleted variable was given an image.
    MappedDeleted(String),
    /// A domain variable has no image.
    Unmapped(String),
    /// An image index does not exist in the target.
    ImageOutOfRange(String),
    /// An exchangeable domain variable is sent to a frozen target variable.
    NotExchangeable { var: String, image: String },
    /// `|b'_{f(x)f(y)}| < |b_{xy}|`.
    Magnitude { x: String, y: String, source: BigInt, target: BigInt },
    /// Two adjacent pairs whose sign products disagree.
    Sign { first: (String, String), second: (String, String) },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Shape { expected, found } => {
                write!(f, "map has {found} slots, expected {expected}")
            }
            HomViolation::MappedDeleted(x) => write!(f, "deleted variable `{x}` has an image"),
            HomViolation::Unmapped(x) => write!(f, "domain variable `{x}` has no image"),
            HomViolation::ImageOutOfRange(x) => write!(f, "image of `{x}` is not a target variable"),
            HomViolation::NotExchangeable { var, image } => {
                write!(f, "exchangeable `{var}` maps to frozen `{image}`")
            }
            HomViolation::Magnitude { x, y, source, target } => write!(
                f,
                "magnitude condition fails at ({x},{y}): |{target}| < |{source}|"
            ),
            HomViolation::Sign { first, second } => write!(
                f,
                "sign condition fails for adjacent pairs ({},{}) and ({},{})",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

/// `(I0, I1)`: `I0` exchangeable variables to freeze, `I1` variables to delete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubSeedSpec {
    i0: VarSet,
    i1: VarSet,
}

/// Positions of a sub-seed's variables inside the ambient seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubSeedLayout {
    pub exchangeable: Vec<usize>,
    pub frozen: Vec<usize>,
}

impl SubSeedLayout {
    /// Ambient index of every sub-seed variable, exchangeable first.
    pub fn all(&self) -> impl Iterator<Item = usize> + '_ {
        self.exchangeable.iter().chain(&self.frozen).copied()
    }
}

fn check_size(seed: &Seed) -> Result<(), HomError> {
    if seed.len() > MAX_VARS {
        Err(HomError::TooManyVariables(seed.len()))
    } else {
        Ok(())
    }
}

fn lookup(seed: &Seed, label: &str) -> Result<usize, HomError> {
    seed.index_of(label).ok_or_else(|| HomError::UnknownLabel(label.to_string()))
}

impl SubSeedSpec {
    pub fn new(seed: &Seed, i0: VarSet, i1: VarSet) -> Result<Self, HomError> {
        check_size(seed)?;
        if !i0.is_subset(VarSet::range(seed.n())) {
            return Err(HomError::InvalidSpec("I0 contains a frozen variable".into()));
        }
        if !i1.is_subset(VarSet::range(seed.len())) {
            return Err(HomError::InvalidSpec("I1 contains an unknown variable".into()));
        }
        if !i0.is_disjoint(i1) {
            return Err(HomError::InvalidSpec("I0 and I1 intersect".into()));
        }
        Ok(Self { i0, i1 })
    }

    pub fn from_labels<S: AsRef<str>>(seed: &Seed, i0: &[S], i1: &[S]) -> Result<Self, HomError> {
        let collect = |ls: &[S]| -> Result<VarSet, HomError> {
            ls.iter().map(|l| lookup(seed, l.as_ref())).collect()
        };
        check_size(seed)?;
        Self::new(seed, collect(i0)?, collect(i1)?)
    }

    /// Deletes every variable: the domain of the empty homomorphism.
    pub fn delete_all(seed: &Seed) -> Self {
        Self { i0: VarSet::EMPTY, i1: VarSet::range(seed.len()) }
    }

    /// Every valid spec of `seed`, ordered by the bitmasks `(I0, I1)`.
    pub fn all(seed: &Seed) -> Result<Vec<Self>, HomError> {
        check_size(seed)?;
        let (n, total) = (seed.n(), seed.len());
        let mut out = Vec::new();
        let mut choice = vec![0u8; total];
        loop {
            let mut i0 = VarSet::EMPTY;
            let mut i1 = VarSet::EMPTY;
            for (v, &c) in choice.iter().enumerate() {
                match c {
                    1 => i1.insert(v),
                    2 => i0.insert(v),
                    _ => {}
                }
            }
            out.push(Self { i0, i1 });
            let mut v = 0;
            loop {
                if v == total {
                    out.sort();
                    return Ok(out);
                }
                let limit = if v < n { 3 } else { 2 };
                choice[v] += 1;
                if choice[v] < limit {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
        }
    }

    pub fn i0(&self) -> VarSet {
        self.i0
    }

    pub fn i1(&self) -> VarSet {
        self.i1
    }

    pub fn dom(&self, seed: &Seed) -> VarSet {
        VarSet::range(seed.len()).difference(self.i1)
    }

    pub fn dom_ex(&self, seed: &Seed) -> VarSet {
        VarSet::range(seed.n()).difference(self.i0.union(self.i1))
    }

    pub fn dom_fr(&self, seed: &Seed) -> VarSet {
        self.dom(seed).difference(self.dom_ex(seed))
    }

    pub fn labels(&self, seed: &Seed) -> (Vec<String>, Vec<String>) {
        let names = |s: VarSet| s.iter().map(|i| seed.label(i).to_string()).collect();
        (names(self.i0), names(self.i1))
    }

    pub fn layout(&self, seed: &Seed) -> SubSeedLayout {
        SubSeedLayout {
            exchangeable: self.dom_ex(seed).iter().collect(),
            frozen: self.dom_fr(seed).iter().collect(),
        }
    }

    /// Composite spec: the sub-seed `inner` of `seed.subseed(self)`, expressed
    /// on `seed` itself. Labels of `inner` refer to the sub-seed.
    pub fn restrict(&self, seed: &Seed, inner: &SubSeedSpec) -> SubSeedSpec {
        let layout = self.layout(seed);
        let ambient: Vec<usize> = layout.all().collect();
        let mut i0 = self.i0;
        let mut i1 = self.i1;
        for (pos, &v) in ambient.iter().enumerate() {
            if inner.i1.contains(pos) {
                i1.insert(v);
                i0.remove(v);
            } else if inner.i0.contains(pos) {
                i0.insert(v);
            }
        }
        SubSeedSpec { i0, i1 }
    }
}

/// The `(I0, I1)`-type sub-seed: exchangeable `X \ (I0 ∪ I1)`, frozen
/// `(X_fr ∪ I0) \ I1`, entries restricted from the ambient matrix.
pub fn mixing_subseed(seed: &Seed, spec: &SubSeedSpec) -> Seed {
    let layout = spec.layout(seed);
    let cols: Vec<usize> = layout.all().collect();
    let mut matrix = ExtendedExchangeMatrix::zero(layout.exchangeable.len(), layout.frozen.len());
    for (r, &x) in layout.exchangeable.iter().enumerate() {
        for (c, &y) in cols.iter().enumerate() {
            *matrix.get_mut(r, c) = seed.b(x, y).clone();
        }
    }
    let names = |v: &[usize]| v.iter().map(|&i| seed.label(i).to_string()).collect();
    Seed::from_parts_unchecked(names(&layout.exchangeable), names(&layout.frozen), matrix)
}

fn name(seed: &Seed, i: usize) -> String {
    seed.label(i).to_string()
}

/// Checks the homomorphism conditions for `map` on the sub-seed
/// `spec` of `source`. `map[v]` is the target index of `v`, `None` on `I1`.
pub fn check_partial_hom(
    source: &Seed,
    target: &Seed,
    spec: &SubSeedSpec,
    map: &[Option<usize>],
) -> Result<(), HomViolation> {
    if map.len() != source.len() {
        return Err(HomViolation::Shape { expected: source.len(), found: map.len() });
    }
    let dom = spec.dom(source);
    let dom_ex = spec.dom_ex(source);
    for (v, image) in map.iter().enumerate() {
        match (dom.contains(v), image) {
            (false, Some(_)) => return Err(HomViolation::MappedDeleted(name(source, v))),
            (true, None) => return Err(HomViolation::Unmapped(name(source, v))),
            (true, Some(a)) if *a >= target.len() => {
                return Err(HomViolation::ImageOutOfRange(name(source, v)))
            }
            _ => {}
        }
    }
    let f = |v: usize| map[v].expect("domain variable");
    for x in dom_ex.iter() {
        if f(x) >= target.n() {
            return Err(HomViolation::NotExchangeable { var: name(source, x), image: name(target, f(x)) });
        }
    }
    for x in dom_ex.iter() {
        for y in dom.iter() {
            let (b, bt) = (source.b(x, y), target.b(f(x), f(y)));
            if bt.abs() < b.abs() {
                return Err(HomViolation::Magnitude {
                    x: name(source, x),
                    y: name(source, y),
                    source: b.clone(),
                    target: bt.clone(),
                });
            }
        }
    }
    // Sign of b' b per row, with a witness column.
    let mut row_sign: Vec<Option<(bool, usize)>> = vec![None; source.len()];
    for x in dom_ex.iter() {
        for y in dom.iter() {
            let b = source.b(x, y);
            if b.is_zero() {
                continue;
            }
            let positive = b.is_positive() == target.b(f(x), f(y)).is_positive();
            match row_sign[x] {
                None => row_sign[x] = Some((positive, y)),
                Some((s, w)) if s != positive => {
                    return Err(HomViolation::Sign {
                        first: (name(source, x), name(source, w)),
                        second: (name(source, x), name(source, y)),
                    })
                }
                _ => {}
            }
        }
    }
    for x in dom_ex.iter() {
        for z in dom_ex.iter() {
            if source.b(x, z).is_zero() {
                continue;
            }
            if let (Some((sx, wx)), Some((sz, wz))) = (row_sign[x], row_sign[z]) {
                if sx != sz {
                    return Err(HomViolation::Sign {
                        first: (name(source, x), name(source, wx)),
                        second: (name(source, z), name(source, wz)),
                    });
                }
            }
        }
    }
    Ok(())
}

/// A seed homomorphism from the sub-seed `spec` of `source` into `target`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialSeedHom {
    source: Arc<Seed>,
    target: Arc<Seed>,
    spec: SubSeedSpec,
    map: Vec<Option<usize>>,
}

impl fmt::Debug for PartialSeedHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PartialSeedHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let (i0, i1) = self.spec.labels(&self.source);
        let pairs: Vec<String> = self.label_map().into_iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "I0={{{}}} I1={{{}}} [{}]", i0.join(","), i1.join(","), pairs.join(", "))
    }
}

impl PartialSeedHom {
    pub fn new(
        source: Arc<Seed>,
        target: Arc<Seed>,
        spec: SubSeedSpec,
        map: Vec<Option<usize>>,
    ) -> Result<Self, HomError> {
        check_size(&source)?;
        check_size(&target)?;
        SubSeedSpec::new(&source, spec.i0, spec.i1)?;
        check_partial_hom(&source, &target, &spec, &map).map_err(HomError::Violation)?;
        Ok(Self { source, target, spec, map })
    }

    /// Builds from labels: `pairs` lists `(x, f(x))` for every `x` in the domain.
    pub fn from_labels<S: AsRef<str>>(
        source: Arc<Seed>,
        target: Arc<Seed>,
        i0: &[S],
        i1: &[S],
        pairs: &[(S, S)],
    ) -> Result<Self, HomError> {
        let spec = SubSeedSpec::from_labels(&source, i0, i1)?;
        let mut map = vec![None; source.len()];
        for (x, y) in pairs {
            let i = lookup(&source, x.as_ref())?;
            map[i] = Some(lookup(&target, y.as_ref())?);
        }
        Self::new(source, target, spec, map)
    }

    pub(crate) fn from_parts_unchecked(
        source: Arc<Seed>,
        target: Arc<Seed>,
        spec: SubSeedSpec,
        map: Vec<Option<usize>>,
    ) -> Self {
        debug_assert_eq!(check_partial_hom(&source, &target, &spec, &map), Ok(()));
        Self { source, target, spec, map }
    }

    /// The natural inclusion `id_{I0,I1}` of a sub-seed into its seed.
    pub fn identity_inclusion(seed: Arc<Seed>, spec: SubSeedSpec) -> Self {
        let dom = spec.dom(&seed);
        let map = (0..seed.len()).map(|v| dom.contains(v).then_some(v)).collect();
        Self { source: seed.clone(), target: seed, spec, map }
    }

    pub fn empty(source: Arc<Seed>, target: Arc<Seed>) -> Self {
        let spec = SubSeedSpec::delete_all(&source);
        let map = vec![None; source.len()];
        Self { source, target, spec, map }
    }

    pub fn source(&self) -> &Arc<Seed> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Seed> {
        &self.target
    }

    pub fn spec(&self) -> &SubSeedSpec {
        &self.spec
    }

    pub fn map(&self) -> &[Option<usize>] {
        &self.map
    }

    pub fn image_of(&self, v: usize) -> Option<usize> {
        self.map[v]
    }

    pub fn image_of_label(&self, label: &str) -> Option<&str> {
        let v = self.source.index_of(label)?;
        self.map[v].map(|a| self.target.label(a))
    }

    /// `x -> f(x)` by labels over the domain, in source order.
    pub fn label_map(&self) -> BTreeMap<String, String> {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(v, a)| a.map(|a| (name(&self.source, v), name(&self.target, a))))
            .collect()
    }

    pub fn dom(&self) -> VarSet {
        self.spec.dom(&self.source)
    }

    pub fn dom_ex(&self) -> VarSet {
        self.spec.dom_ex(&self.source)
    }

    pub fn dom_fr(&self) -> VarSet {
        self.spec.dom_fr(&self.source)
    }

    /// True for the empty homomorphism, the zero of the semigroup.
    pub fn is_empty(&self) -> bool {
        self.dom().is_empty()
    }

    /// The sub-seed this map is defined on.
    pub fn subseed(&self) -> Seed {
        mixing_subseed(&self.source, &self.spec)
    }

    /// `f(Dom)` as a sub-seed of the target: `I1' = X̃' \ f(Dom)` and
    /// `I0' = (f(Dom) ∩ X') \ f(Dom_ex)`.
    pub fn image_spec(&self) -> SubSeedSpec {
        let image: VarSet = self.map.iter().flatten().copied().collect();
        let image_ex: VarSet = self.dom_ex().iter().filter_map(|v| self.map[v]).collect();
        let i1 = VarSet::range(self.target.len()).difference(image);
        let i0 = image.intersection(VarSet::range(self.target.n())).difference(image_ex);
        SubSeedSpec { i0, i1 }
    }

    /// The image seed: exchangeable `f(Dom_ex)`, all variables `f(Dom)`,
    /// entries from the target.
    pub fn image_seed(&self) -> Seed {
        mixing_subseed(&self.target, &self.image_spec())
    }

    /// True when source and target agree and the map is the identity on its
    /// domain, i.e. this is `id_{I0,I1}` for its own spec.
    pub fn is_id_form(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(v, a)| a.is_none_or(|a| a == v))
    }

    /// Injective on the domain, with image seed a mixing-type sub-seed of the target.
    pub fn is_injective(&self) -> bool {
        let mut seen = VarSet::EMPTY;
        for a in self.map.iter().flatten() {
            if seen.contains(*a) {
                return false;
            }
            seen.insert(*a);
        }
        self.image_seed().eq_by_labels(&mixing_subseed(&self.target, &self.image_spec()))
    }

    /// Splits `f` as `id_{I0',I1'} ∘ f1` with `f1` onto the image seed.
    pub fn factor_through_image(&self) -> Factorization {
        let sub = Arc::new(self.subseed());
        let image = Arc::new(self.image_seed());
        let map = sub
            .labels()
            .map(|l| {
                let a = self.image_of_label(l).expect("sub-seed variables are in the domain");
                Some(image.index_of(a).expect("image contains every f(x)"))
            })
            .collect();
        let f1 = PartialSeedHom::from_parts_unchecked(sub.clone(), image, SubSeedSpec::default(), map);
        let inclusion = PartialSeedHom::identity_inclusion(self.target.clone(), self.image_spec());
        Factorization { f1, inclusion }
    }

    /// Composition `self ∘ f`.
    pub fn after(&self, f: &PartialSeedHom) -> Result<PartialSeedHom, HomError> {
        compose(self, f)
    }
}

/// `f = inclusion ∘ f1` where `f1` is a seed homomorphism from `Σ_f` onto
/// the image seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub f1: PartialSeedHom,
    pub inclusion: PartialSeedHom,
}

impl Factorization {
    /// `inclusion ∘ f1` by labels.
    pub fn recomposed(&self) -> BTreeMap<String, String> {
        self.f1
            .label_map()
            .into_iter()
            .map(|(x, y)| {
                let z = self.inclusion.image_of_label(&y).expect("image lies in the inclusion's domain");
                (x, z.to_string())
            })
            .collect()
    }

    /// f1 hits every variable of the image seed.
    pub fn is_surjective(&self) -> bool {
        let hit: VarSet = self.f1.map.iter().flatten().copied().collect();
        hit == VarSet::range(self.f1.target.len())
    }
}

pub fn identity_inclusion(seed: &Arc<Seed>, spec: SubSeedSpec) -> PartialSeedHom {
    PartialSeedHom::identity_inclusion(seed.clone(), spec)
}

pub fn image_seed(f: &PartialSeedHom) -> Seed {
    f.image_seed()
}

fn same_seed(a: &Arc<Seed>, b: &Arc<Seed>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Domain and map of `g ∘ f` without checks. Exchangeable `x` survive when
/// `f(x)` is exchangeable in `Dom(g)`; frozen `x` when `f(x)` is frozen in `Dom(g)`.
pub(crate) fn compose_parts(
    f_source: &Seed,
    f_spec: &SubSeedSpec,
    f_map: &[Option<usize>],
    g_dom_ex: VarSet,
    g_dom_fr: VarSet,
    g_map: &[Option<usize>],
) -> (SubSeedSpec, Vec<Option<usize>>) {
    let f_ex = f_spec.dom_ex(f_source);
    let f_fr = f_spec.dom_fr(f_source);
    let mut dom = VarSet::EMPTY;
    let mut dom_fr = VarSet::EMPTY;
    let mut map = vec![None; f_map.len()];
    for x in f_ex.iter() {
        let y = f_map[x].expect("domain");
        if g_dom_ex.contains(y) {
            dom.insert(x);
            map[x] = g_map[y];
        }
    }
    for x in f_fr.iter() {
        let y = f_map[x].expect("domain");
        if g_dom_fr.contains(y) {
            dom.insert(x);
            dom_fr.insert(x);
            map[x] = g_map[y];
        }
    }
    let i1 = VarSet::range(f_source.len()).difference(dom);
    let i0 = dom_fr.intersection(VarSet::range(f_source.n()));
    (SubSeedSpec { i0, i1 }, map)
}

/// `g ∘ f`, re-validated. An empty domain gives the empty homomorphism.
pub fn compose(g: &PartialSeedHom, f: &PartialSeedHom) -> Result<PartialSeedHom, HomError> {
    if !same_seed(&f.target, &g.source) {
        return Err(HomError::SeedMismatch);
    }
    let (spec, map) = compose_parts(&f.source, &f.spec, &f.map, g.dom_ex(), g.dom_fr(), &g.map);
    PartialSeedHom::new(f.source.clone(), g.target.clone(), spec, map)
}

/// A seed isomorphism: bijective on exchangeable and on all variables,
/// preserving `|b|` and satisfying the homomorphism sign condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedIso(PartialSeedHom);

impl SeedIso {
    pub fn hom(&self) -> &PartialSeedHom {
        &self.0
    }

    pub fn into_hom(self) -> PartialSeedHom {
        self.0
    }

    pub fn label_map(&self) -> BTreeMap<String, String> {
        self.0.label_map()
    }

    pub fn inverse(&self) -> SeedIso {
        let f = &self.0;
        let mut map = vec![None; f.target.len()];
        for (v, a) in f.map.iter().enumerate() {
            map[a.expect("total")] = Some(v);
        }
        SeedIso(PartialSeedHom::from_parts_unchecked(
            f.target.clone(),
            f.source.clone(),
            SubSeedSpec::default(),
            map,
        ))
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &SeedIso) -> Result<SeedIso, HomError> {
        compose(&self.0, &other.0).map(SeedIso)
    }

    pub fn is_identity(&self) -> bool {
        self.0.map.iter().enumerate().all(|(v, a)| *a == Some(v))
    }
}

/// Weights of both seeds and the candidate images of each variable of `a`.
type IsoSearch = (Weights, Weights, Vec<Vec<usize>>);

fn iso_search_setup(a: &Seed, b: &Seed) -> Result<Option<IsoSearch>, HomError> {
    let wa = Weights::of(a)?;
    let wb = Weights::of(b)?;
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(None);
    }
    let sig_b: Vec<_> = (0..b.len()).map(|v| wb.signature(v)).collect();
    let mut candidates = Vec::with_capacity(a.len());
    for v in 0..a.len() {
        let s = wa.signature(v);
        let c: Vec<usize> = (0..b.len()).filter(|&u| sig_b[u] == s).collect();
        if c.is_empty() {
            return Ok(None);
        }
        candidates.push(c);
    }
    Ok(Some((wa, wb, candidates)))
}

fn wrap_iso(a: &Arc<Seed>, b: &Arc<Seed>, map: Vec<Option<usize>>) -> SeedIso {
    SeedIso(PartialSeedHom::from_parts_unchecked(a.clone(), b.clone(), SubSeedSpec::default(), map))
}

/// Some isomorphism `a -> b`, or `None`. The search is exhaustive.
pub fn find_seed_iso(a: &Arc<Seed>, b: &Arc<Seed>) -> Result<Option<SeedIso>, HomError> {
    let Some((wa, wb, candidates)) = iso_search_setup(a, b)? else {
        return Ok(None);
    };
    let search = HomSearch::new(&wa, &wb, VarSet::range(a.len()), VarSet::range(a.n()), candidates, SearchMode::Iso);
    Ok(find_first(&search).map(|m| wrap_iso(a, b, m)))
}

/// Every isomorphism `a -> b`.
pub fn all_seed_isos(a: &Arc<Seed>, b: &Arc<Seed>) -> Result<Vec<SeedIso>, HomError> {
    let Some((wa, wb, candidates)) = iso_search_setup(a, b)? else {
        return Ok(Vec::new());
    };
    let search = HomSearch::new(&wa, &wb, VarSet::range(a.len()), VarSet::range(a.n()), candidates, SearchMode::Iso);
    Ok(collect_all(&search).into_iter().map(|m| wrap_iso(a, b, m)).collect())
}

/// All automorphisms of `seed`, identity first.
pub fn automorphism_group(seed: &Arc<Seed>) -> Result<Vec<SeedIso>, HomError> {
    let mut group = all_seed_isos(seed, seed)?;
    group.sort_by_key(|g| !g.is_identity());
    Ok(group)
}

/// A section `g` of `f1` (a homomorphism from its source onto its target):
/// a seed homomorphism back with `f1 ∘ g` the identity.
pub fn is_retraction(f1: &PartialSeedHom) -> Result<Option<PartialSeedHom>, HomError> {
    if !f1.spec.i0.is_empty() || !f1.spec.i1.is_empty() {
        return Err(HomError::InvalidSpec("a retraction is a total seed homomorphism".into()));
    }
    let (from, onto) = (&f1.source, &f1.target);
    let w_onto = Weights::of(onto)?;
    let w_from = Weights::of(from)?;
    let mut candidates = vec![Vec::new(); onto.len()];
    for (x, a) in f1.map.iter().enumerate() {
        let a = a.expect("total");
        if a < onto.n() && x >= from.n() {
            continue;
        }
        candidates[a].push(x);
    }
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let search = HomSearch::new(
        &w_onto,
        &w_from,
        VarSet::range(onto.len()),
        VarSet::range(onto.n()),
        candidates,
        SearchMode::Hom,
    );
    Ok(find_first(&search)
        .map(|m| PartialSeedHom::from_parts_unchecked(onto.clone(), from.clone(), SubSeedSpec::default(), m)))
}
