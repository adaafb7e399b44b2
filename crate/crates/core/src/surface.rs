//! Triangulated polygons with laminations, their seeds, and cutting.
//!
//! Vertices of an `N`-gon component are positions `0..N` counterclockwise;
//! boundary segment `i` runs from vertex `i` to vertex `i + 1 mod N`. A
//! lamination curve is stored by the two segments holding its endpoints and
//! separates the vertices `s + 1, .., t` from the rest.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::hom::{mixing_subseed, SubSeedSpec};
use crate::seed::{ExtendedExchangeMatrix, Seed, SeedError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("a polygon needs at least 3 marked points, got {0}")]
    TooFewVertices(usize),
    #[error("component {0} does not exist")]
    UnknownComponent(usize),
    #[error("{0} is not a diagonal: endpoints must be distinct, non-adjacent vertices")]
    BadDiagonal(String),
    #[error("diagonals {0} and {1} cross")]
    Crossing(String, String),
    #[error("component {component} has {found} diagonals; a triangulation needs {expected}")]
    NotMaximal { component: usize, found: usize, expected: usize },
    #[error("curve {0} of lamination {1} is not allowed")]
    BadCurve(String, String),
    #[error("curves of lamination {0} intersect")]
    CurvesCross(String),
    #[error("label {0} is used twice")]
    DuplicateLabel(String),
    #[error("{0} is not a diagonal of the triangulation")]
    NotADiagonal(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPolygon {
    vertices: Vec<String>,
}

impl MarkedPolygon {
    /// Vertices named `0, .., n - 1`.
    pub fn new(n: usize) -> Result<Self, SurfaceError> {
        Self::with_names((0..n).map(|i| i.to_string()).collect())
    }

    pub fn with_names(vertices: Vec<String>) -> Result<Self, SurfaceError> {
        if vertices.len() < 3 {
            return Err(SurfaceError::TooFewVertices(vertices.len()));
        }
        Ok(Self { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagonal {
    pub label: String,
    pub component: usize,
    /// Vertex positions, smaller first.
    pub ends: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaminationCurve {
    pub component: usize,
    /// Boundary segments, smaller first.
    pub ends: (usize, usize),
}

impl LaminationCurve {
    pub fn new(component: usize, s: usize, t: usize) -> Self {
        Self { component, ends: (s.min(t), s.max(t)) }
    }

    /// The curve separates this vertex set from the rest of its polygon.
    fn inside(&self, v: usize) -> bool {
        self.ends.0 < v && v <= self.ends.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lamination {
    pub label: String,
    pub curves: Vec<LaminationCurve>,
}

/// Polygons, a triangulation of each, and a multi-lamination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData {
    components: Vec<MarkedPolygon>,
    diagonals: Vec<Diagonal>,
    laminations: Vec<Lamination>,
}

/// `dN_a_b`-free default names: diagonals `d{a}_{b}`, laminations `L{i}` from 1.
pub fn diagonal_label(a: usize, b: usize) -> String {
    format!("d{}_{}", a.min(b), a.max(b))
}

fn allowed(n: usize, c: &LaminationCurve) -> bool {
    let k = c.ends.1 - c.ends.0;
    (2..=n - 2).contains(&k)
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

impl SurfaceData {
    pub fn new(
        components: Vec<MarkedPolygon>,
        diagonals: Vec<Diagonal>,
        laminations: Vec<Lamination>,
    ) -> Result<Self, SurfaceError> {
        let mut diagonals = diagonals;
        for d in &mut diagonals {
            d.ends = (d.ends.0.min(d.ends.1), d.ends.0.max(d.ends.1));
        }
        let mut laminations = laminations;
        for l in &mut laminations {
            for c in &mut l.curves {
                *c = LaminationCurve::new(c.component, c.ends.0, c.ends.1);
            }
        }
        let data = Self { components, diagonals, laminations };
        data.validate()?;
        Ok(data)
    }

    /// A single `n`-gon with default labels; curves are segment pairs.
    pub fn polygon(n: usize, diagonals: &[(usize, usize)], laminations: &[Vec<(usize, usize)>]) -> Result<Self, SurfaceError> {
        let components = vec![MarkedPolygon::new(n)?];
        let diagonals = diagonals
            .iter()
            .map(|&(a, b)| Diagonal { label: diagonal_label(a, b), component: 0, ends: (a, b) })
            .collect();
        let laminations = laminations
            .iter()
            .enumerate()
            .map(|(i, curves)| Lamination {
                label: format!("L{}", i + 1),
                curves: curves.iter().map(|&(s, t)| LaminationCurve::new(0, s, t)).collect(),
            })
            .collect();
        Self::new(components, diagonals, laminations)
    }

    fn validate(&self) -> Result<(), SurfaceError> {
        let mut labels = HashSet::new();
        for l in self.diagonals.iter().map(|d| &d.label).chain(self.laminations.iter().map(|l| &l.label)) {
            if !labels.insert(l) {
                return Err(SurfaceError::DuplicateLabel(l.clone()));
            }
        }
        let mut per_component = vec![Vec::new(); self.components.len()];
        for d in &self.diagonals {
            let n = self.components.get(d.component).ok_or(SurfaceError::UnknownComponent(d.component))?.len();
            let (a, b) = d.ends;
            if b >= n || b - a < 2 || (a == 0 && b == n - 1) {
                return Err(SurfaceError::BadDiagonal(d.label.clone()));
            }
            for e in &per_component[d.component] {
                let e: &Diagonal = e;
                if e.ends == d.ends || interleave(e.ends, d.ends) {
                    return Err(SurfaceError::Crossing(e.label.clone(), d.label.clone()));
                }
            }
            per_component[d.component].push(d.clone());
        }
        for (c, p) in self.components.iter().enumerate() {
            let found = per_component[c].len();
            if found != p.len() - 3 {
                return Err(SurfaceError::NotMaximal { component: c, found, expected: p.len() - 3 });
            }
        }
        for l in &self.laminations {
            for (i, c) in l.curves.iter().enumerate() {
                let n = self.components.get(c.component).ok_or(SurfaceError::UnknownComponent(c.component))?.len();
                if c.ends.1 >= n || !allowed(n, c) {
                    return Err(SurfaceError::BadCurve(format!("{:?}", c.ends), l.label.clone()));
                }
                for d in &l.curves[..i] {
                    if d.component == c.component && interleave(d.ends, c.ends) {
                        return Err(SurfaceError::CurvesCross(l.label.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn components(&self) -> &[MarkedPolygon] {
        &self.components
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn laminations(&self) -> &[Lamination] {
        &self.laminations
    }

    pub fn diagonal(&self, label: &str) -> Option<&Diagonal> {
        self.diagonals.iter().find(|d| d.label == label)
    }

    /// The same triangulation with another multi-lamination.
    pub fn with_laminations(&self, laminations: Vec<Lamination>) -> Result<Self, SurfaceError> {
        Self::new(self.components.clone(), self.diagonals.clone(), laminations)
    }

    /// Edges (boundary and diagonal) of component `c`, as position pairs.
    fn edges(&self, c: usize) -> HashSet<(usize, usize)> {
        let n = self.components[c].len();
        let mut e: HashSet<(usize, usize)> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        e.extend(self.diagonals.iter().filter(|d| d.component == c).map(|d| d.ends));
        e
    }

    /// The two triangle apexes of diagonal `d`: one strictly between its
    /// ends, one outside.
    fn apexes(&self, d: &Diagonal, edges: &HashSet<(usize, usize)>) -> (usize, usize) {
        let n = self.components[d.component].len();
        let (a, b) = d.ends;
        let has = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
        let inner = (a + 1..b).find(|&w| has(a, w) && has(w, b)).expect("triangulated");
        let outer = (b + 1..n).chain(0..a).find(|&w| has(a, w) && has(w, b)).expect("triangulated");
        (inner, outer)
    }
}

impl fmt::Display for SurfaceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, p) in self.components.iter().enumerate() {
            writeln!(f, "component {c}: {}-gon [{}]", p.len(), p.vertices.join(" "))?;
            for d in self.diagonals.iter().filter(|d| d.component == c) {
                writeln!(f, "  {} = ({}, {})", d.label, d.ends.0, d.ends.1)?;
            }
        }
        for l in &self.laminations {
            let curves: Vec<String> =
                l.curves.iter().map(|c| format!("c{}:({},{})", c.component, c.ends.0, c.ends.1)).collect();
            writeln!(f, "lamination {}: [{}]", l.label, curves.join(", "))?;
        }
        Ok(())
    }
}

/// Principal part indexed by diagonals in data order. Each triangle adds
/// `+1` at `(x, y)` and `-1` at `(y, x)` when side `y` follows side `x`
/// counterclockwise.
pub fn b_matrix_from_triangulation(data: &SurfaceData) -> ExtendedExchangeMatrix {
    let n = data.diagonals.len();
    let mut m = ExtendedExchangeMatrix::zero(n, 0);
    let mut index: BTreeMap<(usize, (usize, usize)), usize> = BTreeMap::new();
    for (i, d) in data.diagonals.iter().enumerate() {
        index.insert((d.component, d.ends), i);
    }
    for c in 0..data.components.len() {
        let edges = data.edges(c);
        let mut triangles = BTreeSet::new();
        for d in data.diagonals.iter().filter(|d| d.component == c) {
            let (inner, outer) = data.apexes(d, &edges);
            for w in [inner, outer] {
                let mut t = [d.ends.0, d.ends.1, w];
                t.sort_unstable();
                triangles.insert(t);
            }
        }
        for [i, j, k] in triangles {
            let sides = [(i, j), (j, k), (i, k)];
            for s in 0..3 {
                let x = index.get(&(c, sides[s]));
                let y = index.get(&(c, sides[(s + 1) % 3]));
                if let (Some(&x), Some(&y)) = (x, y) {
                    *m.get_mut(x, y) += 1;
                    *m.get_mut(y, x) -= 1;
                }
            }
        }
    }
    m
}

/// Contribution of one curve crossing diagonal `d`: `-1` when the curve
/// crosses the quadrilateral sides following the two ends of `d`
/// counterclockwise, `+1` for the other pair of opposite sides, `0` when it
/// cuts a corner or misses `d`. This sign matches the orientation rule of
/// [`b_matrix_from_triangulation`], so freezing a diagonal reproduces its
/// column as a shear row.
fn curve_contribution(data: &SurfaceData, d: &Diagonal, curve: &LaminationCurve, edges: &HashSet<(usize, usize)>) -> i64 {
    if curve.component != d.component {
        return 0;
    }
    let (u, v) = d.ends;
    if curve.inside(u) == curve.inside(v) {
        return 0;
    }
    let (c, e) = data.apexes(d, edges);
    if curve.inside(c) == curve.inside(e) {
        0
    } else if curve.inside(c) != curve.inside(u) {
        -1
    } else {
        1
    }
}

/// Shear coordinates of lamination `lam` against every diagonal.
pub fn shear_coordinates(data: &SurfaceData, lam: usize) -> Vec<i64> {
    let edges: Vec<HashSet<(usize, usize)>> = (0..data.components.len()).map(|c| data.edges(c)).collect();
    data.diagonals
        .iter()
        .map(|d| {
            data.laminations[lam].curves.iter().map(|c| curve_contribution(data, d, c, &edges[d.component])).sum()
        })
        .collect()
}

/// Exchangeable variables are the diagonals, frozen ones the laminations;
/// `b_{y,L}` is the shear coordinate of `L` at `y`.
pub fn seed_from_surface(data: &SurfaceData) -> Result<Seed, SurfaceError> {
    let principal = b_matrix_from_triangulation(data);
    let n = data.diagonals.len();
    let shear: Vec<Vec<i64>> = (0..data.laminations.len()).map(|l| shear_coordinates(data, l)).collect();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|x| {
            let mut row: Vec<BigInt> = principal.row(x).to_vec();
            row.extend(shear.iter().map(|s| BigInt::from(s[x])));
            row
        })
        .collect();
    let ex = data.diagonals.iter().map(|d| d.label.clone()).collect();
    let fr = data.laminations.iter().map(|l| l.label.clone()).collect();
    Ok(Seed::new(ex, fr, rows)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutMode {
    /// Drop the diagonal.
    Delete,
    /// Drop the diagonal and add the lamination hugging both copies of it.
    Freeze,
}

/// Name ordering that treats numeric names as numbers.
fn name_key(s: &str) -> (u8, u64, String) {
    match s.parse::<u64>() {
        Ok(v) => (0, v, String::new()),
        Err(_) => (1, 0, s.to_string()),
    }
}

/// Rotation making the least unprimed name position 0.
fn canonical_rotation(names: &[String]) -> usize {
    (0..names.len())
        .filter(|&i| !names[i].ends_with('\''))
        .min_by_key(|&i| name_key(&names[i]))
        .unwrap_or(0)
}

/// Cuts the component of diagonal `label` along it.
pub fn cut_along(data: &SurfaceData, label: &str, mode: CutMode) -> Result<SurfaceData, SurfaceError> {
    let x = data.diagonal(label).ok_or_else(|| SurfaceError::NotADiagonal(label.to_string()))?.clone();
    let c = x.component;
    let names = &data.components[c].vertices;
    let n = names.len();
    let (a, b) = x.ends;
    let (k1, k2) = (b - a + 1, n - (b - a) + 1);

    // Piece 1 holds positions a..=b, piece 2 holds b..n and 0..=a.
    let mut names1: Vec<String> = names[a..=b].to_vec();
    let mut names2: Vec<String> = names[b..].iter().chain(&names[..=a]).cloned().collect();
    names2[0].push('\'');
    names2[k2 - 1].push('\'');
    let rot1 = canonical_rotation(&names1);
    let rot2 = canonical_rotation(&names2);
    names1.rotate_left(rot1);
    names2.rotate_left(rot2);
    let (c1, c2) = (c, c + 1);
    let shift = |comp: usize| if comp > c { comp + 1 } else { comp };
    let vert1 = |p: usize| (p - a + k1 - rot1) % k1;
    let vert2 = |p: usize| ((p + n - b) % n + k2 - rot2) % k2;
    let seg1 = |local: usize| (local + k1 - rot1) % k1;
    let seg2 = |local: usize| (local + k2 - rot2) % k2;
    // Original segment j -> (piece, segment).
    let seg = |j: usize| -> (usize, usize) {
        if a <= j && j < b {
            (c1, seg1(j - a))
        } else {
            (c2, seg2((j + n - b) % n))
        }
    };
    let cut1 = seg1(k1 - 1);
    let cut2 = seg2(k2 - 1);

    let mut components = data.components.clone();
    components[c] = MarkedPolygon { vertices: names1 };
    components.insert(c + 1, MarkedPolygon { vertices: names2 });

    let mut diagonals = Vec::with_capacity(data.diagonals.len() - 1);
    for d in &data.diagonals {
        if d.label == x.label {
            continue;
        }
        if d.component != c {
            diagonals.push(Diagonal { component: shift(d.component), ..d.clone() });
            continue;
        }
        let (u, v) = d.ends;
        let ends = if a <= u && v <= b {
            (c1, vert1(u), vert1(v))
        } else {
            (c2, vert2(u), vert2(v))
        };
        diagonals.push(Diagonal { label: d.label.clone(), component: ends.0, ends: (ends.1.min(ends.2), ends.1.max(ends.2)) });
    }

    let size = |comp: usize| components[comp].len();
    let keep = |curve: LaminationCurve| allowed(size(curve.component), &curve).then_some(curve);
    let mut laminations = Vec::with_capacity(data.laminations.len() + 1);
    for l in &data.laminations {
        let mut curves = Vec::new();
        for curve in &l.curves {
            if curve.component != c {
                curves.push(LaminationCurve { component: shift(curve.component), ..*curve });
                continue;
            }
            let (s, t) = (seg(curve.ends.0), seg(curve.ends.1));
            if curve.inside(a) == curve.inside(b) {
                debug_assert_eq!(s.0, t.0);
                curves.extend(keep(LaminationCurve::new(s.0, s.1, t.1)));
            } else {
                for (piece, end) in [s, t] {
                    let cut = if piece == c1 { cut1 } else { cut2 };
                    curves.extend(keep(LaminationCurve::new(piece, end, cut)));
                }
            }
        }
        laminations.push(Lamination { label: l.label.clone(), curves });
    }
    if mode == CutMode::Freeze {
        let hug = [
            LaminationCurve::new(c1, seg1(0), seg1(k1 - 2)),
            LaminationCurve::new(c2, seg2(0), seg2(k2 - 2)),
        ];
        let curves = hug.into_iter().filter_map(keep).collect();
        laminations.push(Lamination { label: x.label.clone(), curves });
    }
    SurfaceData::new(components, diagonals, laminations)
}

/// Spec `(I0, I1)` by labels: `I0` diagonals to freeze, `I1` diagonals or
/// laminations to delete.
pub fn paunched_surface<S: AsRef<str>>(data: &SurfaceData, i0: &[S], i1: &[S]) -> Result<SurfaceData, SurfaceError> {
    let i0: BTreeSet<&str> = i0.iter().map(AsRef::as_ref).collect();
    let i1: BTreeSet<&str> = i1.iter().map(AsRef::as_ref).collect();
    if let Some(l) = i0.intersection(&i1).next() {
        return Err(SurfaceError::InvalidSpec(format!("{l} is in both I0 and I1")));
    }
    for l in &i0 {
        if data.diagonal(l).is_none() {
            return Err(SurfaceError::InvalidSpec(format!("{l} in I0 is not a diagonal")));
        }
    }
    for l in &i1 {
        if data.diagonal(l).is_none() && !data.laminations.iter().any(|m| m.label == *l) {
            return Err(SurfaceError::UnknownLabel(l.to_string()));
        }
    }
    let kept: Vec<Lamination> = data.laminations.iter().filter(|l| !i1.contains(l.label.as_str())).cloned().collect();
    let mut out = data.with_laminations(kept)?;
    for d in &data.diagonals {
        let l = d.label.as_str();
        if i0.contains(l) {
            out = cut_along(&out, l, CutMode::Freeze)?;
        } else if i1.contains(l) {
            out = cut_along(&out, l, CutMode::Delete)?;
        }
    }
    Ok(out)
}

/// The sub-seed `(I0, I1)` of the surface seed equals the seed of the
/// paunched surface, matching variables by label.
pub fn check_theorem_sur<S: AsRef<str>>(data: &SurfaceData, i0: &[S], i1: &[S]) -> Result<bool, SurfaceError> {
    let seed = seed_from_surface(data)?;
    let spec = SubSeedSpec::from_labels(&seed, i0, i1).map_err(|e| SurfaceError::InvalidSpec(e.to_string()))?;
    let sub = mixing_subseed(&seed, &spec);
    let paunched = seed_from_surface(&paunched_surface(data, i0, i1)?)?;
    Ok(sub.eq_by_labels(&paunched))
}

/// After freezing `x`, every surviving diagonal `y` has `b_{y, L_x} = b_{y x}`.
pub fn freeze_row_identity(data: &SurfaceData, x: &str) -> Result<bool, SurfaceError> {
    let before = seed_from_surface(data)?;
    let after = seed_from_surface(&cut_along(data, x, CutMode::Freeze)?)?;
    let col = after.index_of(x).expect("frozen copy");
    let xi = before.index_of(x).expect("diagonal");
    Ok((0..after.n()).all(|y| {
        let yi = before.index_of(after.label(y)).expect("surviving diagonal");
        after.b(y, col) == before.b(yi, xi)
    }))
}

/// Every triangulation of the `n`-gon as vertex pairs, in a fixed order.
pub fn all_triangulations(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in lo + 1..hi {
            for left in rec(lo, k) {
                for right in rec(k, hi) {
                    let mut t = left.clone();
                    t.extend(right.iter().copied());
                    if k - lo >= 2 {
                        t.push((lo, k));
                    }
                    if hi - k >= 2 {
                        t.push((k, hi));
                    }
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
        out
    }
    if n < 3 {
        return Vec::new();
    }
    rec(0, n - 1)
}

/// Diagonals `(0, 2), .., (0, n - 2)`.
pub fn fan_triangulation(n: usize) -> Vec<(usize, usize)> {
    (2..n.saturating_sub(1)).map(|k| (0, k)).collect()
}

/// A dihedral relabeling of one polygon: `v -> (r + sign * v) mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dihedral {
    pub rotation: usize,
    pub reflected: bool,
}

impl Dihedral {
    fn vertex(&self, n: usize, v: usize) -> usize {
        if self.reflected {
            (self.rotation + n - v) % n
        } else {
            (self.rotation + v) % n
        }
    }

    /// Segment `i` runs between `i` and `i + 1`; its image runs between the images.
    fn segment(&self, n: usize, i: usize) -> usize {
        let (p, q) = (self.vertex(n, i), self.vertex(n, (i + 1) % n));
        if (p + 1) % n == q {
            p
        } else {
            q
        }
    }
}

/// A combinatorial isomorphism: a component bijection with one dihedral
/// relabeling per component, carrying diagonals to diagonals and the
/// multi-lamination onto the other one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceIso {
    pub components: Vec<(usize, Dihedral)>,
}

fn curve_key(curves: impl Iterator<Item = LaminationCurve>) -> Vec<LaminationCurve> {
    let mut v: Vec<_> = curves.collect();
    v.sort();
    v
}

fn lamination_multiset(data: &SurfaceData, map: &dyn Fn(LaminationCurve) -> LaminationCurve) -> Vec<Vec<LaminationCurve>> {
    let mut v: Vec<_> = data.laminations.iter().map(|l| curve_key(l.curves.iter().map(|&c| map(c)))).collect();
    v.sort();
    v
}

/// Searches for a combinatorial isomorphism `a -> b`.
pub fn surface_iso(a: &SurfaceData, b: &SurfaceData) -> Option<SurfaceIso> {
    if a.components.len() != b.components.len() || a.laminations.len() != b.laminations.len() {
        return None;
    }
    let target_lams = lamination_multiset(b, &|c| c);
    let b_diags: Vec<BTreeSet<(usize, usize)>> =
        (0..b.components.len()).map(|c| b.diagonals.iter().filter(|d| d.component == c).map(|d| d.ends).collect()).collect();
    // Per component of `a`: candidate (target component, relabeling) pairs preserving the triangulation.
    let options: Vec<Vec<(usize, Dihedral)>> = (0..a.components.len())
        .map(|c| {
            let n = a.components[c].len();
            let diags: Vec<(usize, usize)> = a.diagonals.iter().filter(|d| d.component == c).map(|d| d.ends).collect();
            let mut opts = Vec::new();
            for (t, p) in b.components.iter().enumerate() {
                if p.len() != n {
                    continue;
                }
                for reflected in [false, true] {
                    for rotation in 0..n {
                        let g = Dihedral { rotation, reflected };
                        let image: BTreeSet<(usize, usize)> = diags
                            .iter()
                            .map(|&(u, v)| {
                                let (p, q) = (g.vertex(n, u), g.vertex(n, v));
                                (p.min(q), p.max(q))
                            })
                            .collect();
                        if image == b_diags[t] {
                            opts.push((t, g));
                        }
                    }
                }
            }
            opts
        })
        .collect();
    let mut chosen: Vec<(usize, Dihedral)> = Vec::with_capacity(options.len());
    let mut used = vec![false; b.components.len()];
    fn search(
        a: &SurfaceData,
        options: &[Vec<(usize, Dihedral)>],
        chosen: &mut Vec<(usize, Dihedral)>,
        used: &mut [bool],
        target: &[Vec<LaminationCurve>],
    ) -> bool {
        let c = chosen.len();
        if c == options.len() {
            let map = |curve: LaminationCurve| {
                let (t, g) = chosen[curve.component];
                let n = a.components[curve.component].len();
                LaminationCurve::new(t, g.segment(n, curve.ends.0), g.segment(n, curve.ends.1))
            };
            return lamination_multiset(a, &map) == target;
        }
        for &(t, g) in &options[c] {
            if used[t] {
                continue;
            }
            used[t] = true;
            chosen.push((t, g));
            if search(a, options, chosen, used, target) {
                return true;
            }
            chosen.pop();
            used[t] = false;
        }
        false
    }
    search(a, &options, &mut chosen, &mut used, &target_lams).then_some(SurfaceIso { components: chosen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn i(seed: &Seed, x: &str, y: &str) -> i64 {
        seed.entry(x, y).map(|b| i64::try_from(b).unwrap()).unwrap()
    }

    #[test]
    fn small_principal_parts() {
        let sq = SurfaceData::polygon(4, &[(0, 2)], &[]).unwrap();
        assert!(b_matrix_from_triangulation(&sq).get(0, 0).is_zero());
        let pent = seed_from_surface(&SurfaceData::polygon(5, &[(0, 2), (0, 3)], &[]).unwrap()).unwrap();
        assert_eq!(i(&pent, "d0_3", "d0_2"), 1);
        assert_eq!(i(&pent, "d0_2", "d0_3"), -1);
        let hex = seed_from_surface(&SurfaceData::polygon(6, &fan_triangulation(6), &[]).unwrap()).unwrap();
        assert_eq!((hex.n(), hex.m()), (3, 0));
        assert_eq!(i(&hex, "d0_2", "d0_4"), 0);
        assert_eq!(i(&hex, "d0_3", "d0_2").abs(), 1);
        assert_eq!(i(&hex, "d0_4", "d0_3").abs(), 1);
    }

    #[test]
    fn square_shear_golden() {
        // Curve from segment 0 to segment 2 crosses the diagonal (0, 2)
        // through the sides following vertices 0 and 2.
        let sq = SurfaceData::polygon(4, &[(0, 2)], &[vec![(0, 2)]]).unwrap();
        assert_eq!(shear_coordinates(&sq, 0), vec![-1]);
        let other = SurfaceData::polygon(4, &[(0, 2)], &[vec![(1, 3)]]).unwrap();
        assert_eq!(shear_coordinates(&other, 0), vec![1]);
        let twice = SurfaceData::polygon(4, &[(0, 2)], &[vec![(1, 3), (1, 3)]]).unwrap();
        assert_eq!(shear_coordinates(&twice, 0), vec![2]);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(SurfaceData::polygon(5, &[(0, 2), (1, 3)], &[]), Err(SurfaceError::Crossing(..))));
        assert!(matches!(SurfaceData::polygon(5, &[(0, 2)], &[]), Err(SurfaceError::NotMaximal { .. })));
        assert!(matches!(SurfaceData::polygon(4, &[(0, 1)], &[]), Err(SurfaceError::BadDiagonal(_))));
        assert!(matches!(SurfaceData::polygon(4, &[(0, 2)], &[vec![(0, 1)]]), Err(SurfaceError::BadCurve(..))));
        assert!(matches!(
            SurfaceData::polygon(6, &fan_triangulation(6), &[vec![(0, 3), (1, 4)]]),
            Err(SurfaceError::CurvesCross(_))
        ));
    }

    #[test]
    fn cutting() {
        let sq = SurfaceData::polygon(4, &[(0, 2)], &[vec![(0, 2)]]).unwrap();
        let cut = cut_along(&sq, "d0_2", CutMode::Delete).unwrap();
        assert_eq!(cut.components().len(), 2);
        assert!(cut.components().iter().all(|p| p.len() == 3));
        assert!(cut.laminations()[0].curves.is_empty());
        let frozen = cut_along(&sq, "d0_2", CutMode::Freeze).unwrap();
        assert_eq!(frozen.laminations().len(), 2);
        let hex = SurfaceData::polygon(6, &fan_triangulation(6), &[]).unwrap();
        let mut all = hex.clone();
        for d in hex.diagonals() {
            all = cut_along(&all, &d.label, CutMode::Delete).unwrap();
        }
        assert_eq!(all.components().len(), 4);
        assert!(matches!(cut_along(&hex, "d1_3", CutMode::Delete), Err(SurfaceError::NotADiagonal(_))));
    }

    #[test]
    fn hexagon_freeze_middle() {
        let hex = SurfaceData::polygon(6, &fan_triangulation(6), &[]).unwrap();
        let p = paunched_surface(&hex, &["d0_3"], &[]).unwrap();
        assert_eq!(p.components().iter().map(MarkedPolygon::len).collect::<Vec<_>>(), vec![4, 4]);
        assert_eq!(p.diagonals().len(), 2);
        let lx = &p.laminations()[0];
        assert_eq!(lx.label, "d0_3");
        assert_eq!(lx.curves.len(), 2);
        assert!(freeze_row_identity(&hex, "d0_3").unwrap());
        assert!(check_theorem_sur(&hex, &["d0_3"], &[]).unwrap());
    }

    #[test]
    fn theorem_examples() {
        let sq = SurfaceData::polygon(4, &[(0, 2)], &[vec![(0, 2)]]).unwrap();
        assert!(check_theorem_sur(&sq, &[] as &[&str], &[]).unwrap());
        assert!(check_theorem_sur(&sq, &["d0_2"], &[]).unwrap());
        assert!(check_theorem_sur(&sq, &[] as &[&str], &["L1"]).unwrap());
        let p = paunched_surface(&sq, &[] as &[&str], &["L1"]).unwrap();
        assert!(p.laminations().is_empty());
        assert_eq!(p.diagonals().len(), 1);
    }

    #[test]
    fn triangulation_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for n in 3..=8 {
            let all = all_triangulations(n);
            assert_eq!(all.len(), catalan[n - 2]);
            for t in all {
                SurfaceData::polygon(n, &t, &[]).unwrap();
            }
        }
    }

    #[test]
    fn isomorphisms() {
        let a = SurfaceData::polygon(5, &[(0, 2), (0, 3)], &[]).unwrap();
        let b = SurfaceData::polygon(5, &[(1, 3), (1, 4)], &[]).unwrap();
        assert!(surface_iso(&a, &a).is_some());
        assert!(surface_iso(&a, &b).is_some());
        let zig = SurfaceData::polygon(6, &[(0, 2), (2, 5), (2, 4)], &[]).unwrap();
        let hex = SurfaceData::polygon(6, &fan_triangulation(6), &[]).unwrap();
        assert!(surface_iso(&zig, &hex).is_some());
        let tri = SurfaceData::polygon(6, &[(0, 2), (2, 4), (0, 4)], &[]).unwrap();
        assert!(surface_iso(&tri, &hex).is_none());
        let l1 = SurfaceData::polygon(4, &[(0, 2)], &[vec![(0, 2)]]).unwrap();
        let l2 = SurfaceData::polygon(4, &[(0, 2)], &[vec![(1, 3)]]).unwrap();
        assert!(surface_iso(&l1, &l2).is_some());
    }
}
