//! Seeds of geometric type: labelled variables and an integer extended
//! exchange matrix.
//!
//! A seed carries `n` exchangeable labels and `m` frozen labels. Internally a
//! variable is addressed by its position in `exchangeable ++ frozen`, so the
//! exchangeable variables are exactly the indices `0..n`. The matrix has one
//! row per exchangeable variable and one column per variable.
//!
//! Only skew-symmetrizable principal parts are accepted. Mutation preserves
//! that property, so every seed reachable from a valid seed is valid again.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error("matrix row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("matrix has {found} rows, expected one per exchangeable variable ({expected})")]
    RowCount { found: usize, expected: usize },
    #[error("invalid seed: {0}")]
    Invalid(ValidationReport),
    #[error("mutation index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("unknown variable label `{0}`")]
    UnknownLabel(String),
    #[error("`{0}` is not an exchangeable variable")]
    NotExchangeable(String),
    #[error("arrow between frozen variables `{0}` and `{1}` cannot be represented")]
    FrozenArrow(String, String),
}

/// One failed condition found by [`validate_parts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateLabel(String),
    RowCount { found: usize, expected: usize },
    RaggedRow { row: usize, len: usize, expected: usize },
    /// `b[i][j]` and `b[j][i]` are neither both zero nor of opposite sign.
    SignSkew { i: usize, j: usize },
    /// The principal part is sign-skew-symmetric but admits no symmetrizer;
    /// `(i, j)` is an entry pair violated by the propagated candidate.
    NotSymmetrizable { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            Violation::RowCount { found, expected } => {
                write!(f, "{found} matrix rows, expected {expected}")
            }
            Violation::RaggedRow { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            Violation::SignSkew { i, j } => {
                write!(f, "sign-skew-symmetry violated at ({i},{j})/({j},{i})")
            }
            Violation::NotSymmetrizable { i, j } => {
                write!(f, "no skew-symmetrizer: d_{i} b_{i}{j} = -d_{j} b_{j}{i} fails")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Positive integers `d` with `d[i] b[i][j] = -d[j] b[j][i]`, normalised
    /// to be coprime on every connected block of the principal part.
    pub symmetrizer: Option<Vec<BigInt>>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// `n x (n + m)` integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedExchangeMatrix {
    n: usize,
    m: usize,
    entries: Vec<BigInt>,
}

impl ExtendedExchangeMatrix {
    /// Builds a matrix after checking its shape, sign-skew-symmetry and
    /// skew-symmetrizability.
    pub fn from_rows(n: usize, m: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, SeedError> {
        let matrix = Self::from_rows_unchecked(n, m, rows)?;
        let violations = matrix.violations();
        if violations.is_empty() {
            Ok(matrix)
        } else {
            Err(SeedError::Invalid(ValidationReport { violations, symmetrizer: None }))
        }
    }

    pub fn from_i64_rows(n: usize, m: usize, rows: &[Vec<i64>]) -> Result<Self, SeedError> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::from_rows(n, m, rows)
    }

    /// Shape check only.
    pub(crate) fn from_rows_unchecked(
        n: usize,
        m: usize,
        rows: Vec<Vec<BigInt>>,
    ) -> Result<Self, SeedError> {
        if rows.len() != n {
            return Err(SeedError::RowCount { found: rows.len(), expected: n });
        }
        let mut entries = Vec::with_capacity(n * (n + m));
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n + m {
                return Err(SeedError::RaggedRow { row, len: r.len(), expected: n + m });
            }
            entries.extend(r);
        }
        Ok(Self { n, m, entries })
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self { n, m, entries: vec![BigInt::zero(); n * (n + m)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n + self.m
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols() + col]
    }

    pub(crate) fn get_mut(&mut self, row: usize, col: usize) -> &mut BigInt {
        let cols = self.cols();
        &mut self.entries[row * cols + col]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        let c = self.cols();
        &self.entries[i * c..(i + 1) * c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.n).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(<[BigInt]>::to_vec).collect()
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        if k >= self.n {
            return Err(SeedError::IndexOutOfRange { index: k, rank: self.n });
        }
        let mut out = self.clone();
        let two = BigInt::from(2);
        for j in 0..self.n {
            for l in 0..self.cols() {
                let v = if j == k || l == k {
                    -self.get(j, l)
                } else {
                    let a_jk = self.get(j, k);
                    let a_kl = self.get(k, l);
                    if a_jk.is_zero() || a_kl.is_zero() {
                        self.get(j, l).clone()
                    } else {
                        let shift = a_jk.abs() * a_kl + a_jk * a_kl.abs();
                        debug_assert!(shift.is_even());
                        self.get(j, l) + shift / &two
                    }
                };
                *out.get_mut(j, l) = v;
            }
        }
        Ok(out)
    }

    fn sign_skew_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let (a, b) = (self.get(i, j), self.get(j, i));
                let ok = if i == j {
                    a.is_zero()
                } else {
                    (a.is_zero() && b.is_zero()) || (a.sign() != b.sign() && !a.is_zero() && !b.is_zero())
                };
                if !ok {
                    out.push(Violation::SignSkew { i, j });
                }
            }
        }
        out
    }

    /// Propagates a candidate symmetrizer along a spanning forest of the
    /// nonzero pattern, then checks every entry pair.
    fn propagate_symmetrizer(&self) -> Result<Vec<BigInt>, (usize, usize)> {
        let n = self.n;
        let mut d: Vec<Option<BigRational>> = vec![None; n];
        let mut component = vec![usize::MAX; n];
        let mut roots = Vec::new();
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            let comp = roots.len();
            roots.push(root);
            d[root] = Some(BigRational::one());
            component[root] = comp;
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if i == j || self.get(i, j).is_zero() || d[j].is_some() {
                        continue;
                    }
                    let b_ij = self.get(i, j);
                    let b_ji = self.get(j, i);
                    if b_ji.is_zero() {
                        return Err((i, j));
                    }
                    let di = d[i].clone().expect("visited");
                    let ratio = BigRational::new(-b_ij.clone(), b_ji.clone());
                    d[j] = Some(di * ratio);
                    component[j] = comp;
                    queue.push_back(j);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = d[i].as_ref().unwrap() * BigRational::from(self.get(i, j).clone());
                let rhs = -(d[j].as_ref().unwrap() * BigRational::from(self.get(j, i).clone()));
                if lhs != rhs || (i != j && d[i].as_ref().unwrap() <= &BigRational::zero()) {
                    return Err((i, j));
                }
            }
        }
        // Clear denominators and common factors block by block.
        let mut out = vec![BigInt::zero(); n];
        for comp in 0..roots.len() {
            let members: Vec<usize> = (0..n).filter(|&i| component[i] == comp).collect();
            let lcm = members
                .iter()
                .fold(BigInt::one(), |acc, &i| acc.lcm(d[i].as_ref().unwrap().denom()));
            let scaled: Vec<BigInt> = members
                .iter()
                .map(|&i| (d[i].as_ref().unwrap() * BigRational::from(lcm.clone())).to_integer())
                .collect();
            let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            for (&i, v) in members.iter().zip(scaled) {
                out[i] = v / &g;
            }
        }
        Ok(out)
    }

    /// Some symmetrizer of the principal part, if one exists.
    pub fn symmetrizer(&self) -> Option<Vec<BigInt>> {
        if !self.sign_skew_violations().is_empty() {
            return None;
        }
        self.propagate_symmetrizer().ok()
    }

    pub fn is_symmetrized_by(&self, d: &[BigInt]) -> bool {
        d.len() == self.n
            && d.iter().all(|v| v.is_positive())
            && (0..self.n).all(|i| {
                (0..self.n).all(|j| &d[i] * self.get(i, j) == -(&d[j] * self.get(j, i)))
            })
    }

    fn violations(&self) -> Vec<Violation> {
        let mut v = self.sign_skew_violations();
        if v.is_empty() {
            if let Err((i, j)) = self.propagate_symmetrizer() {
                v.push(Violation::NotSymmetrizable { i, j });
            }
        }
        v
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(num_traits::ToPrimitive::to_i64).collect()
    }
}

/// Checks raw seed data without building a [`Seed`].
pub fn validate_parts(
    exchangeable: &[String],
    frozen: &[String],
    rows: &[Vec<BigInt>],
) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for l in exchangeable.iter().chain(frozen) {
        if !seen.insert(l.as_str()) {
            violations.push(Violation::DuplicateLabel(l.clone()));
        }
    }
    let (n, m) = (exchangeable.len(), frozen.len());
    if rows.len() != n {
        violations.push(Violation::RowCount { found: rows.len(), expected: n });
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n + m {
            violations.push(Violation::RaggedRow { row, len: r.len(), expected: n + m });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations, symmetrizer: None };
    }
    let matrix = ExtendedExchangeMatrix::from_rows_unchecked(n, m, rows.to_vec())
        .expect("shape checked above");
    let violations = matrix.violations();
    let symmetrizer = if violations.is_empty() { matrix.symmetrizer() } else { None };
    ValidationReport { violations, symmetrizer }
}

/// Re-checks an existing seed.
pub fn validate_seed(seed: &Seed) -> ValidationReport {
    validate_parts(&seed.exchangeable, &seed.frozen, &seed.matrix.to_rows())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    exchangeable: Vec<String>,
    frozen: Vec<String>,
    matrix: ExtendedExchangeMatrix,
}

impl Seed {
    pub fn new(
        exchangeable: Vec<String>,
        frozen: Vec<String>,
        rows: Vec<Vec<BigInt>>,
    ) -> Result<Self, SeedError> {
        let report = validate_parts(&exchangeable, &frozen, &rows);
        if !report.is_valid() {
            return Err(SeedError::Invalid(report));
        }
        let matrix = ExtendedExchangeMatrix::from_rows_unchecked(exchangeable.len(), frozen.len(), rows)?;
        Ok(Self { exchangeable, frozen, matrix })
    }

    pub fn from_i64(exchangeable: &[&str], frozen: &[&str], rows: &[Vec<i64>]) -> Result<Self, SeedError> {
        Self::new(
            exchangeable.iter().map(|s| s.to_string()).collect(),
            frozen.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        )
    }

    /// Skew-symmetric seed of a quiver. Each `(a, b, k)` adds `k` arrows `a -> b`.
    pub fn from_arrows(
        exchangeable: &[&str],
        frozen: &[&str],
        arrows: &[(&str, &str, i64)],
    ) -> Result<Self, SeedError> {
        let n = exchangeable.len();
        let labels: Vec<&str> = exchangeable.iter().chain(frozen).copied().collect();
        let find = |l: &str| {
            labels.iter().position(|x| *x == l).ok_or_else(|| SeedError::UnknownLabel(l.to_string()))
        };
        let mut rows = vec![vec![0i64; labels.len()]; n];
        for &(a, b, k) in arrows {
            let (i, j) = (find(a)?, find(b)?);
            if i >= n && j >= n {
                return Err(SeedError::FrozenArrow(a.to_string(), b.to_string()));
            }
            if i < n {
                rows[i][j] += k;
            }
            if j < n {
                rows[j][i] -= k;
            }
        }
        Self::from_i64(exchangeable, frozen, &rows)
    }

    /// Seed with no variables at all.
    pub fn empty() -> Self {
        Self { exchangeable: Vec::new(), frozen: Vec::new(), matrix: ExtendedExchangeMatrix::zero(0, 0) }
    }

    /// Seed with only frozen variables.
    pub fn trivial(frozen: &[&str]) -> Result<Self, SeedError> {
        Self::from_i64(&[], frozen, &[])
    }

    pub(crate) fn from_parts_unchecked(
        exchangeable: Vec<String>,
        frozen: Vec<String>,
        matrix: ExtendedExchangeMatrix,
    ) -> Self {
        debug_assert_eq!(matrix.n(), exchangeable.len());
        debug_assert_eq!(matrix.m(), frozen.len());
        Self { exchangeable, frozen, matrix }
    }

    pub fn n(&self) -> usize {
        self.exchangeable.len()
    }

    pub fn m(&self) -> usize {
        self.frozen.len()
    }

    /// Number of variables in the extended cluster.
    pub fn len(&self) -> usize {
        self.n() + self.m()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.n() == 0
    }

    pub fn exchangeable(&self) -> &[String] {
        &self.exchangeable
    }

    pub fn frozen(&self) -> &[String] {
        &self.frozen
    }

    pub fn matrix(&self) -> &ExtendedExchangeMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.exchangeable.iter().chain(&self.frozen).map(String::as_str)
    }

    pub fn label(&self, i: usize) -> &str {
        if i < self.n() {
            &self.exchangeable[i]
        } else {
            &self.frozen[i - self.n()]
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels().position(|l| l == label)
    }

    pub fn is_exchangeable_index(&self, i: usize) -> bool {
        i < self.n()
    }

    /// `b[x][y]` by index; `x` must be exchangeable.
    pub fn b(&self, x: usize, y: usize) -> &BigInt {
        self.matrix.get(x, y)
    }

    /// `b[x][y]` by label, `None` if `x` is not exchangeable or a label is unknown.
    pub fn entry(&self, x: &str, y: &str) -> Option<&BigInt> {
        let i = self.index_of(x)?;
        let j = self.index_of(y)?;
        (i < self.n()).then(|| self.b(i, j))
    }

    pub fn mutate_at(&self, k: usize) -> Result<Seed, SeedError> {
        Ok(Seed {
            exchangeable: self.exchangeable.clone(),
            frozen: self.frozen.clone(),
            matrix: self.matrix.mutate(k)?,
        })
    }

    pub fn mutate(&self, label: &str) -> Result<Seed, SeedError> {
        let k = self.index_of(label).ok_or_else(|| SeedError::UnknownLabel(label.to_string()))?;
        if k >= self.n() {
            return Err(SeedError::NotExchangeable(label.to_string()));
        }
        self.mutate_at(k)
    }

    fn pair_nonzero(&self, x: usize, y: usize) -> bool {
        let n = self.n();
        (x < n && !self.b(x, y).is_zero()) || (y < n && !self.b(y, x).is_zero())
    }

    /// Every two variables are joined by a chain of connected pairs: distinct
    /// variables, at least one exchangeable, with a nonzero entry between them.
    pub fn is_connected(&self) -> bool {
        let total = self.len();
        if total <= 1 {
            return true;
        }
        let mut seen = vec![false; total];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let reached: Vec<usize> = (0..total)
                .filter(|&y| !seen[y] && x != y && (x < self.n() || y < self.n()) && self.pair_nonzero(x, y))
                .collect();
            for y in reached {
                seen[y] = true;
                stack.push(y);
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Equality of seeds as labelled objects, ignoring the order in which the
    /// labels are listed.
    pub fn eq_by_labels(&self, other: &Seed) -> bool {
        if self.n() != other.n() || self.m() != other.m() {
            return false;
        }
        let mut pos = Vec::with_capacity(self.len());
        for (i, l) in self.labels().enumerate() {
            match other.index_of(l) {
                Some(j) if (i < self.n()) == (j < other.n()) => pos.push(j),
                _ => return false,
            }
        }
        (0..self.n()).all(|x| (0..self.len()).all(|y| self.b(x, y) == other.b(pos[x], pos[y])))
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exchangeable: [{}]", self.exchangeable.join(", "))?;
        writeln!(f, "frozen: [{}]", self.frozen.join(", "))?;
        for (label, row) in self.exchangeable.iter().zip(self.matrix.rows()) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {label}: [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn a2_is_valid() {
        let r = validate_parts(&labels(&["x1", "x2"]), &[], &big(&[vec![0, 1], vec![-1, 0]]));
        assert!(r.is_valid());
        assert_eq!(r.symmetrizer, Some(vec![BigInt::from(1), BigInt::from(1)]));
    }

    #[test]
    fn both_positive_is_not_sign_skew() {
        let r = validate_parts(&labels(&["x1", "x2"]), &[], &big(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(r.violations, vec![Violation::SignSkew { i: 0, j: 1 }]);
    }

    #[test]
    fn b2_symmetrizer() {
        let r = validate_parts(&labels(&["x1", "x2"]), &[], &big(&[vec![0, 2], vec![-1, 0]]));
        assert!(r.is_valid());
        assert_eq!(r.symmetrizer, Some(vec![BigInt::from(1), BigInt::from(2)]));
    }

    #[test]
    fn sign_skew_but_not_symmetrizable() {
        // 3-cycle with weights whose product of ratios is not 1.
        let rows = big(&[vec![0, 1, -1], vec![-1, 0, 1], vec![2, -1, 0]]);
        let r = validate_parts(&labels(&["a", "b", "c"]), &[], &rows);
        assert!(matches!(r.violations.as_slice(), [Violation::NotSymmetrizable { .. }]));
    }

    #[test]
    fn nonzero_diagonal_rejected() {
        let r = validate_parts(&labels(&["a"]), &[], &big(&[vec![1]]));
        assert_eq!(r.violations, vec![Violation::SignSkew { i: 0, j: 0 }]);
    }

    #[test]
    fn shape_and_label_errors_reported() {
        let r = validate_parts(&labels(&["a", "a"]), &[], &big(&[vec![0, 1], vec![-1]]));
        assert!(r.violations.contains(&Violation::DuplicateLabel("a".into())));
        assert!(r.violations.contains(&Violation::RaggedRow { row: 1, len: 1, expected: 2 }));
    }

    #[test]
    fn mutation_examples() {
        let a2 = ExtendedExchangeMatrix::from_i64_rows(2, 0, &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(
            a2.mutate(0).unwrap(),
            ExtendedExchangeMatrix::from_i64_rows(2, 0, &[vec![0, -1], vec![1, 0]]).unwrap()
        );
        let a3 = ExtendedExchangeMatrix::from_i64_rows(
            3,
            0,
            &[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]],
        )
        .unwrap();
        let expected = ExtendedExchangeMatrix::from_i64_rows(
            3,
            0,
            &[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]],
        )
        .unwrap();
        assert_eq!(a3.mutate(1).unwrap(), expected);
        assert_eq!(a3.mutate(1).unwrap().mutate(1).unwrap(), a3);
        assert_eq!(a3.mutate(3), Err(SeedError::IndexOutOfRange { index: 3, rank: 3 }));
    }

    #[test]
    fn mutation_touches_frozen_columns() {
        let m = ExtendedExchangeMatrix::from_i64_rows(2, 1, &[vec![0, 1, 1], vec![-1, 0, 0]]).unwrap();
        let mu = m.mutate(0).unwrap();
        // b'_{1,2} = 0 + (|-1|*1 + (-1)*|1|)/2 = 0; row 0 negated.
        assert_eq!(mu, ExtendedExchangeMatrix::from_i64_rows(2, 1, &[vec![0, -1, -1], vec![1, 0, 0]]).unwrap());
        let mu1 = m.mutate(1).unwrap();
        // b'_{0,2} = 1 + (|1|*0 + 1*0)/2 = 1.
        assert_eq!(mu1.get(0, 2), &BigInt::from(1));
    }

    #[test]
    fn connectivity() {
        let a2 = Seed::from_arrows(&["x1", "x2"], &[], &[("x1", "x2", 1)]).unwrap();
        assert!(a2.is_connected());
        let zero = Seed::from_i64(&["x1", "x2"], &[], &[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!zero.is_connected());
        assert!(!Seed::trivial(&["y1", "y2"]).unwrap().is_connected());
        assert!(Seed::trivial(&["y1"]).unwrap().is_connected());
        assert!(Seed::empty().is_connected());
        let via_frozen = Seed::from_arrows(&["x"], &["y"], &[("x", "y", 1)]).unwrap();
        assert!(via_frozen.is_connected());
    }

    #[test]
    fn labels_and_entries() {
        let s = Seed::from_arrows(&["x1", "x2"], &["y"], &[("x1", "x2", 1), ("y", "x2", 3)]).unwrap();
        assert_eq!(s.entry("x2", "y"), Some(&BigInt::from(-3)));
        assert_eq!(s.entry("y", "x2"), None);
        assert!(matches!(s.mutate("y"), Err(SeedError::NotExchangeable(_))));
        let swapped = Seed::from_arrows(&["x2", "x1"], &["y"], &[("x1", "x2", 1), ("y", "x2", 3)]).unwrap();
        assert!(s.eq_by_labels(&swapped));
        assert_ne!(s, swapped);
        assert!(matches!(
            Seed::from_arrows(&[], &["a", "b"], &[("a", "b", 1)]),
            Err(SeedError::FrozenArrow(..))
        ));
    }
}
