//! Sparse multivariate integer polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SymbolicError;

/// Exponent vector, one entry per variable of the context.
pub type Exponents = Vec<u32>;

/// Integer polynomial in `nvars` commuting variables. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn monomial(coeff: BigInt, exps: Exponents) -> Self {
        let mut p = Self::zero(exps.len());
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(BigInt::one(), e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// The single term of a monomial, if this is one.
    pub fn as_monomial(&self) -> Option<(&Exponents, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, failing once the result would exceed `max_terms` terms.
    pub fn mul(&self, other: &Self, max_terms: usize) -> Result<Self, SymbolicError> {
        let bound = self.terms.len().saturating_mul(other.terms.len());
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
            if bound > max_terms && out.terms.len() > max_terms {
                return Err(SymbolicError::TermCap(max_terms));
            }
        }
        if out.terms.len() > max_terms {
            return Err(SymbolicError::TermCap(max_terms));
        }
        Ok(out)
    }

    pub fn pow(&self, mut k: u32, max_terms: usize) -> Result<Self, SymbolicError> {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, max_terms)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, max_terms)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn shift(&self, exps: &[u32]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Divides by the monomial `x^exps`; every term must be divisible.
    pub fn unshift(&self, exps: &[u32]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Gcd of all coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_gcd(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut g = first.clone();
        for e in it {
            for (gi, ei) in g.iter_mut().zip(e) {
                *gi = (*gi).min(*ei);
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v / c)).collect() }
    }

    fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` over the integers, or `None` when the
    /// division leaves a remainder or a non-integral coefficient.
    pub fn div_exact(&self, divisor: &Self, max_terms: usize) -> Result<Option<Self>, SymbolicError> {
        let Some((lead_e, lead_c)) = divisor.leading() else {
            return Ok(None);
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(lead_e).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let (q, r) = rc.div_rem(lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            let qe: Exponents = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let step = divisor.shift(&qe).scale(&q);
            quot.add_term(qe, q);
            if quot.terms.len() > max_terms {
                return Err(SymbolicError::TermCap(max_terms));
            }
            rem = rem.sub(&step);
        }
        Ok(Some(quot))
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[num_rational::BigRational]) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = num_rational::BigRational::from(c.clone());
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Terms in ascending graded order: by total degree, then with larger
    /// powers of earlier variables first.
    pub fn graded_terms(&self) -> Vec<(&Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| graded_cmp(a, b));
        v
    }

    /// Renders with the given variable names, e.g. `1+x2-3*x1^2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let mono = render_monomial(e, names);
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        out
    }
}

fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| u64::from(x)).sum();
    let db: u64 = b.iter().map(|&x| u64::from(x)).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

/// `x1^2*x3`, or the empty string for the unit monomial.
pub(crate) fn render_monomial(e: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &p) in e.iter().enumerate() {
        match p {
            0 => {}
            1 => parts.push(names[k].clone()),
            _ => parts.push(format!("{}^{p}", names[k])),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1_000_000;

    fn names() -> Vec<String> {
        vec!["x1".into(), "x2".into()]
    }

    #[test]
    fn arithmetic_and_render() {
        let one = MultiPoly::one(2);
        let x1 = MultiPoly::variable(2, 0);
        let x2 = MultiPoly::variable(2, 1);
        let p = one.add(&x2);
        assert_eq!(p.render(&names()), "1+x2");
        let sq = p.pow(2, CAP).unwrap();
        assert_eq!(sq.render(&names()), "1+2*x2+x2^2");
        let q = x1.scale(&BigInt::from(-3)).mul(&x1, CAP).unwrap().add(&x2);
        assert_eq!(q.render(&names()), "x2-3*x1^2");
        assert_eq!(MultiPoly::zero(2).render(&names()), "0");
        assert_eq!(x1.neg().render(&names()), "-x1");
    }

    #[test]
    fn exact_division() {
        let x1 = MultiPoly::variable(2, 0);
        let x2 = MultiPoly::variable(2, 1);
        let a = MultiPoly::one(2).add(&x1).add(&x2);
        let b = x1.sub(&x2.scale(&BigInt::from(2)));
        let prod = a.mul(&b, CAP).unwrap();
        assert_eq!(prod.div_exact(&a, CAP).unwrap(), Some(b.clone()));
        assert_eq!(prod.div_exact(&b, CAP).unwrap(), Some(a.clone()));
        assert_eq!(prod.add(&MultiPoly::one(2)).div_exact(&a, CAP).unwrap(), None);
        assert_eq!(x1.div_exact(&MultiPoly::constant(2, 2.into()), CAP).unwrap(), None);
    }

    #[test]
    fn content_and_monomial_gcd() {
        let p = MultiPoly::monomial(6.into(), vec![2, 1]).add(&MultiPoly::monomial(4.into(), vec![1, 3]));
        assert_eq!(p.content(), BigInt::from(2));
        assert_eq!(p.monomial_gcd(), vec![1, 1]);
    }

    #[test]
    fn term_cap_enforced() {
        let p = MultiPoly::one(2).add(&MultiPoly::variable(2, 0)).add(&MultiPoly::variable(2, 1));
        assert_eq!(p.pow(10, 20), Err(SymbolicError::TermCap(20)));
    }
}
