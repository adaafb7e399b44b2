//! Fractions with monomial denominators.
//!
//! Every cluster variable of a geometric-type seed is a Laurent polynomial in
//! the initial extended cluster, so fractions are kept in Laurent normal form:
//! an integer polynomial over `c * x^e` with `c > 0`, where the numerator has
//! no monomial factor in common with `x^e` and no integer factor in common
//! with `c`. Two fractions are equal iff their normal forms are identical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{render_monomial, MultiPoly};
use super::SymbolicError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    numerator: MultiPoly,
    /// Always a single term with positive coefficient.
    denominator: MultiPoly,
}

impl RationalFunction {
    pub fn from_poly(p: MultiPoly) -> Self {
        let nvars = p.nvars();
        Self::normalize(p, BigInt::one(), vec![0; nvars])
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::variable(nvars, i))
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    fn den_parts(&self) -> (&Vec<u32>, &BigInt) {
        self.denominator.as_monomial().expect("denominator is a monomial")
    }

    /// True when the denominator is a monomial with unit coefficient, i.e. the
    /// fraction is a Laurent polynomial with integer coefficients.
    pub fn is_integral_laurent(&self) -> bool {
        self.den_parts().1.is_one()
    }

    fn normalize(num: MultiPoly, c: BigInt, e: Vec<u32>) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return Self { numerator: num, denominator: MultiPoly::one(nvars) };
        }
        let (num, c) = if c.is_negative() { (num.neg(), -c) } else { (num, c) };
        let g = num.monomial_gcd();
        let common: Vec<u32> = g.iter().zip(&e).map(|(a, b)| *a.min(b)).collect();
        let num = num.unshift(&common);
        let e: Vec<u32> = e.iter().zip(&common).map(|(a, b)| a - b).collect();
        let k = num.content().gcd(&c);
        let (num, c) = if k.is_one() { (num, c) } else { (num.div_exact_scalar(&k), c / &k) };
        Self { numerator: num, denominator: MultiPoly::monomial(c, e) }
    }

    pub fn mul(&self, other: &Self, max_terms: usize) -> Result<Self, SymbolicError> {
        let (e1, c1) = self.den_parts();
        let (e2, c2) = other.den_parts();
        let num = self.numerator.mul(&other.numerator, max_terms)?;
        let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
        Ok(Self::normalize(num, c1 * c2, e))
    }

    pub fn pow(&self, k: u32, max_terms: usize) -> Result<Self, SymbolicError> {
        let (e, c) = self.den_parts();
        let num = self.numerator.pow(k, max_terms)?;
        let e = e.iter().map(|a| a * k).collect();
        Ok(Self::normalize(num, num_traits::pow(c.clone(), k as usize), e))
    }

    pub fn add(&self, other: &Self, max_terms: usize) -> Result<Self, SymbolicError> {
        let (e1, c1) = self.den_parts();
        let (e2, c2) = other.den_parts();
        let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| *a.max(b)).collect();
        let c = c1.lcm(c2);
        let lift = |f: &Self, ef: &[u32], cf: &BigInt| {
            let d: Vec<u32> = e.iter().zip(ef).map(|(a, b)| a - b).collect();
            f.numerator.shift(&d).scale(&(&c / cf))
        };
        let num = lift(self, e1, c1).add(&lift(other, e2, c2));
        if num.len() > max_terms {
            return Err(SymbolicError::TermCap(max_terms));
        }
        Ok(Self::normalize(num, c, e))
    }

    /// `self / other`, required to stay in Laurent form. A non-monomial
    /// remainder means the quotient is not a Laurent polynomial and is
    /// reported as [`SymbolicError::NotLaurent`].
    pub fn div(&self, other: &Self, max_terms: usize) -> Result<Self, SymbolicError> {
        if other.numerator.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        let (e1, c1) = self.den_parts();
        let (e2, c2) = other.den_parts();
        // (N1 / c1 x^e1) / (N2 / c2 x^e2) with N2 = k x^g P2, P2 primitive and
        // free of monomial factors, is N1 c2 x^e2 / (c1 k x^(e1+g) P2); the
        // result is Laurent iff P2 divides N1.
        let g = other.numerator.monomial_gcd();
        let content = other.numerator.content();
        let sign = other.numerator.terms().next_back().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let content = if sign { -content } else { content };
        let primitive = other.numerator.unshift(&g).div_exact_scalar(&content);
        let Some(q) = self.numerator.div_exact(&primitive, max_terms)? else {
            return Err(SymbolicError::NotLaurent);
        };
        let num = q.shift(e2).scale(c2);
        let e = e1.iter().zip(&g).map(|(a, b)| a + b).collect();
        Ok(Self::normalize(num, c1 * content, e))
    }

    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.denominator.eval(point);
        (!d.is_zero()).then(|| self.numerator.eval(point) / d)
    }

    pub fn render(&self, names: &[String]) -> String {
        let (e, c) = self.den_parts();
        let num = self.numerator.render(names);
        let mono = render_monomial(e, names);
        let den = match (c.is_one(), mono.is_empty()) {
            (true, true) => return num,
            (true, false) => mono,
            (false, true) => c.to_string(),
            (false, false) => format!("{c}*{mono}"),
        };
        let num = if self.numerator.len() > 1 { format!("({num})") } else { num };
        let den = if den.contains('*') { format!("({den})") } else { den };
        format!("{num}/{den}")
    }

    /// Display adapter carrying variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a RationalFunction, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        D(self, names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1_000_000;

    fn names() -> Vec<String> {
        vec!["x1".into(), "x2".into()]
    }

    #[test]
    fn normal_form_is_canonical() {
        let x1 = RationalFunction::variable(2, 0);
        let x2 = RationalFunction::variable(2, 1);
        let a = x1.mul(&x2, CAP).unwrap().div(&x2.mul(&x2, CAP).unwrap(), CAP).unwrap();
        let b = x1.div(&x2, CAP).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.render(&names()), "x1/x2");
        let two = RationalFunction::constant(2, 2.into());
        let half = RationalFunction::constant(2, 1.into()).div(&two, CAP).unwrap();
        assert_eq!(half.render(&names()), "1/2");
        assert_eq!(half.mul(&two, CAP).unwrap(), RationalFunction::constant(2, 1.into()));
        let neg = RationalFunction::constant(2, (-4).into());
        assert_eq!(x1.div(&neg, CAP).unwrap().render(&names()), "-x1/4");
    }

    #[test]
    fn laurent_division() {
        let one = RationalFunction::constant(2, 1.into());
        let x1 = RationalFunction::variable(2, 0);
        let x2 = RationalFunction::variable(2, 1);
        let p = one.add(&x2, CAP).unwrap();
        let f = p.div(&x1, CAP).unwrap();
        assert_eq!(f.render(&names()), "(1+x2)/x1");
        let back = p.div(&f, CAP).unwrap();
        assert_eq!(back, x1);
        assert_eq!(one.div(&p, CAP), Err(SymbolicError::NotLaurent));
        let sum = f.add(&x1, CAP).unwrap();
        assert_eq!(sum.render(&names()), "(1+x2+x1^2)/x1");
        let diff = sum.add(&x1.mul(&RationalFunction::constant(2, (-1).into()), CAP).unwrap(), CAP).unwrap();
        assert_eq!(diff, f);
    }

    #[test]
    fn zero_is_canonical() {
        let x1 = RationalFunction::variable(2, 0);
        let minus = x1.mul(&RationalFunction::constant(2, (-1).into()), CAP).unwrap();
        let z = x1.div(&RationalFunction::variable(2, 1), CAP).unwrap();
        let z = z.add(&minus.div(&RationalFunction::variable(2, 1), CAP).unwrap(), CAP).unwrap();
        assert_eq!(z, RationalFunction::constant(2, 0.into()));
        assert_eq!(z.render(&names()), "0");
    }
}
