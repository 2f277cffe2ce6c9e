//! Sparse multivariate polynomials over the integers with a fixed monomial
//! order, and symbolic determinants of polynomial matrices.

mod matrix;
mod monomial;
mod parse;

pub use matrix::{det_symbolic, MinorCache, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("at most {MAX_VARS} variables are supported, got index {0}")]
    TooManyVariables(usize),
}

/// A polynomial in `Z[x_0, ..., x_15]`. Terms are kept sorted in decreasing
/// order under `order`, with no zero coefficients; the zero polynomial has no
/// terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigInt)>,
    order: MonomialOrder,
}

impl Polynomial {
    pub fn zero(order: MonomialOrder) -> Self {
        Polynomial {
            terms: Vec::new(),
            order,
        }
    }

    pub fn constant(c: impl Into<BigInt>, order: MonomialOrder) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(order);
        }
        Polynomial {
            terms: vec![(Monomial::one(), c)],
            order,
        }
    }

    pub fn one(order: MonomialOrder) -> Self {
        Self::constant(1, order)
    }

    /// The variable with 0-based index `i`.
    pub fn var(i: usize, order: MonomialOrder) -> Self {
        Self::term(Monomial::var(i), BigInt::one(), order)
    }

    pub fn term(m: Monomial, c: BigInt, order: MonomialOrder) -> Self {
        if c.is_zero() {
            return Self::zero(order);
        }
        Polynomial {
            terms: vec![(m, c)],
            order,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>, order: MonomialOrder) -> Self {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        let mut terms: Vec<(Monomial, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { terms, order }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The same polynomial with its terms re-sorted under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { terms, order }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// True for the constants `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.abs().is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// One more than the largest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.num_vars()).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Content: gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
            order: self.order,
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
            order: self.order,
        }
    }

    /// Sign-normalised copy whose leading coefficient is positive.
    pub fn normalize_sign(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order, other.order, "polynomials use different monomial orders");
    }

    /// `self + sign * other`, merging the sorted term lists.
    fn merge(&self, other: &Self, negate: bool) -> Self {
        self.check_order(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let tail = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, tail(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, tail(c))));
        Polynomial {
            terms: out,
            order: self.order,
        }
    }

    /// `self - c * m * g`, the basic reduction step.
    pub fn sub_mul_term(&self, c: &BigInt, m: &Monomial, g: &Self) -> Self {
        self.merge(&g.mul_term(m, c), true)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation. Every variable occurring in `self` must be assigned.
    pub fn evaluate(&self, assignment: &BTreeMap<usize, BigInt>) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, e) in m.support() {
                let x = assignment
                    .get(&i)
                    .ok_or_else(|| PolyError::MissingVariable(format!("x{}", i + 1)))?;
                v *= x.pow(e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluation at a point given as a dense slice (index = variable).
    pub fn evaluate_at(&self, point: &[i64]) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, e) in m.support() {
                let x = point
                    .get(i)
                    .ok_or_else(|| PolyError::MissingVariable(format!("x{}", i + 1)))?;
                v *= BigInt::from(*x).pow(e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluation modulo a small prime `p`; `point` entries are residues.
    pub fn evaluate_mod(&self, point: &[u64], p: u64) -> u64 {
        let p_big = BigInt::from(p);
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let r = c.mod_floor(&p_big);
            let mut v: u64 = r.try_into().expect("residue fits");
            for (i, e) in m.support() {
                for _ in 0..e {
                    v = v * point[i] % p;
                }
            }
            total = (total + v) % p;
        }
        total
    }

    /// A total order on polynomials (by terms under the monomial order,
    /// then by coefficients), used to sort generator lists deterministically.
    pub fn cmp_terms(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = self.order.cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    /// Renames variables: variable `i` becomes `map[i]`.
    pub fn rename(&self, map: &[usize]) -> Self {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.rename(map), c.clone())), self.order)
    }

    /// Renders with the given variable names, e.g. `x1*x2^2 - 3*y1 + 2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, e) in m.support() {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Default variable names `x1, x2, ...`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_order(rhs);
        let (small, big) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = Polynomial::zero(self.order);
        for (m, c) in &small.terms {
            acc = &acc + &big.mul_term(m, c);
        }
        acc
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const O: MonomialOrder = MonomialOrder::DegRevLex;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i, O)
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::constant(v, O)
    }

    #[test]
    fn cancellation() {
        assert!((&x(0) + &(-&x(0))).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &c(1)) * &(&x(0) - &c(1));
        assert_eq!(p, &x(0).pow(2) - &c(1));
        assert_eq!(p.to_string(), "x1^2 - 1");
    }

    #[test]
    fn product_of_linear_factors_matches_expansion() {
        // (1+x1)(1+x2)(1+x3) = sum over subsets of the product of the subset
        let p = [0, 1, 2].iter().fold(c(1), |acc, &i| &acc * &(&c(1) + &x(i)));
        assert_eq!(p.len(), 8);
        for mask in 0..8u32 {
            let mut e = [0u32; 3];
            for (i, slot) in e.iter_mut().enumerate() {
                *slot = mask >> i & 1;
            }
            assert_eq!(p.coeff(&Monomial::from_exponents(&e).unwrap()), BigInt::one());
        }
    }

    #[test]
    fn render_and_order() {
        let p = &(&(&x(1) + &x(4)) + &(&x(1) * &x(4))) - &c(3);
        assert_eq!(p.to_string(), "x2*x5 + x2 + x5 - 3");
        let names: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
        assert_eq!(p.render(&names), "b*e + b + e - 3");
        assert_eq!(c(0).to_string(), "0");
        assert_eq!((-&x(0)).to_string(), "-x1");
    }

    #[test]
    fn evaluation() {
        let p = &(&x(0) * &x(1)) - &c(1);
        let a: BTreeMap<usize, BigInt> = [(0, 1.into()), (1, 1.into())].into();
        assert_eq!(p.evaluate(&a).unwrap(), BigInt::zero());
        assert_eq!(c(0).evaluate(&BTreeMap::new()).unwrap(), BigInt::zero());
        let q = &(&x(1) + &x(4)) + &(&x(1) * &x(4));
        let a: BTreeMap<usize, BigInt> = [(1, 3.into()), (4, 3.into())].into();
        assert_eq!(q.evaluate(&a).unwrap(), BigInt::from(15));
        assert!(matches!(
            q.evaluate(&BTreeMap::new()),
            Err(PolyError::MissingVariable(_))
        ));
    }

    #[test]
    fn modular_evaluation() {
        let p = &(&x(0) * &x(1)) - &c(7);
        assert_eq!(p.evaluate_mod(&[2, 4], 5), (8 + 10 - 7) % 5);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..6).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter()
                    .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]).unwrap(), BigInt::from(k))),
                O,
            )
        })
    }

    /// Term-map oracle for multiplication.
    fn oracle_mul(p: &Polynomial, q: &Polynomial) -> BTreeMap<Monomial, BigInt> {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in p.terms() {
            for (m2, c2) in q.terms() {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            let got: BTreeMap<Monomial, BigInt> = (&p * &q).terms().iter().cloned().collect();
            prop_assert_eq!(got, oracle_mul(&p, &q));
        }

        #[test]
        fn terms_sorted_and_nonzero(p in arb_poly(), q in arb_poly()) {
            let s = &p * &q;
            prop_assert!(s.terms().windows(2).all(|w| O.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
            prop_assert!(s.terms().iter().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn render_parse_roundtrip(p in arb_poly()) {
            let back = parse_polynomial(&p.to_string(), &[], O).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in arb_poly(), q in arb_poly(), pt in proptest::collection::vec(-3i64..4, 3)) {
            let ev = |f: &Polynomial| f.evaluate_at(&pt).unwrap();
            prop_assert_eq!(ev(&(&p * &q)), ev(&p) * ev(&q));
            prop_assert_eq!(ev(&(&p + &q)), ev(&p) + ev(&q));
        }
    }
}
