//! Sparse multivariate polynomials over Q.
//!
//! A [`Poly`] lives in `Q[x1, ..., xm]` for a fixed variable count `m`. Terms
//! are kept in a `BTreeMap` keyed by [`Monomial`] under graded lexicographic
//! order and zero coefficients are never stored, so derived equality is
//! mathematical equality.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent vector of a monomial `x1^a1 * ... * xm^am`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponent of x1, x2, ...
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `Q[x1, ..., xm]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// Integer constant, the common case in tests and catalog data.
    pub fn int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The variable `x_{index+1}` (0-based index).
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::VariableIndex {
                index: index + 1,
                nvars,
            });
        }
        Ok(Self::monomial(nvars, Monomial::var(nvars, index), Rational::one()))
    }

    pub fn monomial(nvars: usize, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.0.len(), nvars, "monomial has wrong variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "monomial has wrong variable count");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `x_{index+1}` (0-based).
    pub fn partial_derivative(&self, index: usize) -> Result<Poly> {
        if index >= self.nvars {
            return Err(Error::VariableIndex {
                index: index + 1,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Prints in the same syntax the parser accepts, leading term first:
    /// `3/2*x1^2*x2 - x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || mono.is_one() {
                write_rational(f, &abs)?;
                first = false;
            }
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn xy() -> (Poly, Poly) {
        (Poly::var(2, 0).unwrap(), Poly::var(2, 1).unwrap())
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = xy();
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &x.pow(2) - &y.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_is_additive_identity() {
        let (x, y) = xy();
        let p = &(&x * &y) + &Poly::int(2, 5);
        assert_eq!(&p + &Poly::zero(2), p);
    }

    #[test]
    fn rational_coefficients_multiply_exactly() {
        let (x, _) = xy();
        let a = x.scale(&q(1, 2));
        let b = x.scale(&q(2, 3));
        assert_eq!(&a * &b, x.pow(2).scale(&q(1, 3)));
    }

    #[test]
    fn mismatched_variable_counts_are_rejected() {
        let a = Poly::one(2);
        let b = Poly::one(3);
        assert_eq!(a.checked_add(&b), Err(Error::VariableCount(2, 3)));
        assert_eq!(a.checked_mul(&b), Err(Error::VariableCount(2, 3)));
    }

    #[test]
    fn partial_derivatives() {
        let (x, y) = xy();
        assert_eq!(
            (&x.pow(2) * &y).partial_derivative(0).unwrap(),
            (&x * &y).scale(&q(2, 1))
        );
        assert!(x.pow(2).partial_derivative(1).unwrap().is_zero());
        assert_eq!(x.pow(3).scale(&q(1, 3)).partial_derivative(0).unwrap(), x.pow(2));
        assert_eq!(
            x.partial_derivative(2),
            Err(Error::VariableIndex { index: 3, nvars: 2 })
        );
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let (x, y) = xy();
        let p = &(&x.pow(2) * &y).scale(&q(3, 2)) - &y;
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x2");
        assert_eq!(Poly::zero(0).to_string(), "0");
        assert_eq!(Poly::int(0, -4).to_string(), "-4");
        assert_eq!((&y - &x).to_string(), "-x1 + x2");
    }

    #[test]
    fn no_zero_coefficients_are_stored() {
        let (x, _) = xy();
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).num_terms(), 0);
    }
}
