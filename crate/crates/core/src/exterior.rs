//! The exterior algebra `Lambda_A L` of a free module, its top power, and
//! `A`-valued alternating forms with values in the top power.
//!
//! Basis multivectors `e_S = e_{s1} ^ ... ^ e_{sp}` (with `s1 < ... < sp`) are
//! indexed by [`Blade`], a bit set over `{1, ..., n}`. Everything is stored in
//! normal form: strictly increasing index sets, signs absorbed into the
//! coefficient, no zero coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lie_rinehart::{write_combination, LElement};
use crate::ring::Poly;

/// Largest supported rank `n`.
pub const MAX_RANK: usize = 24;

/// A strictly increasing index set `S` naming the basis multivector `e_S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    /// `{1, ..., n}`.
    pub fn full(rank: usize) -> Blade {
        Blade(((1u64 << rank) - 1) as u32)
    }

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    /// Builds a blade from distinct 0-based indices in any order.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut bits = 0u32;
        for &i in indices {
            if i >= MAX_RANK || bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(Blade(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// 0-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(self, rank: usize) -> Blade {
        Blade(Blade::full(rank).0 & !self.0)
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    pub fn with(self, i: usize) -> Blade {
        Blade(self.0 | (1 << i))
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn is_disjoint(self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    /// Sign of `e_S ^ e_T = sign * e_{S u T}`, or `None` when `S` and `T`
    /// overlap. The sign counts pairs `s in S`, `t in T` with `s > t`.
    pub fn wedge_sign(self, other: Blade) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        let mut inversions = 0u32;
        let mut t = other.0;
        while t != 0 {
            let low = t.trailing_zeros();
            // bits of S strictly above position `low`
            let above = if low >= 31 { 0 } else { self.0 >> (low + 1) };
            inversions += above.count_ones();
            t &= t - 1;
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    /// All blades of degree `p` in `{1, ..., n}`, in increasing order.
    pub fn all_of_degree(rank: usize, p: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0..(1u32 << rank)).map(Blade).filter(|b| b.degree() == p).collect();
        out.sort();
        out
    }

    /// All `2^n` blades ordered by degree, then lexicographically.
    pub fn all(rank: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0..(1u32 << rank)).map(Blade).collect();
        out.sort();
        out
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "e{{{}}}", labels.join(","))
    }
}

/// Sign of the permutation that sorts `seq` (distinct entries).
pub(crate) fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(p: &Poly, sign: i32) -> Poly {
    if sign > 0 {
        p.clone()
    } else {
        -p
    }
}

/// An element of `Lambda_A L`, possibly of mixed degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    nvars: usize,
    rank: usize,
    terms: BTreeMap<Blade, Poly>,
}

impl Multivector {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        Multivector {
            nvars,
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * e_S`.
    pub fn term(nvars: usize, rank: usize, blade: Blade, coeff: Poly) -> Self {
        assert!(blade.0 >> rank == 0, "blade outside rank");
        let mut out = Self::zero(nvars, rank);
        out.add_term(blade, coeff);
        out
    }

    pub fn basis(nvars: usize, rank: usize, blade: Blade) -> Self {
        Self::term(nvars, rank, blade, Poly::one(nvars))
    }

    /// Degree-0 element `a`.
    pub fn scalar(rank: usize, a: Poly) -> Self {
        Self::term(a.nvars(), rank, Blade::EMPTY, a)
    }

    pub fn from_element(x: &LElement) -> Self {
        let mut out = Self::zero(x.nvars(), x.rank());
        for (i, c) in x.coeffs().iter().enumerate() {
            out.add_term(Blade::single(i), c.clone());
        }
        out
    }

    /// `x_1 ^ x_2 ^ ... ^ x_k`; the empty product is `1`.
    pub fn wedge_of(nvars: usize, rank: usize, factors: &[LElement]) -> Self {
        let mut out = Self::scalar(rank, Poly::one(nvars));
        for x in factors {
            out = out.wedge_unchecked(&Self::from_element(x));
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: Blade) -> Poly {
        self.terms
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Coefficient of `e1 ^ ... ^ en`.
    pub fn top_coefficient(&self) -> Poly {
        self.coefficient(Blade::full(self.rank))
    }

    /// Degree-0 component.
    pub fn scalar_part(&self) -> Poly {
        self.coefficient(Blade::EMPTY)
    }

    /// Degree-1 component as an element of `L`.
    pub fn vector_part(&self) -> LElement {
        let coeffs = (0..self.rank).map(|i| self.coefficient(Blade::single(i))).collect();
        LElement::new(self.nvars, coeffs).expect("consistent dimensions")
    }

    pub fn add_term(&mut self, blade: Blade, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same(&self, other: &Multivector) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableCount(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        Multivector {
            nvars: self.nvars,
            rank: self.rank,
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }

    pub fn scale(&self, a: &Poly) -> Multivector {
        let mut out = Self::zero(self.nvars, self.rank);
        for (b, c) in &self.terms {
            out.add_term(*b, a * c);
        }
        out
    }

    /// Multiplies by `(-1)^k`.
    pub fn sign(&self, k: usize) -> Multivector {
        if k.is_multiple_of(2) {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Exterior product with Koszul signs.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Multivector) -> Multivector {
        let mut out = Self::zero(self.nvars, self.rank);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if let Some(sign) = s.wedge_sign(*t) {
                    out.add_term(s.union(*t), signed(&(a * b), sign));
                }
            }
        }
        out
    }

    /// Distinct degrees of the nonzero terms, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|b| b.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The zero multivector counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, p: usize) -> bool {
        self.terms.keys().all(|b| b.degree() == p)
    }

    pub fn homogeneous_part(&self, p: usize) -> Multivector {
        Multivector {
            nvars: self.nvars,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == p)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.terms.iter().map(|(b, c)| {
                let label = if *b == Blade::EMPTY {
                    String::new()
                } else {
                    b.to_string()
                };
                (label, c)
            }),
        )
    }
}

/// An element `a * e1 ^ ... ^ en` of the top exterior power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TopElement {
    pub coefficient: Poly,
}

impl TopElement {
    pub fn new(coefficient: Poly) -> Self {
        TopElement { coefficient }
    }
}

impl fmt::Display for TopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*vol", self.coefficient)
    }
}

/// An alternating `A`-multilinear form of degree `q` on `L` with values in
/// the top power, stored by its values on increasing basis tuples (as
/// multiples of `e1 ^ ... ^ en`).
///
/// Forms of degree above `n` are allowed and always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltForm {
    nvars: usize,
    rank: usize,
    degree: usize,
    values: BTreeMap<Blade, Poly>,
}

impl AltForm {
    pub fn zero(nvars: usize, rank: usize, degree: usize) -> Self {
        AltForm {
            nvars,
            rank,
            degree,
            values: BTreeMap::new(),
        }
    }

    /// Sets the value on the increasing tuple `blade`.
    pub fn set(&mut self, blade: Blade, value: Poly) -> Result<()> {
        if blade.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: blade.degree(),
            });
        }
        if blade.0 >> self.rank != 0 {
            return Err(Error::RankMismatch(self.rank, 32 - blade.0.leading_zeros() as usize));
        }
        if value.is_zero() {
            self.values.remove(&blade);
        } else {
            self.values.insert(blade, value);
        }
        Ok(())
    }

    pub fn with_value(mut self, blade: Blade, value: Poly) -> Result<Self> {
        self.set(blade, value)?;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.values.iter()
    }

    pub fn value(&self, blade: Blade) -> Poly {
        self.values
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Value on basis arguments `(e_{i1}, ..., e_{iq})` in any order.
    pub fn value_on_indices(&self, indices: &[usize]) -> Poly {
        match Blade::from_indices(indices) {
            Some(b) if indices.len() == self.degree => signed(&self.value(b), permutation_sign(indices)),
            _ => Poly::zero(self.nvars),
        }
    }

    /// Value on general arguments, by multilinear expansion.
    pub fn evaluate(&self, args: &[LElement]) -> Result<TopElement> {
        if args.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: args.len(),
            });
        }
        for x in args {
            if x.rank() != self.rank {
                return Err(Error::RankMismatch(self.rank, x.rank()));
            }
            if x.nvars() != self.nvars {
                return Err(Error::VariableCount(self.nvars, x.nvars()));
            }
        }
        Ok(TopElement::new(self.evaluate_unchecked(args)))
    }

    pub(crate) fn evaluate_unchecked(&self, args: &[LElement]) -> Poly {
        let mut acc = Poly::zero(self.nvars);
        let mut chosen = Vec::with_capacity(args.len());
        self.expand(args, &mut chosen, Poly::one(self.nvars), &mut acc);
        acc
    }

    fn expand(&self, args: &[LElement], chosen: &mut Vec<usize>, weight: Poly, acc: &mut Poly) {
        let pos = chosen.len();
        if pos == args.len() {
            let v = self.value_on_indices(chosen);
            if !v.is_zero() {
                *acc = &*acc + &(&weight * &v);
            }
            return;
        }
        for (i, c) in args[pos].coeffs().iter().enumerate() {
            if c.is_zero() || chosen.contains(&i) {
                continue;
            }
            chosen.push(i);
            self.expand(args, chosen, &weight * c, acc);
            chosen.pop();
        }
    }

    pub fn add(&self, other: &AltForm) -> AltForm {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (b, v) in &other.values {
            let s = &out.value(*b) + v;
            out.set(*b, s).expect("same degree");
        }
        out
    }

    pub fn neg(&self) -> AltForm {
        AltForm {
            values: self.values.iter().map(|(b, v)| (*b, -v)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, a: &Poly) -> AltForm {
        let mut out = AltForm::zero(self.nvars, self.rank, self.degree);
        for (b, v) in &self.values {
            out.set(*b, a * v).expect("same degree");
        }
        out
    }
}

impl fmt::Display for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "form[{}]{{", self.degree)?;
        for (k, (b, v)) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let labels: Vec<String> = b.indices().iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({}) -> {v}", labels.join(","))?;
        }
        write!(f, "}}")
    }
}

/// The single degree shared by all terms; `None` for mixed degrees.
fn homogeneous_degree(u: &Multivector) -> std::result::Result<Option<usize>, ()> {
    match u.degrees()[..] {
        [] => Ok(None),
        [p] => Ok(Some(p)),
        _ => Err(()),
    }
}

/// The canonical pairing `Lambda^p L x Lambda^{n-p} L -> Lambda^n L`.
pub fn top_pairing(u: &Multivector, v: &Multivector) -> Result<TopElement> {
    u.check_same(v)?;
    let n = u.rank;
    let p = homogeneous_degree(u).map_err(|_| Error::Inhomogeneous(u.degrees()[0]))?;
    let q = homogeneous_degree(v).map_err(|_| Error::Inhomogeneous(v.degrees()[0]))?;
    if let (Some(p), Some(q)) = (p, q) {
        if p + q != n {
            return Err(Error::DegreeMismatch {
                expected: n - p.min(n),
                found: q,
            });
        }
    }
    Ok(TopElement::new(u.wedge_unchecked(v).top_coefficient()))
}

/// `phi_alpha = alpha ^ (-)`, the form of degree `n - p` adjoint to a
/// homogeneous multivector of degree `p`.
pub fn phi_iso(alpha: &Multivector, p: usize) -> Result<AltForm> {
    let n = alpha.rank;
    if p > n {
        return Err(Error::DegreeMismatch { expected: n, found: p });
    }
    if !alpha.is_homogeneous_of(p) {
        return Err(Error::Inhomogeneous(p));
    }
    let mut form = AltForm::zero(alpha.nvars, n, n - p);
    for (s, a) in &alpha.terms {
        let t = s.complement(n);
        let sign = s.wedge_sign(t).expect("disjoint");
        form.set(t, signed(a, sign))?;
    }
    Ok(form)
}

/// Inverse of [`phi_iso`]: the unique multivector of degree `n - q` whose
/// adjoint form is `f`.
pub fn phi_inverse(f: &AltForm) -> Result<Multivector> {
    let n = f.rank;
    if f.degree > n {
        if f.is_zero() {
            return Ok(Multivector::zero(f.nvars, n));
        }
        return Err(Error::DegreeMismatch {
            expected: n,
            found: f.degree,
        });
    }
    let mut out = Multivector::zero(f.nvars, n);
    for (t, v) in &f.values {
        let s = t.complement(n);
        let sign = s.wedge_sign(*t).expect("disjoint");
        out.add_term(s, signed(v, sign));
    }
    Ok(out)
}
