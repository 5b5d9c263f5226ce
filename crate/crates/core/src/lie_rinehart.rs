//! Lie-Rinehart algebras `(A, L)` with `A = Q[x1, ..., xm]` and `L` free of
//! rank `n` on a chosen basis `e1, ..., en`.
//!
//! The algebra is stored as basis data: the anchor `rho(e_i)` as a derivation
//! of `A` and the structure functions `[e_i, e_j] = sum_k c_ij^k e_k`. Brackets
//! of general elements are extended by the Leibniz rule
//!
//! ```text
//! [a e_i, b e_j] = a b [e_i, e_j] + a rho(e_i)(b) e_j - b rho(e_j)(a) e_i
//! ```
//!
//! The axioms (anchor is a bracket homomorphism, Jacobi identity) are the
//! standard ones; [`LieRinehartAlgebra::verify_axioms`] checks them on basis
//! pairs and triples, which suffices by bilinearity and the Leibniz rule.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Derivation, Poly};

/// An element `sum_i a_i e_i` of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LElement {
    nvars: usize,
    coeffs: Vec<Poly>,
}

impl LElement {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        LElement {
            nvars,
            coeffs: vec![Poly::zero(nvars); rank],
        }
    }

    /// The basis element `e_{index+1}` (0-based index).
    pub fn basis(nvars: usize, rank: usize, index: usize) -> Self {
        let mut out = Self::zero(nvars, rank);
        out.coeffs[index] = Poly::one(nvars);
        out
    }

    pub fn new(nvars: usize, coeffs: Vec<Poly>) -> Result<Self> {
        if let Some(p) = coeffs.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::VariableCount(nvars, p.nvars()));
        }
        Ok(LElement { nvars, coeffs })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &LElement) -> LElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        LElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LElement) -> LElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        LElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> LElement {
        LElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, a: &Poly) -> LElement {
        LElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|c| a * c).collect(),
        }
    }

    pub(crate) fn add_scaled(&mut self, index: usize, a: &Poly) {
        self.coeffs[index] = &self.coeffs[index] + a;
    }
}

/// Writes `c1*label1 + c2*label2 ...`, parenthesizing multi-term coefficients.
pub(crate) fn write_combination<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (String, &'a Poly)>,
{
    let mut first = true;
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        let text = c.to_string();
        match (text.as_str(), label.is_empty()) {
            (_, true) => write!(f, "{text}")?,
            ("1", false) => write!(f, "{label}")?,
            ("-1", false) => write!(f, "-{label}")?,
            _ if c.num_terms() == 1 => write!(f, "{text}*{label}")?,
            _ => write!(f, "({text})*{label}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.coeffs.iter().enumerate().map(|(i, c)| (format!("e{}", i + 1), c)),
        )
    }
}

/// A single failed axiom, with 1-based basis indices in its display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `[rho(e_i), rho(e_j)] != rho([e_i, e_j])`; `defect` is the difference.
    AnchorHomomorphism { i: usize, j: usize, defect: Derivation },
    /// Nonzero cyclic sum `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        defect: LElement,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::AnchorHomomorphism { i, j, defect } => write!(
                f,
                "anchor is not a bracket homomorphism on (e{}, e{}): defect {defect}",
                i + 1,
                j + 1
            ),
            AxiomViolation::Jacobi { i, j, k, defect } => write!(
                f,
                "Jacobi identity fails on triple ({}, {}, {}): cyclic sum {defect}",
                i + 1,
                j + 1,
                k + 1
            ),
        }
    }
}

/// Lie-Rinehart algebra on a free module of rank `n` over `Q[x1, ..., xm]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehartAlgebra {
    nvars: usize,
    rank: usize,
    anchor: Vec<Derivation>,
    // Full n x n table; only writable through `with_bracket` with i < j,
    // which fills in the antisymmetric partner.
    brackets: Vec<Vec<LElement>>,
}

impl LieRinehartAlgebra {
    /// An algebra with the given anchor and all structure functions zero.
    pub fn new(nvars: usize, anchor: Vec<Derivation>) -> Result<Self> {
        if let Some(d) = anchor.iter().find(|d| d.nvars() != nvars) {
            return Err(Error::VariableCount(nvars, d.nvars()));
        }
        let rank = anchor.len();
        if rank > crate::exterior::MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        Ok(LieRinehartAlgebra {
            nvars,
            rank,
            anchor,
            brackets: vec![vec![LElement::zero(nvars, rank); rank]; rank],
        })
    }

    /// Abelian algebra with zero anchor.
    pub fn abelian(nvars: usize, rank: usize) -> Result<Self> {
        Self::new(nvars, vec![Derivation::zero(nvars); rank])
    }

    /// `(A, Der A)` for `A = Q[x1, ..., xm]`, basis `d/dx1, ..., d/dxm`.
    pub fn coordinate(nvars: usize) -> Self {
        let anchor = (0..nvars)
            .map(|i| Derivation::partial(nvars, i).expect("in range"))
            .collect();
        Self::new(nvars, anchor).expect("consistent dimensions")
    }

    /// Sets `[e_i, e_j] = value` (0-based, `i < j`); `[e_j, e_i]` becomes
    /// `-value`.
    pub fn with_bracket(mut self, i: usize, j: usize, value: LElement) -> Result<Self> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i >= j {
            return Err(Error::BracketIndexOrder(i + 1, j + 1));
        }
        self.check_element(&value)?;
        self.brackets[j][i] = value.neg();
        self.brackets[i][j] = value;
        Ok(self)
    }

    /// Sets a single structure function `c_ij^k` (0-based, `i < j`).
    pub fn with_structure(self, i: usize, j: usize, k: usize, value: Poly) -> Result<Self> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_index(k)?;
        if i >= j {
            return Err(Error::BracketIndexOrder(i + 1, j + 1));
        }
        self.check_poly(&value)?;
        let mut b = self.brackets[i][j].clone();
        b.coeffs[k] = value;
        self.with_bracket(i, j, b)
    }

    /// The cotangent Lie-Rinehart algebra of a bivector `pi` on
    /// `Q[x1, ..., xm]`: basis `dx_i`, anchor `dx_i -> sum_j pi_ij d/dx_j`,
    /// bracket `[dx_i, dx_j] = d(pi_ij)`.
    ///
    /// The result satisfies the axioms exactly when `pi` is Poisson; run
    /// [`verify_axioms`](Self::verify_axioms) to find out.
    pub fn poisson_cotangent(pi: &[Vec<Poly>]) -> Result<Self> {
        let m = pi.len();
        for row in pi {
            if row.len() != m {
                return Err(Error::VariableCount(m, row.len()));
            }
            if let Some(p) = row.iter().find(|p| p.nvars() != m) {
                return Err(Error::VariableCount(m, p.nvars()));
            }
        }
        for i in 0..m {
            for j in i..m {
                if pi[i][j] != -&pi[j][i] {
                    return Err(Error::NotAntisymmetric(i + 1, j + 1));
                }
            }
        }
        let anchor = pi
            .iter()
            .map(|row| Derivation::new(m, row.clone()))
            .collect::<Result<Vec<_>>>()?;
        let mut alg = Self::new(m, anchor)?;
        for i in 0..m {
            for j in i + 1..m {
                let coeffs = (0..m)
                    .map(|k| pi[i][j].partial_derivative(k))
                    .collect::<Result<Vec<_>>>()?;
                alg = alg.with_bracket(i, j, LElement::new(m, coeffs)?)?;
            }
        }
        Ok(alg)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `rho(e_i)`.
    pub fn anchor(&self, i: usize) -> &Derivation {
        &self.anchor[i]
    }

    /// `[e_i, e_j]` for any `i, j`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &LElement {
        &self.brackets[i][j]
    }

    /// `c_ij^k`.
    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.brackets[i][j].coeffs[k]
    }

    /// Trace of `ad(e_i)`: `sum_j c_ij^j`. This is the coefficient of the Lie
    /// derivative `lambda_{e_i}` on `e1 ^ ... ^ en`.
    pub fn ad_trace(&self, i: usize) -> Poly {
        let mut t = Poly::zero(self.nvars);
        for j in 0..self.rank {
            t = &t + self.structure(i, j, j);
        }
        t
    }

    pub fn zero_element(&self) -> LElement {
        LElement::zero(self.nvars, self.rank)
    }

    pub fn basis_element(&self, i: usize) -> LElement {
        LElement::basis(self.nvars, self.rank, i)
    }

    pub fn zero_poly(&self) -> Poly {
        Poly::zero(self.nvars)
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank {
            return Err(Error::BasisIndex {
                index: i + 1,
                rank: self.rank,
            });
        }
        Ok(())
    }

    pub(crate) fn check_poly(&self, a: &Poly) -> Result<()> {
        if a.nvars() != self.nvars {
            return Err(Error::VariableCount(self.nvars, a.nvars()));
        }
        Ok(())
    }

    pub(crate) fn check_element(&self, x: &LElement) -> Result<()> {
        if x.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, x.rank()));
        }
        if x.nvars() != self.nvars {
            return Err(Error::VariableCount(self.nvars, x.nvars()));
        }
        Ok(())
    }

    /// `rho(alpha) = sum_i a_i rho(e_i)` as a derivation of `A`.
    pub fn anchor_of(&self, alpha: &LElement) -> Result<Derivation> {
        self.check_element(alpha)?;
        let mut d = Derivation::zero(self.nvars);
        for (a, rho) in alpha.coeffs.iter().zip(&self.anchor) {
            if !a.is_zero() {
                d = d.add(&rho.scale(a))?;
            }
        }
        Ok(d)
    }

    /// `alpha(a) = sum_i alpha_i rho(e_i)(a)`.
    pub fn anchor_apply(&self, alpha: &LElement, a: &Poly) -> Result<Poly> {
        self.check_element(alpha)?;
        self.check_poly(a)?;
        Ok(self.anchor_apply_unchecked(alpha, a))
    }

    pub(crate) fn anchor_apply_unchecked(&self, alpha: &LElement, a: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if a.is_constant() {
            return out;
        }
        for (c, rho) in alpha.coeffs.iter().zip(&self.anchor) {
            if c.is_zero() {
                continue;
            }
            let v = rho.apply_unchecked(a);
            if !v.is_zero() {
                out = &out + &(c * &v);
            }
        }
        out
    }

    /// `rho(e_i)(a)`.
    pub(crate) fn basis_anchor_apply(&self, i: usize, a: &Poly) -> Poly {
        self.anchor[i].apply_unchecked(a)
    }

    /// Lie bracket of general elements, by the Leibniz extension.
    pub fn bracket(&self, alpha: &LElement, beta: &LElement) -> Result<LElement> {
        self.check_element(alpha)?;
        self.check_element(beta)?;
        Ok(self.bracket_unchecked(alpha, beta))
    }

    pub(crate) fn bracket_unchecked(&self, alpha: &LElement, beta: &LElement) -> LElement {
        let n = self.rank;
        let mut out = self.zero_element();
        for i in 0..n {
            let a = &alpha.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                let b = &beta.coeffs[j];
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.brackets[i][j].coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        out.add_scaled(k, &(&ab * c));
                    }
                }
            }
        }
        for j in 0..n {
            let t = self.anchor_apply_unchecked(alpha, &beta.coeffs[j]);
            out.add_scaled(j, &t);
        }
        for i in 0..n {
            let t = self.anchor_apply_unchecked(beta, &alpha.coeffs[i]);
            out.add_scaled(i, &-t);
        }
        out
    }

    /// Checks the anchor homomorphism property on all basis pairs and the
    /// Jacobi identity on all basis triples. An empty list means the data
    /// define a Lie-Rinehart algebra.
    pub fn verify_axioms(&self) -> Vec<AxiomViolation> {
        let n = self.rank;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.anchor[i]
                    .commutator(&self.anchor[j])
                    .expect("consistent dimensions");
                let rhs = self.anchor_of(&self.brackets[i][j]).expect("consistent dimensions");
                let defect = lhs.add(&rhs.scale(&Poly::int(self.nvars, -1))).expect("dims");
                if !defect.is_zero() {
                    violations.push(AxiomViolation::AnchorHomomorphism { i, j, defect });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let defect =
                        self.jacobiator(&self.basis_element(i), &self.basis_element(j), &self.basis_element(k));
                    if !defect.is_zero() {
                        violations.push(AxiomViolation::Jacobi { i, j, k, defect });
                    }
                }
            }
        }
        violations
    }

    /// Cyclic sum `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobiator(&self, x: &LElement, y: &LElement, z: &LElement) -> LElement {
        let b = |u: &LElement, v: &LElement| self.bracket_unchecked(u, v);
        b(x, &b(y, z)).add(&b(y, &b(z, x))).add(&b(z, &b(x, y)))
    }
}
