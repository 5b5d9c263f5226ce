//! The Gerstenhaber bracket on `Lambda_A L` and its generators.
//!
//! Conventions. The bracket has degree -1, restricts to the Lie bracket on
//! `L`, gives `[alpha, a] = alpha(a)` for `a` in `A`, and obeys
//!
//! ```text
//! [u, v ^ w] = [u, v] ^ w + (-1)^((|u|-1)|v|) v ^ [u, w]
//! [u, v]     = -(-1)^((|u|-1)(|v|-1)) [v, u]
//! ```
//!
//! An operator `D` of degree -1 generates the bracket when
//!
//! ```text
//! [u, v] = (-1)^|u| ( D(u ^ v) - D(u) ^ v - (-1)^|u| u ^ D(v) ).
//! ```
//!
//! Every generator comes from a right connection `a o alpha` on `A`, stored
//! through `r_i = 1 o e_i`; the generator is then given on decomposables by
//!
//! ```text
//! D(t_1 ^ ... ^ t_p) = sum_i (-1)^(i-1) (1 o t_i) t_1 ^ ..^t_i^.. ^ t_p
//!                    + sum_{j<k} (-1)^(j+k) [t_j, t_k] ^ t_1 ^ ..^t_j^..^t_k^.. ^ t_p
//! ```
//!
//! with `1 o (b e_i) = b r_i - e_i(b)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Blade, Multivector};
use crate::lie_rinehart::{LElement, LieRinehartAlgebra};
use crate::random::{CheckConfig, Sampler};
use crate::ring::Poly;

/// Gerstenhaber bracket of two multivectors.
pub fn gerstenhaber_bracket(alg: &LieRinehartAlgebra, u: &Multivector, v: &Multivector) -> Result<Multivector> {
    check_multivector(alg, u)?;
    check_multivector(alg, v)?;
    Ok(bracket_unchecked(alg, u, v))
}

pub(crate) fn check_multivector(alg: &LieRinehartAlgebra, u: &Multivector) -> Result<()> {
    if u.rank() != alg.rank() {
        return Err(Error::RankMismatch(alg.rank(), u.rank()));
    }
    if u.nvars() != alg.nvars() {
        return Err(Error::VariableCount(alg.nvars(), u.nvars()));
    }
    Ok(())
}

pub(crate) fn bracket_unchecked(alg: &LieRinehartAlgebra, u: &Multivector, v: &Multivector) -> Multivector {
    let mut out = Multivector::zero(alg.nvars(), alg.rank());
    for (s, a) in u.terms() {
        for (t, b) in v.terms() {
            out = out.add(&bracket_terms(alg, *s, a, *t, b));
        }
    }
    out
}

fn blade_of(indices: &[usize]) -> Blade {
    Blade::from_indices(indices).expect("distinct indices")
}

/// `e_{s_1} ^ ... ^ x ^ ... ^ e_{s_p}` with `x` replacing position `pos`.
fn insert_at(alg: &LieRinehartAlgebra, indices: &[usize], pos: usize, x: &Multivector) -> Multivector {
    let (m, n) = (alg.nvars(), alg.rank());
    let before = Multivector::basis(m, n, blade_of(&indices[..pos]));
    let after = Multivector::basis(m, n, blade_of(&indices[pos + 1..]));
    before.wedge_unchecked(x).wedge_unchecked(&after)
}

/// `[a e_S, e_t] = -( e_t(a) e_S + a sum_i e_{s_1} ^ .. [e_t, e_{s_i}] .. ^ e_{s_p} )`.
fn bracket_with_basis_vector(alg: &LieRinehartAlgebra, s: Blade, a: &Poly, t: usize) -> Multivector {
    let (m, n) = (alg.nvars(), alg.rank());
    let mut out = Multivector::term(m, n, s, alg.basis_anchor_apply(t, a));
    let sidx = s.indices();
    for (pos, &si) in sidx.iter().enumerate() {
        let ad = alg.basis_bracket(t, si);
        if ad.is_zero() {
            continue;
        }
        let inner = insert_at(alg, &sidx, pos, &Multivector::from_element(ad));
        out = out.add(&inner.scale(a));
    }
    out.neg()
}

/// `[a e_S, b e_T]` from the biderivation rules.
fn bracket_terms(alg: &LieRinehartAlgebra, s: Blade, a: &Poly, t: Blade, b: &Poly) -> Multivector {
    let (m, n) = (alg.nvars(), alg.rank());
    let p = s.degree();
    let mut out = Multivector::zero(m, n);

    // [a e_S, b] ^ e_T, where
    // [a e_S, b] = (-1)^(p-1) a sum_i (-1)^(i-1) e_{s_i}(b) e_{S - s_i}
    if p > 0 && !b.is_constant() {
        let mut left = Multivector::zero(m, n);
        for (i, &si) in s.indices().iter().enumerate() {
            let d = alg.basis_anchor_apply(si, b);
            if d.is_zero() {
                continue;
            }
            let term = Multivector::term(m, n, s.without(si), a * &d);
            left = left.add(&term.sign(i));
        }
        out = out.add(&left.sign(p - 1).wedge_unchecked(&Multivector::basis(m, n, t)));
    }

    // b [a e_S, e_T] = b sum_j (-1)^((p-1)(j-1)) e_{t_1} ^ .. [a e_S, e_{t_j}] .. ^ e_{t_q}
    let tidx = t.indices();
    for (j, &tj) in tidx.iter().enumerate() {
        let inner = bracket_with_basis_vector(alg, s, a, tj);
        if inner.is_zero() {
            continue;
        }
        let placed = insert_at(alg, &tidx, j, &inner);
        out = out.add(&placed.scale(b).sign((p + 1) * j));
    }
    out
}

/// Right connection on `A`, stored through `r_i = 1 o e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RightConnection {
    r: Vec<Poly>,
}

impl RightConnection {
    pub fn new(r: Vec<Poly>) -> Self {
        RightConnection { r }
    }

    pub fn zero(alg: &LieRinehartAlgebra) -> Self {
        RightConnection::new(vec![alg.zero_poly(); alg.rank()])
    }

    pub fn values(&self) -> &[Poly] {
        &self.r
    }

    pub(crate) fn check(&self, alg: &LieRinehartAlgebra) -> Result<()> {
        if self.r.len() != alg.rank() {
            return Err(Error::RankMismatch(alg.rank(), self.r.len()));
        }
        if let Some(p) = self.r.iter().find(|p| p.nvars() != alg.nvars()) {
            return Err(Error::VariableCount(alg.nvars(), p.nvars()));
        }
        Ok(())
    }

    /// `a o alpha = a (1 o alpha) - alpha(a)`, with
    /// `1 o (sum b_i e_i) = sum b_i r_i - sum e_i(b_i)`.
    pub fn apply(&self, alg: &LieRinehartAlgebra, a: &Poly, alpha: &LElement) -> Result<Poly> {
        self.check(alg)?;
        alg.check_element(alpha)?;
        alg.check_poly(a)?;
        let one = self.one_circ(alg, alpha);
        Ok(&(a * &one) - &alg.anchor_apply_unchecked(alpha, a))
    }

    pub(crate) fn one_circ(&self, alg: &LieRinehartAlgebra, alpha: &LElement) -> Poly {
        let mut out = alg.zero_poly();
        for (i, b) in alpha.coeffs().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out = &out + &(b * &self.r[i]);
            out = &out - &alg.basis_anchor_apply(i, b);
        }
        out
    }
}

impl fmt::Display for RightConnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.r.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// An `R`-linear operator on `Lambda_A L`.
pub trait MultivectorOperator {
    fn apply(&self, alg: &LieRinehartAlgebra, u: &Multivector) -> Multivector;
}

/// Adapts a closure to [`MultivectorOperator`].
pub struct OperatorFn<F>(pub F);

impl<F> MultivectorOperator for OperatorFn<F>
where
    F: Fn(&LieRinehartAlgebra, &Multivector) -> Multivector,
{
    fn apply(&self, alg: &LieRinehartAlgebra, u: &Multivector) -> Multivector {
        (self.0)(alg, u)
    }
}

/// The generator of the Gerstenhaber bracket determined by a right
/// connection on `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    right: RightConnection,
}

impl Generator {
    pub fn new(right: RightConnection) -> Self {
        Generator { right }
    }

    pub fn right_connection(&self) -> &RightConnection {
        &self.right
    }
}

impl MultivectorOperator for Generator {
    fn apply(&self, alg: &LieRinehartAlgebra, u: &Multivector) -> Multivector {
        apply_unchecked(alg, &self.right, u)
    }
}

/// `D(u)` for the generator `D` of a right connection.
pub fn apply_generator(alg: &LieRinehartAlgebra, d: &Generator, u: &Multivector) -> Result<Multivector> {
    d.right.check(alg)?;
    check_multivector(alg, u)?;
    Ok(apply_unchecked(alg, &d.right, u))
}

fn apply_unchecked(alg: &LieRinehartAlgebra, right: &RightConnection, u: &Multivector) -> Multivector {
    let (m, n) = (alg.nvars(), alg.rank());
    let mut out = Multivector::zero(m, n);
    for (s, a) in u.terms() {
        let idx = s.indices();
        if idx.is_empty() {
            continue;
        }
        let mut factors: Vec<LElement> = idx.iter().map(|&i| alg.basis_element(i)).collect();
        factors[0] = factors[0].scale(a);
        out = out.add(&generator_on_factors(alg, right, &factors));
    }
    out
}

/// Evaluates the explicit generator formula on `t_1 ^ ... ^ t_p` for
/// arbitrary elements `t_i` of `L`.
pub fn generator_on_factors(alg: &LieRinehartAlgebra, right: &RightConnection, factors: &[LElement]) -> Multivector {
    let (m, n) = (alg.nvars(), alg.rank());
    let p = factors.len();
    let mut out = Multivector::zero(m, n);
    let rest = |skip: &[usize]| -> Vec<LElement> {
        factors
            .iter()
            .enumerate()
            .filter(|(k, _)| !skip.contains(k))
            .map(|(_, x)| x.clone())
            .collect()
    };
    for i in 0..p {
        let c = right.one_circ(alg, &factors[i]);
        if c.is_zero() {
            continue;
        }
        let w = Multivector::wedge_of(m, n, &rest(&[i]));
        out = out.add(&w.scale(&c).sign(i));
    }
    for j in 0..p {
        for k in j + 1..p {
            let br = alg.bracket_unchecked(&factors[j], &factors[k]);
            if br.is_zero() {
                continue;
            }
            let w = Multivector::wedge_of(m, n, &rest(&[j, k]));
            let term = Multivector::from_element(&br).wedge_unchecked(&w);
            out = out.add(&term.sign(j + k));
        }
    }
    out
}

/// The failing instance of the generator identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub u: Multivector,
    pub v: Multivector,
    pub bracket: Multivector,
    pub from_generator: Multivector,
}

impl fmt::Display for GeneratorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u = {}, v = {}: [u,v] = {} but generator gives {}",
            self.u, self.v, self.bracket, self.from_generator
        )
    }
}

/// `(-1)^|u| ( D(u ^ v) - D(u) ^ v - (-1)^|u| u ^ D(v) )` for homogeneous `u`.
pub fn bracket_from_operator<D: MultivectorOperator + ?Sized>(
    alg: &LieRinehartAlgebra,
    d: &D,
    u: &Multivector,
    p: usize,
    v: &Multivector,
) -> Multivector {
    let uv = u.wedge_unchecked(v);
    let first = d.apply(alg, &uv);
    let second = d.apply(alg, u).wedge_unchecked(v);
    let third = u.wedge_unchecked(&d.apply(alg, v)).sign(p);
    first.sub(&second).sub(&third).sign(p)
}

/// Checks the generator identity on every pair of basis multivectors with
/// random polynomial coefficients, `trials` times. Returns the first failure.
pub fn is_generator<D: MultivectorOperator + ?Sized>(
    alg: &LieRinehartAlgebra,
    d: &D,
    config: &CheckConfig,
) -> Option<GeneratorWitness> {
    let mut sampler = Sampler::with_stream(alg, *config, 11);
    let blades = Blade::all(alg.rank());
    for _ in 0..config.trials {
        for &s in &blades {
            for &t in &blades {
                let u = sampler.blade_term(s);
                let v = sampler.blade_term(t);
                let bracket = bracket_unchecked(alg, &u, &v);
                let from_generator = bracket_from_operator(alg, d, &u, s.degree(), &v);
                if bracket != from_generator {
                    return Some(GeneratorWitness {
                        u,
                        v,
                        bracket,
                        from_generator,
                    });
                }
            }
        }
    }
    None
}

/// Action of `D o D` on sampled multivectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    /// `(u, D(D(u)))` for every sampled input.
    pub table: Vec<(Multivector, Multivector)>,
    pub is_exact: bool,
}

impl SquareReport {
    /// First input with `D(D(u)) != 0`.
    pub fn witness(&self) -> Option<&(Multivector, Multivector)> {
        self.table.iter().find(|(_, sq)| !sq.is_zero())
    }
}

/// Evaluates `D o D` on every basis multivector with random coefficients.
pub fn generator_square<D: MultivectorOperator + ?Sized>(
    alg: &LieRinehartAlgebra,
    d: &D,
    config: &CheckConfig,
) -> SquareReport {
    let mut sampler = Sampler::with_stream(alg, *config, 12);
    let mut table = Vec::new();
    // The unit-coefficient sweep alone decides exactness when m = 0.
    for blade in Blade::all(alg.rank()) {
        let u = Multivector::basis(alg.nvars(), alg.rank(), blade);
        let sq = d.apply(alg, &d.apply(alg, &u));
        table.push((u, sq));
    }
    for _ in 0..config.trials {
        for blade in Blade::all(alg.rank()) {
            let u = sampler.blade_term(blade);
            let sq = d.apply(alg, &d.apply(alg, &u));
            table.push((u, sq));
        }
    }
    let is_exact = table.iter().all(|(_, sq)| sq.is_zero());
    SquareReport { table, is_exact }
}
