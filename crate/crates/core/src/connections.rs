//! Connections on `L` and on the top exterior power `Lambda^n L`.
//!
//! A [`LeftConnection`] on `L` is given by Christoffel functions
//! `nabla_{e_i} e_j = sum_k G_ij^k e_k`, a [`TopConnection`] by
//! `nabla_{e_i} vol = gamma_i vol` where `vol = e1 ^ ... ^ en`. Both are
//! extended to general arguments by `A`-linearity in the direction and the
//! Leibniz rule over the anchor in the argument.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{AltForm, Blade, Multivector, TopElement};
use crate::lie_rinehart::{LElement, LieRinehartAlgebra};
use crate::ring::Poly;

/// Connection on `L`: `table[i][j][k]` is the coefficient of `e_k` in
/// `nabla_{e_i} e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftConnection {
    table: Vec<Vec<Vec<Poly>>>,
}

impl LeftConnection {
    pub fn new(table: Vec<Vec<Vec<Poly>>>) -> Self {
        LeftConnection { table }
    }

    pub fn zero(alg: &LieRinehartAlgebra) -> Self {
        let n = alg.rank();
        LeftConnection::new(vec![vec![vec![alg.zero_poly(); n]; n]; n])
    }

    /// `G_ij^k = c_ij^k / 2`, torsion free on any algebra.
    pub fn half_structure(alg: &LieRinehartAlgebra) -> Self {
        let n = alg.rank();
        let half = crate::ring::rational(1, 2);
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| alg.structure(i, j, k).scale(&half)).collect())
                    .collect()
            })
            .collect();
        LeftConnection::new(table)
    }

    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.table[i][j][k]
    }

    pub fn table(&self) -> &[Vec<Vec<Poly>>] {
        &self.table
    }

    pub(crate) fn check(&self, alg: &LieRinehartAlgebra) -> Result<()> {
        let n = alg.rank();
        if self.table.len() != n
            || self
                .table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|c| c.len() != n))
        {
            return Err(Error::RankMismatch(n, self.table.len()));
        }
        for p in self.table.iter().flatten().flatten() {
            alg.check_poly(p)?;
        }
        Ok(())
    }

    /// `nabla_{e_i} e_j`.
    pub fn on_basis(&self, alg: &LieRinehartAlgebra, i: usize, j: usize) -> LElement {
        LElement::new(alg.nvars(), self.table[i][j].clone()).expect("dimensions")
    }

    /// `nabla_alpha xi = sum_i a_i ( sum_j e_i(b_j) e_j + b_j nabla_{e_i} e_j )`.
    pub fn apply(&self, alg: &LieRinehartAlgebra, alpha: &LElement, xi: &LElement) -> Result<LElement> {
        self.check(alg)?;
        alg.check_element(alpha)?;
        alg.check_element(xi)?;
        Ok(self.apply_unchecked(alg, alpha, xi))
    }

    pub(crate) fn apply_unchecked(&self, alg: &LieRinehartAlgebra, alpha: &LElement, xi: &LElement) -> LElement {
        let n = alg.rank();
        let mut out = alg.zero_element();
        for j in 0..n {
            out.add_scaled(j, &alg.anchor_apply_unchecked(alpha, xi.coeff(j)));
        }
        for i in 0..n {
            let a = alpha.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                let b = xi.coeff(j);
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for k in 0..n {
                    let g = &self.table[i][j][k];
                    if !g.is_zero() {
                        out.add_scaled(k, &(&ab * g));
                    }
                }
            }
        }
        out
    }
}

/// Connection on `Lambda^n L`: `nabla_{e_i} vol = gamma_i vol`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TopConnection {
    gamma: Vec<Poly>,
}

impl TopConnection {
    pub fn new(gamma: Vec<Poly>) -> Self {
        TopConnection { gamma }
    }

    pub fn zero(alg: &LieRinehartAlgebra) -> Self {
        TopConnection::new(vec![alg.zero_poly(); alg.rank()])
    }

    pub fn gamma(&self) -> &[Poly] {
        &self.gamma
    }

    pub(crate) fn check(&self, alg: &LieRinehartAlgebra) -> Result<()> {
        if self.gamma.len() != alg.rank() {
            return Err(Error::RankMismatch(alg.rank(), self.gamma.len()));
        }
        for p in &self.gamma {
            alg.check_poly(p)?;
        }
        Ok(())
    }

    /// `sum_i a_i gamma_i` for `alpha = sum_i a_i e_i`.
    fn pair(&self, alpha: &LElement) -> Poly {
        let mut out = Poly::zero(alpha.nvars());
        for (a, g) in alpha.coeffs().iter().zip(&self.gamma) {
            if !a.is_zero() && !g.is_zero() {
                out = &out + &(a * g);
            }
        }
        out
    }
}

impl fmt::Display for TopConnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gamma.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// An `A`-linear endomorphism of `L`; `matrix[k][j]` is the coefficient of
/// `e_k` in the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    matrix: Vec<Vec<Poly>>,
}

impl Endomorphism {
    pub fn new(matrix: Vec<Vec<Poly>>) -> Self {
        Endomorphism { matrix }
    }

    pub fn identity(nvars: usize, rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|k| {
                (0..rank)
                    .map(|j| if j == k { Poly::one(nvars) } else { Poly::zero(nvars) })
                    .collect()
            })
            .collect();
        Endomorphism { matrix }
    }

    pub fn entry(&self, k: usize, j: usize) -> &Poly {
        &self.matrix[k][j]
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    /// Image of the basis vector `e_j`.
    pub fn column(&self, nvars: usize, j: usize) -> LElement {
        LElement::new(nvars, self.matrix.iter().map(|row| row[j].clone()).collect()).expect("dimensions")
    }

    pub fn apply(&self, xi: &LElement) -> LElement {
        let n = self.matrix.len();
        let mut out = LElement::zero(xi.nvars(), n);
        for j in 0..n {
            let b = xi.coeff(j);
            if b.is_zero() {
                continue;
            }
            for k in 0..n {
                let m = &self.matrix[k][j];
                if !m.is_zero() {
                    out.add_scaled(k, &(b * m));
                }
            }
        }
        out
    }
}

pub fn trace_endo(e: &Endomorphism) -> Poly {
    let n = e.matrix.len();
    let nvars = e.matrix.first().and_then(|r| r.first()).map_or(0, Poly::nvars);
    (0..n).fold(Poly::zero(nvars), |acc, i| &acc + &e.matrix[i][i])
}

/// Lie derivative on the top power,
/// `lambda_alpha(xi_1 ^ ... ^ xi_n) = sum_j xi_1 ^ .. [alpha, xi_j] .. ^ xi_n`,
/// evaluated with `xi_1 = b e_1` and `xi_j = e_j` otherwise.
pub fn lie_derivative_top(alg: &LieRinehartAlgebra, alpha: &LElement, x: &TopElement) -> Result<TopElement> {
    alg.check_element(alpha)?;
    alg.check_poly(&x.coefficient)?;
    Ok(TopElement::new(lie_derivative_unchecked(alg, alpha, &x.coefficient)))
}

fn lie_derivative_unchecked(alg: &LieRinehartAlgebra, alpha: &LElement, b: &Poly) -> Poly {
    let (m, n) = (alg.nvars(), alg.rank());
    if n == 0 {
        return Poly::zero(m);
    }
    let mut xs: Vec<LElement> = (0..n).map(|i| alg.basis_element(i)).collect();
    xs[0] = xs[0].scale(b);
    let mut out = Poly::zero(m);
    for j in 0..n {
        let mut ys = xs.clone();
        ys[j] = alg.bracket_unchecked(alpha, &xs[j]);
        out = &out + &Multivector::wedge_of(m, n, &ys).top_coefficient();
    }
    out
}

/// `nabla_alpha (b vol) = alpha(b) vol + b (sum_i a_i gamma_i) vol`.
pub fn connection_apply_top(
    alg: &LieRinehartAlgebra,
    nabla: &TopConnection,
    alpha: &LElement,
    x: &TopElement,
) -> Result<TopElement> {
    nabla.check(alg)?;
    alg.check_element(alpha)?;
    alg.check_poly(&x.coefficient)?;
    Ok(TopElement::new(connection_top_unchecked(
        alg,
        nabla,
        alpha,
        &x.coefficient,
    )))
}

fn connection_top_unchecked(alg: &LieRinehartAlgebra, nabla: &TopConnection, alpha: &LElement, b: &Poly) -> Poly {
    &alg.anchor_apply_unchecked(alpha, b) + &(b * &nabla.pair(alpha))
}

/// `T[i][j] = nabla_{e_i} e_j - nabla_{e_j} e_i - [e_i, e_j]`.
pub fn torsion(alg: &LieRinehartAlgebra, nabla: &LeftConnection) -> Result<Vec<Vec<LElement>>> {
    nabla.check(alg)?;
    let n = alg.rank();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    nabla
                        .on_basis(alg, i, j)
                        .sub(&nabla.on_basis(alg, j, i))
                        .sub(alg.basis_bracket(i, j))
                })
                .collect()
        })
        .collect())
}

/// `T(alpha, beta)` for general arguments, computed from the definition.
pub fn torsion_apply(
    alg: &LieRinehartAlgebra,
    nabla: &LeftConnection,
    alpha: &LElement,
    beta: &LElement,
) -> Result<LElement> {
    Ok(nabla
        .apply(alg, alpha, beta)?
        .sub(&nabla.apply_unchecked(alg, beta, alpha))
        .sub(&alg.bracket_unchecked(alpha, beta)))
}

pub fn is_torsion_free(alg: &LieRinehartAlgebra, nabla: &LeftConnection) -> Result<bool> {
    Ok(torsion(alg, nabla)?.iter().flatten().all(LElement::is_zero))
}

/// `R[i][j] = e_i(gamma_j) - e_j(gamma_i) - sum_k c_ij^k gamma_k`.
pub fn curvature_top(alg: &LieRinehartAlgebra, nabla: &TopConnection) -> Result<Vec<Vec<Poly>>> {
    nabla.check(alg)?;
    let n = alg.rank();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut r =
                        &alg.basis_anchor_apply(i, &nabla.gamma[j]) - &alg.basis_anchor_apply(j, &nabla.gamma[i]);
                    for k in 0..n {
                        r = &r - &(alg.structure(i, j, k) * &nabla.gamma[k]);
                    }
                    r
                })
                .collect()
        })
        .collect())
}

pub fn is_flat(alg: &LieRinehartAlgebra, nabla: &TopConnection) -> Result<bool> {
    Ok(curvature_top(alg, nabla)?.iter().flatten().all(Poly::is_zero))
}

/// `nabla_alpha nabla_beta x - nabla_beta nabla_alpha x - nabla_[alpha,beta] x`,
/// computed from the definition rather than the curvature table.
pub fn curvature_apply(
    alg: &LieRinehartAlgebra,
    nabla: &TopConnection,
    alpha: &LElement,
    beta: &LElement,
    x: &TopElement,
) -> Result<TopElement> {
    let nb = connection_apply_top(alg, nabla, beta, x)?;
    let na = connection_apply_top(alg, nabla, alpha, x)?;
    let ab = connection_apply_top(alg, nabla, alpha, &nb)?;
    let ba = connection_apply_top(alg, nabla, beta, &na)?;
    let br = alg.bracket_unchecked(alpha, beta);
    let c = connection_apply_top(alg, nabla, &br, x)?;
    Ok(TopElement::new(&(&ab.coefficient - &ba.coefficient) - &c.coefficient))
}

/// Covariant derivative of a top-power valued form of degree `n - p`, with
/// arguments numbered `xi_p, ..., xi_n`:
///
/// ```text
/// (d f)(xi_p..xi_n) = sum_{p<=j<=n} (-1)^(j-1) nabla_{xi_j} f(..xi_j^..)
///     + (-1)^(p+1) sum_{p<=j<k<=n} (-1)^(j+k) f([xi_j, xi_k], ..xi_j^..xi_k^..)
/// ```
///
/// Forms whose derivative would exceed degree `n` map to the zero form.
pub fn covariant_derivative(alg: &LieRinehartAlgebra, nabla: &TopConnection, f: &AltForm) -> Result<AltForm> {
    nabla.check(alg)?;
    if f.rank() != alg.rank() {
        return Err(Error::RankMismatch(alg.rank(), f.rank()));
    }
    if f.nvars() != alg.nvars() {
        return Err(Error::VariableCount(alg.nvars(), f.nvars()));
    }
    let (m, n) = (alg.nvars(), alg.rank());
    let q = f.degree();
    let mut out = AltForm::zero(m, n, q + 1);
    if q + 1 > n {
        return Ok(out);
    }
    let p = n - q;
    for blade in Blade::all_of_degree(n, q + 1) {
        let args = blade.indices();
        let mut value = Poly::zero(m);
        // positions 0..=q correspond to xi_p .. xi_n, i.e. j = p + pos
        for (pos, &t) in args.iter().enumerate() {
            let j = p + pos;
            let rest: Vec<usize> = args
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != pos)
                .map(|(_, &a)| a)
                .collect();
            let inner = f.value_on_indices(&rest);
            let term = connection_top_unchecked(alg, nabla, &alg.basis_element(t), &inner);
            value = if (j - 1).is_multiple_of(2) {
                &value + &term
            } else {
                &value - &term
            };
        }
        for a in 0..args.len() {
            for b in a + 1..args.len() {
                let (j, k) = (p + a, p + b);
                let br = alg.basis_bracket(args[a], args[b]);
                if br.is_zero() {
                    continue;
                }
                let mut fargs = vec![br.clone()];
                fargs.extend(
                    args.iter()
                        .enumerate()
                        .filter(|&(o, _)| o != a && o != b)
                        .map(|(_, &i)| alg.basis_element(i)),
                );
                let term = f.evaluate_unchecked(&fargs);
                value = if (p + 1 + j + k).is_multiple_of(2) {
                    &value + &term
                } else {
                    &value - &term
                };
            }
        }
        out.set(blade, value)?;
    }
    Ok(out)
}

/// `Phi_alpha(xi) = [alpha, xi] - nabla_alpha xi` for general `xi`.
pub fn phi_map_apply(
    alg: &LieRinehartAlgebra,
    nabla: &LeftConnection,
    alpha: &LElement,
    xi: &LElement,
) -> Result<LElement> {
    Ok(alg.bracket(alpha, xi)?.sub(&nabla.apply(alg, alpha, xi)?))
}

/// Matrix of `Phi_alpha` on the basis.
pub fn phi_map(alg: &LieRinehartAlgebra, nabla: &LeftConnection, alpha: &LElement) -> Result<Endomorphism> {
    nabla.check(alg)?;
    alg.check_element(alpha)?;
    let n = alg.rank();
    let columns: Vec<LElement> = (0..n)
        .map(|j| {
            let ej = alg.basis_element(j);
            alg.bracket_unchecked(alpha, &ej)
                .sub(&nabla.apply_unchecked(alg, alpha, &ej))
        })
        .collect();
    let matrix = (0..n)
        .map(|k| (0..n).map(|j| columns[j].coeff(k).clone()).collect())
        .collect();
    Ok(Endomorphism::new(matrix))
}

/// `gamma_i = sum_k G_ik^k`: the connection induced on `Lambda^n L`.
pub fn induced_top_connection(alg: &LieRinehartAlgebra, nabla: &LeftConnection) -> Result<TopConnection> {
    nabla.check(alg)?;
    let n = alg.rank();
    Ok(TopConnection::new(
        (0..n)
            .map(|i| (0..n).fold(alg.zero_poly(), |acc, k| &acc + &nabla.table[i][k][k]))
            .collect(),
    ))
}

fn check_top_form(alg: &LieRinehartAlgebra, f: &AltForm) -> Result<()> {
    if f.degree() != alg.rank() {
        return Err(Error::DegreeMismatch {
            expected: alg.rank(),
            found: f.degree(),
        });
    }
    if f.rank() != alg.rank() {
        return Err(Error::RankMismatch(alg.rank(), f.rank()));
    }
    if f.nvars() != alg.nvars() {
        return Err(Error::VariableCount(alg.nvars(), f.nvars()));
    }
    Ok(())
}

/// Generalized Lie derivative on `Hom_A(Lambda^n L, Lambda^n L)`:
/// `(lambda^nabla_alpha phi)(x) = nabla_alpha(phi x) - phi(lambda_alpha x)`.
/// Forms of degree `n` are such homomorphisms: `phi(b vol) = b f(e_1..e_n) vol`.
pub fn generalized_lie_derivative(
    alg: &LieRinehartAlgebra,
    nabla: &TopConnection,
    alpha: &LElement,
    f: &AltForm,
) -> Result<AltForm> {
    nabla.check(alg)?;
    alg.check_element(alpha)?;
    check_top_form(alg, f)?;
    let (m, n) = (alg.nvars(), alg.rank());
    let vol = Blade::full(n);
    let v = f.value(vol);
    let first = connection_top_unchecked(alg, nabla, alpha, &v);
    let second = &v * &lie_derivative_unchecked(alg, alpha, &Poly::one(m));
    AltForm::zero(m, n, n).with_value(vol, &first - &second)
}

/// The dual right connection `phi o alpha = -lambda^nabla_alpha(phi)` on
/// `Hom_A(Lambda^n L, Lambda^n L)`.
pub fn dual_right_connection(
    alg: &LieRinehartAlgebra,
    nabla: &TopConnection,
    f: &AltForm,
    alpha: &LElement,
) -> Result<AltForm> {
    Ok(generalized_lie_derivative(alg, nabla, alpha, f)?.neg())
}

/// Divergence of an `R`-linear endomorphism of a free rank-one module with
/// basis `b`: the scalar `div` with `E(b) = div b`. Module elements are given
/// by their coefficient on `b`.
pub fn divergence_rank_one<E>(nvars: usize, endo: E) -> Poly
where
    E: Fn(&Poly) -> Poly,
{
    endo(&Poly::one(nvars))
}
