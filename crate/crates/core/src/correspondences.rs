//! Correspondences between generators of the Gerstenhaber bracket, right
//! connections on `A` and connections on `Lambda^n L`, and the randomized
//! checks that the generator is intertwined with the covariant derivative.

use std::fmt;

use crate::connections::{
    covariant_derivative, induced_top_connection, phi_map, trace_endo, LeftConnection, TopConnection,
};
use crate::error::Result;
use crate::exterior::{phi_iso, AltForm, Blade, Multivector};
use crate::gerstenhaber::{bracket_unchecked, Generator, MultivectorOperator, RightConnection};
use crate::lie_rinehart::LieRinehartAlgebra;
use crate::random::{CheckConfig, Sampler};
use crate::ring::{rational, Poly};

/// Reads off the right connection of a generator: `r_i = D(e_i)`.
pub fn right_from_generator<D: MultivectorOperator + ?Sized>(alg: &LieRinehartAlgebra, d: &D) -> RightConnection {
    let (m, n) = (alg.nvars(), alg.rank());
    RightConnection::new(
        (0..n)
            .map(|i| d.apply(alg, &Multivector::basis(m, n, Blade::single(i))).scalar_part())
            .collect(),
    )
}

pub fn generator_from_right(right: &RightConnection) -> Generator {
    Generator::new(right.clone())
}

/// `gamma_i = tau_i - r_i`, where `tau_i` is the trace of `ad(e_i)`.
pub fn top_from_right(alg: &LieRinehartAlgebra, right: &RightConnection) -> Result<TopConnection> {
    right.check(alg)?;
    Ok(TopConnection::new(
        right
            .values()
            .iter()
            .enumerate()
            .map(|(i, r)| &alg.ad_trace(i) - r)
            .collect(),
    ))
}

/// Inverse of [`top_from_right`]: `r_i = tau_i - gamma_i`.
pub fn right_from_top(alg: &LieRinehartAlgebra, nabla: &TopConnection) -> Result<RightConnection> {
    nabla.check(alg)?;
    Ok(RightConnection::new(
        nabla
            .gamma()
            .iter()
            .enumerate()
            .map(|(i, g)| &alg.ad_trace(i) - g)
            .collect(),
    ))
}

/// A sampled input on which the generator and the covariant derivative
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningWitness {
    pub degree: usize,
    pub input: Multivector,
    pub expected: AltForm,
    pub found: AltForm,
}

impl fmt::Display for IntertwiningWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}, alpha = {}: expected {} but found {}",
            self.degree, self.input, self.expected, self.found
        )
    }
}

/// Checks `phi(D alpha) = -d^nabla phi(alpha)` for random `alpha` of every
/// degree `0..=n`. This holds exactly when `D` and `nabla` correspond.
pub fn check_intertwining<D: MultivectorOperator + ?Sized>(
    alg: &LieRinehartAlgebra,
    d: &D,
    nabla: &TopConnection,
    config: &CheckConfig,
) -> Result<Option<IntertwiningWitness>> {
    nabla.check(alg)?;
    let (m, n) = (alg.nvars(), alg.rank());
    let mut sampler = Sampler::with_stream(alg, *config, 13);
    for _ in 0..config.trials {
        for p in 0..=n {
            let alpha = sampler.homogeneous(p);
            let found = covariant_derivative(alg, nabla, &phi_iso(&alpha, p)?)?.neg();
            let expected = if p == 0 {
                AltForm::zero(m, n, n + 1)
            } else {
                phi_iso(&d.apply(alg, &alpha), p - 1)?
            };
            if expected != found {
                return Ok(Some(IntertwiningWitness {
                    degree: p,
                    input: alpha,
                    expected,
                    found,
                }));
            }
        }
    }
    Ok(None)
}

/// Evaluates a form of degree `k` on a multivector: `f(sum b_S e_S) = sum b_S f(e_S)`.
fn evaluate_on_multivector(f: &AltForm, beta: &Multivector) -> Poly {
    let mut out = Poly::zero(f.nvars());
    for (s, b) in beta.terms() {
        if s.degree() == f.degree() {
            out = &out + &(b * &f.value(*s));
        }
    }
    out
}

/// A sampled pair on which the bracket formula for the covariant derivative
/// fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFormulaWitness {
    pub alpha: Multivector,
    pub beta: Multivector,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl fmt::Display for BracketFormulaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha = {}, beta = {}: d phi_alpha(beta) = {} but the bracket side is {}",
            self.alpha, self.beta, self.lhs, self.rhs
        )
    }
}

/// Checks `d^nabla phi_alpha(beta) = (-1)^p (alpha ^ D beta + [alpha, beta])`
/// for random `alpha` of degree `p >= 1` and `beta` of degree `n - p + 1`,
/// given a corresponding pair `(D, nabla)`.
pub fn check_bracket_formula<D: MultivectorOperator + ?Sized>(
    alg: &LieRinehartAlgebra,
    d: &D,
    nabla: &TopConnection,
    config: &CheckConfig,
) -> Result<Option<BracketFormulaWitness>> {
    nabla.check(alg)?;
    let n = alg.rank();
    let mut sampler = Sampler::with_stream(alg, *config, 14);
    for _ in 0..config.trials {
        for p in 1..=n {
            let alpha = sampler.homogeneous(p);
            let beta = sampler.homogeneous(n - p + 1);
            let form = covariant_derivative(alg, nabla, &phi_iso(&alpha, p)?)?;
            let lhs = evaluate_on_multivector(&form, &beta);
            let sum = alpha
                .wedge_unchecked(&d.apply(alg, &beta))
                .add(&bracket_unchecked(alg, &alpha, &beta));
            let rhs = sum.sign(p).top_coefficient();
            if lhs != rhs {
                return Ok(Some(BracketFormulaWitness { alpha, beta, lhs, rhs }));
            }
        }
    }
    Ok(None)
}

/// The generator attached to a connection on `L`: `r_i = Tr Phi_{e_i}`.
pub fn koszul_generator(alg: &LieRinehartAlgebra, nabla: &LeftConnection) -> Result<Generator> {
    let r = (0..alg.rank())
        .map(|i| Ok(trace_endo(&phi_map(alg, nabla, &alg.basis_element(i))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Generator::new(RightConnection::new(r)))
}

/// A torsion-free connection on `L` inducing `target` on `Lambda^n L`.
///
/// Starts from the torsion-free `G = c/2` and adds the symmetric correction
/// `(phi_i delta_jk + phi_j delta_ik) / (n + 1)` with `phi = target - induced(c/2)`.
pub fn torsionfree_lift(alg: &LieRinehartAlgebra, target: &TopConnection) -> Result<LeftConnection> {
    torsionfree_lift_from(alg, &LeftConnection::half_structure(alg), target)
}

/// As [`torsionfree_lift`], starting from an arbitrary torsion-free `base`.
/// The correction is symmetric, so the result is torsion free whenever
/// `base` is.
pub fn torsionfree_lift_from(
    alg: &LieRinehartAlgebra,
    base: &LeftConnection,
    target: &TopConnection,
) -> Result<LeftConnection> {
    target.check(alg)?;
    let n = alg.rank();
    let base_gamma = induced_top_connection(alg, base)?;
    let weight = rational(1, n as i64 + 1);
    let phi: Vec<Poly> = target
        .gamma()
        .iter()
        .zip(base_gamma.gamma())
        .map(|(t, b)| (t - b).scale(&weight))
        .collect();
    let mut table = base.table().to_vec();
    for i in 0..n {
        for j in 0..n {
            table[i][j][j] = &table[i][j][j] + &phi[i];
            table[i][j][i] = &table[i][j][i] + &phi[j];
        }
    }
    Ok(LeftConnection::new(table))
}
