//! The verification suites run by `rinehart check`.

use std::time::Instant;

use crate::connections::{
    connection_apply_top, curvature_top, divergence_rank_one, dual_right_connection, generalized_lie_derivative,
    induced_top_connection, is_flat, is_torsion_free, lie_derivative_top, phi_map, phi_map_apply, torsion, trace_endo,
    LeftConnection, TopConnection,
};
use crate::correspondences::{
    check_bracket_formula, check_intertwining, koszul_generator, right_from_generator, right_from_top, top_from_right,
    torsionfree_lift,
};
use crate::exterior::{AltForm, Blade, Multivector, TopElement};
use crate::gerstenhaber::{apply_generator, generator_square, is_generator, Generator, RightConnection};
use crate::homology::{euler_characteristic, homology_dims, rinehart_complex};
use crate::lie_rinehart::LieRinehartAlgebra;
use crate::random::{CheckConfig, Sampler};
use crate::ring::Poly;

use super::{AlgebraFile, Status, Suite, SuiteResult, VerificationReport};

struct Outcome {
    status: Status,
    summary: String,
    details: Vec<(String, String)>,
    witness: Option<String>,
}

impl Outcome {
    fn pass(summary: impl Into<String>) -> Self {
        Outcome {
            status: Status::Pass,
            summary: summary.into(),
            details: Vec::new(),
            witness: None,
        }
    }

    fn fail(summary: impl Into<String>, witness: impl Into<String>) -> Self {
        Outcome {
            status: Status::Fail,
            summary: summary.into(),
            details: Vec::new(),
            witness: Some(witness.into()),
        }
    }

    fn not_applicable(summary: impl Into<String>) -> Self {
        Outcome {
            status: Status::NotApplicable,
            summary: summary.into(),
            details: Vec::new(),
            witness: None,
        }
    }

    fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }
}

/// Runs one suite on a loaded algebra.
pub fn run_suite(input: &AlgebraFile, suite: Suite, config: &CheckConfig) -> SuiteResult {
    let start = Instant::now();
    let outcome = match suite {
        Suite::Axioms => axioms(input),
        Suite::Bijections => bijections(input, config),
        Suite::BracketFormula => bracket_formula(input, config),
        Suite::Generator => generator(input, config),
        Suite::GeneratorSquare => generator_square_suite(input, config),
        Suite::Homology => homology(input),
        Suite::Intertwining => intertwining(input, config),
        Suite::LinearConnections => linear_connections(input, config),
    };
    SuiteResult {
        suite,
        status: outcome.status,
        summary: outcome.summary,
        details: outcome.details,
        witness: outcome.witness,
        elapsed: start.elapsed(),
    }
}

/// Runs the given suites concurrently; results are ordered by suite name.
pub fn run_suites(input: &AlgebraFile, source: &str, suites: &[Suite], config: &CheckConfig) -> VerificationReport {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| scope.spawn(move || run_suite(input, s, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    VerificationReport {
        name: input.name.clone(),
        source: source.to_string(),
        nvars: input.algebra.nvars(),
        rank: input.algebra.rank(),
        config: *config,
        results,
    }
}

fn axioms(input: &AlgebraFile) -> Outcome {
    let violations = input.algebra.verify_axioms();
    match violations.first() {
        None => Outcome::pass("anchor homomorphism and Jacobi identity hold on the basis"),
        Some(v) => Outcome::fail(format!("{} axiom violations", violations.len()), v.to_string()),
    }
}

fn generator(input: &AlgebraFile, config: &CheckConfig) -> Outcome {
    let alg = &input.algebra;
    if let Some(w) = is_generator(alg, &input.generator(), config) {
        return Outcome::fail("the file's D does not generate the bracket", w.to_string());
    }
    let mut sampler = Sampler::with_stream(alg, *config, 21);
    for t in 0..config.trials {
        let right = sampler.right_connection();
        let per_r = config.with_seed(config.seed.wrapping_add(t as u64 + 1)).with_trials(1);
        if let Some(w) = is_generator(alg, &Generator::new(right.clone()), &per_r) {
            return Outcome::fail(
                format!("D of random right connection #{} does not generate the bracket", t + 1),
                format!("r = {right}; {w}"),
            );
        }
    }
    Outcome::pass(format!(
        "D generates the bracket for the file's r and {} random right connections",
        config.trials
    ))
}

fn generator_square_suite(input: &AlgebraFile, config: &CheckConfig) -> Outcome {
    let alg = &input.algebra;
    let flat = is_flat(alg, &input.top).expect("validated");
    let square = generator_square(alg, &input.generator(), config);
    let out = match (flat, square.is_exact) {
        (true, true) => Outcome::pass("connection is flat and D^2 = 0"),
        (false, false) => {
            let (u, sq) = square.witness().expect("not exact");
            Outcome {
                status: Status::ExpectedFail,
                summary: "connection is curved, so D^2 != 0".to_string(),
                details: Vec::new(),
                witness: Some(format!("D(D({u})) = {sq}")),
            }
        }
        (true, false) => {
            let (u, sq) = square.witness().expect("not exact");
            Outcome::fail("connection is flat but D^2 != 0", format!("D(D({u})) = {sq}"))
        }
        (false, true) => {
            let curvature = curvature_top(alg, &input.top).expect("validated");
            let (i, j, r) = first_nonzero(&curvature).expect("curved");
            Outcome::fail(
                "connection is curved but D^2 vanished on all samples",
                format!("R(e{}, e{}) = {r}", i + 1, j + 1),
            )
        }
    };
    out.detail("flat", flat).detail("exact", square.is_exact)
}

fn first_nonzero(table: &[Vec<Poly>]) -> Option<(usize, usize, &Poly)> {
    table
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, p)| (i, j, p)))
        .find(|(_, _, p)| !p.is_zero())
}

fn volume_form(alg: &LieRinehartAlgebra, a: Poly) -> AltForm {
    let n = alg.rank();
    AltForm::zero(alg.nvars(), n, n)
        .with_value(Blade::full(n), a)
        .expect("full blade")
}

fn bijection_failure(
    alg: &LieRinehartAlgebra,
    right: &RightConnection,
    top: &TopConnection,
    sampler: &mut Sampler,
) -> Option<String> {
    let back = right_from_top(alg, &top_from_right(alg, right).ok()?).ok()?;
    if &back != right {
        return Some(format!("r = {right} -> gamma -> r gives {back}"));
    }
    let back = top_from_right(alg, &right_from_top(alg, top).ok()?).ok()?;
    if &back != top {
        return Some(format!("gamma = {top} -> r -> gamma gives {back}"));
    }
    let d = Generator::new(right.clone());
    let back = right_from_generator(alg, &d);
    if &back != right {
        return Some(format!("r = {right} -> D -> r gives {back}"));
    }
    // D on L is the right connection, and the right connection is the
    // dual of the top connection: a o alpha = -(lambda^nabla_alpha (a Id))(vol).
    let partner = top_from_right(alg, right).ok()?;
    let alpha = sampler.element();
    let a = sampler.poly();
    let on_l = apply_generator(alg, &d, &Multivector::from_element(&alpha))
        .ok()?
        .scalar_part();
    let one_circ = right.apply(alg, &Poly::one(alg.nvars()), &alpha).ok()?;
    if on_l != one_circ {
        return Some(format!(
            "r = {right}, alpha = {alpha}: D(alpha) = {on_l} but 1 o alpha = {one_circ}"
        ));
    }
    let circ = right.apply(alg, &a, &alpha).ok()?;
    let dual = dual_right_connection(alg, &partner, &volume_form(alg, a.clone()), &alpha)
        .ok()?
        .value(Blade::full(alg.rank()));
    if circ != dual {
        return Some(format!(
            "r = {right}, a = {a}, alpha = {alpha}: a o alpha = {circ} but the dual connection gives {dual}"
        ));
    }
    None
}

fn bijections(input: &AlgebraFile, config: &CheckConfig) -> Outcome {
    let alg = &input.algebra;
    let mut sampler = Sampler::with_stream(alg, *config, 22);
    if let Some(w) = bijection_failure(alg, &input.right, &input.top, &mut sampler) {
        return Outcome::fail("conversion cycle is not the identity on the file's data", w);
    }
    for _ in 0..config.trials {
        let right = sampler.right_connection();
        let top = sampler.top_connection();
        if let Some(w) = bijection_failure(alg, &right, &top, &mut sampler) {
            return Outcome::fail("conversion cycle is not the identity on random data", w);
        }
    }
    Outcome::pass(format!(
        "r <-> gamma <-> D round trips and a o alpha checks on the file's data and {} random samples",
        config.trials
    ))
}

fn intertwining(input: &AlgebraFile, config: &CheckConfig) -> Outcome {
    let alg = &input.algebra;
    let d = input.generator();
    match check_intertwining(alg, &d, &input.top, config) {
        Err(e) => return Outcome::fail("check could not run", e.to_string()),
        Ok(Some(w)) => return Outcome::fail("phi(D alpha) != -d phi(alpha) for a matched pair", w.to_string()),
        Ok(None) => {}
    }
    if alg.rank() == 0 {
        return Outcome::pass("phi(D alpha) = -d phi(alpha) in every degree");
    }
    let mut gamma = input.top.gamma().to_vec();
    gamma[0] = &gamma[0] + &Poly::one(alg.nvars());
    match check_intertwining(alg, &d, &TopConnection::new(gamma), config) {
        Ok(Some(_)) => Outcome::pass(format!(
            "phi(D alpha) = -d phi(alpha) in degrees 0..={}; perturbed pair detected",
            alg.rank()
        )),
        Ok(None) => Outcome::fail(
            "perturbing gamma_1 by 1 went undetected",
            format!("gamma = {}", input.top),
        ),
        Err(e) => Outcome::fail("check could not run", e.to_string()),
    }
}

fn bracket_formula(input: &AlgebraFile, config: &CheckConfig) -> Outcome {
    match check_bracket_formula(&input.algebra, &input.generator(), &input.top, config) {
        Ok(None) => Outcome::pass("d phi_alpha(beta) = (-1)^p (alpha ^ D beta + [alpha, beta])"),
        Ok(Some(w)) => Outcome::fail("bracket formula for d phi_alpha fails", w.to_string()),
        Err(e) => Outcome::fail("check could not run", e.to_string()),
    }
}

/// Identities tying a connection on `L` to generators. Returns a witness on
/// failure.
fn linear_connection_failure(
    alg: &LieRinehartAlgebra,
    nabla: &LeftConnection,
    sampler: &mut Sampler,
) -> crate::Result<Option<String>> {
    let (m, n) = (alg.nvars(), alg.rank());
    let induced = induced_top_connection(alg, nabla)?;
    let koszul = koszul_generator(alg, nabla)?;
    let expected = right_from_top(alg, &induced)?;
    if koszul.right_connection() != &expected {
        return Ok(Some(format!(
            "Koszul generator has r = {} but the induced connection gives r = {expected}",
            koszul.right_connection()
        )));
    }
    let alpha = sampler.element();
    let x = TopElement::new(sampler.poly());
    let trace = trace_endo(&phi_map(alg, nabla, &alpha)?);
    let lie = lie_derivative_top(alg, &alpha, &x)?.coefficient;
    let cov = connection_apply_top(alg, &induced, &alpha, &x)?.coefficient;
    if &trace * &x.coefficient != &lie - &cov {
        return Ok(Some(format!(
            "alpha = {alpha}, x = {x}: Tr Phi_alpha x = {} but lambda x - nabla x = {}",
            &trace * &x.coefficient,
            &lie - &cov
        )));
    }
    let d_alpha = apply_generator(alg, &koszul, &Multivector::from_element(&alpha))?.scalar_part();
    let one_circ = expected.apply(alg, &Poly::one(m), &alpha)?;
    if trace != one_circ || trace != d_alpha {
        return Ok(Some(format!(
            "alpha = {alpha}: Tr Phi_alpha = {trace}, 1 o alpha = {one_circ}, D alpha = {d_alpha}"
        )));
    }
    let div = divergence_rank_one(m, |c| {
        generalized_lie_derivative(alg, &induced, &alpha, &volume_form(alg, c.clone()))
            .expect("dimensions")
            .value(Blade::full(n))
    });
    if -&div != trace {
        return Ok(Some(format!(
            "alpha = {alpha}: -div(lambda_alpha) = {} but Tr Phi_alpha = {trace}",
            -&div
        )));
    }
    if is_torsion_free(alg, nabla)? {
        let xi = sampler.element();
        let phi = phi_map_apply(alg, nabla, &alpha, &xi)?;
        let other = nabla.apply(alg, &xi, &alpha)?.neg();
        if phi != other {
            return Ok(Some(format!(
                "torsion free, alpha = {alpha}, xi = {xi}: Phi_alpha(xi) = {phi} but -nabla_xi alpha = {other}"
            )));
        }
    }
    Ok(None)
}

fn lift_failure(alg: &LieRinehartAlgebra, target: &TopConnection) -> crate::Result<Option<String>> {
    let n = alg.rank();
    let lift = torsionfree_lift(alg, target)?;
    if let Some(t) = torsion(alg, &lift)?.iter().flatten().find(|t| !t.is_zero()) {
        return Ok(Some(format!("lift of gamma = {target} has torsion {t}")));
    }
    let induced = induced_top_connection(alg, &lift)?;
    if &induced != target {
        return Ok(Some(format!("lift of gamma = {target} induces {induced}")));
    }
    let base = LeftConnection::half_structure(alg);
    let base_gamma = induced_top_connection(alg, &base)?;
    let diff = |i: usize, j: usize, k: usize| lift.christoffel(i, j, k) - base.christoffel(i, j, k);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if diff(i, j, k) != diff(j, i, k) {
                    return Ok(Some(format!(
                        "lift of gamma = {target}: Phi(e{})e{} != Phi(e{})e{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let tr = (0..n).fold(Poly::zero(alg.nvars()), |acc, k| &acc + &diff(i, k, k));
        let want = &target.gamma()[i] - &base_gamma.gamma()[i];
        if tr != want {
            return Ok(Some(format!(
                "lift of gamma = {target}: Tr Phi(e{}) = {tr}, expected {want}",
                i + 1
            )));
        }
    }
    Ok(None)
}

fn linear_connections(input: &AlgebraFile, config: &CheckConfig) -> Outcome {
    let alg = &input.algebra;
    let mut sampler = Sampler::with_stream(alg, *config, 23);
    let run = |sampler: &mut Sampler| -> crate::Result<Option<String>> {
        if let Some(nabla) = &input.left {
            if let Some(w) = linear_connection_failure(alg, nabla, sampler)? {
                return Ok(Some(format!("file's Gamma: {w}")));
            }
        }
        if let Some(w) = linear_connection_failure(alg, &LeftConnection::half_structure(alg), sampler)? {
            return Ok(Some(format!("Gamma = c/2: {w}")));
        }
        if alg.rank() > 0 {
            if let Some(w) = lift_failure(alg, &input.top)? {
                return Ok(Some(w));
            }
        }
        for _ in 0..config.trials {
            let nabla = sampler.left_connection();
            if let Some(w) = linear_connection_failure(alg, &nabla, sampler)? {
                return Ok(Some(w));
            }
            if alg.rank() > 0 {
                let target = sampler.top_connection();
                if let Some(w) = lift_failure(alg, &target)? {
                    return Ok(Some(w));
                }
                let lifted = torsionfree_lift(alg, &target)?;
                if let Some(w) = linear_connection_failure(alg, &lifted, sampler)? {
                    return Ok(Some(format!("torsion-free lift: {w}")));
                }
            }
        }
        Ok(None)
    };
    match run(&mut sampler) {
        Ok(None) => Outcome::pass(format!(
            "trace, Koszul, divergence and torsion-free lift identities on {} random connections",
            config.trials
        )),
        Ok(Some(w)) => Outcome::fail("connection identity fails", w),
        Err(e) => Outcome::fail("check could not run", e.to_string()),
    }
}

fn homology(input: &AlgebraFile) -> Outcome {
    let alg = &input.algebra;
    if alg.nvars() != 0 {
        return Outcome::not_applicable(format!("needs a ground-field algebra, found m = {}", alg.nvars()));
    }
    let complex = match rinehart_complex(alg, &input.generator()) {
        Ok(c) => c,
        Err(crate::Error::NotExact { .. }) => {
            return Outcome::not_applicable("D^2 != 0, so there is no complex");
        }
        Err(e) => return Outcome::fail("complex could not be built", e.to_string()),
    };
    let betti = match homology_dims(&complex) {
        Ok(b) => b,
        Err(e) => return Outcome::fail("d^2 != 0 although D^2 = 0", e.to_string()),
    };
    let chi_chain = euler_characteristic(&complex.dims);
    let chi = euler_characteristic(&betti);
    let list = betti.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    if chi != chi_chain {
        return Outcome::fail(
            "Euler characteristic mismatch",
            format!("betti = {list}, chi = {chi}, chain chi = {chi_chain}"),
        );
    }
    Outcome::pass(format!("d^2 = 0, Betti numbers ({})", list.replace(',', ", ")))
        .detail("betti", list)
        .detail("euler", chi)
}
