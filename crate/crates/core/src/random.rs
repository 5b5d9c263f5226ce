//! Seeded random inputs for the identity checks.
//!
//! Every identity verified here is polynomial in its inputs, so evaluating it
//! exactly on random polynomial data gives high-confidence checks. All
//! sampling is driven by an explicit seed and is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connections::{LeftConnection, TopConnection};
use crate::exterior::{Blade, Multivector};
use crate::gerstenhaber::RightConnection;
use crate::lie_rinehart::{LElement, LieRinehartAlgebra};
use crate::ring::{Monomial, Poly, Rational};

/// Parameters shared by all randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: usize,
    /// Largest total degree of a sampled monomial.
    pub degree_bound: u32,
    /// Coefficients are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    /// Sampled polynomials have between 1 and this many terms.
    pub max_terms: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            trials: 32,
            degree_bound: 3,
            coeff_bound: 9,
            max_terms: 4,
        }
    }
}

impl CheckConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        CheckConfig { seed, ..self }
    }

    pub fn with_trials(self, trials: usize) -> Self {
        CheckConfig { trials, ..self }
    }
}

/// Random polynomials, algebra elements, and connection data for one algebra.
pub struct Sampler {
    rng: ChaCha8Rng,
    config: CheckConfig,
    nvars: usize,
    rank: usize,
}

impl Sampler {
    pub fn new(alg: &LieRinehartAlgebra, config: CheckConfig) -> Self {
        Self::with_stream(alg, config, 0)
    }

    /// Independent sub-stream `stream` of the configured seed, so separate
    /// checks do not share random data.
    pub fn with_stream(alg: &LieRinehartAlgebra, config: CheckConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(stream);
        Sampler {
            rng,
            config,
            nvars: alg.nvars(),
            rank: alg.rank(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn coefficient(&mut self) -> Rational {
        let b = self.config.coeff_bound.max(1);
        loop {
            let c = self.rng.gen_range(-b..=b);
            if c != 0 {
                return Rational::from_integer(c.into());
            }
        }
    }

    fn monomial(&mut self) -> Monomial {
        let mut exps = vec![0u32; self.nvars];
        if self.nvars > 0 {
            let degree = self.rng.gen_range(0..=self.config.degree_bound);
            for _ in 0..degree {
                let i = self.rng.gen_range(0..self.nvars);
                exps[i] += 1;
            }
        }
        Monomial::from_exponents(exps)
    }

    /// A polynomial with 1 to `max_terms` random terms; may cancel to zero
    /// only in the ground-field case where all monomials coincide.
    pub fn poly(&mut self) -> Poly {
        let k = self.rng.gen_range(1..=self.config.max_terms.max(1));
        let mut p = Poly::zero(self.nvars);
        for _ in 0..k {
            let mono = self.monomial();
            let c = self.coefficient();
            p = &p + &Poly::monomial(self.nvars, mono, c);
        }
        p
    }

    pub fn nonzero_poly(&mut self) -> Poly {
        loop {
            let p = self.poly();
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn element(&mut self) -> LElement {
        let coeffs = (0..self.rank).map(|_| self.poly()).collect();
        LElement::new(self.nvars, coeffs).expect("dimensions")
    }

    /// `a * e_S` with random nonzero `a`.
    pub fn blade_term(&mut self, blade: Blade) -> Multivector {
        let a = self.nonzero_poly();
        Multivector::term(self.nvars, self.rank, blade, a)
    }

    /// Random combination of all degree-`p` basis multivectors.
    pub fn homogeneous(&mut self, p: usize) -> Multivector {
        let mut out = Multivector::zero(self.nvars, self.rank);
        for blade in Blade::all_of_degree(self.rank, p) {
            out.add_term(blade, self.poly());
        }
        out
    }

    pub fn right_connection(&mut self) -> RightConnection {
        RightConnection::new((0..self.rank).map(|_| self.poly()).collect())
    }

    pub fn top_connection(&mut self) -> TopConnection {
        TopConnection::new((0..self.rank).map(|_| self.poly()).collect())
    }

    pub fn left_connection(&mut self) -> LeftConnection {
        let n = self.rank;
        let table = (0..n)
            .map(|_| (0..n).map(|_| (0..n).map(|_| self.poly()).collect()).collect())
            .collect();
        LeftConnection::new(table)
    }
}
