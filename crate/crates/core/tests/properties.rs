//! Algebraic invariants, checked with proptest on small inputs and with
//! seeded samples on the catalog algebras.

mod oracle;

use proptest::prelude::*;
use rand::Rng;
use rinehart::cli::{catalog, AlgebraFile};
use rinehart::connections::{
    covariant_derivative, curvature_apply, curvature_top, induced_top_connection, is_flat, is_torsion_free, phi_map,
    phi_map_apply, torsion, torsion_apply, LeftConnection, TopConnection,
};
use rinehart::correspondences::{
    check_intertwining, koszul_generator, right_from_generator, top_from_right, torsionfree_lift_from,
};
use rinehart::exterior::{phi_inverse, phi_iso, top_pairing};
use rinehart::gerstenhaber::{apply_generator, gerstenhaber_bracket, RightConnection};
use rinehart::homology::RationalMatrix;
use rinehart::random::Sampler;
use rinehart::ring::rational;
use rinehart::{
    parse_poly, AltForm, Blade, CheckConfig, Derivation, Generator, LElement, LieRinehartAlgebra, Multivector, Poly,
    TopElement,
};

const SAMPLES: usize = 8;

fn entries() -> Vec<AlgebraFile> {
    catalog().iter().map(|e| e.load().unwrap()).collect()
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn poly2() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..4, 0u32..4, -9i64..=9, 1i64..=3), 0..5)
        .prop_map(|terms| Poly::from_terms(2, terms.into_iter().map(|(a, b, p, q)| (vec![a, b], rational(p, q)))))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly2(), b in poly2(), c in poly2()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(2), a.clone());
    }

    #[test]
    fn display_parses_back(a in poly2()) {
        prop_assert_eq!(parse_poly(&a.to_string(), 2).unwrap(), a);
    }

    #[test]
    fn derivations_obey_leibniz(a in poly2(), b in poly2(), u in poly2(), v in poly2()) {
        let d = Derivation::new(2, vec![u, v]).unwrap();
        let lhs = d.apply(&(&a * &b)).unwrap();
        let rhs = &(&d.apply(&a).unwrap() * &b) + &(&a * &d.apply(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_commute(a in poly2()) {
        let xy = a.partial_derivative(0).unwrap().partial_derivative(1).unwrap();
        let yx = a.partial_derivative(1).unwrap().partial_derivative(0).unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn wedge_sign_matches_inversion_count(s in 0u32..64, t in 0u32..64) {
        let (s, t) = (Blade::from_indices(&bits(s)).unwrap(), Blade::from_indices(&bits(t)).unwrap());
        let w = Multivector::basis(0, 6, s).wedge(&Multivector::basis(0, 6, t)).unwrap();
        let mut seq = s.indices();
        seq.extend(t.indices());
        let expected = if s.is_disjoint(t) { oracle::inversion_sign(&seq) as i64 } else { 0 };
        prop_assert_eq!(w.coefficient(s.union(t)), Poly::int(0, expected));
    }

    #[test]
    fn bareiss_rank_matches_gaussian_elimination(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 0..6)) {
        let exact = RationalMatrix::from_rows(4, rows.iter().map(|r| r.iter().map(|&v| rational(v, 1)).collect()).collect());
        let oracle = rows.iter().map(|r| r.iter().map(|&v| num_rational::Ratio::from_integer(v)).collect()).collect();
        prop_assert_eq!(exact.rank(), oracle::gauss_rank(oracle));
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..6).filter(|i| mask >> i & 1 == 1).collect()
}

fn for_each_algebra(stream: u64, mut f: impl FnMut(&AlgebraFile, &mut Sampler)) {
    for file in entries() {
        let mut sampler = Sampler::with_stream(&file.algebra, CheckConfig::default(), stream);
        for _ in 0..SAMPLES {
            f(&file, &mut sampler);
        }
    }
}

#[test]
fn wedge_is_associative_and_graded_commutative() {
    for_each_algebra(1, |f, s| {
        let n = f.algebra.rank();
        let (p, q, r) = (
            s.rng().gen_range(0..=n),
            s.rng().gen_range(0..=n),
            s.rng().gen_range(0..=n),
        );
        let (u, v, w) = (s.homogeneous(p), s.homogeneous(q), s.homogeneous(r));
        assert_eq!(
            u.wedge(&v).unwrap().wedge(&w).unwrap(),
            u.wedge(&v.wedge(&w).unwrap()).unwrap()
        );
        let uv = u.wedge(&v).unwrap();
        let vu = v.wedge(&u).unwrap();
        assert_eq!(uv, if sign(p * q) == 1 { vu } else { vu.neg() }, "{}", f.name);
    });
}

#[test]
fn phi_iso_is_the_pairing_and_inverts() {
    for_each_algebra(2, |f, s| {
        let n = f.algebra.rank();
        let p = s.rng().gen_range(0..=n);
        let alpha = s.homogeneous(p);
        let form = phi_iso(&alpha, p).unwrap();
        assert_eq!(form.degree(), n - p);
        assert_eq!(phi_inverse(&form).unwrap(), alpha);
        let beta = s.homogeneous(n - p);
        let paired = top_pairing(&alpha, &beta).unwrap().coefficient;
        let evaluated = beta.terms().fold(Poly::zero(f.algebra.nvars()), |acc, (b, c)| {
            &acc + &(c * &form.value(*b))
        });
        assert_eq!(paired, evaluated);
    });
}

#[test]
fn lie_bracket_obeys_leibniz_and_jacobi() {
    for_each_algebra(3, |f, s| {
        let alg = &f.algebra;
        let (x, y, z) = (s.element(), s.element(), s.element());
        let a = s.poly();
        let lhs = alg.bracket(&x, &y.scale(&a)).unwrap();
        let rhs = alg
            .bracket(&x, &y)
            .unwrap()
            .scale(&a)
            .add(&y.scale(&alg.anchor_apply(&x, &a).unwrap()));
        assert_eq!(lhs, rhs, "{}", f.name);
        assert_eq!(alg.bracket(&x, &y).unwrap(), alg.bracket(&y, &x).unwrap().neg());
        assert!(alg.jacobiator(&x, &y, &z).is_zero(), "{}", f.name);
        let commutator = alg
            .anchor_of(&x)
            .unwrap()
            .commutator(&alg.anchor_of(&y).unwrap())
            .unwrap();
        assert_eq!(alg.anchor_of(&alg.bracket(&x, &y).unwrap()).unwrap(), commutator);
    });
}

#[test]
fn coordinate_bracket_is_the_vector_field_bracket() {
    let alg = LieRinehartAlgebra::coordinate(2);
    let mut s = Sampler::new(&alg, CheckConfig::default());
    for _ in 0..32 {
        let (x, y) = (s.element(), s.element());
        let expected = oracle::vector_field_bracket(x.coeffs(), y.coeffs());
        assert_eq!(alg.bracket(&x, &y).unwrap().coeffs(), &expected[..]);
    }
}

#[test]
fn gerstenhaber_bracket_is_graded_lie_and_a_biderivation() {
    for_each_algebra(4, |f, s| {
        let alg = &f.algebra;
        let n = alg.rank();
        let (p, q, r) = (
            s.rng().gen_range(0..=n),
            s.rng().gen_range(0..=n),
            s.rng().gen_range(0..=n),
        );
        let (u, v, w) = (s.homogeneous(p), s.homogeneous(q), s.homogeneous(r));
        let br = |a: &Multivector, b: &Multivector| gerstenhaber_bracket(alg, a, b).unwrap();
        // [u,v] = -(-1)^((p-1)(q-1)) [v,u], written with p+q to avoid p-1 < 0
        let uv = br(&u, &v);
        let vu = br(&v, &u);
        assert_eq!(
            uv,
            if sign(p + q + p * q + 1) == 1 { vu.neg() } else { vu },
            "{}",
            f.name
        );
        // [u, v ^ w] = [u,v] ^ w + (-1)^((p-1)q) v ^ [u,w]
        let lhs = br(&u, &v.wedge(&w).unwrap());
        let second = v.wedge(&br(&u, &w)).unwrap();
        let rhs = br(&u, &v)
            .wedge(&w)
            .unwrap()
            .add(&if sign(p * q + q) == 1 { second } else { second.neg() });
        assert_eq!(lhs, rhs, "{}", f.name);
        // (-1)^((p-1)(r-1)) [u,[v,w]] + cyclic = 0
        let e = |a: usize, b: usize| sign(a * b + a + b + 1);
        let terms = [
            (e(p, r), br(&u, &br(&v, &w))),
            (e(q, p), br(&v, &br(&w, &u))),
            (e(r, q), br(&w, &br(&u, &v))),
        ];
        let total = terms.iter().fold(Multivector::zero(alg.nvars(), n), |acc, (sg, t)| {
            if *sg == 1 {
                acc.add(t)
            } else {
                acc.sub(t)
            }
        });
        assert!(total.is_zero(), "{}: graded Jacobi fails", f.name);
    });
}

#[test]
fn zero_right_connection_on_coordinates_is_the_divergence() {
    for m in 1..=3 {
        let alg = LieRinehartAlgebra::coordinate(m);
        let d = Generator::new(RightConnection::zero(&alg));
        let mut s = Sampler::new(&alg, CheckConfig::default());
        for _ in 0..16 {
            let p = s.rng().gen_range(0..=m);
            let u = s.homogeneous(p);
            assert_eq!(apply_generator(&alg, &d, &u).unwrap(), oracle::coordinate_generator(&u));
        }
    }
}

#[test]
fn torsion_is_tensorial_and_antisymmetric() {
    for_each_algebra(5, |f, s| {
        let alg = &f.algebra;
        let nabla = s.left_connection();
        let (x, y, a) = (s.element(), s.element(), s.poly());
        let t = torsion_apply(alg, &nabla, &x, &y).unwrap();
        assert_eq!(
            torsion_apply(alg, &nabla, &x.scale(&a), &y).unwrap(),
            t.scale(&a),
            "{}",
            f.name
        );
        assert_eq!(torsion_apply(alg, &nabla, &y, &x).unwrap(), t.neg());
        let table = torsion(alg, &nabla).unwrap();
        let n = alg.rank();
        let mut contracted = alg.zero_element();
        for i in 0..n {
            for j in 0..n {
                contracted = contracted.add(&table[i][j].scale(&(x.coeff(i) * y.coeff(j))));
            }
        }
        assert_eq!(contracted, t);
    });
}

#[test]
fn curvature_table_matches_the_operator() {
    for_each_algebra(6, |f, s| {
        let alg = &f.algebra;
        let nabla = s.top_connection();
        let (x, y) = (s.element(), s.element());
        let v = TopElement::new(s.poly());
        let table = curvature_top(alg, &nabla).unwrap();
        let n = alg.rank();
        let mut r = Poly::zero(alg.nvars());
        for i in 0..n {
            for j in 0..n {
                r = &r + &(&(x.coeff(i) * y.coeff(j)) * &table[i][j]);
            }
        }
        let op = curvature_apply(alg, &nabla, &x, &y, &v).unwrap().coefficient;
        assert_eq!(op, &r * &v.coefficient, "{}", f.name);
    });
}

#[test]
fn covariant_derivative_squares_to_zero_exactly_when_flat() {
    let cfg = CheckConfig::default();
    for f in entries() {
        let alg = &f.algebra;
        let n = alg.rank();
        let mut s = Sampler::with_stream(alg, cfg, 7);
        let flat = is_flat(alg, &f.top).unwrap();
        let mut all_zero = true;
        for _ in 0..SAMPLES {
            for q in 0..n.saturating_sub(1) {
                let form = phi_iso(&s.homogeneous(n - q), n - q).unwrap();
                let dd = covariant_derivative(alg, &f.top, &covariant_derivative(alg, &f.top, &form).unwrap()).unwrap();
                all_zero &= dd.is_zero();
            }
        }
        assert_eq!(all_zero, flat, "{}", f.name);
    }
}

#[test]
fn phi_map_is_linear_in_its_argument() {
    for_each_algebra(8, |f, s| {
        let alg = &f.algebra;
        let nabla = s.left_connection();
        let (alpha, xi, b) = (s.element(), s.element(), s.poly());
        let direct = phi_map_apply(alg, &nabla, &alpha, &xi.scale(&b)).unwrap();
        assert_eq!(
            direct,
            phi_map_apply(alg, &nabla, &alpha, &xi).unwrap().scale(&b),
            "{}",
            f.name
        );
        assert_eq!(
            phi_map(alg, &nabla, &alpha).unwrap().apply(&xi),
            phi_map_apply(alg, &nabla, &alpha, &xi).unwrap()
        );
    });
}

/// Adds `delta` to the trace-free parts: `Gamma[i][j][k] += delta` when j != k.
fn off_diagonal_shift(nabla: &LeftConnection, delta: &Poly) -> LeftConnection {
    let mut t = nabla.table().to_vec();
    for row in t.iter_mut() {
        for (j, col) in row.iter_mut().enumerate() {
            for (k, c) in col.iter_mut().enumerate() {
                if j != k {
                    *c = &*c + delta;
                }
            }
        }
    }
    LeftConnection::new(t)
}

#[test]
fn koszul_generator_depends_only_on_the_induced_connection() {
    for_each_algebra(9, |f, s| {
        let alg = &f.algebra;
        let nabla = s.left_connection();
        let other = off_diagonal_shift(&nabla, &s.nonzero_poly());
        assert_eq!(
            induced_top_connection(alg, &nabla).unwrap(),
            induced_top_connection(alg, &other).unwrap()
        );
        assert_eq!(
            koszul_generator(alg, &nabla).unwrap(),
            koszul_generator(alg, &other).unwrap(),
            "{}",
            f.name
        );
    });
}

#[test]
fn lift_from_another_torsion_free_base() {
    for_each_algebra(10, |f, s| {
        let alg = &f.algebra;
        let n = alg.rank();
        if n < 2 {
            return;
        }
        // c/2 plus a symmetric, trace-free perturbation: Gamma[i][j][k] = Gamma[j][i][k]
        // and Gamma[i][k][k] untouched
        let mut t = LeftConnection::half_structure(alg).table().to_vec();
        let bump = s.nonzero_poly();
        t[0][1][0] = &t[0][1][0] + &bump;
        t[1][0][0] = &t[1][0][0] + &bump;
        let base = LeftConnection::new(t);
        assert!(is_torsion_free(alg, &base).unwrap());
        let target = s.top_connection();
        let lift = torsionfree_lift_from(alg, &base, &target).unwrap();
        assert!(is_torsion_free(alg, &lift).unwrap(), "{}", f.name);
        assert_eq!(induced_top_connection(alg, &lift).unwrap(), target);
    });
}

#[test]
fn intertwining_holds_exactly_for_corresponding_pairs() {
    let cfg = CheckConfig::default().with_trials(2);
    for_each_algebra(11, |f, s| {
        let alg = &f.algebra;
        let d = Generator::new(s.right_connection());
        let partner = top_from_right(alg, &right_from_generator(alg, &d)).unwrap();
        assert_eq!(check_intertwining(alg, &d, &partner, &cfg).unwrap(), None, "{}", f.name);
        let other = s.top_connection();
        if alg.rank() > 0 && other != partner {
            assert!(
                check_intertwining(alg, &d, &other, &cfg).unwrap().is_some(),
                "{}",
                f.name
            );
        }
    });
}

#[test]
fn forms_and_elements_reject_mismatched_dimensions() {
    let alg = LieRinehartAlgebra::coordinate(2);
    let wrong = LElement::zero(3, 2);
    assert!(alg.bracket(&wrong, &alg.zero_element()).is_err());
    let nabla = TopConnection::new(vec![Poly::zero(2)]);
    assert!(covariant_derivative(&alg, &nabla, &AltForm::zero(2, 2, 0)).is_err());
    assert!(Derivation::new(2, vec![Poly::zero(2)]).is_err());
    assert!(parse_poly("x3", 2).is_err());
}
