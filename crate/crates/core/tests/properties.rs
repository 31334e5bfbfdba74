mod common;

use std::sync::Arc;

use proptest::prelude::*;

use hecke_core::kappa::kappa_from_params;
use hecke_core::linalg::{self, Mat};
use hecke_core::pbw::{pbw_overlap_check, scaling_check, skew_group_product};
use hecke_core::poly::{leibniz_bracket, monomials_of_degree, Monomial, Poly};
use hecke_core::probe::{invariant_polys, omega_matrix, poisson_bracket, symmetrizer};
use hecke_core::{AlgebraElement, CycField, CycNum, Group, ParamPoint, PbwAlgebra, ReflectionData};

const CONDUCTORS: [u64; 6] = [1, 3, 4, 5, 8, 12];

fn cyc(field: Arc<CycField>) -> impl Strategy<Value = CycNum> {
    let d = field.degree();
    prop::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(move |parts| {
        let coeffs = parts
            .into_iter()
            .map(|(p, q)| hecke_core::Rational::new(p.into(), q.into()))
            .collect();
        CycNum::from_power_coeffs(&field, coeffs)
    })
}

fn field_and_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| {
        let f = CycField::new(m).unwrap();
        (cyc(f.clone()), cyc(f.clone()), cyc(f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in field_and_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn det_is_multiplicative(xs in prop::collection::vec(-3i64..=3, 18), k in 0i64..3) {
        let f = CycField::new(3).unwrap();
        let z = CycNum::zeta_pow(&f, k);
        let entry = |x: i64| &CycNum::from_int(&f, x) + &z.scale(&hecke_core::Rational::from_integer((x % 2).into()));
        let rows = |off: usize| (0..3).map(|i| (0..3).map(|j| entry(xs[off + 3 * i + j])).collect()).collect();
        let a = Mat::from_rows(&f, rows(0)).unwrap();
        let b = Mat::from_rows(&f, rows(9)).unwrap();
        let lhs = linalg::det(&(&a * &b)).unwrap();
        let rhs = &linalg::det(&a).unwrap() * &linalg::det(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// Random element of degree at most 3 with small integer coefficients.
fn element(group: &Group) -> impl Strategy<Value = AlgebraElement> {
    let n = group.dim();
    let order = group.order();
    let f = group.field().clone();
    let monos: Vec<Monomial> = (0..=3).flat_map(|d| monomials_of_degree(n, d)).collect();
    prop::collection::vec((prop::sample::select(monos), 0..order, -3i64..=3), 1..4).prop_map(
        move |terms| {
            let mut x = AlgebraElement::zero(&f, n);
            for (m, g, c) in terms {
                x.add_term(m, g, CycNum::from_int(&f, c));
            }
            x
        },
    )
}

fn random_point(group: &Group, refl: &ReflectionData, seed: &[i64]) -> ParamPoint {
    let f = group.field();
    let mut p = ParamPoint::zero(f, refl);
    let mut it = seed.iter().cycle();
    for t in &mut p.t {
        *t = CycNum::from_int(f, *it.next().unwrap());
    }
    for c in p.c.values_mut() {
        *c = CycNum::from_int(f, *it.next().unwrap());
    }
    p
}

fn algebra_properties(group: Group) {
    let refl = ReflectionData::compute(&group).unwrap();
    let strat = (
        element(&group),
        element(&group),
        element(&group),
        prop::collection::vec(-3i64..=3, 4),
    );
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(24));
    runner
        .run(&strat, |(a, b, c, seed)| {
            let p = random_point(&group, &refl, &seed);
            let k = kappa_from_params(&group, &refl, &p).unwrap();
            prop_assert_eq!(pbw_overlap_check(&group, &k).unwrap(), Ok(()));
            let alg = PbwAlgebra::new(&group, &k).unwrap();
            let ab = alg.multiply(&a, &b);
            prop_assert_eq!(
                alg.multiply(&ab, &c),
                alg.multiply(&a, &alg.multiply(&b, &c))
            );
            prop_assert_eq!(
                alg.multiply(&a.add(&b), &c),
                alg.multiply(&a, &c).add(&alg.multiply(&b, &c))
            );
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                let top = ab.homogeneous_component(da + db);
                prop_assert!(ab.degree().unwrap_or(0) <= da + db);
                prop_assert_eq!(
                    top,
                    skew_group_product(&group, &a.top_component(), &b.top_component())
                );
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn algebra_plus_minus() {
    algebra_properties(common::plus_minus());
}

#[test]
fn algebra_z4() {
    algebra_properties(common::z4());
}

#[test]
fn algebra_s3_reflection() {
    algebra_properties(common::s3_reflection());
}

#[test]
fn algebra_wreath() {
    algebra_properties(common::wreath_symplectic());
}

#[test]
fn symmetrizer_absorbs_group() {
    for (g, _, _) in common::corpus() {
        let refl = ReflectionData::compute(&g).unwrap();
        let p = random_point(&g, &refl, &[1, 2, 3]);
        let k = kappa_from_params(&g, &refl, &p).unwrap();
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let e = symmetrizer(&g);
        assert_eq!(alg.multiply(&e, &e), e);
        for h in 0..g.order() {
            let he = AlgebraElement::group_element(g.field(), g.dim(), h);
            assert_eq!(alg.multiply(&e, &he), e);
            assert_eq!(alg.multiply(&he, &e), e);
        }
    }
}

#[test]
fn scaling_with_random_parameters() {
    let f4 = CycField::new(4).unwrap();
    for (g, _, _) in common::corpus() {
        let refl = ReflectionData::compute(&g).unwrap();
        let p = random_point(&g, &refl, &[2, -1, 3]);
        let k = kappa_from_params(&g, &refl, &p).unwrap();
        for mu in [
            CycNum::from_int(g.field(), 3),
            CycNum::zeta_pow(&f4, 1),
            CycNum::from_frac(g.field(), -1, 2),
        ] {
            assert_eq!(
                scaling_check(&g, &k, &mu, 3).unwrap(),
                Ok(()),
                "{:?}",
                g.name()
            );
        }
    }
}

/// Antisymmetry, Leibniz and Jacobi for the extracted bracket on invariants.
#[test]
fn bracket_axioms() {
    for g in [
        common::trivial(2),
        common::plus_minus(),
        common::wreath_symplectic(),
    ] {
        let refl = ReflectionData::compute(&g).unwrap();
        let p = random_point(&g, &refl, &[3, 1, -2]);
        let k = kappa_from_params(&g, &refl, &p).unwrap();
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let omega = omega_matrix(g.field(), &refl, &p, g.dim()).unwrap();
        let mut invs: Vec<Poly> = Vec::new();
        for d in 1..=2 {
            invs.extend(invariant_polys(&g, d));
        }
        let br = |a: &Poly, b: &Poly| poisson_bracket(&alg, a, b).unwrap();
        for a in &invs {
            assert!(br(a, a).is_zero());
            for b in &invs {
                assert_eq!(br(a, b), br(b, a).scale(&CycNum::from_int(g.field(), -1)));
                assert_eq!(br(a, b), leibniz_bracket(&omega, a, b));
                for c in &invs {
                    // {a, bc} = {a, b}c + b{a, c}
                    let lhs = br(a, &b.mul(c));
                    let rhs = br(a, b).mul(c).add(&b.mul(&br(a, c)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // Jacobi on the first few triples, with brackets of brackets in S(V).
        for a in invs.iter().take(3) {
            for b in invs.iter().take(3) {
                for c in invs.iter().take(3) {
                    let lb = |x: &Poly, y: &Poly| leibniz_bracket(&omega, x, y);
                    let j = lb(a, &br(b, c))
                        .add(&lb(b, &br(c, a)))
                        .add(&lb(c, &br(a, b)));
                    assert!(j.is_zero());
                }
            }
        }
    }
}
