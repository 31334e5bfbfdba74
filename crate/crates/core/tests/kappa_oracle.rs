//! The space of admissible `κ` computed three ways: the closed form, the linear
//! system, and (here) the kernel of the overlap discrepancies over unit maps.

mod common;

use std::collections::BTreeMap;

use hecke_core::kappa::{classification_crosscheck, closed_form_basis, valid_kappa_basis};
use hecke_core::linalg::{self, Mat};
use hecke_core::pbw::{pbw_overlap_check, OverlapKind, OverlapWitness};
use hecke_core::poly::Monomial;
use hecke_core::{AlgebraElement, CycNum, Group, KappaMap, Letter, PbwAlgebra, ReflectionData};

/// Both reductions of every overlap (triples and every group element, not just
/// generators), expressed through `normal_form` on words only.
fn discrepancies(group: &Group, kappa: &KappaMap) -> Vec<AlgebraElement> {
    use Letter::{Group as G, Vector as V};
    let alg = PbwAlgebra::new(group, kappa).unwrap();
    let n = group.dim();
    let word_times_kappa = |prefix: &[Letter], a: usize, b: usize, suffix: &[Letter]| {
        let mut acc = alg.zero();
        for (h, c) in kappa.value(a, b) {
            let mut w = prefix.to_vec();
            w.push(G(h));
            w.extend_from_slice(suffix);
            acc.add_assign(&alg.normal_form(&w).unwrap().scale(&c));
        }
        acc
    };
    let mut out = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let left = alg
                    .normal_form(&[V(j), V(k), V(i)])
                    .unwrap()
                    .add(&word_times_kappa(&[], k, j, &[V(i)]));
                let right = alg
                    .normal_form(&[V(k), V(i), V(j)])
                    .unwrap()
                    .add(&word_times_kappa(&[V(k)], j, i, &[]));
                out.push(left.sub(&right));
            }
        }
    }
    for g in 0..group.order() {
        for j in 0..n {
            for i in 0..j {
                let left = alg.normal_form(&[G(g), V(j), V(i)]).unwrap();
                let right = alg
                    .normal_form(&[G(g), V(i), V(j)])
                    .unwrap()
                    .add(&word_times_kappa(&[G(g)], j, i, &[]));
                out.push(left.sub(&right));
            }
        }
    }
    out
}

fn oracle_dimension(group: &Group) -> usize {
    let f = group.field().clone();
    let n = group.dim();
    let mut columns: Vec<BTreeMap<(usize, Monomial, usize), CycNum>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for g in 0..group.order() {
                let mut k = KappaMap::zero(&f, n, group.order());
                k.set(i, j, g, CycNum::one(&f));
                let mut col = BTreeMap::new();
                for (slot, d) in discrepancies(group, &k).into_iter().enumerate() {
                    for ((m, h), c) in d.terms() {
                        col.insert((slot, m.clone(), *h), c.clone());
                    }
                }
                columns.push(col);
            }
        }
    }
    let unknowns = columns.len();
    if unknowns == 0 {
        return 0;
    }
    let keys: Vec<_> = columns
        .iter()
        .flat_map(|c| c.keys().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut m = Mat::zeros(&f, keys.len().max(1), unknowns);
    for (u, col) in columns.iter().enumerate() {
        for (r, key) in keys.iter().enumerate() {
            if let Some(c) = col.get(key) {
                m.set(r, u, c.clone());
            }
        }
    }
    unknowns - linalg::rank(&m)
}

#[test]
fn dimensions_agree_across_all_three_routes() {
    for (g, n_inv, classes) in common::corpus() {
        let name = g.name().unwrap().to_string();
        let refl = ReflectionData::compute(&g).unwrap();
        assert_eq!(refl.n_invariant(), n_inv, "{name}: N");
        assert_eq!(refl.sprime_classes.len(), classes, "{name}: classes");
        let basis = valid_kappa_basis(&g).unwrap();
        assert_eq!(basis.len(), n_inv + classes, "{name}: linear system");
        assert_eq!(
            oracle_dimension(&g),
            n_inv + classes,
            "{name}: overlap oracle"
        );
        let report = classification_crosscheck(&g, &refl, &basis).unwrap();
        assert!(report.passed(), "{name}: {report:?}");
    }
}

#[test]
fn expected_small_dimensions() {
    let dim = |g: &Group| valid_kappa_basis(g).unwrap().len();
    assert_eq!(dim(&common::trivial(2)), 1);
    assert_eq!(dim(&common::plus_minus()), 2);
    assert_eq!(dim(&common::z4()), 4);
    assert_eq!(dim(&common::s3_reflection()), 1);
}

#[test]
fn closed_form_maps_resolve_every_overlap() {
    for (g, _, _) in common::corpus() {
        let refl = ReflectionData::compute(&g).unwrap();
        for k in closed_form_basis(&g, &refl).unwrap() {
            assert_eq!(pbw_overlap_check(&g, &k).unwrap(), Ok(()), "{:?}", g.name());
            assert!(discrepancies(&g, &k).iter().all(AlgebraElement::is_zero));
        }
    }
}

#[test]
fn unequal_values_on_a_class_break_invariance() {
    let g = common::s3_reflection();
    let refl = ReflectionData::compute(&g).unwrap();
    let f = g.field().clone();
    let class = &refl.sprime_classes[0];
    assert_eq!(class.members.len(), 2);
    let mut k = KappaMap::zero(&f, 2, g.order());
    for (s, c) in class.members.iter().zip([1, 2]) {
        let om = &refl.omega[s];
        k.set(0, 1, *s, om.entry(0, 1) * &CycNum::from_int(&f, c));
    }
    match pbw_overlap_check(&g, &k).unwrap() {
        Err(OverlapWitness {
            kind: OverlapKind::Group { .. },
            discrepancy,
        }) => assert!(!discrepancy.is_zero()),
        other => panic!("expected a group overlap failure, got {other:?}"),
    }
}

#[test]
fn minus_identity_form_is_standard() {
    let g = common::plus_minus();
    let refl = ReflectionData::compute(&g).unwrap();
    let om = &refl.omega[&1];
    assert!(om.entry(0, 1).is_one());
}
