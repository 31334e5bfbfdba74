#![allow(dead_code)]

use std::sync::Arc;

use hecke_core::group::DEFAULT_CAP;
use hecke_core::{CycField, CycNum, Group, Mat};

pub fn rationals() -> Arc<CycField> {
    CycField::new(1).unwrap()
}

fn close(f: &Arc<CycField>, n: usize, gens: &[Mat], name: &str) -> Group {
    Group::close_generators(f, n, gens, DEFAULT_CAP)
        .unwrap()
        .with_name(name)
}

pub fn trivial(n: usize) -> Group {
    close(&rationals(), n, &[], &format!("trivial-{n}"))
}

pub fn plus_minus() -> Group {
    let f = rationals();
    let minus = Mat::identity(&f, 2).scale(&CycNum::from_int(&f, -1));
    close(&f, 2, &[minus], "plus-minus")
}

pub fn z4() -> Group {
    let f = rationals();
    close(&f, 2, &[Mat::from_int_rows(&f, &[&[0, -1], &[1, 0]])], "z4")
}

pub fn d4() -> Group {
    let f = rationals();
    let rot = Mat::from_int_rows(&f, &[&[0, -1], &[1, 0]]);
    let refl = Mat::from_int_rows(&f, &[&[1, 0], &[0, -1]]);
    close(&f, 2, &[rot, refl], "d4")
}

pub fn s3_reflection() -> Group {
    let f = rationals();
    let a = Mat::from_int_rows(&f, &[&[-1, 1], &[0, 1]]);
    let b = Mat::from_int_rows(&f, &[&[1, 0], &[1, -1]]);
    close(&f, 2, &[a, b], "s3-reflection")
}

pub fn s3_permutation() -> Group {
    let f = rationals();
    let s = Mat::from_int_rows(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let c = Mat::from_int_rows(&f, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    close(&f, 3, &[s, c], "s3-permutation")
}

/// Signed permutations of two coordinates acting diagonally on `h ⊕ h*`.
pub fn wreath_symplectic() -> Group {
    let f = rationals();
    let e = Mat::from_int_rows(
        &f,
        &[&[-1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1]],
    );
    let w = Mat::from_int_rows(
        &f,
        &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
    );
    close(&f, 4, &[e, w], "z2-wreath-s2")
}

/// `(group, N, number of admissible classes)` for every corpus group.
pub fn corpus() -> Vec<(Group, usize, usize)> {
    vec![
        (trivial(1), 0, 0),
        (trivial(2), 1, 0),
        (trivial(3), 3, 0),
        (plus_minus(), 1, 1),
        (z4(), 1, 3),
        (d4(), 0, 1),
        (s3_reflection(), 0, 1),
        (s3_permutation(), 0, 1),
        (wreath_symplectic(), 1, 2),
    ]
}
