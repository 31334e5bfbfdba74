//! The spherical subalgebra `eAe`: commutativity probes, the Poisson bracket on
//! `S(V)^G`, the trace identity and parameter scans.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cyclo::{CycField, CycNum};
use crate::group::Group;
use crate::kappa::{kappa_from_params, KappaMap, ParamPoint};
use crate::linalg::{self, Mat};
use crate::pbw::{AlgebraElement, PbwAlgebra};
use crate::poly::{self, leibniz_bracket, Poly};
use crate::refl::ReflectionData;
use crate::{Error, Result};

use alloc::sync::Arc;

/// `e = (1/|G|) Σ_g g`.
pub fn symmetrizer(group: &Group) -> AlgebraElement {
    let field = group.field();
    let w = CycNum::from_frac(field, 1, group.order() as i64);
    let mut e = AlgebraElement::zero(field, group.dim());
    for g in 0..group.order() {
        e.add_term(poly::Monomial::one(group.dim()), g, w.clone());
    }
    e
}

/// Reynolds average `(1/|G|) Σ_g g·p` in the commutative ring `S(V)`.
pub fn reynolds(group: &Group, p: &Poly) -> Poly {
    let mut acc = Poly::zero(p.field(), p.nvars());
    for g in group.elements() {
        acc = acc.add(&p.act(g));
    }
    acc.scale(&CycNum::from_frac(p.field(), 1, group.order() as i64))
}

/// Echelon basis of `S^d(V)^G` as polynomials.
pub fn invariant_polys(group: &Group, d: u32) -> Vec<Poly> {
    let field = group.field();
    let n = group.dim();
    let monos = poly::monomials_of_degree(n, d);
    let averaged: Vec<Vec<CycNum>> = monos
        .iter()
        .map(|m| {
            reynolds(group, &Poly::monomial(field, m.clone(), CycNum::one(field)))
                .coordinates(&monos)
        })
        .collect();
    linalg::span_basis(field, monos.len(), &averaged)
        .iter()
        .map(|v| Poly::from_coordinates(field, n, &monos, v))
        .collect()
}

/// Ordered-monomial lifts of [`invariant_polys`].
pub fn invariant_basis(group: &Group, d: u32) -> Vec<AlgebraElement> {
    invariant_polys(group, d)
        .iter()
        .map(AlgebraElement::from_poly)
        .collect()
}

/// `e·x`.
pub fn left_symmetrize(alg: &PbwAlgebra<'_>, x: &AlgebraElement) -> AlgebraElement {
    let group = alg.group();
    let mut acc = alg.zero();
    for g in 0..group.order() {
        let ge = AlgebraElement::group_element(alg.field(), alg.dim(), g);
        acc.add_assign(&alg.multiply(&ge, x));
    }
    acc.scale(&CycNum::from_frac(alg.field(), 1, group.order() as i64))
}

/// `x·e`.
pub fn right_symmetrize(alg: &PbwAlgebra<'_>, x: &AlgebraElement) -> AlgebraElement {
    let group = alg.group();
    let mut acc = alg.zero();
    for g in 0..group.order() {
        acc.add_assign(&alg.right_mul_group(x, g));
    }
    acc.scale(&CycNum::from_frac(alg.field(), 1, group.order() as i64))
}

/// `e·x·e`.
pub fn sandwich(alg: &PbwAlgebra<'_>, x: &AlgebraElement) -> AlgebraElement {
    left_symmetrize(alg, &right_symmetrize(alg, x))
}

/// `[epe, eqe]`, computed as `e·(p·eqe − q·epe)`.
pub fn spherical_commutator(
    alg: &PbwAlgebra<'_>,
    p: &AlgebraElement,
    q: &AlgebraElement,
) -> AlgebraElement {
    let epe = sandwich(alg, p);
    let eqe = sandwich(alg, q);
    let inner = alg.multiply(p, &eqe).sub(&alg.multiply(q, &epe));
    left_symmetrize(alg, &inner)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p: Poly,
    pub q: Poly,
    /// `max(deg p, deg q)`.
    pub degree: u32,
    /// `[epe, eqe]` in normal form.
    pub commutator: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No pair of invariants of degree at most `D` failed to commute. Evidence,
    /// not proof.
    CommutativeUpTo(u32),
    Noncommutative(Witness),
}

impl Verdict {
    pub fn witness_degree(&self) -> Option<u32> {
        match self {
            Verdict::CommutativeUpTo(_) => None,
            Verdict::Noncommutative(w) => Some(w.degree),
        }
    }

    pub fn is_commutative(&self) -> bool {
        matches!(self, Verdict::CommutativeUpTo(_))
    }
}

/// Invariant bases for degrees `1..=d`, index `k - 1` holding degree `k`.
fn invariants_up_to(group: &Group, d: u32) -> Vec<Vec<Poly>> {
    (1..=d).map(|k| invariant_polys(group, k)).collect()
}

/// Unordered pairs of invariant lifts with both degrees in `1..=d`, sorted by
/// the larger degree.
fn invariant_pairs(invs: &[Vec<Poly>]) -> Vec<(u32, Poly, Poly)> {
    let mut flat: Vec<(u32, &Poly)> = Vec::new();
    for (k, basis) in invs.iter().enumerate() {
        for p in basis {
            flat.push((k as u32 + 1, p));
        }
    }
    let mut out = Vec::new();
    for (a, (da, p)) in flat.iter().enumerate() {
        for (db, q) in flat.iter().skip(a + 1) {
            out.push(((*da).max(*db), (*p).clone(), (*q).clone()));
        }
    }
    out.sort_by_key(|(d, _, _)| *d);
    out
}

/// Looks for invariants `p, q` of degree at most `d` with `[epe, eqe] ≠ 0`.
pub fn spherical_commutator_probe(group: &Group, kappa: &KappaMap, d: u32) -> Result<Verdict> {
    let alg = PbwAlgebra::new(group, kappa)?;
    let invs = invariants_up_to(group, d);
    for (deg, p, q) in invariant_pairs(&invs) {
        let c = spherical_commutator(
            &alg,
            &AlgebraElement::from_poly(&p),
            &AlgebraElement::from_poly(&q),
        );
        if !c.is_zero() {
            return Ok(Verdict::Noncommutative(Witness {
                p,
                q,
                degree: deg,
                commutator: c,
            }));
        }
    }
    Ok(Verdict::CommutativeUpTo(d))
}

/// Recomputes a witness with a fresh engine and the unoptimized product
/// `epe·eqe − eqe·epe`.
pub fn verify_witness(group: &Group, kappa: &KappaMap, w: &Witness) -> Result<bool> {
    let alg = PbwAlgebra::new(group, kappa)?;
    let e = symmetrizer(group);
    let p = AlgebraElement::from_poly(&w.p);
    let q = AlgebraElement::from_poly(&w.q);
    let epe = alg.multiply(&alg.multiply(&e, &p), &e);
    let eqe = alg.multiply(&alg.multiply(&e, &q), &e);
    let c = alg.commutator(&epe, &eqe);
    Ok(!c.is_zero() && c == w.commutator)
}

/// `{p, q}` on `S(V)^G`: the degree `a + b − 2` part of `pq − qp`, pushed to
/// `eAe` (`Σ_g f_g g ↦ Reynolds(Σ_g f_g)`).
///
/// Fails if `pq − qp` has a component above degree `a + b − 2`.
pub fn poisson_bracket(alg: &PbwAlgebra<'_>, p: &Poly, q: &Poly) -> Result<Poly> {
    let (Some(a), Some(b)) = (p.degree(), q.degree()) else {
        return Ok(Poly::zero(alg.field(), alg.dim()));
    };
    let pe = AlgebraElement::from_poly(p);
    let qe = AlgebraElement::from_poly(q);
    let c = alg.commutator(&pe, &qe);
    let Some(deg) = c.degree() else {
        return Ok(Poly::zero(alg.field(), alg.dim()));
    };
    if a + b < 2 {
        return Err(Error::Internal("commutator of constants is nonzero".into()));
    }
    if deg > a + b - 2 {
        return Err(Error::Internal(alloc::format!(
            "commutator has degree {deg} above {}",
            a + b - 2
        )));
    }
    let top = c.homogeneous_component(a + b - 2);
    Ok(reynolds(alg.group(), &top.forget_group()))
}

/// `Ω = Σ t_i b_i` as a matrix.
pub fn omega_matrix(
    field: &Arc<CycField>,
    refl: &ReflectionData,
    params: &ParamPoint,
    n: usize,
) -> Result<Mat> {
    let params = params.coerce_to(field)?;
    let mut m = Mat::zeros(field, n, n);
    for (b, t) in refl.invariant_forms.iter().zip(&params.t) {
        m = m.add(&b.matrix().coerce_to(field)?.scale(t));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonMismatch {
    pub p: Poly,
    pub q: Poly,
    pub bracket: Option<Poly>,
    pub expected: Poly,
    pub reason: String,
}

/// Compares the extracted bracket with the Leibniz extension of `Σ t_i b_i`
/// for every pair of invariants of degree at most `d` (including `{p, p}`).
pub fn poisson_crosscheck(
    group: &Group,
    refl: &ReflectionData,
    params: &ParamPoint,
    d: u32,
) -> Result<core::result::Result<(), PoissonMismatch>> {
    let kappa = kappa_from_params(group, refl, params)?;
    let alg = PbwAlgebra::new(group, &kappa)?;
    let omega = omega_matrix(group.field(), refl, params, group.dim())?;
    let invs = invariants_up_to(group, d);
    let flat: Vec<&Poly> = invs.iter().flatten().collect();
    for (a, p) in flat.iter().enumerate() {
        for q in &flat[a..] {
            let expected = leibniz_bracket(&omega, p, q);
            let mismatch = |bracket: Option<Poly>, reason: String| PoissonMismatch {
                p: (*p).clone(),
                q: (*q).clone(),
                bracket,
                expected: expected.clone(),
                reason,
            };
            match poisson_bracket(&alg, p, q) {
                Err(Error::Internal(msg)) => return Ok(Err(mismatch(None, msg))),
                Err(e) => return Err(e),
                Ok(b) if b != expected => {
                    return Ok(Err(mismatch(
                        Some(b),
                        "bracket differs from Leibniz extension".into(),
                    )))
                }
                Ok(_) => {}
            }
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMismatch {
    pub i: usize,
    pub j: usize,
    pub trace: CycNum,
    pub expected: CycNum,
}

/// Regular-representation trace of `κ(v_i, v_j)` against `|G|·Ω(v_i, v_j)` on
/// every basis pair. Only the identity contributes to a regular trace.
pub fn trace_identity_check(
    group: &Group,
    refl: &ReflectionData,
    params: &ParamPoint,
    kappa: &KappaMap,
) -> Result<core::result::Result<(), TraceMismatch>> {
    let field = group.field();
    let omega = omega_matrix(field, refl, params, group.dim())?;
    let order = CycNum::from_int(field, group.order() as i64);
    for (i, j) in kappa.pairs() {
        let trace = &order * &kappa.coeff(i, j, 0);
        let expected = &order * omega.get(i, j);
        if trace != expected {
            return Ok(Err(TraceMismatch {
                i,
                j,
                trace,
                expected,
            }));
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub params: ParamPoint,
    pub degree_bound: u32,
    pub verdict: Verdict,
    pub poisson_match: bool,
    pub trace_identity: bool,
    /// Whether `G` is generated by `𝒮′`; the probe of `eAe` reflects the center
    /// of `A` only in that case.
    pub g_equals_s: bool,
    pub warnings: Vec<String>,
}

/// Embeds the group into a field large enough for the parameters, recomputing
/// the reflection data when the field changes.
pub fn align_field(
    group: &Group,
    refl: &ReflectionData,
    params: &ParamPoint,
) -> Result<Option<(Group, ReflectionData)>> {
    use num_integer::Integer;
    let m = group.field().conductor();
    let l = m.lcm(&params.conductor());
    if l == m {
        return Ok(None);
    }
    let _ = refl;
    let field = CycField::new(l)?;
    let g = group.over_field(&field)?;
    let r = ReflectionData::compute(&g)?;
    Ok(Some((g, r)))
}

/// Runs the commutator probe, the Poisson comparison and the trace identity at
/// one parameter point.
pub fn probe_point(
    group: &Group,
    refl: &ReflectionData,
    params: &ParamPoint,
    d: u32,
) -> Result<ProbeReport> {
    let aligned = align_field(group, refl, params)?;
    let (group, refl) = match &aligned {
        Some((g, r)) => (g, r),
        None => (group, refl),
    };
    let kappa = kappa_from_params(group, refl, params)?;
    let verdict = spherical_commutator_probe(group, &kappa, d)?;
    let poisson_match = poisson_crosscheck(group, refl, params, d)?.is_ok();
    let trace_identity = trace_identity_check(group, refl, params, &kappa)?.is_ok();
    let g_equals_s = refl.g_equals_s(group);
    let mut warnings = Vec::new();
    if !g_equals_s {
        warnings.push(String::from(
            "G is not generated by admissible bireflections; eAe need not reflect the center of A",
        ));
    }
    if let Verdict::CommutativeUpTo(_) = verdict {
        if !params.t_is_zero() {
            warnings.push(alloc::format!(
                "no witness up to degree {d} although t is nonzero; increase the degree bound"
            ));
        }
    }
    Ok(ProbeReport {
        params: params.clone(),
        degree_bound: d,
        verdict,
        poisson_match,
        trace_identity,
        g_equals_s,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub params: ParamPoint,
    pub verdict: Verdict,
}

impl ScanRow {
    pub fn witness_degree(&self) -> Option<u32> {
        self.verdict.witness_degree()
    }

    /// Whether the row follows the expected pattern: a witness exactly when some
    /// `t_i` is nonzero.
    pub fn consistent(&self) -> bool {
        self.verdict.is_commutative() == self.params.t_is_zero()
    }
}

/// Probes every grid point; rows come back sorted by parameter.
pub fn dichotomy_scan(
    group: &Group,
    refl: &ReflectionData,
    grid: &[ParamPoint],
    d: u32,
) -> Result<Vec<ScanRow>> {
    let mut rows = grid
        .iter()
        .map(|p| scan_point(group, refl, p, d))
        .collect::<Result<Vec<_>>>()?;
    sort_rows(&mut rows);
    Ok(rows)
}

/// One row of [`dichotomy_scan`].
pub fn scan_point(
    group: &Group,
    refl: &ReflectionData,
    params: &ParamPoint,
    d: u32,
) -> Result<ScanRow> {
    let aligned = align_field(group, refl, params)?;
    let (group, refl) = match &aligned {
        Some((g, r)) => (g, r),
        None => (group, refl),
    };
    let kappa = kappa_from_params(group, refl, params)?;
    Ok(ScanRow {
        params: params.clone(),
        verdict: spherical_commutator_probe(group, &kappa, d)?,
    })
}

pub fn sort_rows(rows: &mut [ScanRow]) {
    rows.sort_by(|a, b| a.params.cmp(&b.params));
}

/// Every combination of the given values for each `t_i` and each class `c`.
pub fn grid_product(refl: &ReflectionData, values: &[CycNum]) -> Vec<ParamPoint> {
    let slots = refl.n_invariant() + refl.sprime_classes.len();
    let mut out = Vec::new();
    if values.is_empty() {
        return out;
    }
    let mut idx = alloc::vec![0usize; slots];
    loop {
        let t = idx[..refl.n_invariant()]
            .iter()
            .map(|&k| values[k].clone())
            .collect();
        let c: BTreeMap<usize, CycNum> = refl
            .sprime_classes
            .iter()
            .zip(&idx[refl.n_invariant()..])
            .map(|(cl, &k)| (cl.representative, values[k].clone()))
            .collect();
        out.push(ParamPoint { t, c });
        let mut pos = 0;
        loop {
            if pos == slots {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::poly::Monomial;

    fn q() -> Arc<CycField> {
        CycField::new(1).unwrap()
    }

    fn pm(f: &Arc<CycField>) -> Group {
        let minus = Mat::identity(f, 2).scale(&CycNum::from_int(f, -1));
        Group::close_generators(f, 2, &[minus], DEFAULT_CAP).unwrap()
    }

    fn point(f: &Arc<CycField>, refl: &ReflectionData, t: i64, c: i64) -> ParamPoint {
        let mut p = ParamPoint::zero(f, refl);
        for x in &mut p.t {
            *x = CycNum::from_int(f, t);
        }
        for x in p.c.values_mut() {
            *x = CycNum::from_int(f, c);
        }
        p
    }

    #[test]
    fn symmetrizer_is_idempotent() {
        let f = q();
        let g = pm(&f);
        let k = KappaMap::zero(&f, 2, 2);
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let e = symmetrizer(&g);
        assert_eq!(alg.multiply(&e, &e), e);
        for h in 0..g.order() {
            let he = AlgebraElement::group_element(&f, 2, h);
            assert_eq!(alg.multiply(&e, &he), e);
            assert_eq!(alg.multiply(&he, &e), e);
        }
    }

    #[test]
    fn invariants_of_minus_identity() {
        let f = q();
        let g = pm(&f);
        assert!(invariant_polys(&g, 1).is_empty());
        let deg2 = invariant_polys(&g, 2);
        assert_eq!(deg2.len(), 3);
        let mut monos: Vec<Monomial> = deg2
            .iter()
            .flat_map(|p| p.terms().keys().cloned())
            .collect();
        monos.sort();
        assert_eq!(monos, poly::monomials_of_degree(2, 2));
    }

    #[test]
    fn dichotomy_on_minus_identity() {
        let f = q();
        let g = pm(&f);
        let refl = ReflectionData::compute(&g).unwrap();
        let k1 = kappa_from_params(&g, &refl, &point(&f, &refl, 1, 0)).unwrap();
        let v = spherical_commutator_probe(&g, &k1, 4).unwrap();
        let Verdict::Noncommutative(w) = &v else {
            panic!("expected witness")
        };
        assert_eq!(w.degree, 2);
        assert!(verify_witness(&g, &k1, w).unwrap());
        let k0 = kappa_from_params(&g, &refl, &point(&f, &refl, 0, 1)).unwrap();
        assert_eq!(
            spherical_commutator_probe(&g, &k0, 4).unwrap(),
            Verdict::CommutativeUpTo(4)
        );
    }

    #[test]
    fn poisson_and_trace_on_minus_identity() {
        let f = q();
        let g = pm(&f);
        let refl = ReflectionData::compute(&g).unwrap();
        for (t, c) in [(1, 0), (1, 5), (0, 3), (2, -1)] {
            let p = point(&f, &refl, t, c);
            assert_eq!(poisson_crosscheck(&g, &refl, &p, 4).unwrap(), Ok(()));
            let k = kappa_from_params(&g, &refl, &p).unwrap();
            assert_eq!(trace_identity_check(&g, &refl, &p, &k).unwrap(), Ok(()));
        }
    }

    #[test]
    fn grid_covers_all_combinations() {
        let f = q();
        let g = pm(&f);
        let refl = ReflectionData::compute(&g).unwrap();
        let vals = [CycNum::zero(&f), CycNum::one(&f)];
        let grid = grid_product(&refl, &vals);
        assert_eq!(grid.len(), 4);
        let rows = dichotomy_scan(&g, &refl, &grid, 2).unwrap();
        assert!(rows.iter().all(ScanRow::consistent));
        assert!(rows.windows(2).all(|w| w[0].params <= w[1].params));
    }
}
