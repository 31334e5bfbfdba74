//! Deformation maps `κ : V × V → ℂG`.
//!
//! Two routes to the space of admissible `κ`:
//!
//! * [`kappa_from_params`] evaluates the closed form
//!   `κ(v, w) = Ω(v, w)·id + Σ_{s ∈ 𝒮′} c_s Ω_s(v, w)·s` with `Ω = Σ t_i b_i`;
//! * [`valid_kappa_basis`] solves the raw linear conditions: `G`-invariance and
//!   `id ⊗ κ − κ ⊗ id = 0` on `(C ⊗ V) ∩ (V ⊗ C)` where `C ⊂ V ⊗ V` is spanned
//!   by commutators.
//!
//! [`classification_crosscheck`] compares the two.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::{CycField, CycNum};
use crate::group::Group;
use crate::linalg::{self, Mat, Vector};
use crate::refl::ReflectionData;
use crate::{Error, Result};

/// `κ(v_i, v_j) ∈ ℂG` for every basis pair `i < j`, stored densely over `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaMap {
    field: Arc<CycField>,
    dim: usize,
    group_order: usize,
    table: Vec<Vec<CycNum>>,
}

fn pair_slot(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl KappaMap {
    pub fn zero(field: &Arc<CycField>, dim: usize, group_order: usize) -> KappaMap {
        let pairs = dim * dim.saturating_sub(1) / 2;
        KappaMap {
            field: field.clone(),
            dim,
            group_order,
            table: vec![vec![CycNum::zero(field); group_order]; pairs],
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn num_pairs(&self) -> usize {
        self.table.len()
    }

    /// Basis pairs `(i, j)`, `i < j`, in storage order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.table.len());
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.push((i, j));
            }
        }
        out
    }

    /// Coefficient of `g` in `κ(v_i, v_j)`, for any `i, j`.
    pub fn coeff(&self, i: usize, j: usize, g: usize) -> CycNum {
        match i.cmp(&j) {
            core::cmp::Ordering::Equal => CycNum::zero(&self.field),
            core::cmp::Ordering::Less => self.table[pair_slot(self.dim, i, j)][g].clone(),
            core::cmp::Ordering::Greater => -&self.table[pair_slot(self.dim, j, i)][g],
        }
    }

    /// Nonzero terms `(g, coefficient)` of `κ(v_i, v_j)`.
    pub fn value(&self, i: usize, j: usize) -> Vec<(usize, CycNum)> {
        (0..self.group_order)
            .map(|g| (g, self.coeff(i, j, g)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn set(&mut self, i: usize, j: usize, g: usize, c: CycNum) {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self.table[pair_slot(self.dim, i, j)][g] = c,
            core::cmp::Ordering::Greater => self.table[pair_slot(self.dim, j, i)][g] = -c,
            core::cmp::Ordering::Equal => {}
        }
    }

    fn add_to(&mut self, i: usize, j: usize, g: usize, c: &CycNum) {
        if i < j {
            self.table[pair_slot(self.dim, i, j)][g] += c;
        } else if i > j {
            self.table[pair_slot(self.dim, j, i)][g] -= c;
        }
    }

    pub fn coerce_to(&self, target: &Arc<CycField>) -> Result<KappaMap> {
        Ok(KappaMap {
            field: target.clone(),
            dim: self.dim,
            group_order: self.group_order,
            table: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| x.coerce_to(target))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(CycNum::is_zero)
    }

    pub fn scale(&self, c: &CycNum) -> KappaMap {
        KappaMap {
            field: self.field.clone(),
            dim: self.dim,
            group_order: self.group_order,
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &KappaMap) -> KappaMap {
        KappaMap {
            field: self.field.clone(),
            dim: self.dim,
            group_order: self.group_order,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// Flat coordinates: pair-major, then group index.
    pub fn to_vector(&self) -> Vector {
        self.table.iter().flatten().cloned().collect()
    }

    pub fn from_vector(
        field: &Arc<CycField>,
        dim: usize,
        group_order: usize,
        v: &[CycNum],
    ) -> KappaMap {
        let mut k = KappaMap::zero(field, dim, group_order);
        for (slot, row) in k.table.iter_mut().enumerate() {
            row.clone_from_slice(&v[slot * group_order..(slot + 1) * group_order]);
        }
        k
    }

    /// Group elements appearing with a nonzero coefficient anywhere in `κ`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.group_order)
            .filter(|&g| self.table.iter().any(|row| !row[g].is_zero()))
            .collect()
    }

    /// `κ(g v, g w) = g κ(v, w) g⁻¹` for every `g` in `elements`; returns the
    /// first failing element.
    pub fn invariance_violation(&self, group: &Group, elements: &[usize]) -> Option<usize> {
        let n = self.dim;
        for &h in elements {
            let hm = group.element(h);
            for (a, b) in self.pairs() {
                for g in 0..self.group_order {
                    let mut lhs = CycNum::zero(&self.field);
                    for c in 0..n {
                        let hca = hm.get(c, a);
                        if hca.is_zero() {
                            continue;
                        }
                        for d in 0..n {
                            let hdb = hm.get(d, b);
                            if hdb.is_zero() || c == d {
                                continue;
                            }
                            lhs += &(&(hca * hdb) * &self.coeff(c, d, g));
                        }
                    }
                    let rhs = self.coeff(a, b, group.mul(group.mul(group.inv(h), g), h));
                    if lhs != rhs {
                        return Some(h);
                    }
                }
            }
        }
        None
    }
}

/// Deformation parameters: `t` against the invariant form basis and `c` keyed by
/// the representative of each `𝒮′` class. Missing classes read as zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamPoint {
    pub t: Vec<CycNum>,
    pub c: BTreeMap<usize, CycNum>,
}

impl ParamPoint {
    pub fn zero(field: &Arc<CycField>, refl: &ReflectionData) -> ParamPoint {
        ParamPoint {
            t: vec![CycNum::zero(field); refl.n_invariant()],
            c: refl
                .sprime_classes
                .iter()
                .map(|cl| (cl.representative, CycNum::zero(field)))
                .collect(),
        }
    }

    /// Embeds every parameter into `target`; fails if some value does not live there.
    pub fn coerce_to(&self, target: &Arc<CycField>) -> Result<ParamPoint> {
        Ok(ParamPoint {
            t: self
                .t
                .iter()
                .map(|x| x.coerce_to(target))
                .collect::<Result<_>>()?,
            c: self
                .c
                .iter()
                .map(|(k, x)| Ok((*k, x.coerce_to(target)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Smallest conductor containing every parameter value.
    pub fn conductor(&self) -> u64 {
        use num_integer::Integer;
        self.t
            .iter()
            .chain(self.c.values())
            .fold(1u64, |acc, x| acc.lcm(&x.conductor()))
    }

    pub fn t_is_zero(&self) -> bool {
        self.t.iter().all(CycNum::is_zero)
    }

    pub fn scale(&self, c: &CycNum) -> ParamPoint {
        ParamPoint {
            t: self.t.iter().map(|x| x * c).collect(),
            c: self.c.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }
}

pub fn kappa_from_params(group: &Group, refl: &ReflectionData, p: &ParamPoint) -> Result<KappaMap> {
    if p.t.len() != refl.n_invariant() {
        return Err(Error::DimensionMismatch {
            expected: refl.n_invariant(),
            found: p.t.len(),
        });
    }
    for rep in p.c.keys() {
        if !refl.sprime_classes.iter().any(|c| c.representative == *rep) {
            return Err(Error::UnknownClass(*rep));
        }
    }
    let field = group.field();
    let p = &p.coerce_to(field)?;
    let n = group.dim();
    let mut k = KappaMap::zero(field, n, group.order());
    for (form, t) in refl.invariant_forms.iter().zip(&p.t) {
        if t.is_zero() {
            continue;
        }
        for (i, j) in k.pairs() {
            let v = form.entry(i, j);
            if !v.is_zero() {
                k.add_to(i, j, 0, &(v * t));
            }
        }
    }
    for class in &refl.sprime_classes {
        let Some(c) = p.c.get(&class.representative) else {
            continue;
        };
        if c.is_zero() {
            continue;
        }
        for &s in &class.members {
            let omega = &refl.omega[&s];
            for (i, j) in k.pairs() {
                let v = omega.entry(i, j);
                if !v.is_zero() {
                    k.add_to(i, j, s, &(v * c));
                }
            }
        }
    }
    Ok(k)
}

/// Adds `c·Ω_s(v, w)·s` for a single `s ∈ 𝒮′`. Unlike [`kappa_from_params`] this
/// can assign different values within one conjugacy class, producing maps that
/// are not `G`-invariant.
pub fn add_elementwise(
    kappa: &mut KappaMap,
    refl: &ReflectionData,
    s: usize,
    c: &CycNum,
) -> Result<()> {
    let omega = refl.omega.get(&s).ok_or(Error::NotAdmissible(s))?;
    let c = c.coerce_to(&kappa.field)?;
    for (i, j) in kappa.pairs() {
        let v = omega.entry(i, j);
        if !v.is_zero() {
            kappa.add_to(i, j, s, &(v * &c));
        }
    }
    Ok(())
}

/// The closed-form basis: one `κ` per invariant form (`b_i` times `id`) followed
/// by one per `𝒮′` class (`Σ_{s ∈ class} Ω_s s`).
pub fn closed_form_basis(group: &Group, refl: &ReflectionData) -> Result<Vec<KappaMap>> {
    let field = group.field();
    let mut out = Vec::new();
    let zero = ParamPoint::zero(field, refl);
    for i in 0..refl.n_invariant() {
        let mut p = zero.clone();
        p.t[i] = CycNum::one(field);
        out.push(kappa_from_params(group, refl, &p)?);
    }
    for class in &refl.sprime_classes {
        let mut p = zero.clone();
        p.c.insert(class.representative, CycNum::one(field));
        out.push(kappa_from_params(group, refl, &p)?);
    }
    Ok(out)
}

/// Row builder for sparse linear equations in the `κ` unknowns.
struct Equations {
    order: usize,
    dim: usize,
    rows: Vec<BTreeMap<usize, CycNum>>,
}

impl Equations {
    /// Adds `coef · [coefficient of g in κ(v_a, v_b)]` to `row`.
    fn push_term(
        &self,
        row: &mut BTreeMap<usize, CycNum>,
        a: usize,
        b: usize,
        g: usize,
        coef: CycNum,
    ) {
        if a == b || coef.is_zero() {
            return;
        }
        let (lo, hi, c) = if a < b { (a, b, coef) } else { (b, a, -coef) };
        let u = pair_slot(self.dim, lo, hi) * self.order + g;
        match row.get_mut(&u) {
            Some(x) => *x += &c,
            None => {
                row.insert(u, c);
            }
        }
    }

    fn into_matrix(self, field: &Arc<CycField>, unknowns: usize) -> Mat {
        let rows: Vec<_> = self
            .rows
            .into_iter()
            .filter(|r| r.values().any(|c| !c.is_zero()))
            .collect();
        let mut m = Mat::zeros(field, rows.len(), unknowns);
        for (i, r) in rows.into_iter().enumerate() {
            for (u, c) in r {
                m.set(i, u, c);
            }
        }
        m
    }
}

/// Basis of `(C ⊗ V) ∩ (V ⊗ C)` inside `V^{⊗3}` (coordinates `a n² + b n + c`).
pub fn commutator_overlap_space(field: &Arc<CycField>, n: usize) -> Vec<Vector> {
    let n3 = n * n * n;
    let idx = |a: usize, b: usize, c: usize| a * n * n + b * n + c;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                let mut v = vec![CycNum::zero(field); n3];
                v[idx(a, b, c)] = CycNum::one(field);
                v[idx(b, a, c)] = CycNum::from_int(field, -1);
                left.push(v);
                let mut w = vec![CycNum::zero(field); n3];
                w[idx(c, a, b)] = CycNum::one(field);
                w[idx(c, b, a)] = CycNum::from_int(field, -1);
                right.push(w);
            }
        }
    }
    linalg::intersection(field, n3, &left, &right)
}

/// Solves the PBW conditions directly for all admissible `κ`; echelon basis.
pub fn valid_kappa_basis(group: &Group) -> Result<Vec<KappaMap>> {
    let field = group.field();
    let n = group.dim();
    let order = group.order();
    let pairs = n * n.saturating_sub(1) / 2;
    let unknowns = pairs * order;
    let mut eqs = Equations {
        order,
        dim: n,
        rows: Vec::new(),
    };

    // G-invariance for the generators: κ(h v_a, h v_b) - h κ(v_a, v_b) h⁻¹ = 0.
    for &h in group.generators() {
        let hm = group.element(h);
        for a in 0..n {
            for b in a + 1..n {
                for g in 0..order {
                    let mut row = BTreeMap::new();
                    for c in 0..n {
                        for d in 0..n {
                            let coef = hm.get(c, a) * hm.get(d, b);
                            eqs.push_term(&mut row, c, d, g, coef);
                        }
                    }
                    let k = group.mul(group.mul(group.inv(h), g), h);
                    eqs.push_term(&mut row, a, b, k, CycNum::from_int(field, -1));
                    eqs.rows.push(row);
                }
            }
        }
    }

    // Mixed Jacobi: (β ⊗ id)(x) = (id ⊗ β)(x) in V ⊗ ℂG for x in the overlap
    // space, with β(u ⊗ w) = κ(u, w)/2 and g·v straightened to g(v)·g.
    // Both sides are doubled to clear the 1/2.
    let overlap = commutator_overlap_space(field, n);
    for x in &overlap {
        for d in 0..n {
            for g in 0..order {
                let gm = group.element(g);
                let mut row = BTreeMap::new();
                for (t, coef) in x.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let (a, b, c) = (t / (n * n), (t / n) % n, t % n);
                    // κ(v_a, v_b) v_c: the g-term contributes g(v_c) g.
                    let h = gm.get(d, c);
                    if !h.is_zero() {
                        eqs.push_term(&mut row, a, b, g, coef * h);
                    }
                    // v_a κ(v_b, v_c)
                    if a == d {
                        eqs.push_term(&mut row, b, c, g, -coef);
                    }
                }
                eqs.rows.push(row);
            }
        }
    }

    let system = eqs.into_matrix(field, unknowns);
    let basis: Vec<KappaMap> = if unknowns == 0 {
        Vec::new()
    } else {
        linalg::kernel_basis(&system)
            .into_iter()
            .map(|v| KappaMap::from_vector(field, n, order, &v))
            .collect()
    };
    let all: Vec<usize> = (0..order).collect();
    for k in &basis {
        if let Some(h) = k.invariance_violation(group, &all) {
            return Err(Error::Internal(format!(
                "solution is not invariant under element {h}"
            )));
        }
    }
    Ok(basis)
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub n_invariant: usize,
    pub sprime_classes: usize,
    pub dim_linear_system: usize,
    pub dim_closed_form: usize,
    pub spans_equal: bool,
    pub support_in_s: bool,
    pub identity_part_invariant: bool,
    /// A solution of the linear system outside the closed-form span, or a
    /// closed-form map outside the solution space, when the spans differ.
    pub offending: Option<KappaMap>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.spans_equal
            && self.support_in_s
            && self.identity_part_invariant
            && self.dim_linear_system == self.dim_closed_form
            && self.dim_closed_form == self.n_invariant + self.sprime_classes
    }
}

pub fn classification_crosscheck(
    group: &Group,
    refl: &ReflectionData,
    basis: &[KappaMap],
) -> Result<CrosscheckReport> {
    let field = group.field();
    let n = group.dim();
    let order = group.order();
    let len = n * n.saturating_sub(1) / 2 * order;
    let closed_form = closed_form_basis(group, refl)?;
    let a: Vec<Vector> = basis.iter().map(KappaMap::to_vector).collect();
    let b: Vec<Vector> = closed_form.iter().map(KappaMap::to_vector).collect();
    let rank_a = linalg::span_rank(field, len, &a);
    let rank_b = linalg::span_rank(field, len, &b);
    let mut both = a.clone();
    both.extend(b.iter().cloned());
    let rank_ab = linalg::span_rank(field, len, &both);
    let spans_equal = rank_a == rank_ab && rank_b == rank_ab;

    let mut offending = None;
    if !spans_equal {
        for (k, v) in basis.iter().zip(&a) {
            let mut probe = b.clone();
            probe.push(v.clone());
            if linalg::span_rank(field, len, &probe) > rank_b {
                offending = Some(k.clone());
                break;
            }
        }
        if offending.is_none() {
            for (k, v) in closed_form.iter().zip(&b) {
                let mut probe = a.clone();
                probe.push(v.clone());
                if linalg::span_rank(field, len, &probe) > rank_a {
                    offending = Some(k.clone());
                    break;
                }
            }
        }
    }

    let in_s = |g: usize| refl.s_subgroup.binary_search(&g).is_ok();
    let support_in_s = basis.iter().all(|k| k.support().into_iter().all(in_s));

    // The identity coefficient of every solution must be a combination of the b_i.
    let form_vectors: Vec<Vector> = refl
        .invariant_forms
        .iter()
        .map(|f| {
            let mut v = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    v.push(f.entry(i, j).clone());
                }
            }
            v
        })
        .collect();
    let pairs = n * n.saturating_sub(1) / 2;
    let base_rank = linalg::span_rank(field, pairs, &form_vectors);
    let identity_part_invariant = basis.iter().all(|k| {
        let mut probe = form_vectors.clone();
        let mut v = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                v.push(k.coeff(i, j, 0));
            }
        }
        probe.push(v);
        linalg::span_rank(field, pairs, &probe) == base_rank
    });

    Ok(CrosscheckReport {
        n_invariant: refl.n_invariant(),
        sprime_classes: refl.sprime_classes.len(),
        dim_linear_system: rank_a,
        dim_closed_form: rank_b,
        spans_equal,
        support_in_s,
        identity_part_invariant,
        offending,
    })
}
