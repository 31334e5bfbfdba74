//! Bireflections, the admissible subset `𝒮′`, the forms `Ω_s` and the space of
//! `G`-invariant skew forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::cyclo::CycNum;
use crate::group::Group;
use crate::linalg::{self, Mat, Vector};
use crate::{Error, Result};

/// A skew-symmetric bilinear form `(v, w) ↦ vᵀ B w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    matrix: Mat,
}

impl SkewForm {
    pub fn new(matrix: Mat) -> Result<SkewForm> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !matrix.add(&matrix.transpose()).is_zero() {
            return Err(Error::Internal("form is not skew-symmetric".into()));
        }
        Ok(SkewForm { matrix })
    }

    /// The elementary form `e_i ∧ e_j`, i.e. `B[i][j] = 1`, `B[j][i] = -1`.
    pub fn elementary(
        field: &alloc::sync::Arc<crate::CycField>,
        n: usize,
        i: usize,
        j: usize,
    ) -> SkewForm {
        let mut m = Mat::zeros(field, n, n);
        m.set(i, j, CycNum::one(field));
        m.set(j, i, CycNum::from_int(field, -1));
        SkewForm { matrix: m }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, v: &[CycNum], w: &[CycNum]) -> CycNum {
        linalg::dot(v, &self.matrix.mul_vec(w))
    }

    /// Value on the basis pair `(e_i, e_j)`.
    pub fn entry(&self, i: usize, j: usize) -> &CycNum {
        self.matrix.get(i, j)
    }

    /// `(v, w) ↦ B(g v, g w)`, matrix `gᵀ B g`.
    pub fn pullback(&self, g: &Mat) -> SkewForm {
        SkewForm {
            matrix: &(&g.transpose() * &self.matrix) * g,
        }
    }

    pub fn is_invariant_under(&self, g: &Mat) -> bool {
        self.pullback(g) == *self
    }
}

/// One `G`-conjugacy class inside `𝒮′`, represented by its smallest index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SprimeClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ReflectionData {
    pub bireflections: Vec<usize>,
    pub sprime: Vec<usize>,
    /// Normal subgroup generated by `𝒮′`.
    pub s_subgroup: Vec<usize>,
    pub sprime_classes: Vec<SprimeClass>,
    pub omega: BTreeMap<usize, SkewForm>,
    /// Basis `b_1, …, b_N` of the invariant skew forms.
    pub invariant_forms: Vec<SkewForm>,
}

impl ReflectionData {
    pub fn compute(group: &Group) -> Result<ReflectionData> {
        let bireflections = bireflections(group);
        let sprime = sprime(group, &bireflections)?;
        let s_subgroup = group.generated_subgroup(&sprime);
        check_s_subgroup(group, &s_subgroup)?;
        let sprime_classes = sprime_classes(group, &sprime);
        let omega = omega_forms(group, &sprime_classes)?;
        let invariant_forms = invariant_two_forms(group)?;
        Ok(ReflectionData {
            bireflections,
            sprime,
            s_subgroup,
            sprime_classes,
            omega,
            invariant_forms,
        })
    }

    /// `N = dim ((∧²V)*)^G`.
    pub fn n_invariant(&self) -> usize {
        self.invariant_forms.len()
    }

    /// Whether `G` is generated by `𝒮′`.
    pub fn g_equals_s(&self, group: &Group) -> bool {
        self.s_subgroup.len() == group.order()
    }

    /// Index into `sprime_classes` of the class containing `s`.
    pub fn class_index(&self, s: usize) -> Option<usize> {
        self.sprime_classes
            .iter()
            .position(|c| c.members.binary_search(&s).is_ok())
    }
}

/// Elements `s ≠ id` with `rank(id - s) = 2`.
pub fn bireflections(group: &Group) -> Vec<usize> {
    (1..group.order())
        .filter(|&g| group.codim_fixed(g) == 2)
        .collect()
}

/// Coordinates of `w` against an echelon basis (`basis[k]` has a leading 1 in
/// column `pivots[k]` and zeros in the other pivot columns).
fn echelon_coordinates(basis: &[Vector], pivots: &[usize], w: &[CycNum]) -> Option<Vec<CycNum>> {
    let coords: Vec<CycNum> = pivots.iter().map(|&p| w[p].clone()).collect();
    let field = w[0].field();
    for (i, x) in w.iter().enumerate() {
        let mut acc = CycNum::zero(field);
        for (c, b) in coords.iter().zip(basis) {
            acc += &(c * &b[i]);
        }
        if &acc != x {
            return None;
        }
    }
    Some(coords)
}

fn leading_columns(basis: &[Vector]) -> Vec<usize> {
    basis
        .iter()
        .map(|v| {
            v.iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis vector")
        })
        .collect()
}

/// Matrix of `g` restricted to `im(id - s)` in the echelon moved basis; `None`
/// when `g` does not preserve that plane.
fn restrict_to_moved(group: &Group, moved: &[Vector], g: usize) -> Option<Mat> {
    let pivots = leading_columns(moved);
    let gm = group.element(g);
    let k = moved.len();
    let mut m = Mat::zeros(group.field(), k, k);
    for (j, u) in moved.iter().enumerate() {
        let image = gm.mul_vec(u);
        let coords = echelon_coordinates(moved, &pivots, &image)?;
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Some(m)
}

/// `𝒮′ = { s ∈ 𝒮 : det(g|_{V/V^s}) = 1 for all g ∈ Z_G(s) }`.
pub fn sprime(group: &Group, bireflections: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &s in bireflections {
        let (_, moved) = group.fixed_and_moved(s)?;
        let mut keep = true;
        for g in group.centralizer(s)? {
            let r = restrict_to_moved(group, &moved, g).ok_or_else(|| {
                Error::Internal(format!(
                    "centralizer element {g} does not preserve im(id - {s})"
                ))
            })?;
            if !linalg::det(&r)?.is_one() {
                keep = false;
                break;
            }
        }
        if keep {
            out.push(s);
        }
    }
    for set in [bireflections, &out[..]] {
        for &s in set {
            for g in 0..group.order() {
                if set.binary_search(&group.conjugate(s, g)).is_err() {
                    return Err(Error::Internal(format!(
                        "set containing {s} is not closed under conjugation"
                    )));
                }
            }
        }
    }
    Ok(out)
}

fn check_s_subgroup(group: &Group, s_subgroup: &[usize]) -> Result<()> {
    for &x in s_subgroup {
        if group.codim_fixed(x) == 1 {
            return Err(Error::Internal(format!(
                "normal closure contains reflection {x}"
            )));
        }
        if !linalg::det(group.element(x))?.is_one() {
            return Err(Error::Internal(format!(
                "normal closure element {x} is not in SL(V)"
            )));
        }
    }
    Ok(())
}

fn sprime_classes(group: &Group, sprime: &[usize]) -> Vec<SprimeClass> {
    let mut seen = BTreeMap::new();
    for &s in sprime {
        let c = group.class_of(s);
        seen.entry(c).or_insert_with(|| group.classes()[c].clone());
    }
    let mut classes: Vec<SprimeClass> = seen
        .into_values()
        .map(|members| SprimeClass {
            representative: members[0],
            members,
        })
        .collect();
    classes.sort_by_key(|c| c.representative);
    classes
}

/// The form with radical `V^s` and value 1 on the echelon basis `(u_1, u_2)` of
/// `im(id - s)`.
pub fn omega_for(group: &Group, s: usize) -> Result<SkewForm> {
    let n = group.dim();
    let (fixed, moved) = group.fixed_and_moved(s)?;
    if moved.len() != 2 {
        return Err(Error::Internal(format!(
            "element {s} is not a bireflection"
        )));
    }
    let field = group.field();
    let mut cols = fixed;
    cols.extend(moved);
    let basis = Mat::from_columns(field, n, &cols);
    let basis_inv = linalg::inverse(&basis)?;
    let standard = SkewForm::elementary(field, n, n - 2, n - 1);
    // In the adapted basis the form is e_{n-2} ∧ e_{n-1}; pull back by P⁻¹.
    Ok(standard.pullback(&basis_inv))
}

/// `Ω_s` for every `s ∈ 𝒮′`, propagated from class representatives by
/// `Ω_{g⁻¹sg}(v, w) = Ω_s(gv, gw)` and checked along every conjugating element.
pub fn omega_forms(group: &Group, classes: &[SprimeClass]) -> Result<BTreeMap<usize, SkewForm>> {
    let mut out = BTreeMap::new();
    for class in classes {
        let s = class.representative;
        let base = omega_for(group, s)?;
        for g in 0..group.order() {
            let t = group.conjugate(s, g);
            let form = base.pullback(group.element(g));
            match out.get(&t) {
                Some(existing) if existing != &form => {
                    return Err(Error::Internal(format!(
                        "Omega for element {t} depends on the conjugating element"
                    )));
                }
                Some(_) => {}
                None => {
                    out.insert(t, form);
                }
            }
        }
    }
    Ok(out)
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Basis of `((∧²V)*)^G`, from the invariance equations of the generators.
pub fn invariant_two_forms(group: &Group) -> Result<Vec<SkewForm>> {
    let n = group.dim();
    let field = group.field();
    let pairs = pair_index(n);
    let elementary: Vec<SkewForm> = pairs
        .iter()
        .map(|&(i, j)| SkewForm::elementary(field, n, i, j))
        .collect();
    let gens = group.generators();
    let mut system = Mat::zeros(field, gens.len() * pairs.len(), pairs.len());
    for (gi, &g) in gens.iter().enumerate() {
        let gm = group.element(g);
        for (col, e) in elementary.iter().enumerate() {
            let diff = e.pullback(gm).matrix().sub(e.matrix());
            for (row, &(i, j)) in pairs.iter().enumerate() {
                system.set(gi * pairs.len() + row, col, diff.get(i, j).clone());
            }
        }
    }
    let mut forms = Vec::new();
    for v in linalg::kernel_basis(&system) {
        let mut m = Mat::zeros(field, n, n);
        for (c, &(i, j)) in v.iter().zip(&pairs) {
            m.set(i, j, c.clone());
            m.set(j, i, -c);
        }
        forms.push(SkewForm::new(m)?);
    }
    for f in &forms {
        if !group.elements().iter().all(|g| f.is_invariant_under(g)) {
            return Err(Error::Internal(
                "invariant form fails on a non-generator".into(),
            ));
        }
    }
    Ok(forms)
}

/// `Σ t_i b_i`.
pub fn combine_forms(
    field: &alloc::sync::Arc<crate::CycField>,
    n: usize,
    forms: &[SkewForm],
    t: &[CycNum],
) -> Mat {
    let mut acc = Mat::zeros(field, n, n);
    for (f, c) in forms.iter().zip(t) {
        if !c.is_zero() {
            acc = acc.add(&f.matrix().scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::CycField;

    fn grp(m: u64, n: usize, gens: &[&[&[i64]]]) -> Group {
        let f = CycField::new(m).unwrap();
        let gens: Vec<Mat> = gens.iter().map(|g| Mat::from_int_rows(&f, g)).collect();
        Group::close_generators(&f, n, &gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn plus_minus_identity() {
        let g = grp(1, 2, &[&[&[-1, 0], &[0, -1]]]);
        let r = ReflectionData::compute(&g).unwrap();
        assert_eq!(r.bireflections, [1]);
        assert_eq!(r.sprime, [1]);
        assert_eq!(r.n_invariant(), 1);
        let omega = &r.omega[&1];
        assert!(omega.entry(0, 1).is_one());
        assert_eq!(omega, &SkewForm::elementary(g.field(), 2, 0, 1));
    }

    #[test]
    fn s3_reflection_representation() {
        let g = grp(1, 2, &[&[&[-1, 1], &[0, 1]], &[&[1, 0], &[1, -1]]]);
        let r = ReflectionData::compute(&g).unwrap();
        assert_eq!(r.bireflections.len(), 2);
        assert_eq!(r.sprime, r.bireflections);
        assert_eq!(r.sprime_classes.len(), 1);
        assert_eq!(r.n_invariant(), 0);
        for (&s, form) in &r.omega {
            let (fixed, moved) = g.fixed_and_moved(s).unwrap();
            assert!(fixed.is_empty());
            assert!(!form.eval(&moved[0], &moved[1]).is_zero());
        }
    }

    #[test]
    fn rotation_group_of_order_four() {
        let g = grp(1, 2, &[&[&[0, -1], &[1, 0]]]);
        let r = ReflectionData::compute(&g).unwrap();
        assert_eq!(r.bireflections, [1, 2, 3]);
        assert_eq!(r.sprime, [1, 2, 3]);
        assert_eq!(r.sprime_classes.len(), 3);
        assert_eq!(r.n_invariant(), 1);
    }

    #[test]
    fn trivial_group() {
        let f = CycField::new(1).unwrap();
        let g = Group::close_generators(&f, 2, &[], 10).unwrap();
        let r = ReflectionData::compute(&g).unwrap();
        assert!(r.bireflections.is_empty());
        assert_eq!(r.invariant_forms, [SkewForm::elementary(&f, 2, 0, 1)]);
    }

    #[test]
    fn omega_is_conjugation_equivariant() {
        let g = grp(
            1,
            3,
            &[
                &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]],
                &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]],
            ],
        );
        let r = ReflectionData::compute(&g).unwrap();
        for (&s, form) in &r.omega {
            for x in 0..g.order() {
                let t = g.conjugate(s, x);
                assert_eq!(r.omega[&t], form.pullback(g.element(x)));
            }
            let (fixed, _) = g.fixed_and_moved(s).unwrap();
            for v in &fixed {
                assert!(form.matrix().mul_vec(v).iter().all(CycNum::is_zero));
            }
        }
    }
}
