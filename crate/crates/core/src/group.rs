//! Finite matrix groups enumerated from generators.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::CycField;
use crate::linalg::{self, Mat, Vector};
use crate::{Error, Result};

/// Default bound on the number of elements produced by [`Group::close_generators`].
pub const DEFAULT_CAP: usize = 2000;

/// A closed finite subgroup of `GL_n(ℚ(ζ_m))`.
///
/// Index 0 is always the identity. Products and inverses are table lookups.
#[derive(Clone, Debug)]
pub struct Group {
    field: Arc<CycField>,
    dim: usize,
    elements: Vec<Mat>,
    mult: Vec<usize>,
    inv: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    generators: Vec<usize>,
    name: Option<String>,
}

impl Group {
    /// Breadth-first closure of `gens` under right multiplication.
    pub fn close_generators(
        field: &Arc<CycField>,
        dim: usize,
        gens: &[Mat],
        cap: usize,
    ) -> Result<Group> {
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if g.rows() != dim { g.rows() } else { g.cols() },
                });
            }
            if linalg::det(g)?.is_zero() {
                return Err(Error::SingularGenerator(i));
            }
        }
        let id = Mat::identity(field, dim);
        let mut index: BTreeMap<Mat, usize> = BTreeMap::new();
        let mut elements = vec![id.clone()];
        // parent[k] = (j, gen) with elements[k] = elements[j] * gens[gen]
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = &elements[x] * g;
                if index.contains_key(&y) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                let k = elements.len();
                index.insert(y.clone(), k);
                elements.push(y);
                parent.push(Some((x, gi)));
                queue.push_back(k);
            }
        }
        let order = elements.len();
        let generators: Vec<usize> = gens.iter().map(|g| index[g]).collect();

        // right[x][gi] = index of elements[x] * gens[gi]
        let mut right = vec![0usize; order * gens.len()];
        for x in 0..order {
            for (gi, g) in gens.iter().enumerate() {
                let y = &elements[x] * g;
                right[x * gens.len() + gi] = *index
                    .get(&y)
                    .ok_or_else(|| Error::Internal("closure is not closed".into()))?;
            }
        }
        // elements[i] * elements[k] = (elements[i] * elements[j]) * gens[gi]; BFS order
        // guarantees j < k.
        let mut mult = vec![0usize; order * order];
        for i in 0..order {
            mult[i * order] = i;
            for k in 1..order {
                let (j, gi) = parent[k].expect("non-identity has a parent");
                let ij = mult[i * order + j];
                mult[i * order + k] = right[ij * gens.len() + gi];
            }
        }
        let mut inv = vec![usize::MAX; order];
        for i in 0..order {
            for j in 0..order {
                if mult[i * order + j] == 0 {
                    inv[i] = j;
                    break;
                }
            }
            if inv[i] == usize::MAX {
                return Err(Error::Internal("element without inverse".into()));
            }
        }
        let mut group = Group {
            field: field.clone(),
            dim,
            elements,
            mult,
            inv,
            classes: Vec::new(),
            class_of: vec![usize::MAX; order],
            generators,
            name: None,
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let order = self.order();
        for x in 0..order {
            if self.class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..order).map(|g| self.conjugate(x, g)).collect();
            members.sort_unstable();
            members.dedup();
            let c = self.classes.len();
            for &y in &members {
                self.class_of[y] = c;
            }
            self.classes.push(members);
        }
    }

    /// The same group with matrix entries embedded into a larger cyclotomic field.
    /// Element indices and tables are unchanged.
    pub fn over_field(&self, target: &Arc<CycField>) -> Result<Group> {
        let mut g = self.clone();
        g.field = target.clone();
        g.elements = self
            .elements
            .iter()
            .map(|m| m.coerce_to(target))
            .collect::<Result<_>>()?;
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, g: usize) -> &Mat {
        &self.elements[g]
    }

    /// Indices of the generating matrices, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_index(&self, g: usize) -> Result<()> {
        if g < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(g))
        }
    }

    /// `Z_G(s)`: all `g` with `gs = sg`.
    pub fn centralizer(&self, s: usize) -> Result<Vec<usize>> {
        self.check_index(s)?;
        Ok((0..self.order())
            .filter(|&g| self.mul(g, s) == self.mul(s, g))
            .collect())
    }

    /// Smallest subgroup containing `set`, as a sorted index list.
    pub fn generated_subgroup(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in set {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `id - g` as a matrix.
    pub fn id_minus(&self, g: usize) -> Mat {
        Mat::identity(&self.field, self.dim).sub(&self.elements[g])
    }

    /// Bases of `ker(id - g)` (fixed space) and `im(id - g)` (moved space).
    ///
    /// The moved basis is the echelon basis of the column space, so it does not
    /// depend on how `id - g` happens to be scaled.
    pub fn fixed_and_moved(&self, g: usize) -> Result<(Vec<Vector>, Vec<Vector>)> {
        self.check_index(g)?;
        let m = self.id_minus(g);
        let fixed = linalg::kernel_basis(&m);
        let moved = linalg::column_space_basis(&m);
        if fixed.len() + moved.len() != self.dim {
            return Err(Error::Internal("rank-nullity failed".into()));
        }
        let mut cols = fixed.clone();
        cols.extend(moved.iter().cloned());
        if self.dim > 0 && linalg::det(&Mat::from_columns(&self.field, self.dim, &cols))?.is_zero()
        {
            return Err(Error::Internal(alloc::format!(
                "fixed and moved spaces of element {g} are not complementary"
            )));
        }
        Ok((fixed, moved))
    }

    /// `rank(id - g)`.
    pub fn codim_fixed(&self, g: usize) -> usize {
        linalg::rank(&self.id_minus(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycNum;

    fn q() -> Arc<CycField> {
        CycField::new(1).unwrap()
    }

    fn s3(f: &Arc<CycField>) -> Group {
        // Reflection representation in the simple-root basis.
        let a = Mat::from_int_rows(f, &[&[-1, 1], &[0, 1]]);
        let b = Mat::from_int_rows(f, &[&[1, 0], &[1, -1]]);
        Group::close_generators(f, 2, &[a, b], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn small_closures() {
        let f = q();
        let minus = Mat::identity(&f, 2).scale(&CycNum::from_int(&f, -1));
        assert_eq!(
            Group::close_generators(&f, 2, &[minus], 10)
                .unwrap()
                .order(),
            2
        );
        let rot = Mat::from_int_rows(&f, &[&[0, -1], &[1, 0]]);
        let z4 = Group::close_generators(&f, 2, &[rot], 10).unwrap();
        assert_eq!(z4.order(), 4);
        assert!(z4.is_abelian());
        let g = s3(&f);
        assert_eq!(g.order(), 6);
        assert_eq!(g.classes().len(), 3);
    }

    #[test]
    fn tables_match_matrices() {
        let f = q();
        let g = s3(&f);
        for a in 0..g.order() {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..g.order() {
                assert_eq!(g.element(g.mul(a, b)), &(g.element(a) * g.element(b)));
            }
        }
    }

    #[test]
    fn class_equation() {
        let f = q();
        let g = s3(&f);
        let total: usize = g.classes().iter().map(Vec::len).sum();
        assert_eq!(total, g.order());
        for s in 0..g.order() {
            let class = &g.classes()[g.class_of(s)];
            assert_eq!(class.len() * g.centralizer(s).unwrap().len(), g.order());
        }
    }

    #[test]
    fn centralizer_of_three_cycle() {
        let f = q();
        let g = s3(&f);
        let s = (0..g.order()).find(|&x| g.codim_fixed(x) == 2).unwrap();
        let z = g.centralizer(s).unwrap();
        assert_eq!(z.len(), 3);
        assert_eq!(g.centralizer(0).unwrap().len(), 6);
        assert!(g.centralizer(17).is_err());
    }

    #[test]
    fn infinite_or_singular_generators_fail() {
        let f = q();
        let two = Mat::identity(&f, 1).scale(&CycNum::from_int(&f, 2));
        assert_eq!(
            Group::close_generators(&f, 1, &[two], 50).unwrap_err(),
            Error::GroupTooLarge(50)
        );
        let zero = Mat::zeros(&f, 2, 2);
        assert_eq!(
            Group::close_generators(&f, 2, &[zero], 50).unwrap_err(),
            Error::SingularGenerator(0)
        );
    }

    #[test]
    fn fixed_and_moved_spaces() {
        let f = q();
        let g = s3(&f);
        let (fixed, moved) = g.fixed_and_moved(0).unwrap();
        assert_eq!((fixed.len(), moved.len()), (2, 0));
        for x in 0..g.order() {
            let (fixed, moved) = g.fixed_and_moved(x).unwrap();
            if g.codim_fixed(x) == 1 {
                assert_eq!((fixed.len(), moved.len()), (1, 1));
            }
        }
        let minus = Mat::identity(&f, 2).scale(&CycNum::from_int(&f, -1));
        let pm = Group::close_generators(&f, 2, &[minus], 10).unwrap();
        let (fixed, moved) = pm.fixed_and_moved(1).unwrap();
        assert!(fixed.is_empty());
        assert_eq!(moved.len(), 2);
    }
}
