//! Normal forms in `A_κ = T(V)∗G / ([v, w] − κ(v, w))`.
//!
//! Elements are stored in the PBW basis: ordered monomials `v^e` followed by a
//! group element on the right. Two rewriting rules reduce any word:
//!
//! * `g·v_i → Σ_j g_{ji} v_j·g`
//! * `v_j·v_i → v_i·v_j + κ(v_j, v_i)` for `j > i`
//!
//! The engine works on linear combinations and memoizes `v^e·v_j`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::cyclo::{CycField, CycNum};
use crate::group::Group;
use crate::kappa::KappaMap;
use crate::poly::{self, Monomial, Poly};
use crate::{Error, Result};

/// One letter of a word in `T(V)∗G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    /// Basis vector `v_i` (0-based).
    Vector(usize),
    /// Group element by index.
    Group(usize),
}

/// `Σ coeff · v^e · g` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    field: Arc<CycField>,
    dim: usize,
    terms: BTreeMap<(Monomial, usize), CycNum>,
}

impl AlgebraElement {
    pub fn zero(field: &Arc<CycField>, dim: usize) -> AlgebraElement {
        AlgebraElement {
            field: field.clone(),
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Arc<CycField>, dim: usize) -> AlgebraElement {
        AlgebraElement::term(field, Monomial::one(dim), 0, CycNum::one(field))
    }

    pub fn term(field: &Arc<CycField>, m: Monomial, g: usize, c: CycNum) -> AlgebraElement {
        let mut out = AlgebraElement::zero(field, m.nvars());
        out.add_term(m, g, c);
        out
    }

    pub fn vector(field: &Arc<CycField>, dim: usize, i: usize) -> AlgebraElement {
        AlgebraElement::term(field, Monomial::var(dim, i), 0, CycNum::one(field))
    }

    pub fn group_element(field: &Arc<CycField>, dim: usize, g: usize) -> AlgebraElement {
        AlgebraElement::term(field, Monomial::one(dim), g, CycNum::one(field))
    }

    /// `p · 1`: the ordered-monomial lift of a commutative polynomial.
    pub fn from_poly(p: &Poly) -> AlgebraElement {
        let mut out = AlgebraElement::zero(p.field(), p.nvars());
        for (m, c) in p.terms() {
            out.add_term(m.clone(), 0, c.clone());
        }
        out
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, usize), CycNum> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial, g: usize) -> CycNum {
        self.terms
            .get(&(m.clone(), g))
            .cloned()
            .unwrap_or_else(|| CycNum::zero(&self.field))
    }

    pub fn add_term(&mut self, m: Monomial, g: usize, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let key = (m, g);
        if let Some(old) = self.terms.get_mut(&key) {
            *old += &c;
            if old.is_zero() {
                self.terms.remove(&key);
            }
        } else {
            self.terms.insert(key, c);
        }
    }

    /// Filtration degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(m, _)| m.degree()).max()
    }

    pub fn homogeneous_component(&self, d: u32) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.field, self.dim);
        for ((m, g), c) in &self.terms {
            if m.degree() == d {
                out.terms.insert((m.clone(), *g), c.clone());
            }
        }
        out
    }

    /// Component of maximal filtration degree.
    pub fn top_component(&self) -> AlgebraElement {
        match self.degree() {
            Some(d) => self.homogeneous_component(d),
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for ((m, g), c) in &other.terms {
            self.add_term(m.clone(), *g, c.clone());
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&CycNum::from_int(&self.field, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.field, self.dim);
        if c.is_zero() {
            return out;
        }
        for ((m, g), x) in &self.terms {
            out.add_term(m.clone(), *g, x * c);
        }
        out
    }

    /// Multiplies every term by `mu^{|e|}`.
    pub fn scale_by_degree(&self, mu: &CycNum) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.field, self.dim);
        for ((m, g), x) in &self.terms {
            out.add_term(m.clone(), *g, x * &mu.pow(m.degree() as u64));
        }
        out
    }

    /// Polynomial coefficient of the group element `g`.
    pub fn group_component(&self, g: usize) -> Poly {
        let mut p = Poly::zero(&self.field, self.dim);
        for ((m, h), c) in &self.terms {
            if *h == g {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    /// `Σ_g f_g` for `Σ_g f_g g`: the image under `g ↦ 1`.
    pub fn forget_group(&self) -> Poly {
        let mut p = Poly::zero(&self.field, self.dim);
        for ((m, _), c) in &self.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Whether every term sits at the identity.
    pub fn is_group_free(&self) -> bool {
        self.terms.keys().all(|(_, g)| *g == 0)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    /// Terms read like `(1/2)*v1^2*v2*g3`; the identity element is left implicit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((m, g), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(alloc::format!("v{}", i + 1)),
                    _ => factors.push(alloc::format!("v{}^{}", i + 1, e)),
                }
            }
            if *g != 0 {
                factors.push(alloc::format!("g{g}"));
            }
            if factors.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "({c})*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Rewriting engine for one fixed `κ`.
///
/// Not `Sync`: the memo is a `RefCell`. Build one engine per thread.
pub struct PbwAlgebra<'a> {
    group: &'a Group,
    kappa: &'a KappaMap,
    memo: RefCell<BTreeMap<(Monomial, usize), AlgebraElement>>,
}

impl<'a> PbwAlgebra<'a> {
    pub fn new(group: &'a Group, kappa: &'a KappaMap) -> Result<PbwAlgebra<'a>> {
        if kappa.dim() != group.dim() {
            return Err(Error::DimensionMismatch {
                expected: group.dim(),
                found: kappa.dim(),
            });
        }
        if kappa.group_order() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: kappa.group_order(),
            });
        }
        Ok(PbwAlgebra {
            group,
            kappa,
            memo: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn group(&self) -> &Group {
        self.group
    }

    pub fn kappa(&self) -> &KappaMap {
        self.kappa
    }

    pub fn field(&self) -> &Arc<CycField> {
        self.group.field()
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.field(), self.dim())
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::one(self.field(), self.dim())
    }

    /// Element `κ(v_i, v_j) ∈ ℂG`.
    pub fn kappa_element(&self, i: usize, j: usize) -> AlgebraElement {
        let mut out = self.zero();
        for (g, c) in self.kappa.value(i, j) {
            out.add_term(Monomial::one(self.dim()), g, c);
        }
        out
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        match l {
            Letter::Vector(i) if i >= self.dim() => Err(Error::IndexOutOfRange(i)),
            Letter::Group(g) => self.group.check_index(g),
            _ => Ok(()),
        }
    }

    /// Normal form of a word.
    pub fn normal_form(&self, word: &[Letter]) -> Result<AlgebraElement> {
        for &l in word {
            self.check_letter(l)?;
        }
        let mut x = self.one();
        for &l in word {
            x = self.right_mul_letter(&x, l);
        }
        Ok(x)
    }

    pub fn right_mul_letter(&self, x: &AlgebraElement, l: Letter) -> AlgebraElement {
        match l {
            Letter::Vector(i) => self.right_mul_vec(x, i),
            Letter::Group(g) => self.right_mul_group(x, g),
        }
    }

    /// `x · g`.
    pub fn right_mul_group(&self, x: &AlgebraElement, g: usize) -> AlgebraElement {
        let mut out = self.zero();
        for ((m, h), c) in &x.terms {
            out.terms
                .insert((m.clone(), self.group.mul(*h, g)), c.clone());
        }
        out
    }

    /// `x · v_i`, using `h·v_i = Σ_j h_{ji} v_j·h`.
    pub fn right_mul_vec(&self, x: &AlgebraElement, i: usize) -> AlgebraElement {
        let mut out = self.zero();
        for ((m, h), c) in &x.terms {
            let hm = self.group.element(*h);
            for j in 0..self.dim() {
                let a = hm.get(j, i);
                if a.is_zero() {
                    continue;
                }
                let coef = c * a;
                let p = self.mono_times_vec(m, j);
                for ((m2, h2), c2) in &p.terms {
                    out.add_term(m2.clone(), self.group.mul(*h2, *h), &coef * c2);
                }
            }
        }
        out
    }

    /// `v^a · v_j` in normal form (memoized).
    pub fn mono_times_vec(&self, a: &Monomial, j: usize) -> AlgebraElement {
        let key = (a.clone(), j);
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let result = self.mono_times_vec_uncached(a, j);
        self.memo.borrow_mut().insert(key, result.clone());
        result
    }

    fn mono_times_vec_uncached(&self, a: &Monomial, j: usize) -> AlgebraElement {
        let field = self.field();
        let k = a.0.iter().rposition(|&e| e > 0);
        match k {
            Some(k) if k > j => {
                // v^a v_j = v^{a-e_k} (v_j v_k + κ(v_k, v_j))
                let mut rest = a.clone();
                rest.0[k] -= 1;
                let left = self.mono_times_vec(&rest, j);
                let mut out = self.right_mul_vec(&left, k);
                for (h, c) in self.kappa.value(k, j) {
                    out.add_term(rest.clone(), h, c);
                }
                out
            }
            _ => {
                let mut m = a.clone();
                m.0[j] += 1;
                AlgebraElement::term(field, m, 0, CycNum::one(field))
            }
        }
    }

    /// `a · b`.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        if a.is_zero() || b.is_zero() {
            return out;
        }
        // a · v^m for every monomial of b, built incrementally and shared
        // between group elements.
        let mut prefix: BTreeMap<Monomial, AlgebraElement> = BTreeMap::new();
        prefix.insert(Monomial::one(self.dim()), a.clone());
        for ((m, g), c) in &b.terms {
            let am = self.prefix_product(&mut prefix, m);
            out.add_assign(&self.right_mul_group(&am, *g).scale(c));
        }
        out
    }

    fn prefix_product(
        &self,
        cache: &mut BTreeMap<Monomial, AlgebraElement>,
        m: &Monomial,
    ) -> AlgebraElement {
        if let Some(x) = cache.get(m) {
            return x.clone();
        }
        let last =
            m.0.iter()
                .rposition(|&e| e > 0)
                .expect("constant monomial is cached");
        let mut shorter = m.clone();
        shorter.0[last] -= 1;
        let base = self.prefix_product(cache, &shorter);
        let x = self.right_mul_vec(&base, last);
        cache.insert(m.clone(), x.clone());
        x
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.multiply(a, b).sub(&self.multiply(b, a))
    }
}

/// The product in `S(V)∗G`: `(f g)(f' h) = f·g(f')·gh`.
pub fn skew_group_product(group: &Group, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let field = group.field();
    let n = group.dim();
    let mut out = AlgebraElement::zero(field, n);
    for ((ma, g), ca) in &a.terms {
        let gm = group.element(*g);
        for ((mb, h), cb) in &b.terms {
            let moved = Poly::monomial(field, mb.clone(), cb.clone()).act(gm);
            let gh = group.mul(*g, *h);
            for (m, c) in moved.terms() {
                out.add_term(ma.times(m), gh, ca * c);
            }
        }
    }
    out
}

/// Which overlap failed to resolve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverlapKind {
    /// `v_k v_j v_i` with `k > j > i`.
    Triple { i: usize, j: usize, k: usize },
    /// `g v_j v_i` with `g` a generator and `j > i`.
    Group { g: usize, i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapWitness {
    pub kind: OverlapKind,
    /// Difference of the two reductions (left minus right).
    pub discrepancy: AlgebraElement,
}

/// Discrepancy of the overlap `v_k v_j v_i`.
pub fn triple_overlap(alg: &PbwAlgebra<'_>, i: usize, j: usize, k: usize) -> AlgebraElement {
    use Letter::Vector as V;
    // (v_k v_j) v_i → v_j v_k v_i + κ(v_k, v_j) v_i
    let left = alg
        .normal_form(&[V(j), V(k), V(i)])
        .expect("valid indices")
        .add(&alg.multiply(
            &alg.kappa_element(k, j),
            &AlgebraElement::vector(alg.field(), alg.dim(), i),
        ));
    // v_k (v_j v_i) → v_k v_i v_j + v_k κ(v_j, v_i)
    let right = alg
        .normal_form(&[V(k), V(i), V(j)])
        .expect("valid indices")
        .add(&alg.multiply(
            &AlgebraElement::vector(alg.field(), alg.dim(), k),
            &alg.kappa_element(j, i),
        ));
    left.sub(&right)
}

/// Discrepancy of the overlap `g v_j v_i`.
pub fn group_overlap(alg: &PbwAlgebra<'_>, g: usize, i: usize, j: usize) -> AlgebraElement {
    use Letter::{Group as G, Vector as V};
    // (g v_j) v_i → g(v_j) g v_i
    let left = alg.normal_form(&[G(g), V(j), V(i)]).expect("valid indices");
    // g (v_j v_i) → g v_i v_j + g κ(v_j, v_i)
    let gel = AlgebraElement::group_element(alg.field(), alg.dim(), g);
    let right = alg
        .normal_form(&[G(g), V(i), V(j)])
        .expect("valid indices")
        .add(&alg.multiply(&gel, &alg.kappa_element(j, i)));
    left.sub(&right)
}

/// Checks every degree-3 overlap. `Ok(())` certifies the PBW property.
pub fn pbw_overlap_check(
    group: &Group,
    kappa: &KappaMap,
) -> Result<core::result::Result<(), OverlapWitness>> {
    let alg = PbwAlgebra::new(group, kappa)?;
    let n = group.dim();
    for &g in group.generators() {
        for j in 0..n {
            for i in 0..j {
                let d = group_overlap(&alg, g, i, j);
                if !d.is_zero() {
                    return Ok(Err(OverlapWitness {
                        kind: OverlapKind::Group { g, i, j },
                        discrepancy: d,
                    }));
                }
            }
        }
    }
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let d = triple_overlap(&alg, i, j, k);
                if !d.is_zero() {
                    return Ok(Err(OverlapWitness {
                        kind: OverlapKind::Triple { i, j, k },
                        discrepancy: d,
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Vector words of length at most `len`, plus every word of length at most
/// `len - 1` with one group generator inserted somewhere.
pub fn sample_words(group: &Group, len: usize) -> Vec<Vec<Letter>> {
    let n = group.dim();
    let mut vector_words: Vec<Vec<Letter>> = alloc::vec![Vec::new()];
    let mut frontier: Vec<Vec<Letter>> = alloc::vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..n {
                let mut w2 = w.clone();
                w2.push(Letter::Vector(i));
                next.push(w2);
            }
        }
        vector_words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = vector_words.clone();
    for w in vector_words.iter().filter(|w| w.len() < len) {
        for &g in group.generators() {
            for pos in 0..=w.len() {
                let mut w2 = w.clone();
                w2.insert(pos, Letter::Group(g));
                out.push(w2);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingFailure {
    pub word: Vec<Letter>,
    /// `NF_κ(φ(word))`.
    pub direct: AlgebraElement,
    /// `φ(NF_{λκ}(word))`.
    pub transported: AlgebraElement,
}

/// Checks that `φ : v ↦ mu·v, g ↦ g` maps `A_{λκ}` to `A_κ` (`λ = mu²`) on every
/// word from [`sample_words`] of length at most `len`:
/// `NF_κ(φ(w)) = φ(NF_{λκ}(w))`.
///
/// If `mu` lives in a larger cyclotomic field, the group and `κ` are embedded
/// there first.
pub fn scaling_check(
    group: &Group,
    kappa: &KappaMap,
    mu: &CycNum,
    len: usize,
) -> Result<core::result::Result<(), ScalingFailure>> {
    if mu.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let lifted;
    let (group, kappa, mu) = if group.field().conductor().is_multiple_of(mu.conductor()) {
        (group.clone(), kappa.clone(), mu.coerce_to(group.field())?)
    } else {
        use num_integer::Integer;
        let l = group.field().conductor().lcm(&mu.conductor());
        let field = CycField::new(l)?;
        lifted = group.over_field(&field)?;
        (lifted, kappa.coerce_to(&field)?, mu.coerce_to(&field)?)
    };
    let lambda = &mu * &mu;
    let scaled = kappa.scale(&lambda);
    let base = PbwAlgebra::new(&group, &kappa)?;
    let target = PbwAlgebra::new(&group, &scaled)?;
    for word in sample_words(&group, len) {
        let nvec = word
            .iter()
            .filter(|l| matches!(l, Letter::Vector(_)))
            .count();
        let direct = base.normal_form(&word)?.scale(&mu.pow(nvec as u64));
        let transported = target.normal_form(&word)?.scale_by_degree(&mu);
        if direct != transported {
            return Ok(Err(ScalingFailure {
                word,
                direct,
                transported,
            }));
        }
    }
    Ok(Ok(()))
}

/// The PBW basis `{v^e g : |e| ≤ d}`.
pub fn pbw_basis(group: &Group, d: u32) -> Vec<(Monomial, usize)> {
    let mut out = Vec::new();
    for k in 0..=d {
        for m in poly::monomials_of_degree(group.dim(), k) {
            for g in 0..group.order() {
                out.push((m.clone(), g));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::linalg::Mat;
    use Letter::{Group as G, Vector as V};

    fn q() -> Arc<CycField> {
        CycField::new(1).unwrap()
    }

    fn trivial(f: &Arc<CycField>, n: usize) -> Group {
        Group::close_generators(f, n, &[], DEFAULT_CAP).unwrap()
    }

    fn weyl(f: &Arc<CycField>, t: i64) -> KappaMap {
        let mut k = KappaMap::zero(f, 2, 1);
        k.set(0, 1, 0, CycNum::from_int(f, t));
        k
    }

    fn pm(f: &Arc<CycField>) -> Group {
        let minus = Mat::identity(f, 2).scale(&CycNum::from_int(f, -1));
        Group::close_generators(f, 2, &[minus], DEFAULT_CAP).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn swap_relation() {
        let f = q();
        let g = trivial(&f, 2);
        let k = weyl(&f, 1);
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let nf = alg.normal_form(&[V(1), V(0)]).unwrap();
        let mut expected = AlgebraElement::term(&f, mono(&[1, 1]), 0, CycNum::one(&f));
        expected.add_term(mono(&[0, 0]), 0, CycNum::from_int(&f, -1));
        assert_eq!(nf, expected);
    }

    #[test]
    fn group_letter_moves_right() {
        let f = q();
        let g = pm(&f);
        let k = KappaMap::zero(&f, 2, 2);
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let nf = alg.normal_form(&[G(1), V(0)]).unwrap();
        assert_eq!(
            nf,
            AlgebraElement::term(&f, mono(&[1, 0]), 1, CycNum::from_int(&f, -1))
        );
    }

    #[test]
    fn two_swaps() {
        let f = q();
        let g = trivial(&f, 2);
        let k = weyl(&f, 3);
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let nf = alg.normal_form(&[V(1), V(1), V(0)]).unwrap();
        let mut expected = AlgebraElement::term(&f, mono(&[1, 2]), 0, CycNum::one(&f));
        expected.add_term(mono(&[0, 1]), 0, CycNum::from_int(&f, -6));
        assert_eq!(nf, expected);
    }

    #[test]
    fn one_is_neutral() {
        let f = q();
        let g = pm(&f);
        let mut k = KappaMap::zero(&f, 2, 2);
        k.set(0, 1, 0, CycNum::one(&f));
        k.set(0, 1, 1, CycNum::from_int(&f, 5));
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let x = alg.normal_form(&[V(1), G(1), V(0), V(1)]).unwrap();
        assert_eq!(alg.multiply(&alg.one(), &x), x);
        assert_eq!(alg.multiply(&x, &alg.one()), x);
    }

    #[test]
    fn v1g_squared() {
        let f = q();
        let g = pm(&f);
        let mut k = KappaMap::zero(&f, 2, 2);
        k.set(0, 1, 0, CycNum::one(&f));
        k.set(0, 1, 1, CycNum::from_int(&f, 2));
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let a = AlgebraElement::term(&f, mono(&[1, 0]), 1, CycNum::one(&f));
        assert_eq!(
            alg.multiply(&a, &a),
            AlgebraElement::term(&f, mono(&[2, 0]), 0, CycNum::from_int(&f, -1))
        );
    }

    #[test]
    fn zero_kappa_resolves() {
        let f = q();
        let g = pm(&f);
        assert_eq!(
            pbw_overlap_check(&g, &KappaMap::zero(&f, 2, 2)).unwrap(),
            Ok(())
        );
    }

    #[test]
    fn non_invariant_kappa_fails_on_group_overlap() {
        // κ(v1, v2) = v-independent but hitting a non-central element breaks invariance.
        let f = q();
        let swap = Mat::from_int_rows(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let g = Group::close_generators(&f, 3, &[swap], DEFAULT_CAP).unwrap();
        let mut k = KappaMap::zero(&f, 3, 2);
        k.set(0, 2, 0, CycNum::one(&f));
        let res = pbw_overlap_check(&g, &k).unwrap();
        assert!(matches!(
            res,
            Err(OverlapWitness {
                kind: OverlapKind::Group { .. },
                ..
            })
        ));
    }

    #[test]
    fn weyl_scaling_by_two() {
        let f = q();
        let g = trivial(&f, 2);
        let k = weyl(&f, 1);
        assert_eq!(
            scaling_check(&g, &k, &CycNum::from_int(&f, 2), 3).unwrap(),
            Ok(())
        );
        assert_eq!(
            scaling_check(&g, &k, &CycNum::zeta_pow(&CycField::new(4).unwrap(), 1), 3).unwrap(),
            Ok(())
        );
        assert!(scaling_check(&g, &k, &CycNum::zero(&f), 3).is_err());
    }

    #[test]
    fn top_component_matches_skew_product() {
        let f = q();
        let g = pm(&f);
        let mut k = KappaMap::zero(&f, 2, 2);
        k.set(0, 1, 0, CycNum::one(&f));
        k.set(0, 1, 1, CycNum::from_int(&f, 3));
        let alg = PbwAlgebra::new(&g, &k).unwrap();
        let a = alg.normal_form(&[V(1), G(1), V(0)]).unwrap();
        let b = alg.normal_form(&[V(1), V(1), G(1)]).unwrap();
        let prod = alg.multiply(&a, &b);
        assert_eq!(prod.degree(), Some(4));
        assert_eq!(
            prod.top_component(),
            skew_group_product(&g, &a.top_component(), &b.top_component())
        );
    }

    #[test]
    fn display() {
        let f = q();
        let mut x = AlgebraElement::term(&f, mono(&[2, 1]), 1, CycNum::from_frac(&f, 1, 2));
        x.add_term(mono(&[0, 0]), 0, CycNum::one(&f));
        assert_eq!(alloc::format!("{x}"), "(1) + (1/2)*v1^2*v2*g1");
    }
}
