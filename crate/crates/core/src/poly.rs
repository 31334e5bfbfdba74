//! Commutative polynomials in `S(V)` with the linear action of matrices on them.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cyclo::{CycField, CycNum, Rational};
use crate::linalg::Mat;

/// Exponent vector of `v_1^{e_1} ⋯ v_n^{e_n}`, ordered degree first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Variable indices in nondecreasing order, each repeated by its exponent.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            out.extend(core::iter::repeat_n(i, e as usize));
        }
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// All monomials of total degree `d` in `n` variables, in [`Monomial`] order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return if d == 0 {
            vec![Monomial(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

/// Number of monomials of degree at most `d` in `n` variables, `C(n+d, d)`.
pub fn count_monomials_up_to(n: usize, d: u32) -> usize {
    let mut c: u128 = 1;
    for k in 1..=d as u128 {
        c = c * (n as u128 + k) / k;
    }
    c as usize
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: Arc<CycField>,
    nvars: usize,
    terms: BTreeMap<Monomial, CycNum>,
}

impl Poly {
    pub fn zero(field: &Arc<CycField>, nvars: usize) -> Poly {
        Poly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Arc<CycField>, nvars: usize, c: CycNum) -> Poly {
        let mut p = Poly::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn monomial(field: &Arc<CycField>, m: Monomial, c: CycNum) -> Poly {
        let mut p = Poly::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn var(field: &Arc<CycField>, nvars: usize, i: usize) -> Poly {
        Poly::monomial(field, Monomial::var(nvars, i), CycNum::one(field))
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycNum::zero(&self.field))
    }

    pub fn add_term(&mut self, m: Monomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(&self.field, self.nvars, CycNum::one(&self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c.scale(&Rational::from_integer(e.into())));
        }
        out
    }

    /// Substitutes `v_i ↦ g(v_i) = Σ_j g[j][i] v_j`.
    pub fn act(&self, g: &Mat) -> Poly {
        let n = self.nvars;
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = Poly::zero(&self.field, n);
                for j in 0..n {
                    p.add_term(Monomial::var(n, j), g.get(j, i).clone());
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| {
                vec![
                    Poly::constant(&self.field, n, CycNum::one(&self.field)),
                    p.clone(),
                ]
            })
            .collect();
        let mut out = Poly::zero(&self.field, n);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&self.field, n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Coefficient vector against the given monomial list.
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<CycNum> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coordinates(
        field: &Arc<CycField>,
        nvars: usize,
        basis: &[Monomial],
        coords: &[CycNum],
    ) -> Poly {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in basis.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// `{p, q}_ω = Σ_{i,j} ω(v_i, v_j) ∂_i p ∂_j q` for a skew form given by its matrix.
pub fn leibniz_bracket(omega: &Mat, p: &Poly, q: &Poly) -> Poly {
    let n = p.nvars();
    let dp: Vec<Poly> = (0..n).map(|i| p.derivative(i)).collect();
    let dq: Vec<Poly> = (0..n).map(|j| q.derivative(j)).collect();
    let mut out = Poly::zero(p.field(), n);
    for i in 0..n {
        if dp[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let w = omega.get(i, j);
            if w.is_zero() || dq[j].is_zero() {
                continue;
            }
            out = out.add(&dp[i].mul(&dq[j]).scale(w));
        }
    }
    out
}
