//! Exact arithmetic in the cyclotomic field `ℚ(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` reduced modulo
//! the `m`-th cyclotomic polynomial, so equality of values is equality of
//! coefficient vectors. Every value carries a shared handle to its field.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Largest conductor a field may be created with, including conductors reached
/// by coercing two operands to their lcm.
pub const MAX_CONDUCTOR: u64 = 512;

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u64) -> Result<Vec<BigInt>> {
    if m == 0 {
        return Err(Error::ZeroConductor);
    }
    if m > MAX_CONDUCTOR {
        return Err(Error::ConductorTooLarge(m));
    }
    // x^m - 1 = Π_{d | m} Φ_d, so peel off every proper divisor.
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d)?;
            poly = exact_monic_division(&poly, &phi_d);
        }
    }
    Ok(poly)
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The field `ℚ(ζ_m)` together with its defining polynomial.
#[derive(Debug)]
pub struct CycField {
    conductor: u64,
    degree: usize,
    modulus: Vec<BigInt>,
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CycField {}

impl CycField {
    pub fn new(conductor: u64) -> Result<Arc<CycField>> {
        let modulus = cyclotomic_polynomial(conductor)?;
        let degree = modulus.len() - 1;
        Ok(Arc::new(CycField {
            conductor,
            degree,
            modulus,
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `φ(m)`, the dimension of the field over `ℚ`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Folds exponents modulo `m` and divides by `Φ_m`; returns `φ(m)` coefficients.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let m = self.conductor as usize;
        if coeffs.len() > m {
            for k in m..coeffs.len() {
                let c = core::mem::replace(&mut coeffs[k], Rational::zero());
                if !c.is_zero() {
                    coeffs[k % m] += c;
                }
            }
            coeffs.truncate(m);
        }
        let d = self.degree;
        for k in (d..coeffs.len()).rev() {
            let c = core::mem::replace(&mut coeffs[k], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (i, f) in self.modulus[..d].iter().enumerate() {
                if !f.is_zero() {
                    coeffs[k - d + i] -= &c * Rational::from_integer(f.clone());
                }
            }
        }
        coeffs.resize(d, Rational::zero());
        coeffs
    }
}

/// An element of `ℚ(ζ_m)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero(field: &Arc<CycField>) -> CycNum {
        CycNum {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    pub fn one(field: &Arc<CycField>) -> CycNum {
        CycNum::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycField>, q: Rational) -> CycNum {
        let mut coeffs = vec![Rational::zero(); field.degree];
        coeffs[0] = q;
        CycNum {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_int(field: &Arc<CycField>, n: i64) -> CycNum {
        CycNum::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(field: &Arc<CycField>, num: i64, den: i64) -> CycNum {
        CycNum::from_rational(field, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> CycNum {
        let m = field.conductor as i64;
        let e = k.rem_euclid(m) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        CycNum::from_power_coeffs(field, coeffs)
    }

    /// Reduces `Σ a_k ζ^k` (any number of terms) to canonical form.
    pub fn from_power_coeffs(field: &Arc<CycField>, coeffs: Vec<Rational>) -> CycNum {
        CycNum {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    /// Parses `Σ a_k ζ^k` from rational literals such as `"3"`, `"-1/2"`.
    pub fn from_coeff_strs<S: AsRef<str>>(field: &Arc<CycField>, parts: &[S]) -> Result<CycNum> {
        let coeffs = parts
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycNum::from_power_coeffs(field, coeffs))
    }

    /// Canonical coefficients as `"p/q"` strings, `φ(m)` of them.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|q| q.to_string()).collect()
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Embeds into `ℚ(ζ_M)` for a multiple `M` of the current conductor.
    pub fn coerce_to(&self, target: &Arc<CycField>) -> Result<CycNum> {
        let m = self.field.conductor;
        let big = target.conductor;
        if m == big {
            return Ok(CycNum {
                field: target.clone(),
                coeffs: self.coeffs.clone(),
            });
        }
        if !big.is_multiple_of(m) {
            return Err(Error::Internal(alloc::format!(
                "cannot embed Q(zeta_{m}) into Q(zeta_{big})"
            )));
        }
        let step = (big / m) as usize;
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Ok(CycNum::from_power_coeffs(target, coeffs))
    }

    fn unify(&self, other: &CycNum) -> Result<(CycNum, CycNum)> {
        let a = self.field.conductor;
        let b = other.field.conductor;
        let l = a.lcm(&b);
        if l > MAX_CONDUCTOR {
            return Err(Error::ConductorTooLarge(l));
        }
        let field = if l == a {
            self.field.clone()
        } else if l == b {
            other.field.clone()
        } else {
            CycField::new(l)?
        };
        Ok((self.coerce_to(&field)?, other.coerce_to(&field)?))
    }

    fn same_field(&self, other: &CycNum) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        if !self.same_field(other) {
            let (a, b) = self.unify(other)?;
            return a.try_add(&b);
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        if !self.same_field(other) {
            let (a, b) = self.unify(other)?;
            return a.try_sub(&b);
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        if !self.same_field(other) {
            let (a, b) = self.unify(other)?;
            return a.try_mul(&b);
        }
        let d = self.field.degree;
        if d == 1 {
            return Ok(CycNum {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        })
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum::from_rational(&self.field, q.recip()));
        }
        // Solve (multiplication by self) x = 1 on the power basis.
        let d = self.field.degree;
        let mut columns = Vec::with_capacity(d);
        let mut basis = CycNum::one(&self.field);
        let zeta = CycNum::zeta_pow(&self.field, 1);
        for _ in 0..d {
            columns.push(self.try_mul(&basis)?.coeffs);
            basis = basis.try_mul(&zeta)?;
        }
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = (0..d).map(|c| columns[c][r].clone()).collect();
                row.push(if r == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| Error::Internal("singular multiplication map".into()))?;
            aug.swap(col, pivot);
            let p = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &p;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=d {
                        let delta = &f * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs: aug.into_iter().map(|mut row| row.pop().unwrap()).collect(),
        })
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// Parses `"p"` or `"p/q"` with optional sign and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(alloc::format!("bad rational literal {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(alloc::format!("bad rational literal {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(alloc::format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor
            .cmp(&other.field.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.field.conductor)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).expect("cyclotomic arithmetic")
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$try(&rhs).expect("cyclotomic arithmetic")
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$try(rhs).expect("cyclotomic arithmetic")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.same_field(rhs) {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if self.same_field(rhs) {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in self.coeffs.iter_mut() {
            *c = -core::mem::replace(c, Rational::zero());
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), int_poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), int_poly(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), int_poly(&[1, 0, 1]));
        assert_eq!(
            cyclotomic_polynomial(12).unwrap(),
            int_poly(&[1, 0, -1, 0, 1])
        );
        assert_eq!(cyclotomic_polynomial(0), Err(Error::ZeroConductor));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..60 {
            let p = cyclotomic_polynomial(m).unwrap();
            assert_eq!((p.len() - 1) as u64, totient(m), "m = {m}");
            assert!(p.last().unwrap().is_one());
        }
    }

    #[test]
    fn zeta_satisfies_its_minimal_polynomial() {
        for m in [3u64, 5, 8, 12, 15] {
            let f = CycField::new(m).unwrap();
            let z = CycNum::zeta_pow(&f, 1);
            let mut acc = CycNum::zero(&f);
            for (k, c) in f.modulus().iter().enumerate() {
                acc += &z.pow(k as u64).scale(&Rational::from_integer(c.clone()));
            }
            assert!(acc.is_zero());
            assert!(z.pow(m).is_one());
        }
    }

    #[test]
    fn worked_products() {
        let f4 = CycField::new(4).unwrap();
        let i = CycNum::zeta_pow(&f4, 1);
        assert_eq!(&i * &i, CycNum::from_int(&f4, -1));

        let f3 = CycField::new(3).unwrap();
        let one = CycNum::one(&f3);
        let a = &one + &CycNum::zeta_pow(&f3, 1);
        let b = &one + &CycNum::zeta_pow(&f3, 2);
        assert!((&a * &b).is_one());

        // 1/(1+i) = (1-i)/2
        let x = (&CycNum::one(&f4) + &i).inv().unwrap();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let expected = (&CycNum::one(&f4) - &i).scale(&half);
        assert_eq!(x, expected);
        assert!((&x * &(&CycNum::one(&f4) + &i)).is_one());
    }

    #[test]
    fn division_by_zero_is_rejected() {
        let f = CycField::new(5).unwrap();
        assert_eq!(CycNum::zero(&f).inv().unwrap_err(), Error::DivisionByZero);
        let one = CycNum::one(&f);
        assert!(one.try_div(&CycNum::zero(&f)).is_err());
    }

    #[test]
    fn mixed_conductors_coerce_to_lcm() {
        let f3 = CycField::new(3).unwrap();
        let f4 = CycField::new(4).unwrap();
        let s = &CycNum::zeta_pow(&f3, 1) + &CycNum::zeta_pow(&f4, 1);
        assert_eq!(s.conductor(), 12);
        let f12 = CycField::new(12).unwrap();
        let expected = &CycNum::zeta_pow(&f12, 4) + &CycNum::zeta_pow(&f12, 3);
        assert_eq!(s, expected);

        let big = CycField::new(509).unwrap();
        let small = CycField::new(7).unwrap();
        let r = CycNum::one(&big).try_add(&CycNum::one(&small));
        assert_eq!(r.unwrap_err(), Error::ConductorTooLarge(3563));
    }

    #[test]
    fn display_and_parse() {
        let f = CycField::new(4).unwrap();
        let x = CycNum::from_coeff_strs(&f, &["1/2", "-3"]).unwrap();
        assert_eq!(x.to_string(), "1/2 - 3*z");
        assert_eq!(x.to_coeff_strings(), ["1/2", "-3"]);
        // z^2 = -1 folds into the constant term.
        let y = CycNum::from_coeff_strs(&f, &["0", "0", "1"]).unwrap();
        assert_eq!(y, CycNum::from_int(&f, -1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
