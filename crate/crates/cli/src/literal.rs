//! Scalar literals: sums of terms `c`, `c*zM`, `c*zM^k`, `zM^k`, where `zM`
//! stands for a primitive `M`-th root of unity `exp(2πi/M)` and `c` is a
//! rational `p` or `p/q`. Examples: `1`, `-1/2`, `z4`, `2 - 3*z12^5`.

use hecke_core::cyclo::parse_rational;
use hecke_core::{CycField, CycNum, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn parse_term(term: &str) -> Result<(Rational, Option<(u64, i64)>), String> {
    let term = term.trim();
    if term.is_empty() {
        return Err("empty term".into());
    }
    let (coef, root) = match term.find('z') {
        None => (term, None),
        Some(pos) => {
            let (head, tail) = term.split_at(pos);
            let head = head.trim();
            let coef = match head.strip_suffix('*') {
                Some(c) => c.trim(),
                None if head.is_empty() => "1",
                None => return Err(format!("expected '*' before root of unity in {term:?}")),
            };
            (coef, Some(tail))
        }
    };
    let coef = parse_rational(coef).map_err(|e| format!("{e} in {term:?}"))?;
    let root = match root {
        None => None,
        Some(r) => {
            let r = &r[1..];
            let (m, k) = match r.split_once('^') {
                Some((m, k)) => (m.trim(), k.trim()),
                None => (r.trim(), "1"),
            };
            let m: u64 = m
                .parse()
                .map_err(|_| format!("bad root-of-unity order {m:?} in {term:?}"))?;
            if m == 0 {
                return Err(format!("root-of-unity order must be positive in {term:?}"));
            }
            let k: i64 = k
                .parse()
                .map_err(|_| format!("bad exponent {k:?} in {term:?}"))?;
            Some((m, k))
        }
    };
    Ok((coef, root))
}

/// Splits at `+`/`-` signs that separate terms. A sign right after `^`, `*` or
/// `/` belongs to the number that follows.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !matches!(prev, Some('^' | '*' | '/')) {
            if !cur.trim().is_empty() {
                out.push((negative, std::mem::take(&mut cur)));
                negative = false;
            }
            if ch == '-' {
                negative = !negative;
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    out.push((negative, cur));
    out
}

/// Parses a literal into the smallest field named by its nonrational terms.
pub fn parse_scalar(s: &str) -> Result<CycNum, String> {
    if s.trim().is_empty() {
        return Err("empty scalar literal".into());
    }
    let mut terms = Vec::new();
    let mut conductor = 1u64;
    for (negative, t) in split_terms(s) {
        let (mut c, root) = parse_term(&t)?;
        if negative {
            c = -c;
        }
        if let Some((m, _)) = root {
            conductor = conductor.lcm(&m);
        }
        terms.push((c, root));
    }
    let field = CycField::new(conductor).map_err(|e| e.to_string())?;
    let mut value = CycNum::zero(&field);
    for (c, root) in terms {
        let term = match root {
            None => CycNum::from_rational(&field, c),
            Some((m, k)) => {
                let step = (conductor / m) as i64;
                CycNum::zeta_pow(&field, k * step).scale(&c)
            }
        };
        value += &term;
    }
    if value.as_rational().is_some() && conductor != 1 {
        let q = value.as_rational().unwrap().clone();
        return Ok(CycNum::from_rational(&CycField::new(1).unwrap(), q));
    }
    Ok(value)
}

/// Inverse of [`parse_scalar`] for values in `ℚ(ζ_m)`, written against `zm`.
pub fn format_scalar(x: &CycNum) -> String {
    let m = x.conductor();
    let mut out = String::new();
    for (k, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if k == 0 {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&format!("z{m}^{k}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Comma-separated list of literals.
pub fn parse_list(s: &str) -> Result<Vec<CycNum>, String> {
    s.split(',').map(parse_scalar).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let x = parse_scalar("-3/4").unwrap();
        assert_eq!(x.conductor(), 1);
        assert_eq!(format_scalar(&x), "-3/4");
        assert_eq!(format_scalar(&parse_scalar("0").unwrap()), "0");
    }

    #[test]
    fn roots_of_unity() {
        let i = parse_scalar("z4").unwrap();
        assert_eq!(i.conductor(), 4);
        assert_eq!(&i * &i, CycNum::from_int(i.field(), -1));
        let minus_one = parse_scalar("z4^2").unwrap();
        assert_eq!(minus_one.conductor(), 1);
        assert_eq!(format_scalar(&parse_scalar("-z4").unwrap()), "-z4^1");
        assert_eq!(parse_scalar("z4^-1").unwrap(), parse_scalar("-z4").unwrap());
    }

    #[test]
    fn mixed_terms_round_trip() {
        for s in ["1/2 - 3*z12^5", "z3 + z4", "2*z8^3 - 1", "-z5^2 + 1/3*z5^4"] {
            let x = parse_scalar(s).unwrap();
            let y = parse_scalar(&format_scalar(&x)).unwrap();
            assert_eq!(x, y, "{s}");
        }
        let a = parse_scalar("z3 + z4").unwrap();
        assert_eq!(a.conductor(), 12);
    }

    #[test]
    fn errors() {
        for s in ["", "1/0", "x", "z0", "2 z4", "1/", "z4^q"] {
            assert!(parse_scalar(s).is_err(), "{s:?}");
        }
    }

    #[test]
    fn lists() {
        let v = parse_list("0,1,z4").unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_list("0,,1").is_err());
    }
}
