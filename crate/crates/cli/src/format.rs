//! Text renderings of exact values used in reports.

use hecke_core::poly::{Monomial, Poly};
use hecke_core::{AlgebraElement, CycNum, Mat};
use serde_json::Value;

use crate::literal::format_scalar;

fn monomial(m: &Monomial) -> Vec<String> {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("v{}", i + 1)
            } else {
                format!("v{}^{}", i + 1, e)
            }
        })
        .collect()
}

/// Joins `(coefficient, factors)` terms into `2*v1*v2 - v2 + (1 + z4^1)*g3`.
fn join_terms<'a>(terms: impl Iterator<Item = (&'a CycNum, Vec<String>)>) -> String {
    let mut out = String::new();
    for (c, factors) in terms {
        let rational = c.as_rational().cloned();
        let (negative, body) = match &rational {
            Some(q) => {
                let neg = q < &num_traits::Zero::zero();
                let abs = if neg { -q.clone() } else { q.clone() };
                let one = num_traits::One::is_one(&abs);
                let body = match (factors.is_empty(), one) {
                    (true, _) => abs.to_string(),
                    (false, true) => factors.join("*"),
                    (false, false) => format!("{abs}*{}", factors.join("*")),
                };
                (neg, body)
            }
            None => {
                let lit = format!("({})", format_scalar(c));
                let body = if factors.is_empty() {
                    lit
                } else {
                    format!("{lit}*{}", factors.join("*"))
                };
                (false, body)
            }
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Highest degree first.
pub fn poly(p: &Poly) -> String {
    join_terms(p.terms().iter().rev().map(|(m, c)| (c, monomial(m))))
}

/// Group elements appear as `g<index>`; the identity is implicit.
pub fn element(x: &AlgebraElement) -> String {
    join_terms(x.terms().iter().rev().map(|((m, g), c)| {
        let mut f = monomial(m);
        if *g != 0 {
            f.push(format!("g{g}"));
        }
        (c, f)
    }))
}

pub fn matrix(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(format_scalar(m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}
