//! JSON group specs.
//!
//! ```json
//! {
//!   "name": "plus-minus",
//!   "conductor": 1,
//!   "dim": 2,
//!   "cap": 2000,
//!   "generators": [[["-1", "0"], ["0", "-1"]]],
//!   "params": { "t": ["1"], "c": { "1": "5" } }
//! }
//! ```
//!
//! Matrix entries are scalar literals (see [`crate::literal`]), JSON integers,
//! or arrays of rational strings giving power-basis coefficients in `ℚ(ζ_m)`
//! for the group's conductor `m`. `name`, `cap` and `params` are optional. The
//! keys of `c` are element indices of class representatives as reported by
//! `classify`. `c_elements` sets a value on individual admissible elements
//! instead of whole classes; only `pbw-check` accepts it, so deliberately
//! non-invariant deformations can be tested.

use std::collections::BTreeMap;
use std::sync::Arc;

use hecke_core::group::DEFAULT_CAP;
use hecke_core::{CycField, CycNum, Group, Mat, ParamPoint};
use num_integer::Integer;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::literal::{format_scalar, parse_scalar};

pub const CAP_ENV: &str = "DH_MAX_GROUP_ORDER";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: Option<String>,
    conductor: u64,
    dim: usize,
    #[serde(default)]
    cap: Option<usize>,
    generators: Vec<Vec<Vec<Value>>>,
    #[serde(default)]
    params: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(default)]
    t: Vec<Value>,
    #[serde(default)]
    c: BTreeMap<String, Value>,
    #[serde(default)]
    c_elements: BTreeMap<String, Value>,
}

/// Parameter assignments, all embedded into one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub t: Vec<CycNum>,
    pub c: BTreeMap<usize, CycNum>,
    /// Per-element values on admissible bireflections, added on top of `c`.
    /// These may break conjugation invariance.
    pub c_elements: BTreeMap<usize, CycNum>,
}

impl ParamSpec {
    pub fn to_point(&self) -> ParamPoint {
        ParamPoint {
            t: self.t.clone(),
            c: self.c.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = params_json(&self.to_point());
        if !self.c_elements.is_empty() {
            v["c_elements"] = scalar_map(&self.c_elements);
        }
        v
    }
}

fn scalar_map(m: &BTreeMap<usize, CycNum>) -> Value {
    Value::Object(
        m.iter()
            .map(|(k, v)| (k.to_string(), Value::String(format_scalar(v))))
            .collect(),
    )
}

pub fn params_json(p: &ParamPoint) -> Value {
    json!({
        "t": p.t.iter().map(format_scalar).collect::<Vec<_>>(),
        "c": scalar_map(&p.c),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: Option<String>,
    pub conductor: u64,
    pub dim: usize,
    pub cap: Option<usize>,
    pub generators: Vec<Mat>,
    pub params: Option<ParamSpec>,
}

fn input(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{path}: {msg}"))
}

fn parse_entry(v: &Value, field: &Arc<CycField>, path: &str) -> Result<CycNum, CliError> {
    let x = match v {
        Value::Number(n) => match n.as_i64() {
            Some(k) => CycNum::from_int(field, k),
            None => {
                return Err(input(
                    path,
                    "numbers must be integers; write fractions as \"p/q\"",
                ))
            }
        },
        Value::String(s) => parse_scalar(s).map_err(|e| input(path, e))?,
        Value::Array(parts) => {
            let strs = parts
                .iter()
                .enumerate()
                .map(|(k, p)| match p {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) if n.is_i64() => Ok(n.to_string()),
                    _ => Err(input(&format!("{path}[{k}]"), "expected a rational string")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            CycNum::from_coeff_strs(field, &strs).map_err(|e| input(path, e))?
        }
        _ => {
            return Err(input(
                path,
                "expected a scalar literal, integer or coefficient array",
            ))
        }
    };
    x.coerce_to(field).map_err(|_| {
        input(
            path,
            format!("value does not lie in Q(zeta_{})", field.conductor()),
        )
    })
}

fn parse_params(v: &Value, conductor: u64) -> Result<ParamSpec, CliError> {
    let raw: RawParams = serde_json::from_value(v.clone()).map_err(|e| input("params", e))?;
    let mut t = Vec::new();
    for (i, x) in raw.t.iter().enumerate() {
        t.push(parse_param_value(x, &format!("params.t[{i}]"))?);
    }
    let keyed = |map: &BTreeMap<String, Value>,
                 section: &str|
     -> Result<BTreeMap<usize, CycNum>, CliError> {
        let mut out = BTreeMap::new();
        for (k, x) in map {
            let path = format!("params.{section}.{k}");
            let idx: usize = k
                .parse()
                .map_err(|_| input(&path, "keys must be element indices"))?;
            out.insert(idx, parse_param_value(x, &path)?);
        }
        Ok(out)
    };
    let c = keyed(&raw.c, "c")?;
    let c_elements = keyed(&raw.c_elements, "c_elements")?;
    let field_conductor = t
        .iter()
        .chain(c.values())
        .chain(c_elements.values())
        .fold(conductor, |acc, x| acc.lcm(&x.conductor()));
    let field = CycField::new(field_conductor).map_err(|e| input("params", e))?;
    let lift = |x: &CycNum| x.coerce_to(&field).expect("conductor divides the lcm");
    Ok(ParamSpec {
        t: t.iter().map(lift).collect(),
        c: c.iter().map(|(k, x)| (*k, lift(x))).collect(),
        c_elements: c_elements.iter().map(|(k, x)| (*k, lift(x))).collect(),
    })
}

fn parse_param_value(v: &Value, path: &str) -> Result<CycNum, CliError> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| input(path, e)),
        Value::Number(n) => n
            .as_i64()
            .map(|k| CycNum::from_int(&CycField::new(1).unwrap(), k))
            .ok_or_else(|| input(path, "numbers must be integers; write fractions as \"p/q\"")),
        _ => Err(input(path, "expected a scalar literal")),
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, CliError> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| {
            CliError::Input(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        let field = CycField::new(raw.conductor).map_err(|e| input("conductor", e))?;
        let mut generators = Vec::new();
        for (gi, rows) in raw.generators.iter().enumerate() {
            let gpath = format!("generators[{gi}]");
            if rows.len() != raw.dim {
                return Err(input(
                    &gpath,
                    format!("expected {} rows, found {}", raw.dim, rows.len()),
                ));
            }
            let mut m = Mat::zeros(&field, raw.dim, raw.dim);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != raw.dim {
                    return Err(input(
                        &format!("{gpath}[{i}]"),
                        format!("expected {} entries, found {}", raw.dim, row.len()),
                    ));
                }
                for (j, v) in row.iter().enumerate() {
                    m.set(i, j, parse_entry(v, &field, &format!("{gpath}[{i}][{j}]"))?);
                }
            }
            generators.push(m);
        }
        let params = match &raw.params {
            Some(v) => Some(parse_params(v, raw.conductor)?),
            None => None,
        };
        Ok(GroupSpec {
            name: raw.name,
            conductor: raw.conductor,
            dim: raw.dim,
            cap: raw.cap,
            generators,
            params,
        })
    }

    pub fn field(&self) -> Arc<CycField> {
        CycField::new(self.conductor).expect("conductor validated at parse time")
    }

    /// Cap from the environment, then the group spec, then the default.
    pub fn effective_cap(&self) -> Result<usize, CliError> {
        match std::env::var(CAP_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| {
                CliError::Input(format!("{CAP_ENV}: expected a positive integer, got {s:?}"))
            }),
            Err(_) => Ok(self.cap.unwrap_or(DEFAULT_CAP)),
        }
    }

    pub fn build_group(&self) -> Result<Group, CliError> {
        let cap = self.effective_cap()?;
        let g = Group::close_generators(&self.field(), self.dim, &self.generators, cap)
            .map_err(|e| CliError::Input(format!("generators: {e}")))?;
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }

    /// Canonical JSON: rational entries as `"p/q"`, others as coefficient arrays.
    pub fn to_json(&self) -> Value {
        let entry = |x: &CycNum| match x.as_rational() {
            Some(q) => Value::String(q.to_string()),
            None => Value::Array(
                x.to_coeff_strings()
                    .into_iter()
                    .map(Value::String)
                    .collect(),
            ),
        };
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|m| {
                Value::Array(
                    (0..m.rows())
                        .map(|i| Value::Array((0..m.cols()).map(|j| entry(m.get(i, j))).collect()))
                        .collect(),
                )
            })
            .collect();
        let mut obj = serde_json::Map::new();
        if let Some(n) = &self.name {
            obj.insert("name".into(), json!(n));
        }
        obj.insert("conductor".into(), json!(self.conductor));
        obj.insert("dim".into(), json!(self.dim));
        if let Some(c) = self.cap {
            obj.insert("cap".into(), json!(c));
        }
        obj.insert("generators".into(), Value::Array(gens));
        if let Some(p) = &self.params {
            obj.insert("params".into(), p.to_json());
        }
        Value::Object(obj)
    }
}

/// `--params`: a path to a JSON file or inline JSON.
pub fn parse_params_arg(arg: &str, conductor: u64) -> Result<ParamSpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("--params {arg}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!(
            "--params: line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let v = match v.get("params") {
        Some(inner) => inner.clone(),
        None => v,
    };
    parse_params(&v, conductor)
}
