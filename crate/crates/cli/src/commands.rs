//! Subcommand implementations. Each returns the report for stdout, a short
//! human summary for stderr, and an exit code.

use hecke_core::kappa::{
    add_elementwise, classification_crosscheck, kappa_from_params, valid_kappa_basis,
};
use hecke_core::pbw::{pbw_overlap_check, OverlapKind, OverlapWitness};
use hecke_core::poly::leibniz_bracket;
use hecke_core::probe::{
    self, align_field, invariant_polys, omega_matrix, poisson_bracket, ProbeReport, ScanRow,
    Verdict,
};
use hecke_core::{CycNum, Group, KappaMap, ParamPoint, PbwAlgebra, ReflectionData};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format;
use crate::literal::format_scalar;
use crate::spec::{params_json, GroupSpec, ParamSpec};

pub struct Outcome {
    pub stdout: String,
    pub summary: String,
    pub code: i32,
}

impl Outcome {
    fn json(v: &Value, summary: String, pass: bool) -> Outcome {
        Outcome {
            stdout: serde_json::to_string_pretty(v).expect("report serializes") + "\n",
            summary,
            code: if pass { 0 } else { 1 },
        }
    }
}

/// A parsed spec with its group and reflection data.
pub struct Loaded {
    pub spec: GroupSpec,
    pub group: Group,
    pub refl: ReflectionData,
}

impl Loaded {
    pub fn from_text(text: &str) -> Result<Loaded, CliError> {
        let spec = GroupSpec::parse(text)?;
        let group = spec.build_group()?;
        let refl = ReflectionData::compute(&group)?;
        Ok(Loaded { spec, group, refl })
    }

    pub fn from_path(path: &str) -> Result<Loaded, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        Loaded::from_text(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{path}: {msg}")),
            other => other,
        })
    }

    fn label(&self) -> String {
        self.group.name().unwrap_or("unnamed group").to_string()
    }

    /// Group and reflection data over a field that also contains `params`.
    fn aligned(&self, params: &ParamPoint) -> Result<(Group, ReflectionData), CliError> {
        Ok(match align_field(&self.group, &self.refl, params)? {
            Some(pair) => pair,
            None => (self.group.clone(), self.refl.clone()),
        })
    }
}

fn group_json(l: &Loaded) -> Value {
    json!({
        "name": l.group.name(),
        "conductor": l.spec.conductor,
        "dim": l.group.dim(),
        "order": l.group.order(),
        "conjugacy_classes": l.group.classes().len(),
    })
}

pub fn classify(l: &Loaded) -> Result<Outcome, CliError> {
    let basis = valid_kappa_basis(&l.group)?;
    let report = classification_crosscheck(&l.group, &l.refl, &basis)?;
    let classes: Vec<Value> = l
        .refl
        .sprime_classes
        .iter()
        .map(|c| {
            json!({
                "representative": c.representative,
                "members": c.members,
                "matrix": format::matrix(l.group.element(c.representative)),
                "omega": format::matrix(l.refl.omega[&c.representative].matrix()),
            })
        })
        .collect();
    let pass = report.passed();
    let v = json!({
        "group": group_json(l),
        "spec": l.spec.to_json(),
        "bireflections": l.refl.bireflections,
        "admissible_classes": classes,
        "invariant_forms": l.refl.invariant_forms.iter().map(|b| format::matrix(b.matrix())).collect::<Vec<_>>(),
        "n_invariant": l.refl.n_invariant(),
        "s_subgroup_order": l.refl.s_subgroup.len(),
        "g_equals_s": l.refl.g_equals_s(&l.group),
        "kappa_space_dim": report.dim_linear_system,
        "expected_dim": report.n_invariant + report.sprime_classes,
        "crosscheck": {
            "pass": pass,
            "spans_equal": report.spans_equal,
            "support_in_s": report.support_in_s,
            "identity_part_invariant": report.identity_part_invariant,
        },
    });
    let summary = format!(
        "{}: |G| = {}, N = {}, {} admissible class(es), kappa space dim {} (expected {}), crosscheck {}",
        l.label(),
        l.group.order(),
        report.n_invariant,
        report.sprime_classes,
        report.dim_linear_system,
        report.n_invariant + report.sprime_classes,
        if pass { "pass" } else { "FAIL" }
    );
    Ok(Outcome::json(&v, summary, pass))
}

/// `κ` for a parameter spec, over a field containing every value.
fn kappa_for(l: &Loaded, p: &ParamSpec) -> Result<(Group, ReflectionData, KappaMap), CliError> {
    let point = p.to_point();
    let (group, refl) = l.aligned(&point)?;
    let mut kappa = kappa_from_params(&group, &refl, &point).map_err(input_if_user)?;
    for (s, c) in &p.c_elements {
        add_elementwise(&mut kappa, &refl, *s, c).map_err(input_if_user)?;
    }
    Ok((group, refl, kappa))
}

fn input_if_user(e: hecke_core::Error) -> CliError {
    match e {
        hecke_core::Error::Internal(_) => CliError::Core(e),
        other => CliError::Input(format!("params: {other}")),
    }
}

fn witness_json(w: &OverlapWitness) -> Value {
    let (kind, overlap) = match w.kind {
        OverlapKind::Triple { i, j, k } => ("triple", format!("v{} v{} v{}", k + 1, j + 1, i + 1)),
        OverlapKind::Group { g, i, j } => ("group", format!("g{} v{} v{}", g, j + 1, i + 1)),
    };
    json!({
        "kind": kind,
        "overlap": overlap,
        "discrepancy": format::element(&w.discrepancy),
    })
}

fn params_or_spec<'a>(l: &'a Loaded, params: Option<&'a ParamSpec>) -> Option<&'a ParamSpec> {
    params.or(l.spec.params.as_ref())
}

pub fn pbw_check(
    l: &Loaded,
    params: Option<&ParamSpec>,
    all_basis: bool,
) -> Result<Outcome, CliError> {
    let mut cases: Vec<(String, Group, KappaMap)> = Vec::new();
    let chosen = params_or_spec(l, params);
    if all_basis || chosen.is_none() {
        for (i, k) in valid_kappa_basis(&l.group)?.into_iter().enumerate() {
            cases.push((format!("basis[{i}]"), l.group.clone(), k));
        }
    }
    if let Some(p) = chosen {
        let (g, _, k) = kappa_for(l, p)?;
        cases.push(("params".into(), g, k));
    }
    let mut rows = Vec::new();
    let mut failures = 0;
    for (label, g, k) in &cases {
        let row = match pbw_overlap_check(g, k)? {
            Ok(()) => json!({"label": label, "pass": true}),
            Err(w) => {
                failures += 1;
                json!({"label": label, "pass": false, "witness": witness_json(&w)})
            }
        };
        rows.push(row);
    }
    let pass = failures == 0;
    let v = json!({
        "group": group_json(l),
        "checked": rows,
        "pass": pass,
    });
    let summary = format!(
        "{}: {} deformation(s) checked, {} overlap failure(s)",
        l.label(),
        cases.len(),
        failures
    );
    Ok(Outcome::json(&v, summary, pass))
}

fn require_params<'a>(
    l: &'a Loaded,
    params: Option<&'a ParamSpec>,
) -> Result<&'a ParamSpec, CliError> {
    params_or_spec(l, params).ok_or_else(|| {
        CliError::Input("no parameters: pass --params or add \"params\" to the group spec".into())
    })
}

fn verdict_json(v: &Verdict) -> (Value, Value) {
    match v {
        Verdict::CommutativeUpTo(d) => (json!(format!("commutative_up_to_{d}")), Value::Null),
        Verdict::Noncommutative(w) => (
            json!("noncommutative"),
            json!({
                "p": format::poly(&w.p),
                "q": format::poly(&w.q),
                "degree": w.degree,
                "commutator": format::element(&w.commutator),
            }),
        ),
    }
}

fn report_json(l: &Loaded, r: &ProbeReport, witness_verified: Option<bool>) -> Value {
    let (verdict, witness) = verdict_json(&r.verdict);
    json!({
        "group": group_json(l),
        "params": params_json(&r.params),
        "degree_bound": r.degree_bound,
        "verdict": verdict,
        "witness": witness,
        "witness_verified": witness_verified,
        "poisson_match": r.poisson_match,
        "trace_identity": r.trace_identity,
        "g_equals_s": r.g_equals_s,
        "warnings": r.warnings,
    })
}

pub fn center_probe(
    l: &Loaded,
    params: Option<&ParamSpec>,
    degree: u32,
) -> Result<Outcome, CliError> {
    let p = require_params(l, params)?;
    if !p.c_elements.is_empty() {
        return Err(CliError::Input(
            "c_elements is only accepted by pbw-check; the probe needs a valid deformation".into(),
        ));
    }
    let (group, refl, kappa) = kappa_for(l, p)?;
    if let Err(w) = pbw_overlap_check(&group, &kappa)? {
        let v = json!({"group": group_json(l), "pbw": witness_json(&w)});
        return Ok(Outcome::json(
            &v,
            format!("{}: deformation fails the overlap check", l.label()),
            false,
        ));
    }
    let point = p.to_point();
    let report = probe::probe_point(&group, &refl, &point, degree)?;
    let verified = match &report.verdict {
        Verdict::Noncommutative(w) => Some(probe::verify_witness(&group, &kappa, w)?),
        Verdict::CommutativeUpTo(_) => None,
    };
    let consistent = report.verdict.is_commutative() || !point.t_is_zero();
    let pass =
        report.poisson_match && report.trace_identity && verified != Some(false) && consistent;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let summary = format!(
        "{}: {} (degree bound {}), poisson {}, trace identity {}",
        l.label(),
        match &report.verdict {
            Verdict::CommutativeUpTo(d) => format!("commutative up to degree {d}"),
            Verdict::Noncommutative(w) => format!("noncommutative, witness of degree {}", w.degree),
        },
        degree,
        if report.poisson_match {
            "match"
        } else {
            "MISMATCH"
        },
        if report.trace_identity {
            "pass"
        } else {
            "FAIL"
        },
    );
    Ok(Outcome::json(
        &report_json(l, &report, verified),
        summary,
        pass,
    ))
}

pub fn poisson(l: &Loaded, params: Option<&ParamSpec>, degree: u32) -> Result<Outcome, CliError> {
    let p = require_params(l, params)?;
    if !p.c_elements.is_empty() {
        return Err(CliError::Input(
            "c_elements is only accepted by pbw-check".into(),
        ));
    }
    let (group, refl, kappa) = kappa_for(l, p)?;
    let point = p.to_point().coerce_to(group.field())?;
    let alg = PbwAlgebra::new(&group, &kappa)?;
    let omega = omega_matrix(group.field(), &refl, &point, group.dim())?;
    let invs: Vec<_> = (1..=degree)
        .flat_map(|d| invariant_polys(&group, d))
        .collect();
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for (a, x) in invs.iter().enumerate() {
        for y in &invs[a..] {
            let expected = leibniz_bracket(&omega, x, y);
            let (bracket, ok) = match poisson_bracket(&alg, x, y) {
                Ok(b) => {
                    let ok = b == expected;
                    (json!(format::poly(&b)), ok)
                }
                Err(hecke_core::Error::Internal(msg)) => (json!({"error": msg}), false),
                Err(e) => return Err(e.into()),
            };
            if !ok {
                mismatches += 1;
            }
            rows.push(json!({
                "p": format::poly(x),
                "q": format::poly(y),
                "bracket": bracket,
                "leibniz": format::poly(&expected),
                "match": ok,
            }));
        }
    }
    let pass = mismatches == 0;
    let v = json!({
        "group": group_json(l),
        "params": params_json(&p.to_point()),
        "degree_bound": degree,
        "omega": format::matrix(&omega),
        "pairs": rows,
        "pass": pass,
    });
    let summary = format!(
        "{}: {} invariant pair(s) up to degree {}, {} mismatch(es)",
        l.label(),
        invs.len() * (invs.len() + 1) / 2,
        degree,
        mismatches
    );
    Ok(Outcome::json(&v, summary, pass))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn row_flags(row: &ScanRow) -> (bool, bool) {
    let t_zero = row.params.t_is_zero();
    let contradiction = t_zero && !row.verdict.is_commutative();
    let insufficient = !t_zero && row.verdict.is_commutative();
    (contradiction, insufficient)
}

pub fn scan(l: &Loaded, values: &[CycNum], degree: u32, fmt: Format) -> Result<Outcome, CliError> {
    if values.is_empty() {
        return Err(CliError::Input("--grid needs at least one value".into()));
    }
    let grid = probe::grid_product(&l.refl, values);
    let mut rows = grid
        .par_iter()
        .map(|p| probe::scan_point(&l.group, &l.refl, p, degree))
        .collect::<Result<Vec<_>, _>>()?;
    probe::sort_rows(&mut rows);
    let contradictions = rows.iter().filter(|r| row_flags(r).0).count();
    let insufficient = rows.iter().filter(|r| row_flags(r).1).count();
    let pass = contradictions == 0;
    let stdout = match fmt {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let (verdict, witness) = verdict_json(&r.verdict);
                    let (contradiction, insufficient) = row_flags(r);
                    json!({
                        "params": params_json(&r.params),
                        "verdict": verdict,
                        "witness_degree": r.witness_degree(),
                        "witness": witness,
                        "contradiction": contradiction,
                        "insufficient_degree": insufficient,
                    })
                })
                .collect();
            let v = json!({
                "group": group_json(l),
                "degree_bound": degree,
                "rows": rows,
                "pass": pass,
            });
            serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
        }
        Format::Csv => csv(&l.refl, &rows),
    };
    let summary = format!(
        "{}: {} grid point(s), {} with a witness, {} without a witness despite t != 0, {} contradiction(s)",
        l.label(),
        rows.len(),
        rows.iter().filter(|r| !r.verdict.is_commutative()).count(),
        insufficient,
        contradictions
    );
    Ok(Outcome {
        stdout,
        summary,
        code: if pass { 0 } else { 1 },
    })
}

fn csv(refl: &ReflectionData, rows: &[ScanRow]) -> String {
    let mut header: Vec<String> = (1..=refl.n_invariant()).map(|i| format!("t{i}")).collect();
    header.extend(
        refl.sprime_classes
            .iter()
            .map(|c| format!("c{}", c.representative)),
    );
    header.extend(["verdict".to_string(), "witness_degree".to_string()]);
    let mut out = header.join(",") + "\n";
    for r in rows {
        let mut cells: Vec<String> = r.params.t.iter().map(format_scalar).collect();
        cells.extend(r.params.c.values().map(format_scalar));
        cells.push(match &r.verdict {
            Verdict::CommutativeUpTo(d) => format!("commutative_up_to_{d}"),
            Verdict::Noncommutative(_) => "noncommutative".into(),
        });
        cells.push(
            r.witness_degree()
                .map(|d| d.to_string())
                .unwrap_or_default(),
        );
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
