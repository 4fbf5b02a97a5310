use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use lieposet::ce::tensor_factorization_check;
use lieposet::deform::{deform_02, deform_11, deform_20, infinitesimal_of, DeformError};
use lieposet::nerve::{build_nerve, simplicial_cohomology};
use lieposet::verify::default_max_degree;
use lieposet::{
    build_algebra, cohomology, verify_suite, Acting, AlgebraError, CeError, CochainComplex, CohomologyOptions,
    FieldCtx, LiePosetAlgebra, ModuleKind, Poset, Scalar, SimplicialCochain, VerifyOptions,
};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::args::{
    ActingArg, CohomologyArgs, CommonArgs, DeformArgs, DeformType, ModuleArg, NerveArgs, Output, PosetArgs,
    PosetSource, VerifyArgs,
};
use crate::render::{join, table, verdict};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::CharacteristicTooSmall { .. } | AlgebraError::NotInBasis(..) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<CeError> for CliError {
    fn from(e: CeError) -> Self {
        match e {
            CeError::Algebra(a) => a.into(),
            CeError::CoboundaryNotNilpotent(_) => CliError::Check(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DeformError> for CliError {
    fn from(e: DeformError) -> Self {
        match e {
            DeformError::Algebra(a) => a.into(),
            DeformError::Ce(c) => c.into(),
            DeformError::NotACocycleAtOrderOne => CliError::Check(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Rendered output and whether every check in it passed.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load_poset(source: &PosetSource) -> Result<Poset, CliError> {
    match (&source.poset, &source.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Poset::from_json(&text).map_err(|e| usage(e.to_string()))
        }
        (None, Some(spec)) => Poset::from_family_spec(spec).map_err(|e| usage(e.to_string())),
        _ => Err(usage("give exactly one of --poset or --family")),
    }
}

fn load_algebra(common: &CommonArgs) -> Result<(Poset, Arc<LiePosetAlgebra>), CliError> {
    let poset = load_poset(&common.source)?;
    check_field(&poset, common.field)?;
    let alg = build_algebra(&poset, common.field)?;
    Ok((poset, Arc::new(alg)))
}

fn check_field(poset: &Poset, field: FieldCtx) -> Result<(), CliError> {
    if field.admits(poset.len()) {
        Ok(())
    } else {
        Err(AlgebraError::CharacteristicTooSmall { characteristic: field.characteristic(), n: poset.len() }.into())
    }
}

fn emit(output: &Output, value: serde_json::Value, text: String, ok: bool) -> Report {
    if output.json {
        Report { text: format!("{}\n", serde_json::to_string_pretty(&value).expect("json values serialize")), ok }
    } else {
        Report { text, ok }
    }
}

fn elapsed_line(output: &Output, start: Instant) -> String {
    if output.timings {
        format!("runtime: {} ms\n", start.elapsed().as_millis())
    } else {
        String::new()
    }
}

fn with_runtime(output: &Output, mut value: serde_json::Value, start: Instant) -> serde_json::Value {
    if output.timings {
        value["runtime_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    value
}

pub fn poset(args: &PosetArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let p = load_poset(&args.source)?;
    let file = p.to_file();
    let covers: Vec<[usize; 2]> = p.covers().into_iter().map(|(i, j)| [i, j]).collect();
    let components = p.comparability_components();
    let value = json!({
        "n": file.n,
        "relations": file.relations,
        "covers": covers,
        "height": p.height(),
        "components": components,
    });
    let pairs = |v: &[[usize; 2]]| v.iter().map(|[i, j]| format!("{i}<{j}")).collect::<Vec<_>>().join(" ");
    let mut text = String::new();
    writeln!(text, "N = {}", p.len()).unwrap();
    writeln!(text, "relations: {}", pairs(&file.relations)).unwrap();
    writeln!(text, "covers: {}", pairs(&covers)).unwrap();
    writeln!(text, "height: {}", p.height()).unwrap();
    let comps: Vec<String> = components.iter().map(|c| format!("{{{}}}", join(c))).collect();
    writeln!(text, "components: {}", comps.join(" ")).unwrap();
    text.push_str(&elapsed_line(&args.output, start));
    Ok(emit(&args.output, with_runtime(&args.output, value, start), text, true))
}

pub fn nerve(args: &NerveArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let common = &args.common;
    let p = load_poset(&common.source)?;
    check_field(&p, common.field)?;
    let complex = build_nerve(&p, !args.unreduced);
    let h = simplicial_cohomology(&complex, common.field).map_err(|e| usage(e.to_string()))?;
    let rows: Vec<Vec<String>> = h
        .degrees
        .iter()
        .map(|d| {
            vec![
                d.dim.to_string(),
                d.simplices.to_string(),
                d.dim_kernel.to_string(),
                d.dim_image.to_string(),
                d.dim_h.to_string(),
            ]
        })
        .collect();
    let mut text = format!(
        "nerve of N = {} ({}), field {}\n",
        p.len(),
        if args.unreduced { "unreduced" } else { "reduced" },
        common.field
    );
    text.push_str(&table(&["dim", "simplices", "ker", "im", "H"], &rows));
    writeln!(text, "euler characteristic: {}", h.euler_characteristic()).unwrap();
    text.push_str(&elapsed_line(&common.output, start));
    let value = json!({
        "n": p.len(),
        "field": common.field.to_string(),
        "reduced": !args.unreduced,
        "degrees": h.degrees,
        "euler_characteristic": h.euler_characteristic(),
    });
    Ok(emit(&common.output, with_runtime(&common.output, value, start), text, true))
}

fn element_string(alg: &LiePosetAlgebra, v: &[(usize, Scalar)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|(p, c)| format!("{c}*{}", alg.basis()[*p])).collect::<Vec<_>>().join(" + ")
}

fn element_json(alg: &LiePosetAlgebra, v: &[(usize, Scalar)]) -> serde_json::Value {
    json!(v.iter().map(|(p, c)| (alg.basis()[*p].to_string(), c.to_string())).collect::<Vec<_>>())
}

pub fn algebra(args: &CommonArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let (_, alg) = load_algebra(args)?;
    let basis: Vec<String> = alg.basis().iter().map(ToString::to_string).collect();
    let weights: Vec<(String, String)> =
        alg.basis().iter().zip(alg.weights()).map(|(b, w)| (b.to_string(), w.to_string())).collect();
    let mut brackets = Vec::new();
    for a in 0..alg.dim() {
        for b in a + 1..alg.dim() {
            let v = alg.bracket_basis(a, b);
            if !v.is_empty() {
                brackets.push((a, b, v.clone()));
            }
        }
    }
    let center = alg.center_elements();
    let mut text = String::new();
    writeln!(text, "N = {}, field {}, dim g = {}", alg.n(), alg.field(), alg.dim()).unwrap();
    writeln!(text, "basis: {}", basis.join(" ")).unwrap();
    text.push_str("weights:\n");
    text.push_str(&table(
        &["element", "weight"],
        &weights.iter().map(|(b, w)| vec![b.clone(), w.clone()]).collect::<Vec<_>>(),
    ));
    text.push_str("brackets:\n");
    for (a, b, v) in &brackets {
        writeln!(text, "  [{}, {}] = {}", alg.basis()[*a], alg.basis()[*b], element_string(&alg, v)).unwrap();
    }
    writeln!(text, "center: dim {}", center.len()).unwrap();
    for c in &center {
        writeln!(text, "  {}", element_string(&alg, c)).unwrap();
    }
    text.push_str(&elapsed_line(&args.output, start));
    let value = json!({
        "n": alg.n(),
        "field": alg.field().to_string(),
        "dim": alg.dim(),
        "basis": basis,
        "weights": weights.iter().map(|(b, _)| b.clone()).zip(alg.weights().iter().map(|w| w.0.clone())).collect::<Vec<_>>(),
        "brackets": brackets.iter().map(|(a, b, v)| json!({
            "left": alg.basis()[*a].to_string(),
            "right": alg.basis()[*b].to_string(),
            "value": element_json(&alg, v),
        })).collect::<Vec<_>>(),
        "center": center.iter().map(|c| element_json(&alg, c)).collect::<Vec<_>>(),
    });
    Ok(emit(&args.output, with_runtime(&args.output, value, start), text, true))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
}

pub fn cohomology_cmd(args: &CohomologyArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let common = &args.common;
    let (_, alg) = load_algebra(common)?;
    let kind = match args.module {
        ModuleArg::Trivial => ModuleKind::Trivial,
        ModuleArg::Adjoint => ModuleKind::Adjoint,
    };
    let acting = match args.acting {
        ActingArg::G => Acting::Full,
        ActingArg::K => Acting::Ideal,
    };
    let complex = CochainComplex::new(Arc::clone(&alg), kind, acting, args.weight_zero);
    let top = complex.top_degree();
    let max = args.max_degree.unwrap_or_else(|| default_max_degree(&alg).min(top));
    if max > top {
        return Err(usage(format!("--max-degree {max} exceeds the top degree {top}")));
    }
    let compare = !args.weight_zero;
    let report =
        cohomology(&complex, 0..=max, CohomologyOptions { compare_weight_zero: compare, representatives: false })?;

    let mut checks = Vec::new();
    let dims = report.dims();
    if let Some(v) = report.viviani {
        let zero: Vec<usize> = report.degrees.iter().filter_map(|d| d.weight_zero.map(|w| w.1)).collect();
        checks.push(Check { name: "weight-zero subcomplex", passed: v, lhs: dims.clone(), rhs: zero });
    }
    // C*(k, k)_0 computes the reduced nerve cohomology, whose alternating sum need not vanish
    let euler_applies = top > 0 && !(acting == Acting::Ideal && args.weight_zero);
    if let (Some(chi), true) = (report.euler_characteristic, euler_applies) {
        checks.push(Check {
            name: "euler characteristic",
            passed: chi == 0,
            lhs: vec![chi.unsigned_abs() as usize],
            rhs: vec![0],
        });
    }
    if acting == Acting::Full && !args.weight_zero {
        match kind {
            ModuleKind::Trivial => {
                let binom: Vec<usize> = (0..=max).map(|n| lieposet::ce::binomial(alg.n_eta(), n)).collect();
                checks.push(Check {
                    name: "binomial dimensions",
                    passed: dims == binom,
                    lhs: dims.clone(),
                    rhs: binom,
                });
            }
            ModuleKind::Adjoint => {
                let f = tensor_factorization_check(Arc::clone(&alg), ModuleKind::Adjoint, max)?;
                let rhs: Vec<usize> = f.rows.iter().map(|r| r.rhs).collect();
                let nerve_ok = f.rows.iter().all(|r| r.nerve.is_none_or(|m| m == r.ideal_weight_zero));
                checks.push(Check {
                    name: "tensor factorization",
                    passed: dims == rhs && nerve_ok,
                    lhs: dims.clone(),
                    rhs,
                });
            }
            ModuleKind::AdjointRestrictedToIdeal => {}
        }
    }
    let ok = checks.iter().all(|c| c.passed);

    let acting_name = match acting {
        Acting::Full => "g",
        Acting::Ideal => "k",
    };
    let mut text = format!(
        "H^n({acting_name}, {}) of dim g = {}, field {}{}\n",
        complex.module_kind(),
        alg.dim(),
        alg.field(),
        if args.weight_zero { ", weight zero" } else { "" }
    );
    let mut headers = vec!["n", "dim C", "rank d", "dim H"];
    if compare {
        headers.push("dim H_0");
    }
    let rows: Vec<Vec<String>> = report
        .degrees
        .iter()
        .map(|d| {
            let mut row =
                vec![d.degree.to_string(), d.dim_cochains.to_string(), d.rank_out.to_string(), d.dim_h.to_string()];
            if let Some((_, h0)) = d.weight_zero {
                row.push(h0.to_string());
            }
            row
        })
        .collect();
    text.push_str(&table(&headers, &rows));
    let collisions: usize = report.degrees.iter().map(|d| d.weight_collisions).sum();
    if collisions > 0 {
        writeln!(text, "warning: {collisions} nonzero integer weights vanish in {}", alg.field()).unwrap();
    }
    if let Some(chi) = report.euler_characteristic {
        writeln!(text, "euler characteristic: {chi}").unwrap();
    }
    for c in &checks {
        writeln!(text, "check {}: {}", c.name, verdict(c.passed)).unwrap();
    }
    text.push_str(&elapsed_line(&common.output, start));
    let value = json!({ "field": alg.field().to_string(), "dim_g": alg.dim(), "report": report, "checks": checks });
    Ok(emit(&common.output, with_runtime(&common.output, value, start), text, ok))
}

pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let common = &args.common;
    let p = load_poset(&common.source)?;
    check_field(&p, common.field)?;
    let opts = VerifyOptions {
        samples: args.samples,
        seed: args.seed,
        max_degree: args.max_degree,
        timings: common.output.timings,
    };
    let r = verify_suite(&p, common.field, opts).map_err(|e| match e {
        lieposet::verify::VerifyError::Algebra(a) => CliError::from(a),
        lieposet::verify::VerifyError::Ce(c) => c.into(),
        lieposet::verify::VerifyError::Deform(d) => d.into(),
        other => CliError::Check(other.to_string()),
    })?;
    let mut headers = vec!["check", "status", "lhs", "rhs"];
    if common.output.timings {
        headers.push("ms");
    }
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            let mut row = vec![c.name.clone(), verdict(c.passed).into(), join(&c.lhs), join(&c.rhs)];
            if let Some(ms) = c.runtime_ms {
                row.push(ms.to_string());
            }
            row
        })
        .collect();
    let mut text =
        format!("verify N = {}, dim g = {}, field {}, degrees 0..={}\n", r.n, r.dim_g, r.field, r.max_degree);
    text.push_str(&table(&headers, &rows));
    for c in &r.checks {
        writeln!(text, "  {}: {}", c.name, c.claim).unwrap();
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    writeln!(text, "{} checks, {failed} failed", r.checks.len()).unwrap();
    let ok = r.passed();
    Ok(emit(&common.output, serde_json::to_value(&r).expect("report serializes"), text, ok))
}

fn parse_scalars(field: FieldCtx, s: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',').map(|x| field.parse_scalar(x).map_err(|e| usage(e.to_string()))).collect()
}

fn parse_cochain(field: FieldCtx, dim: i32, spec: &str) -> Result<SimplicialCochain, CliError> {
    let mut values = Vec::new();
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let (simplex, value) =
            part.split_once(':').ok_or_else(|| usage(format!("expected simplex:value, got `{part}`")))?;
        let vertices: Vec<usize> = simplex
            .split('-')
            .map(|v| v.trim().parse().map_err(|_| usage(format!("bad vertex in `{simplex}`"))))
            .collect::<Result<_, _>>()?;
        if vertices.len() as i32 != dim + 1 {
            return Err(usage(format!("`{simplex}` is not a {dim}-simplex")));
        }
        values.push((vertices, field.parse_scalar(value).map_err(|e| usage(e.to_string()))?));
    }
    Ok(SimplicialCochain::from_values(dim, values))
}

fn nerve_cocycle(alg: &LiePosetAlgebra, dim: i32, spec: Option<&str>) -> Result<SimplicialCochain, CliError> {
    if let Some(spec) = spec {
        return parse_cochain(alg.field(), dim, spec);
    }
    let h = simplicial_cohomology(&build_nerve(alg.poset(), true), alg.field()).map_err(|e| usage(e.to_string()))?;
    h.representatives
        .get(&dim)
        .and_then(|r| r.first().cloned())
        .ok_or_else(|| usage(format!("H^{dim} of the nerve vanishes; pass --cochain")))
}

pub fn deform(args: &DeformArgs) -> Result<Report, CliError> {
    let start = Instant::now();
    let common = &args.common;
    let (_, alg) = load_algebra(common)?;
    let field = alg.field();
    let d = match args.kind {
        DeformType::T20 => {
            let pair: Vec<usize> = args
                .pair
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| usage(format!("bad --pair `{}`", args.pair))))
                .collect::<Result<_, _>>()?;
            let [i, j] = pair[..] else {
                return Err(usage("--pair takes two indices"));
            };
            let c: Vec<(usize, Scalar)> = match &args.central {
                Some(s) => {
                    let coeffs = parse_scalars(field, s)?;
                    if coeffs.len() != alg.n_eta() {
                        return Err(usage(format!("--central needs {} coordinates", alg.n_eta())));
                    }
                    alg.eta_combination(&coeffs)
                }
                None => alg
                    .center_elements()
                    .into_iter()
                    .next()
                    .ok_or_else(|| usage("the center is zero; no type 20 deformation"))?,
            };
            deform_20(Arc::clone(&alg), (i, j), &c)?
        }
        DeformType::T11 => {
            let xi = match &args.xi {
                Some(s) => parse_scalars(field, s)?,
                None => (0..alg.n_eta()).map(|k| if k == 0 { field.one() } else { field.zero() }).collect(),
            };
            let f = nerve_cocycle(&alg, 1, args.cochain.as_deref())?;
            deform_11(Arc::clone(&alg), &xi, &f)?
        }
        DeformType::T02 => {
            let f = nerve_cocycle(&alg, 2, args.cochain.as_deref())?;
            deform_02(Arc::clone(&alg), &f)?
        }
    };

    if let Some(spec) = &args.specialize {
        let value = spec.strip_prefix("t=").ok_or_else(|| usage("--specialize expects t=VALUE"))?;
        let t = field.parse_scalar(value).map_err(|e| usage(e.to_string()))?;
        let table_t = d.specialize(&t);
        let jacobi = table_t.jacobi_holds();
        let entries = table_t.entries();
        let mut text = format!("bracket at t = {t}, field {field}\n");
        for (a, b, terms) in &entries {
            let rhs: Vec<String> = terms.iter().map(|(e, c)| format!("{c}*{e}")).collect();
            writeln!(text, "  [{a}, {b}] = {}", rhs.join(" + ")).unwrap();
        }
        writeln!(text, "jacobi: {}", verdict(jacobi)).unwrap();
        text.push_str(&elapsed_line(&common.output, start));
        let value = json!({
            "t": t.to_string(),
            "field": field.to_string(),
            "brackets": entries.iter().map(|(a, b, terms)| json!({
                "left": a.to_string(),
                "right": b.to_string(),
                "value": terms.iter().map(|(e, c)| (e.to_string(), c.clone())).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "jacobi": jacobi,
        });
        return Ok(emit(&common.output, with_runtime(&common.output, value, start), text, jacobi));
    }

    let cert = d.jacobi_check();
    let class = infinitesimal_of(&d)?;
    let types: Vec<String> = class.types.iter().map(ToString::to_string).collect();
    let entries = d.entries();
    let mut text = format!("deformed bracket on dim g = {}, field {field}\n", alg.dim());
    for e in &entries {
        let rhs: Vec<String> = e.terms.iter().map(|(b, coeffs)| format!("({})*{b}", poly_string(coeffs))).collect();
        writeln!(text, "  [{}, {}]* = {}", e.left, e.right, rhs.join(" + ")).unwrap();
    }
    writeln!(text, "jacobi: {} ({} triples)", verdict(cert.verdict), cert.triples_checked).unwrap();
    if let Some(w) = &cert.witness {
        writeln!(text, "  witness ({}, {}, {}) at t^{}", w.triple.0, w.triple.1, w.triple.2, w.t_power).unwrap();
    }
    writeln!(text, "infinitesimal class: {} [{}]", if class.nonzero { "nonzero" } else { "zero" }, types.join(" "))
        .unwrap();
    text.push_str(&elapsed_line(&common.output, start));
    let value = json!({
        "field": field.to_string(),
        "dim": alg.dim(),
        "brackets": entries,
        "jacobi": cert,
        "infinitesimal": { "nonzero": class.nonzero, "types": types },
    });
    Ok(emit(&common.output, with_runtime(&common.output, value, start), text, cert.verdict))
}

fn poly_string(coeffs: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(k, c)| match k {
            0 => c.clone(),
            1 => format!("{c}t"),
            _ => format!("{c}t^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
