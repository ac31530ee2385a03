//! The subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use clap::Args;
use num_rational::BigRational;
use qonsager::askey::{discover_relations, extract_omega, witness_check};
use qonsager::generators::{build_generator_table, AConstants, CoeffSymbol, GeneratorTable, RhoPolicy};
use qonsager::hierarchy::{build_charge, build_f, check_commutation, check_hierarchy, random_kappas, ChargeSpec};
use qonsager::reps::{parse_rep_spec, MatrixRep};
use qonsager::verify::{check_relation_suite, RelationReport};
use qonsager::{parse_scalar, NCPolynomial, ScalarFraction};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::format::{latex_name, latex_poly, latex_scalar, poly_from_json, poly_to_json, Format, PolyJson};
use crate::Common;

const DEFAULT_REP: &str = "d2:a=2,b=3";

#[derive(Debug, Args)]
pub struct KappaArgs {
    /// Coefficient of W_{-k} (a scalar in q).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub kappa: String,
    /// Coefficient of W_{k+1}.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub kappa_star: String,
    /// Coefficient of G_{k+1}.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub kappa_plus: String,
    /// Coefficient of G~_{k+1}.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub kappa_minus: String,
}

fn a_constants(specs: &[String]) -> CliResult<AConstants> {
    let mut out = AConstants::zero();
    for s in specs {
        let (n, v) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("--a-const expects n=value, got {s:?}")))?;
        let n: usize = n.trim().parse().map_err(|_| CliError::Usage(format!("bad constant index in {s:?}")))?;
        let v: BigRational = v.trim().parse().map_err(|_| CliError::Usage(format!("bad rational in {s:?}")))?;
        out.set(n, v)?;
    }
    Ok(out)
}

fn rho_policy(text: &str) -> CliResult<RhoPolicy> {
    if text.trim() == "formal" {
        return Ok(RhoPolicy::Formal);
    }
    let v = parse_scalar(text)?;
    if v.is_zero() {
        return Err(CliError::Usage("an explicit rho must be nonzero".into()));
    }
    if !v.is_q_only() {
        return Err(CliError::Usage("an explicit rho must be a function of q alone".into()));
    }
    Ok(RhoPolicy::Explicit(v))
}

fn table_at(common: &Common, k: usize) -> CliResult<GeneratorTable> {
    Ok(build_generator_table(k, &a_constants(&common.a_const)?, rho_policy(&common.rho)?)?)
}

fn reps(specs: &[String]) -> CliResult<Vec<MatrixRep>> {
    if specs.is_empty() {
        return Ok(vec![parse_rep_spec(DEFAULT_REP)?]);
    }
    specs.iter().map(|s| parse_rep_spec(s).map_err(CliError::from)).collect()
}

fn emit(common: &Common, mut text: String) -> CliResult<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render_named(format: Format, items: &[(String, &NCPolynomial)]) -> CliResult<String> {
    Ok(match format {
        Format::Text => items.iter().map(|(n, p)| format!("{n} = {p}\n")).collect(),
        Format::Latex => items.iter().map(|(n, p)| format!("{} = {}\n", latex_name(n), latex_poly(p))).collect(),
        Format::Json => {
            let list: Vec<_> = items.iter().map(|(n, p)| json!({ "name": n, "polynomial": poly_to_json(p) })).collect();
            serde_json::to_string_pretty(&list)?
        }
    })
}

fn rho_text(table: &GeneratorTable) -> String {
    match &table.rho {
        RhoPolicy::Formal => "formal".into(),
        RhoPolicy::Explicit(v) => v.to_string(),
    }
}

/// Generators ordered by level: `W_0, W_1, G_1, G~_1, W_-1, W_2, ...`.
fn generators(table: &GeneratorTable) -> Vec<(String, &NCPolynomial)> {
    let mut out = Vec::new();
    for i in 0..table.wm.len() {
        out.push((format!("W_-{i}").replace("W_-0", "W_0"), &table.wm[i]));
        out.push((format!("W_{}", i + 1), &table.wp[i]));
        if let (Some(g), Some(gt)) = (table.g.get(i), table.gt.get(i)) {
            out.push((format!("G_{}", i + 1), g));
            out.push((format!("Gt_{}", i + 1), gt));
        }
    }
    out
}

pub fn gen(common: &Common) -> CliResult<()> {
    let table = table_at(common, common.k)?;
    let items = generators(&table);
    let text = match common.format {
        Format::Json => {
            let consts: BTreeMap<String, String> = table.a_consts.iter().map(|(n, v)| (n.to_string(), v.to_string())).collect();
            let list: Vec<_> = items.iter().map(|(n, p)| json!({ "name": n, "polynomial": poly_to_json(p) })).collect();
            serde_json::to_string_pretty(&json!({
                "k_max": table.k_max,
                "rho": rho_text(&table),
                "a_consts": consts,
                "generators": list,
            }))?
        }
        f => render_named(f, &items)?,
    };
    emit(common, text)
}

fn symbol_latex(s: CoeffSymbol) -> String {
    match s {
        CoeffSymbol::A(i, j) => format!("a_{{{i},{j}}}"),
        CoeffSymbol::B(i, j) => format!("b_{{{i},{j}}}"),
        CoeffSymbol::E(i, j) => format!("e_{{{i},{j}}}"),
        CoeffSymbol::Const(n) => format!("a_{{{n}}}"),
    }
}

fn symbol_text(s: CoeffSymbol) -> String {
    match s {
        CoeffSymbol::A(i, j) => format!("a_{i},{j}"),
        CoeffSymbol::B(i, j) => format!("b_{i},{j}"),
        CoeffSymbol::E(i, j) => format!("e_{i},{j}"),
        CoeffSymbol::Const(n) => format!("a_{n}"),
    }
}

pub fn coeffs(common: &Common) -> CliResult<()> {
    let table = table_at(common, common.k)?;
    let mut text = String::new();
    let mut levels = Vec::new();
    for c in &table.coeffs {
        let entries = c.entries();
        match common.format {
            Format::Text => {
                text.push_str(&format!("k = {}\n", c.k));
                for (s, v) in &entries {
                    text.push_str(&format!("  {} = {v}\n", symbol_text(*s)));
                }
            }
            Format::Latex => {
                text.push_str(&format!("% k = {}\n", c.k));
                for (s, v) in &entries {
                    text.push_str(&format!("{} = {}\n", symbol_latex(*s), latex_scalar(v)));
                }
            }
            Format::Json => {
                let list: Vec<_> =
                    entries.iter().map(|(s, v)| json!({ "symbol": symbol_text(*s), "value": v.to_string() })).collect();
                levels.push(json!({ "k": c.k, "coefficients": list }));
            }
        }
    }
    if common.format == Format::Json {
        text = serde_json::to_string_pretty(&levels)?;
    }
    emit(common, text)
}

#[derive(Serialize)]
struct EntryJson<'a> {
    relation: &'a str,
    k: usize,
    l: Option<usize>,
    rep: &'a str,
    passed: bool,
}

fn report_json(report: &RelationReport) -> serde_json::Value {
    let list: Vec<_> = report
        .entries
        .iter()
        .map(|e| EntryJson { relation: &e.relation, k: e.k, l: e.l, rep: &e.rep, passed: e.passed })
        .collect();
    serde_json::to_value(list).expect("report entries serialize")
}

fn report_text(report: &RelationReport, format: Format) -> String {
    let mut out = String::new();
    if format == Format::Latex {
        out.push_str("\\begin{tabular}{llll}\nrelation & $k$ & $l$ & passed \\\\\n");
    }
    for (name, (total, passed)) in report.summary() {
        match format {
            Format::Latex => out.push_str(&format!("{name} & & & {passed}/{total} \\\\\n")),
            _ => out.push_str(&format!("{name:<10} {passed}/{total} passed\n")),
        }
    }
    for f in report.failures() {
        let l = f.l.map_or("-".to_string(), |l| l.to_string());
        match format {
            Format::Latex => out.push_str(&format!("{} & {} & {l} & no \\\\\n", f.relation, f.k)),
            _ => out.push_str(&format!("FAIL {} k={} l={l} on {}\n", f.relation, f.k, f.rep)),
        }
    }
    if format == Format::Latex {
        out.push_str("\\end{tabular}\n");
    }
    let verdict = if report.all_passed() { "all passed" } else { "FAILURES" };
    out.push_str(&format!("{} checks: {verdict}\n", report.entries.len()));
    out
}

fn verdict(report: &RelationReport) -> CliResult<()> {
    if report.all_passed() {
        Ok(())
    } else {
        let n = report.failures().count();
        Err(CliError::Verification(format!("{n} of {} checks failed", report.entries.len())))
    }
}

pub fn verify(common: &Common, rep_specs: &[String]) -> CliResult<()> {
    let fleet = reps(rep_specs)?;
    let table = table_at(common, common.k)?;
    let report = check_relation_suite(&table, &fleet, common.k, common.k)?;
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&report_json(&report))?,
        f => report_text(&report, f),
    };
    emit(common, text)?;
    verdict(&report)
}

pub fn hierarchy(common: &Common, kappas: &KappaArgs, rep_specs: &[String], check: bool, seed: Option<u64>) -> CliResult<()> {
    let table = table_at(common, common.k)?;
    let values: [ScalarFraction; 4] = [&kappas.kappa, &kappas.kappa_star, &kappas.kappa_plus, &kappas.kappa_minus]
        .map(|s| parse_scalar(s))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .try_into()
        .expect("four kappas");
    let specs = (0..=common.k).map(|k| ChargeSpec::new(k, values.clone())).collect::<Result<Vec<_>, _>>()?;
    let charges = specs.iter().map(|s| build_charge(s, &table)).collect::<Result<Vec<_>, _>>()?;
    let named: Vec<(String, &NCPolynomial)> = charges.iter().enumerate().map(|(k, p)| (format!("I_{}", 2 * k + 1), p)).collect();
    let mut report = None;
    if check || seed.is_some() {
        let fleet = reps(rep_specs)?;
        let mut r = check_commutation(&specs, &table, &fleet)?;
        if let Some(seed) = seed {
            r.extend(check_hierarchy(&table, &fleet, common.k, &random_kappas(seed, 3))?);
        }
        report = Some(r);
    }
    let text = match common.format {
        Format::Json => {
            let list: Vec<_> = named.iter().map(|(n, p)| json!({ "name": n, "polynomial": poly_to_json(p) })).collect();
            let rep = report.as_ref().map(report_json);
            serde_json::to_string_pretty(&json!({ "charges": list, "report": rep }))?
        }
        f => {
            let mut t = render_named(f, &named)?;
            if let Some(r) = &report {
                t.push_str(&report_text(r, f));
            }
            t
        }
    };
    emit(common, text)?;
    match &report {
        Some(r) => verdict(r),
        None => Ok(()),
    }
}

pub fn aw_discover(common: &Common, rep_specs: &[String], max_order: usize) -> CliResult<()> {
    if max_order == 0 {
        return Err(CliError::Usage("--max-order must be at least 1".into()));
    }
    let consts = a_constants(&common.a_const)?;
    let a1 = consts.iter().find(|(n, _)| **n == 1).map(|(_, v)| v.clone()).unwrap_or_default();
    let table = table_at(common, max_order - 1)?;
    let fleet = reps(rep_specs)?;
    let mut results = Vec::new();
    let mut missing = Vec::new();
    let mut text = String::new();
    for rep in &fleet {
        let params = match extract_omega(rep, &a1) {
            Ok(p) => Some(p),
            Err(qonsager::Error::NotAskeyWilson(_)) | Err(qonsager::Error::InvalidArgument(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let rel = match discover_relations(rep, &table, max_order) {
            Ok(rel) => rel,
            Err(qonsager::Error::NoRelation(msg)) => {
                text.push_str(&format!("{}: no relation up to order {max_order}\n", rep.id));
                results.push(json!({ "rep": rep.id, "n": null }));
                missing.push(msg);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let witness = witness_check(&rel, rep, &table)?;
        let alphas: Vec<String> = rel.alphas.iter().map(ToString::to_string).collect();
        text.push_str(&format!("{}: N = {}\n", rep.id, rel.n));
        for (i, a) in rel.alphas.iter().enumerate() {
            let shown = if common.format == Format::Latex { latex_scalar(a) } else { a.to_string() };
            text.push_str(&format!("  alpha_{i} = {shown}\n"));
        }
        text.push_str(&format!("  witness check: {}\n", if witness { "ok" } else { "FAILED" }));
        match &params {
            Some(p) => text.push_str(&format!("  omega = {}\n  (omega - a_1 (q - q^-1))/rho = {}\n", p.omega, p.alpha)),
            None => text.push_str("  not an Askey-Wilson pair (no common omega)\n"),
        }
        results.push(json!({
            "rep": rep.id,
            "n": rel.n,
            "alphas": alphas,
            "witness": witness,
            "omega": params.as_ref().map(|p| p.omega.to_string()),
            "alpha": params.as_ref().map(|p| p.alpha.to_string()),
        }));
    }
    if common.format == Format::Json {
        text = serde_json::to_string_pretty(&results)?;
    }
    emit(common, text)?;
    if missing.is_empty() {
        Ok(())
    } else {
        Err(CliError::NoRelation(missing.join("; ")))
    }
}

enum Target {
    Wm(usize),
    Wp(usize),
    G(usize),
    Gt(usize),
    F(usize),
}

fn parse_target(name: &str) -> CliResult<(Target, usize)> {
    let bad = || CliError::Usage(format!("unknown generator {name:?}; expected W_n, G_n, Gt_n or f_k"));
    let (head, idx) = name.split_once('_').ok_or_else(bad)?;
    let n: i64 = idx.parse().map_err(|_| bad())?;
    let positive = |n: i64| if n >= 1 { Ok((n - 1) as usize) } else { Err(bad()) };
    Ok(match head {
        "W" if n <= 0 => {
            let i = (-n) as usize;
            (Target::Wm(i), i.saturating_sub(1))
        }
        "W" => {
            let i = (n - 1) as usize;
            (Target::Wp(i), i.saturating_sub(1))
        }
        "G" => {
            let i = positive(n)?;
            (Target::G(i), i)
        }
        "Gt" => {
            let i = positive(n)?;
            (Target::Gt(i), i)
        }
        "f" if n >= 0 => (Target::F(n as usize), n as usize),
        _ => return Err(bad()),
    })
}

pub fn export(common: &Common, name: Option<&str>, input: Option<&Path>) -> CliResult<()> {
    let (label, poly) = match (name, input) {
        (Some(name), _) => {
            let (target, level) = parse_target(name)?;
            let table = table_at(common, level)?;
            let p = match target {
                Target::Wm(i) => table.wm[i].clone(),
                Target::Wp(i) => table.wp[i].clone(),
                Target::G(i) => table.g[i].clone(),
                Target::Gt(i) => table.gt[i].clone(),
                Target::F(k) => build_f(k, &table)?,
            };
            (name.to_string(), p)
        }
        (None, Some(path)) => {
            let j: PolyJson = serde_json::from_str(&fs::read_to_string(path)?)?;
            ("P".to_string(), poly_from_json(&j)?)
        }
        (None, None) => return Err(CliError::Usage("export needs --name or --input".into())),
    };
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&poly_to_json(&poly))?,
        Format::Text => format!("{label} = {poly}"),
        Format::Latex => format!("{} = {}", latex_name(&label), latex_poly(&poly)),
    };
    emit(common, text)
}
