use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use spindle_homology::algebra::{
    analyze_orbit_graph, find_acyclicity_witness, validate_with_cap, FSpindleSpec, Shelf, Spindle,
    DEFAULT_COUNTEREXAMPLE_CAP,
};
use spindle_homology::chain::{boundary_matrix_with, ChainConfig, Variant};
use spindle_homology::explorer::{enumerate_shelves, enumerate_spindles, sweep_conjectures, ConjectureReport, Status};
use spindle_homology::homology::{
    closed_form, closed_form_h1_block, compute_homology, crosscheck_fspindle, homology, verify_acyclicity,
    verify_augmented, verify_bending_split, verify_degenerate_decomposition, verify_recursion,
    verify_relative_decomposition, verify_splitting, ClosedForm, HomologyRequest, IdentityCheck,
};
use spindle_homology::io::table_to_json;
use spindle_homology::linalg::SnfOptions;

use crate::args::{BudgetArgs, FormArg, InputArgs, VariantArg, VariantArgs};
use crate::input::{degrees, resolve, Input};

/// Outcome of one command: a JSON result, its human-readable rendering, an
/// optional stream of JSON lines, and the exit status.
pub struct Report {
    pub input: Option<Value>,
    pub json: Value,
    pub lines: Option<Vec<Value>>,
    pub text: String,
    pub code: i32,
}

impl Report {
    fn new(input: Option<&Input>, json: Value, text: String, code: i32) -> Self {
        Report { input: input.map(describe), json, lines: None, text, code }
    }
}

fn describe(input: &Input) -> Value {
    json!({
        "size": input.table.size(),
        "table": input.table.rows(),
        "sha256": input.digest(),
    })
}

fn spindle(input: &Input) -> Result<Spindle> {
    Ok(Spindle::new(input.table.clone())?)
}

fn shelf(input: &Input) -> Result<Shelf> {
    Ok(Shelf::new(input.table.clone())?)
}

fn chain_config(budget: &BudgetArgs) -> ChainConfig {
    let mut config = ChainConfig::default();
    if let Some(m) = budget.max_entries {
        config.max_entries = u128::from(m);
    }
    config
}

fn snf_options(budget: &BudgetArgs) -> SnfOptions {
    let mut options = SnfOptions::default();
    if let Some(m) = budget.snf_max_entries {
        options.max_entries = m;
    }
    options
}

fn variant(input: &Input, args: &VariantArgs) -> Result<Variant> {
    let basepoint = match args.basepoint {
        Some(label) => input.element(label)?,
        None => input.fspindle.as_ref().map_or(0, |(_, b)| *b),
    };
    Ok(match args.variant {
        VariantArg::Full => Variant::Full,
        VariantArg::Augmented => Variant::Augmented,
        VariantArg::Reduced => Variant::Reduced { basepoint },
        VariantArg::Normalized => Variant::Normalized,
        VariantArg::Degenerate => Variant::Degenerate,
        VariantArg::Bending => Variant::BEnding { basepoint, reduced: args.reduced },
        VariantArg::Relative => {
            let subset = args.subset.as_deref().context("the relative complex needs --subset")?;
            Variant::Relative { subset: input.elements(subset)?, normalized: args.normalized || args.reduced }
        }
    })
}

pub fn validate(args: &InputArgs, require_spindle: bool) -> Result<Report> {
    let input = resolve(args)?;
    let report = validate_with_cap(&input.table, DEFAULT_COUNTEREXAMPLE_CAP, true);
    let t = &input.table;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!("size: {}\nshelf: {}\nspindle: {}\n", t.size(), yes(report.is_shelf), yes(report.is_spindle));
    let l = |x: usize| input.label(x);
    for &(x, y, z) in &report.distributivity_violations {
        let lhs = t.op(t.op(x, y), z);
        let rhs = t.op(t.op(x, z), t.op(y, z));
        let _ = writeln!(
            text,
            "distributivity fails at ({}, {}, {}): (x▷y)▷z = {}, (x▷z)▷(y▷z) = {}",
            l(x),
            l(y),
            l(z),
            l(lhs),
            l(rhs)
        );
    }
    for &x in &report.idempotency_violations {
        let _ = writeln!(text, "idempotency fails at {}: {}▷{} = {}", l(x), l(x), l(x), l(t.op(x, x)));
    }
    if report.truncated {
        text.push_str("(more counterexamples omitted)\n");
    }
    let ok = if require_spindle { report.is_spindle } else { report.is_shelf };
    let json = json!({
        "is_shelf": report.is_shelf,
        "is_spindle": report.is_spindle,
        "distributivity_violations": report.distributivity_violations.iter().map(|&(x, y, z)| [l(x), l(y), l(z)]).collect::<Vec<_>>(),
        "idempotency_violations": report.idempotency_violations.iter().map(|&x| l(x)).collect::<Vec<_>>(),
        "truncated": report.truncated,
    });
    Ok(Report::new(Some(&input), json, text, if ok { 0 } else { 1 }))
}

pub fn homology_cmd(args: &InputArgs, variant_args: &VariantArgs, degree_text: &str, budget: &BudgetArgs) -> Result<Report> {
    let input = resolve(args)?;
    let (lo, hi) = degrees(degree_text)?;
    let variant = variant(&input, variant_args)?;
    let shelf = shelf(&input)?;
    let request = HomologyRequest { variant, n_lo: lo, n_hi: hi, chain: chain_config(budget), snf: snf_options(budget) };
    let report = compute_homology(&shelf, &request)?;
    let mut text = String::new();
    for r in &report.results {
        let _ = writeln!(text, "H_{} = {}", r.degree, r.group);
    }
    for f in &report.failures {
        let _ = writeln!(text, "H_{}: not computed ({})", f.degree, f.error);
    }
    let code = if report.is_complete() { 0 } else { 2 };
    Ok(Report::new(Some(&input), serde_json::to_value(&report)?, text, code))
}

fn fspindle_of(input: &Input) -> Result<&FSpindleSpec> {
    match &input.fspindle {
        Some((spec, _)) => Ok(spec),
        None => bail!(spindle_homology::Error::Unsupported("the input is not an f-spindle".into())),
    }
}

pub fn closed_form_cmd(args: &InputArgs, form: FormArg, degree_text: &str) -> Result<Report> {
    let input = resolve(args)?;
    let (lo, hi) = degrees(degree_text)?;
    if let (Some(blocks), FormArg::H1) = (&input.blocks, form) {
        let g = closed_form_h1_block(blocks)?;
        let json = json!([{ "degree": 1, "form": "h1_block", "group": g }]);
        return Ok(Report::new(Some(&input), json, format!("H_1 = {g}\n"), 0));
    }
    let summary = analyze_orbit_graph(fspindle_of(&input)?).summary();
    let form = match form {
        FormArg::H1 => ClosedForm::H1,
        FormArg::Normalized => ClosedForm::Normalized,
        FormArg::Full => ClosedForm::Full,
        FormArg::Bending => ClosedForm::BEnding,
    };
    let degrees: Vec<usize> = if form == ClosedForm::H1 { vec![1] } else { (lo..=hi).collect() };
    let mut text = format!(
        "|X0| = {}, orb = {}, init = {}, ell = {}\n",
        summary.base_size, summary.orbits, summary.initial, summary.ell
    );
    let mut results = Vec::new();
    for n in degrees {
        let g = closed_form(form, &summary, n)?;
        let _ = writeln!(text, "H_{n} = {g}");
        results.push(json!({ "degree": n, "form": form, "group": g }));
    }
    Ok(Report::new(Some(&input), json!({ "summary": summary, "results": results }), text, 0))
}

fn all_functions(m: usize) -> Vec<Vec<usize>> {
    (0..m).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                (1..=m).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

fn render_checks(checks: &[(String, IdentityCheck)], text: &mut String) {
    for (label, c) in checks {
        let status = if c.holds { "ok" } else { "MISMATCH" };
        let _ = write!(text, "{label}{} n={}: {} vs {} {status}", c.name, c.degree, c.lhs, c.rhs);
        if let Some(d) = &c.detail {
            let _ = write!(text, " ({d})");
        }
        text.push('\n');
    }
}

fn checks_report(input: Option<&Input>, checks: Vec<(String, IdentityCheck)>) -> Result<Report> {
    let mut text = String::new();
    render_checks(&checks, &mut text);
    let failed = checks.iter().filter(|(_, c)| !c.holds).count();
    let _ = writeln!(text, "{} checks, {} mismatches", checks.len(), failed);
    let json = json!({
        "checks": checks.iter().map(|(label, c)| {
            let mut v = serde_json::to_value(c).expect("serializable");
            if !label.is_empty() {
                v["input"] = json!(label.trim_end_matches(": "));
            }
            v
        }).collect::<Vec<_>>(),
        "mismatches": failed,
    });
    Ok(Report::new(input, json, text, if failed == 0 { 0 } else { 1 }))
}

pub fn crosscheck(args: &InputArgs, sweep: Option<usize>, degree_text: &str) -> Result<Report> {
    let (lo, hi) = degrees(degree_text)?;
    let in_range = |c: &IdentityCheck| (lo..=hi).contains(&c.degree);
    if let Some(max) = sweep {
        let mut checks = Vec::new();
        for m in 1..=max {
            for f in all_functions(m) {
                let spec = FSpindleSpec::new(f.clone())?;
                let label = format!("f={f:?}: ");
                checks.extend(crosscheck_fspindle(&spec, hi)?.into_iter().filter(in_range).map(|c| (label.clone(), c)));
            }
        }
        return checks_report(None, checks);
    }
    let input = resolve(args)?;
    let mut checks = Vec::new();
    if let Some(blocks) = &input.blocks {
        let h1 = homology(&shelf(&input)?, &Variant::Full, 1, 1)?.remove(0);
        let formula = closed_form_h1_block(blocks)?;
        let holds = h1.iso_eq(&formula);
        checks.push((String::new(), IdentityCheck { name: "h1_block".into(), degree: 1, lhs: h1, rhs: formula, holds, detail: None }));
    }
    if let Some((spec, _)) = &input.fspindle {
        checks.extend(crosscheck_fspindle(spec, hi)?.into_iter().filter(in_range).map(|c| (String::new(), c)));
    }
    if checks.is_empty() {
        bail!(spindle_homology::Error::Unsupported("crosscheck needs an f-spindle or a block spindle with a singleton block".into()));
    }
    checks_report(Some(&input), checks)
}

pub fn identities(args: &InputArgs, degree_text: &str) -> Result<Report> {
    let input = resolve(args)?;
    let (lo, hi) = degrees(degree_text)?;
    let s = spindle(&input)?;
    let mut checks = Vec::new();
    for n in lo..=hi {
        checks.push(verify_splitting(&s, n)?);
        checks.push(verify_degenerate_decomposition(&s, n)?);
        checks.push(verify_augmented(&s, n)?);
        if let Some((spec, b)) = &input.fspindle {
            checks.push(verify_bending_split(&s, *b, n)?);
            checks.push(verify_relative_decomposition(spec, n)?);
            if n >= 2 {
                checks.push(verify_recursion(&s, n)?);
            }
        }
    }
    checks_report(Some(&input), checks.into_iter().map(|c| (String::new(), c)).collect())
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Vacuous => "vacuous",
        Status::Untested => "untested",
    }
}

pub fn conjectures(args: &InputArgs, all_of_size: Option<usize>, nmax: Option<usize>) -> Result<Report> {
    let (input, spindles) = match all_of_size {
        Some(size) => (None, enumerate_spindles(size, true)?),
        None => {
            let input = resolve(args)?;
            let s = spindle(&input)?;
            (Some(input), vec![s])
        }
    };
    let reports = sweep_conjectures(&spindles, nmax)?;
    let mut text = String::new();
    let mut counts = serde_json::Map::new();
    for (s, r) in spindles.iter().zip(&reports) {
        let _ = writeln!(text, "{}", table_to_json(s.table()));
        render_conjecture(r, &mut text);
    }
    let outcomes = |f: fn(&ConjectureReport) -> Status| {
        let mut m = serde_json::Map::new();
        for s in [Status::Pass, Status::Fail, Status::Vacuous, Status::Untested] {
            m.insert(status(s).to_lowercase(), json!(reports.iter().filter(|r| f(r) == s).count()));
        }
        Value::Object(m)
    };
    counts.insert("rank_growth".into(), outcomes(|r| r.rank_growth.status));
    counts.insert("normalized_rank_growth".into(), outcomes(|r| r.normalized_rank_growth.status));
    counts.insert("group_recursion".into(), outcomes(|r| r.group_recursion.status));
    counts.insert("normalized_group_recursion".into(), outcomes(|r| r.normalized_group_recursion.status));
    counts.insert("torsion_growth".into(), outcomes(|r| r.torsion_growth.status));
    let _ = writeln!(text, "{} spindles tested", reports.len());
    let json = json!({ "spindles": reports.len(), "outcomes": counts });
    let mut report = Report::new(input.as_ref(), json, text, 0);
    report.lines = Some(reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect());
    Ok(report)
}

fn render_conjecture(r: &ConjectureReport, text: &mut String) {
    let fmt = |g: &Option<spindle_homology::linalg::FGAbelianGroup>| g.as_ref().map_or("?".to_string(), |g| g.to_string());
    for (n, g) in r.full.iter().enumerate() {
        let _ = writeln!(text, "  H_{n} = {}    HN_{n} = {}", fmt(g), fmt(&r.normalized[n]));
    }
    let outcomes = [
        ("rank growth", &r.rank_growth),
        ("normalized rank growth", &r.normalized_rank_growth),
        ("group recursion", &r.group_recursion),
        ("normalized group recursion", &r.normalized_group_recursion),
        ("torsion growth by |X|", &r.torsion_growth),
    ];
    for (name, o) in outcomes {
        let _ = writeln!(text, "  {name}: {} (degrees {:?})", status(o.status), o.tested);
        for c in &o.counterexamples {
            let _ = writeln!(text, "    {c}");
        }
    }
}

pub fn enumerate(size: usize, up_to_iso: bool, shelves: bool) -> Result<Report> {
    let tables: Vec<_> = if shelves {
        enumerate_shelves(size, up_to_iso)?.into_iter().map(|s| s.table().clone()).collect()
    } else {
        enumerate_spindles(size, up_to_iso)?.into_iter().map(|s| s.table().clone()).collect()
    };
    let mut text: String = tables.iter().map(|t| table_to_json(t) + "\n").collect();
    let kind = if shelves { "shelves" } else { "spindles" };
    let _ = writeln!(text, "count: {}", tables.len());
    let json = json!({ "kind": kind, "size": size, "up_to_iso": up_to_iso, "count": tables.len() });
    let mut report = Report::new(None, json, text, 0);
    report.lines = Some(tables.iter().map(|t| json!({ "size": t.size(), "table": t.rows() })).collect());
    Ok(report)
}

pub fn acyclicity(args: &InputArgs, witness: Option<&str>, nmax: usize) -> Result<Report> {
    let input = resolve(args)?;
    let shelf = shelf(&input)?;
    let witness = match witness {
        Some(w) => Some(input.elements(w)?),
        None => find_acyclicity_witness(&shelf),
    };
    let Some(witness) = witness else {
        let json = json!({ "witness": null, "acyclic": null });
        return Ok(Report::new(Some(&input), json, "no right-permutation subset found\n".into(), 1));
    };
    let report = verify_acyclicity(&shelf, &witness, nmax)?;
    let labels: Vec<usize> = witness.iter().map(|&x| input.label(x)).collect();
    let mut text = format!("witness: {labels:?}\n");
    for (n, g) in report.reduced.iter().enumerate() {
        let _ = writeln!(text, "reduced H_{n} = {g}");
    }
    let _ = writeln!(text, "homotopy identity: {}", if report.homotopy_holds { "verified" } else { "FAILED" });
    let _ = writeln!(text, "acyclic: {}", if report.acyclic { "yes" } else { "no" });
    let mut json = serde_json::to_value(&report)?;
    json["witness"] = json!(labels);
    Ok(Report::new(Some(&input), json, text, if report.acyclic { 0 } else { 1 }))
}

pub fn export_matrix(args: &InputArgs, variant_args: &VariantArgs, degree: usize, budget: &BudgetArgs) -> Result<Report> {
    let input = resolve(args)?;
    let variant = variant(&input, variant_args)?;
    let m = boundary_matrix_with(&shelf(&input)?, degree, &variant, &chain_config(budget))?;
    let text = m.to_matrix_market();
    let json = json!({ "variant": variant, "degree": degree, "rows": m.rows(), "cols": m.cols(), "nnz": m.nnz(), "matrix_market": text });
    Ok(Report::new(Some(&input), json, text, 0))
}
