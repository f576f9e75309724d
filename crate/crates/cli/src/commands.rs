//! Subcommand bodies. Each returns one artifact rendered three ways.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};
use toro::characters::*;
use toro::field::Monomial;
use toro::partitions::*;
use toro::plane::{plane_from_layers, render_partition, render_plane, PlanePartition};
use toro::rep::{check_relations, level_of, mode_window_check, Failure, RelationReport};
use toro::roots::*;
use toro::tensor::*;

use crate::error::{CliError, ILL_DEFINED, MISMATCH, OK};
use crate::modules::{check_color, ColorArgs, ModuleArgs, ModuleKind};
use crate::parse;

pub struct Output {
    pub json: Value,
    pub tsv: String,
    pub ascii: String,
    pub status: u8,
}

fn parts(p: &Partition) -> Value {
    json!(p.parts())
}

fn mono_json(m: Monomial) -> Value {
    json!({ "text": m.to_string(), "u": m.u, "q2": m.q2, "d2": m.d2, "K2": m.k2 })
}

fn series_json(s: &PowerSeries) -> Result<Value, CliError> {
    let v: Option<Vec<i64>> = s.coeffs.iter().map(|c| i64::try_from(c).ok()).collect();
    v.map(|v| json!(v)).ok_or_else(|| CliError::invalid("Overflow", "coefficient exceeds 64 bits"))
}

pub fn relations(m: &ModuleArgs, max_degree: usize, window: i32) -> Result<Output, CliError> {
    let b = m.build()?;
    let h = b.handle;
    let mut rep = check_relations(&h, max_degree);
    for v in h.labels_up_to(max_degree.min(1)) {
        match mode_window_check(h.as_ref(), &v, window) {
            Ok(bad) => {
                *rep.checks.entry("mode-window".into()).or_insert(0) += 1;
                rep.failures.extend(bad.into_iter().map(|detail| Failure { relation: "mode-window".into(), label: v.to_string(), detail }));
            }
            Err(e) => rep.ill_defined.push(Failure { relation: "mode-window".into(), label: v.to_string(), detail: e.to_string() }),
        }
    }
    let status = if !rep.ill_defined.is_empty() {
        ILL_DEFINED
    } else if !rep.failures.is_empty() {
        MISMATCH
    } else {
        OK
    };
    let json = json!({
        "command": "relations",
        "module": h.name(),
        "max_degree": max_degree,
        "mode_window": window,
        "passed": rep.passed(),
        "status": status,
        "report": rep.to_json(),
    });
    Ok(Output { tsv: relations_tsv(&rep), ascii: relations_ascii(&rep, &h.name()), json, status })
}

fn relations_tsv(rep: &RelationReport) -> String {
    let mut s = String::from("kind\trelation\tlabel_or_count\tdetail\n");
    for (r, c) in &rep.checks {
        let _ = writeln!(s, "check\t{r}\t{c}\t");
    }
    for (kind, fs) in [("failure", &rep.failures), ("ill-defined", &rep.ill_defined)] {
        for f in fs {
            let _ = writeln!(s, "{kind}\t{}\t{}\t{}", f.relation, f.label, f.detail);
        }
    }
    s
}

fn relations_ascii(rep: &RelationReport, name: &str) -> String {
    let mut s = format!("module: {name}\nlabels checked: {}\n", rep.labels_checked);
    for (r, c) in &rep.checks {
        let _ = writeln!(s, "  {r:<12} {c}");
    }
    if rep.passed() {
        s.push_str("result: pass\n");
    } else {
        let _ = writeln!(s, "result: FAIL ({} failures, {} ill-defined)", rep.failures.len(), rep.ill_defined.len());
        if let Some(f) = rep.ill_defined.first().or(rep.failures.first()) {
            let _ = writeln!(s, "  first: {} on {}: {}", f.relation, f.label, f.detail);
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Compare {
    WeylSum,
    Enumerate,
    Kt,
}

pub fn character(m: &ModuleArgs, max_degree: usize, compare: Option<Compare>) -> Result<Output, CliError> {
    let b = m.build()?;
    let table = char_enumerate(b.handle.as_ref(), max_degree);
    let (n, k) = (m.color.n, m.color.k);
    let need_g = |what: &str| -> Result<(), CliError> {
        if b.kind != ModuleKind::G {
            return Err(CliError::invalid("NoClosedForm", format!("--compare {what} needs --module g")));
        }
        Ok(())
    };
    let other = match compare {
        None => None,
        Some(Compare::WeylSum) => {
            need_g("weyl-sum")?;
            let (s, c) = weyl_sum_char(&b.mu, &b.nu, n, max_degree, &table);
            Some(("weyl-sum", s, Some(c)))
        }
        Some(Compare::Kt) => {
            need_g("kt")?;
            let lw = lambda_weight(&b.mu, &b.nu, k, n)?;
            Some(("kt", kt_char(&lw, max_degree)?, None))
        }
        Some(Compare::Enumerate) => {
            let s = match b.kind {
                ModuleKind::Fock => PowerSeries::pochhammer_inv(1, max_degree),
                ModuleKind::TensorFf => PowerSeries::pochhammer_inv(2, max_degree),
                ModuleKind::MacmahonVacuum => PowerSeries::macmahon(max_degree),
                ModuleKind::G => weyl_sum_with(&b.mu, &b.nu, n, max_degree, Convention::Primary),
                _ => return Err(CliError::invalid("NoClosedForm", "no closed form to compare the enumeration with")),
            };
            Some(("enumerate", s, None))
        }
    };
    let mut json = json!({
        "command": "character",
        "module": b.handle.name(),
        "max_degree": max_degree,
        "dimensions": series_json(&table)?,
        "compare": null,
    });
    let mut ascii = format!("{table}\n");
    let mut tsv = String::from("degree\tdimension");
    let mut status = OK;
    if let Some((method, s, conv)) = &other {
        let mis = table.first_mismatch(s);
        if mis.is_some() {
            status = MISMATCH;
        }
        json["compare"] = json!({
            "method": method,
            "series": series_json(s)?,
            "identical": mis.is_none(),
            "first_mismatch": mis,
            "convention": conv.map(|c| format!("{c:?}")),
        });
        let verdict = mis.map_or("identical".to_string(), |d| format!("first mismatch at degree {d}"));
        let _ = writeln!(ascii, "{method}: {s} ({verdict})");
        let _ = write!(tsv, "\t{method}");
    }
    tsv.push('\n');
    for (d, c) in table.coeffs.iter().enumerate() {
        let _ = write!(tsv, "{d}\t{c}");
        if let Some((_, s, _)) = &other {
            let _ = write!(tsv, "\t{}", s.coeffs[d]);
        }
        tsv.push('\n');
    }
    json["status"] = json!(status);
    Ok(Output { json, tsv, ascii, status })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pair {
    Vector,
    Fock,
}

fn vector_class_json(c: VectorResonance) -> Value {
    match c {
        VectorResonance::IllDefined { m } => json!({ "kind": "ill-defined", "m": m }),
        VectorResonance::Submodule { m, shift } => json!({ "kind": "submodule", "m": m, "shift": shift }),
        VectorResonance::Irreducible => json!({ "kind": "irreducible" }),
    }
}

fn fock_class_json(c: FockResonance) -> Value {
    match c {
        FockResonance::Submodule { a, b } => json!({ "kind": "submodule", "a": a, "b": b }),
        FockResonance::Quotient { a, b } => json!({ "kind": "quotient", "a": a, "b": b }),
        FockResonance::AnalyticContinuation { a, b } => json!({ "kind": "analytic-continuation", "a": a, "b": b }),
        FockResonance::Irreducible => json!({ "kind": "irreducible" }),
    }
}

pub fn resonance(pair: Pair, c: &ColorArgs, l: usize, ratio: &str, window: i64, verify: Option<usize>) -> Result<Output, CliError> {
    c.ctx()?;
    check_color(c.n, l)?;
    let r = parse::monomial(ratio)?;
    let (n, k) = (c.n, c.k);
    let mut json = json!({
        "command": "resonance",
        "pair": match pair { Pair::Vector => "vector", Pair::Fock => "fock" },
        "n": n, "k": k, "l": l,
        "ratio": mono_json(r),
    });
    let mut status = OK;
    let mut lines = Vec::new();
    match pair {
        Pair::Vector => {
            let cls = classify_vector_pair(n, k, l, r);
            let bf = brute_force_vector_pair(n, k, l, r, window)?;
            let agree = matches!(
                (cls, bf),
                (VectorResonance::IllDefined { .. }, BruteOutcome::IllDefined)
                    | (VectorResonance::Submodule { .. }, BruteOutcome::HasVanishing)
                    | (VectorResonance::Irreducible, BruteOutcome::Generic)
            );
            if !agree {
                status = MISMATCH;
            }
            let bf_name = match bf {
                BruteOutcome::IllDefined => "ill-defined",
                BruteOutcome::HasVanishing => "has-vanishing",
                BruteOutcome::Generic => "generic",
            };
            json["classification"] = vector_class_json(cls);
            json["brute_force"] = json!({ "window": window, "outcome": bf_name, "agree": agree });
            lines.push(("classification", format!("{cls:?}")));
            lines.push(("brute_force", format!("{bf_name} (window {window})")));
            lines.push(("agree", agree.to_string()));
        }
        Pair::Fock => {
            let cls = classify_fock_pair(n, k, l, r);
            json["classification"] = fock_class_json(cls);
            lines.push(("classification", format!("{cls:?}")));
            if let (Some(d), FockResonance::Submodule { a, b }) = (verify, cls) {
                let h: toro::rep::ModuleHandle = std::sync::Arc::new(fock_pair_submodule(n, k, l, a, b)?);
                let rep = check_relations(&h, d);
                status = if !rep.ill_defined.is_empty() {
                    ILL_DEFINED
                } else if !rep.failures.is_empty() {
                    MISMATCH
                } else {
                    OK
                };
                json["submodule_relations"] = json!({ "max_degree": d, "passed": rep.passed(), "checks": rep.checks.values().sum::<usize>() });
                lines.push(("submodule_relations", if rep.passed() { "pass".into() } else { "FAIL".into() }));
            }
        }
    }
    json["status"] = json!(status);
    let tsv = lines.iter().map(|(a, b)| format!("{a}\t{b}\n")).collect();
    let ascii = lines.iter().map(|(a, b)| format!("{a}: {b}\n")).collect();
    Ok(Output { json, tsv, ascii, status })
}

pub fn colorless(parts_s: &str, n: usize) -> Result<Output, CliError> {
    check_color(n, 0)?;
    let g = parse::partition(parts_s)?;
    let cl = is_colorless(&g, n);
    let counts = color_counts(&g, n);
    let v: Vec<Vec<i64>> = (0..n).map(|k| v_vec(&g, ColorContext::new(n, k as i64).expect("n checked"))).collect();
    let json = json!({
        "command": "colorless",
        "partition": parts(&g),
        "n": n,
        "colorless": cl,
        "color_counts": counts,
        "v": v,
        "status": OK,
    });
    let join = |xs: &[i64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let counts_i: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
    let mut tsv = format!("colorless\t{cl}\ncolor_counts\t{}\n", join(&counts_i));
    let mut ascii = format!("{g} is {}colorless for n = {n}\ncolor counts: {}\n", if cl { "" } else { "not " }, join(&counts_i));
    for (k, row) in v.iter().enumerate() {
        let _ = writeln!(tsv, "v_k{k}\t{}", join(row));
        let _ = writeln!(ascii, "v (k={k}): {}", join(row));
    }
    Ok(Output { json, tsv, ascii, status: OK })
}

pub fn orbit(n: usize, nu: Option<&str>) -> Result<Output, CliError> {
    check_color(n, 0)?;
    let Some(nu) = nu else {
        let orb = minimal_orbit(n)?;
        let rows: Vec<Value> = orb.iter().map(|(s, p)| json!({ "sigma": s.images, "nu": parts(p) })).collect();
        let mut tsv = String::from("sigma\tnu\n");
        let mut ascii = format!("{} minimal partitions for n = {n}\n", orb.len());
        for (s, p) in &orb {
            let img = s.images.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(tsv, "{img}\t{}", p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            let _ = writeln!(ascii, "  [{img}]  {p}");
        }
        let json = json!({ "command": "orbit", "n": n, "minimal": rows, "status": OK });
        return Ok(Output { json, tsv, ascii, status: OK });
    };
    let nu = parse::partition(nu)?;
    check_family(&nu, n)?;
    let sigma = sigma_perm(&nu, n)?;
    let betas = beta_roots(&nu, n, 0);
    let dec = beta_map_decompose(&nu, n)?;
    let inv = sigma.inverse();
    let mut steps = Vec::new();
    let mut ascii = format!("nu = {nu}, n = {n}\nsigma = {:?}\nminimal: {}\n", sigma.images, is_minimal(&nu, n));
    let mut tsv = format!("sigma\t{:?}\nminimal\t{}\n", sigma.images, is_minimal(&nu, n));
    for (j, b) in betas.iter().enumerate() {
        let _ = writeln!(ascii, "beta_{} = {:?}", j + 1, b.alpha);
        let _ = writeln!(tsv, "beta_{}\t{:?}", j + 1, b.alpha);
    }
    if is_minimal(&nu, n) {
        for i in 1..n {
            if inv.apply(i) >= inv.apply(i + 1) {
                continue;
            }
            let next = orbit_step(&nu, n, i)?;
            let refl = ribeta_check(&nu, n, i)?;
            let _ = writeln!(ascii, "step s_{i}: {next} {refl:?}");
            let _ = writeln!(tsv, "step_{i}\t{next}\t{refl:?}");
            steps.push(json!({ "i": i, "nu": parts(&next), "reflection": refl }));
        }
    }
    let json = json!({
        "command": "orbit",
        "n": n,
        "nu": parts(&nu),
        "sigma": sigma.images,
        "is_minimal": is_minimal(&nu, n),
        "betas": betas.iter().map(|b| b.alpha.clone()).collect::<Vec<_>>(),
        "decomposition": { "minimal": dec.minimal.iter().map(|b| b.alpha.clone()).collect::<Vec<_>>(), "shifts": dec.shifts },
        "steps": steps,
        "status": OK,
    });
    Ok(Output { json, tsv, ascii, status: OK })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderType {
    Young,
    Plane,
}

pub struct RenderArgs<'a> {
    pub kind: RenderType,
    pub color: &'a ColorArgs,
    pub parts: &'a str,
    pub alpha: &'a str,
    pub beta: &'a str,
    pub gamma: &'a str,
    pub layers: Option<&'a str>,
    pub cut: i64,
}

pub fn render(a: RenderArgs) -> Result<Output, CliError> {
    let ctx = a.color.ctx()?;
    let text = match a.kind {
        RenderType::Young => render_partition(&parse::partition(a.parts)?, ctx),
        RenderType::Plane => {
            let (al, be, ga) = (parse::partition(a.alpha)?, parse::partition(a.beta)?, parse::partition(a.gamma)?);
            let p = match a.layers {
                None => PlanePartition::lowest(&al, &be, &ga),
                Some(ls) => plane_from_layers(&parse::layers(ls)?, &al, &be, &ga)
                    .map_err(|e| CliError::invalid("MalformedPlanePartition", e.to_string()))?,
            };
            if a.cut < 1 {
                return Err(CliError::invalid("BadCut", "--cut must be positive"));
            }
            render_plane(&p, ctx, a.cut)
        }
    };
    let json = json!({
        "command": "render",
        "type": match a.kind { RenderType::Young => "young", RenderType::Plane => "plane" },
        "n": a.color.n,
        "k": a.color.k,
        "text": text,
        "status": OK,
    });
    Ok(Output { json, tsv: text.clone(), ascii: text, status: OK })
}

pub fn level(m: &ModuleArgs) -> Result<Output, CliError> {
    let b = m.build()?;
    let lv = level_of(b.handle.as_ref())?;
    let json = json!({ "command": "level", "module": b.handle.name(), "level": mono_json(lv), "status": OK });
    Ok(Output { json, tsv: format!("level\t{lv}\n"), ascii: format!("{lv}\n"), status: OK })
}
