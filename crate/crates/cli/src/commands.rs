//! One function per subcommand; each returns an [`Output`] in all three formats.

use std::fmt::Write as _;

use littlewood::characters::{table_with_engine, verify_table};
use littlewood::harness::{
    ap_mod_distribution, chebotarev_density, error_term, first_disagreement, lang_trotter, least_prime,
    least_prime_poly, least_prime_primitive_root, pi_set, PolyMode,
};
use littlewood::littlewood::{coset_certificate, lambda_of_set, serre_reduce, sieve_weight, trace_norm_oracle, ORACLE_MAX_ORDER};
use littlewood::phi::{
    candidate_fixed_points, candidate_generators, phi_bounds, phi_quotient_reduce, phi_solve_with, Candidate,
    FixedPointKind, PhiMode,
};
use littlewood::properties::run_suite;
use littlewood::{
    auto_table, CharacterTable, ClassFunction, ClassSet, DensityReport, ECurve, Engine, Error, FrobSampler, Group,
    GroupSpec, LeastPrimeReport, NormValue, PhiInstance, PolyZ, Result, SubgroupHandle,
};
use serde_json::{json, Value};

use crate::output::{complex, float, float_text, opt_float, rational, rational_text, Output, SCHEMA_VERSION};
use crate::{Command, Config};

pub fn run(cmd: &Command, cfg: &Config) -> Result<Output> {
    match cmd {
        Command::Table { group, engine } => table(cfg, group, engine.as_deref()),
        Command::Lambda { group, set, oracle, sieve } => lambda(cfg, group, set, *oracle, *sieve),
        Command::Phi { group, set, exact, float, candidates, reduce } => {
            let mode = match (exact, float) {
                (true, _) => PhiMode::Exact,
                (_, true) => PhiMode::Float,
                _ => PhiMode::Auto,
            };
            phi(cfg, group, set, mode, *candidates, *reduce)
        }
        Command::Serre { group, set, borel, h, u } => serre(cfg, group, set, *borel, h.as_deref(), u.as_deref()),
        Command::Chebotarev { sampler, set, x } => chebotarev(cfg, sampler, set, *x),
        Command::LeastPrime { sampler, set, budget } => {
            let s = FrobSampler::parse(sampler)?;
            check_order(cfg, s.group())?;
            let d = ClassSet::parse(s.group(), set)?;
            let r = least_prime(&s, &d, within(cfg, *budget)?)?;
            Ok(least_output(&r, json!({ "sampler": sampler, "set": set })))
        }
        Command::PolyLeast { poly, mode, budget } => {
            let p: PolyZ = poly.parse()?;
            let m: PolyMode = mode.parse()?;
            let r = least_prime_poly(&p, m, within(cfg, *budget)?)?;
            Ok(least_output(&r, json!({ "poly": p.to_string(), "mode": mode })))
        }
        Command::Primroot { ell } => {
            let r = least_prime_primitive_root(*ell)?;
            Ok(least_output(&r, json!({ "ell": ell })))
        }
        Command::LangTrotter { curve, a, x, ell } => lang_trotter_cmd(cfg, curve, *a, *x, *ell),
        Command::Disagree { first, second, budget } => {
            let e1: ECurve = first.parse()?;
            let e2: ECurve = second.parse()?;
            let r = first_disagreement(&e1, &e2, within(cfg, *budget)?)?;
            let mut out = least_output(&r.least, json!({ "first": e1.to_string(), "second": e2.to_string() }));
            out.json["twist_shape"] = float(r.twist_shape);
            let _ = writeln!(out.text, "twist shape: {}", float_text(r.twist_shape));
            Ok(out)
        }
        Command::Verify { cases } => verify(cfg, *cases),
    }
}

fn build_group(cfg: &Config, spec: &str) -> Result<Group> {
    let spec: GroupSpec = spec.parse()?;
    let g = Group::build(&spec)?;
    check_order(cfg, &g)?;
    Ok(g)
}

fn check_order(cfg: &Config, g: &Group) -> Result<()> {
    if g.order() as u64 > cfg.max_order {
        return Err(Error::Budget(format!("{} has order {}, above --max-order {}", g.name(), g.order(), cfg.max_order)));
    }
    Ok(())
}

fn within(cfg: &Config, x: u64) -> Result<u64> {
    if x > cfg.max_x {
        return Err(Error::Budget(format!("{x} is above --max-x {}", cfg.max_x)));
    }
    Ok(x)
}

fn class_label(g: &Group, c: usize) -> String {
    g.format_element(g.class_rep(c))
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| if f.contains([',', '"', '\n']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
        .collect();
    format!("{}\n", quoted.join(","))
}

fn table(cfg: &Config, spec: &str, engine: Option<&str>) -> Result<Output> {
    let g = build_group(cfg, spec)?;
    let t = match engine {
        Some(e) => table_with_engine(&g, e.parse::<Engine>()?)?,
        None => auto_table(&g)?,
    };
    let report = verify_table(&t);
    let classes: Vec<Value> = (0..g.class_count())
        .map(|c| json!({ "rep": class_label(&g, c), "size": g.class_size(c) }))
        .collect();
    let irreps: Vec<Value> = (0..t.irrep_count())
        .map(|pi| json!({ "dim": t.dim(pi), "values": t.row(pi).into_iter().map(complex).collect::<Vec<_>>() }))
        .collect();
    let json = json!({
        "group": g.name(),
        "order": g.order(),
        "engine": t.engine().to_string(),
        "classes": classes,
        "irreps": irreps,
        "exact": t.is_exact(),
        "verify": {
            "row_residual": float(report.row_residual),
            "col_residual": float(report.col_residual),
            "dim_square_sum": report.dim_square_sum.to_string(),
            "identity_column_ok": report.identity_column_ok,
            "closed_under_product": report.closed_under_product,
            "sampled": report.sampled,
            "pass": report.pass,
        },
    });
    let mut text = format!(
        "{} (order {}, {} classes, engine {}, exact {})\n",
        g.name(),
        g.order(),
        g.class_count(),
        t.engine(),
        t.is_exact()
    );
    for c in 0..g.class_count() {
        let _ = writeln!(text, "class {c}: rep {} size {}", class_label(&g, c), g.class_size(c));
    }
    for pi in 0..t.irrep_count() {
        let vals: Vec<String> = t.row(pi).iter().map(|z| complex_text(*z)).collect();
        let _ = writeln!(text, "χ{pi} (dim {}): {}", t.dim(pi), vals.join("  "));
    }
    let _ = writeln!(
        text,
        "orthogonality residuals: rows {}, columns {}; {}",
        float_text(report.row_residual),
        float_text(report.col_residual),
        if report.pass { "pass" } else { "FAIL" }
    );
    let mut csv = csv_line(&["schema_version".into(), "irrep".into(), "dim".into(), "class".into(), "re".into(), "im".into()]);
    for pi in 0..t.irrep_count() {
        for (c, z) in t.row(pi).iter().enumerate() {
            csv.push_str(&csv_line(&[
                SCHEMA_VERSION.to_string(),
                pi.to_string(),
                t.dim(pi).to_string(),
                class_label(&g, c),
                float_text(z.re),
                float_text(z.im),
            ]));
        }
    }
    Ok(Output::new(json, text).with_csv(csv).failed(!report.pass))
}

fn complex_text(z: num_complex::Complex64) -> String {
    let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        float_text(re)
    } else {
        format!("{}{}{}i", float_text(re), if im < 0.0 { "-" } else { "+" }, float_text(im.abs()))
    }
}

fn norm_json(v: &NormValue) -> (Value, Value) {
    match v {
        NormValue::Exact(q) => (rational(q), json!(0.0)),
        NormValue::Float { value, error } => (float(*value), float(*error)),
    }
}

fn norm_text(v: &NormValue) -> String {
    match v {
        NormValue::Exact(q) if q.is_integer() => rational_text(q),
        NormValue::Exact(q) => format!("{} ({})", rational_text(q), float_text(v.value())),
        NormValue::Float { value, error } => format!("{} ± {}", float_text(*value), float_text(*error)),
    }
}

fn lambda(cfg: &Config, spec: &str, set: &str, oracle: bool, sieve: bool) -> Result<Output> {
    let g = build_group(cfg, spec)?;
    let t = auto_table(&g)?;
    let d = ClassSet::parse(&g, set)?;
    let rep = lambda_of_set(&d, &t)?;
    let (lambda_v, error_v) = norm_json(&rep.lambda);
    let mu = match &rep.mu_exact {
        Some(q) => rational(q),
        None => complex(rep.mu),
    };
    let mut json = json!({
        "group": g.name(),
        "set_size": d.size(),
        "lambda": lambda_v,
        "error": error_v,
        "lambda_float": float(rep.lambda.value()),
        "mu": mu,
        "support": rep.support.iter().map(|&pi| json!({ "irrep": pi, "dim": t.dim(pi) })).collect::<Vec<_>>(),
        "bounds": { "cauchy_schwarz": float(rep.bounds.cauchy_schwarz), "trivial": float(rep.bounds.trivial) },
    });
    let mut text = format!("λ = {}\n", norm_text(&rep.lambda));
    let _ = writeln!(text, "|D| = {}, |G| = {}", d.size(), g.order());
    let _ = writeln!(
        text,
        "mean = {}",
        rep.mu_exact.as_ref().map_or_else(|| complex_text(rep.mu), rational_text)
    );
    let _ = writeln!(text, "spectral support: {} of {} irreps", rep.support.len(), t.irrep_count());
    let _ = writeln!(
        text,
        "bounds: Cauchy-Schwarz {}, trivial {}",
        float_text(rep.bounds.cauchy_schwarz),
        float_text(rep.bounds.trivial)
    );
    if !d.is_empty() {
        let cert = coset_certificate(&d)?;
        json["coset_certificate"] = match &cert {
            Some(c) => json!({ "a": g.format_element(c.a), "subgroup_order": c.subgroup.order() }),
            None => Value::Null,
        };
        let _ = match &cert {
            Some(c) => writeln!(text, "coset: D = aH with a = {}, |H| = {}", g.format_element(c.a), c.subgroup.order()),
            None => writeln!(text, "coset: none"),
        };
    }
    let mut failed = false;
    if oracle {
        if g.order() > ORACLE_MAX_ORDER {
            return Err(Error::Budget(format!("the trace-norm oracle is limited to order {ORACLE_MAX_ORDER}")));
        }
        let value = trace_norm_oracle(&ClassFunction::indicator(&d))?;
        let diff = (value - rep.lambda.value()).abs();
        let agree = diff <= 1e-8 * (1.0 + rep.lambda.value());
        failed |= !agree;
        json["oracle"] = json!({ "value": float(value), "difference": float(diff), "agree": agree });
        let _ = writeln!(text, "oracle: {} (difference {}, {})", float_text(value), float_text(diff), if agree { "agree" } else { "DISAGREE" });
    }
    if sieve {
        let w = sieve_weight(&d, &t)?;
        json["sieve"] = json!({
            "lambda": float(w.lambda),
            "lambda_sq": float(w.lambda_sq),
            "mu": float(w.mu),
            "bound": float(w.bound),
        });
        let _ = writeln!(
            text,
            "sieve weight: λ {}, λ of square {}, mean {}, bound {}",
            float_text(w.lambda),
            float_text(w.lambda_sq),
            float_text(w.mu),
            float_text(w.bound)
        );
    }
    Ok(Output::new(json, text).failed(failed))
}

fn candidate_json(name: &str, c: &Result<Candidate>) -> Value {
    match c {
        Ok(c) => json!({ "name": name, "value": float(c.value), "bound": float(c.bound), "set_size": c.set.size() }),
        Err(e) => json!({ "name": name, "error": e.to_string() }),
    }
}

fn candidates_for(g: &Group, t: &CharacterTable) -> Vec<(&'static str, Result<Candidate>)> {
    let mut out = Vec::new();
    if let Some([n]) = g.abelian_moduli() {
        out.push(("generators", candidate_generators(*n)));
    }
    if g.permutation_degree().is_some() {
        for (name, kind) in [
            ("fix>=1", FixedPointKind::AtLeast1),
            ("fix>=2", FixedPointKind::AtLeast2),
            ("fix=0", FixedPointKind::None),
        ] {
            out.push((name, candidate_fixed_points(g, t, kind)));
        }
    }
    out
}

fn phi(cfg: &Config, spec: &str, set: &str, mode: PhiMode, candidates: bool, reduce: bool) -> Result<Output> {
    let g = build_group(cfg, spec)?;
    let t = auto_table(&g)?;
    let d = ClassSet::parse(&g, set)?;
    let cands = if candidates { candidates_for(&g, &t) } else { Vec::new() };
    let reduction = if reduce { Some(phi_quotient_reduce(t, &d)?) } else { None };
    let owned;
    let (table, target) = match &reduction {
        Some(r) => (&r.table, r.set.clone()),
        None => {
            owned = auto_table(&g)?;
            (&owned, d.clone())
        }
    };
    let inst = PhiInstance::new(table, target)?;
    let bounds = phi_bounds(&inst)?;
    let sol = phi_solve_with(&inst, mode)?;
    let h = table.group();
    let f_star: Vec<Value> = (0..h.class_count())
        .map(|c| json!({ "class": class_label(h, c), "value": complex(sol.f_star.value(c)) }))
        .collect();
    let mut json = json!({
        "group": g.name(),
        "lower": float(sol.lower),
        "upper": float(sol.upper),
        "exact": sol.exact_value.as_ref().map_or(Value::Null, rational),
        "f_star": f_star,
        "flags": {
            "exact": sol.flags.exact,
            "relaxed": sol.flags.relaxed,
            "multiple_optima": sol.flags.multiple_optima,
            "numerical_failure": sol.flags.numerical_failure,
        },
        "bounds": {
            "lower": float(bounds.lower),
            "upper_littlewood": float(bounds.upper_littlewood),
            "upper_cauchy_schwarz": float(bounds.upper_cauchy_schwarz),
        },
    });
    let mut text = match &sol.exact_value {
        Some(q) => format!("φ = {}\n", rational_text(q)),
        None if sol.lower == sol.upper => format!("φ = {}\n", float_text(sol.upper)),
        None => format!("φ ∈ [{}, {}]\n", float_text(sol.lower), float_text(sol.upper)),
    };
    let _ = writeln!(
        text,
        "closed-form sandwich: {} ≤ φ ≤ min({}, {})",
        float_text(bounds.lower),
        float_text(bounds.upper_littlewood),
        float_text(bounds.upper_cauchy_schwarz)
    );
    let flags: Vec<&str> = [
        (sol.flags.exact, "exact"),
        (sol.flags.relaxed, "relaxed"),
        (sol.flags.multiple_optima, "multiple optima"),
        (sol.flags.numerical_failure, "numerical failure"),
    ]
    .iter()
    .filter_map(|&(on, name)| on.then_some(name))
    .collect();
    let _ = writeln!(text, "flags: {}", if flags.is_empty() { "none".to_string() } else { flags.join(", ") });
    for c in 0..h.class_count() {
        let _ = writeln!(text, "f*({}) = {}", class_label(h, c), complex_text(sol.f_star.value(c)));
    }
    if let Some(r) = &reduction {
        json["reduction"] = json!({ "kernel_order": r.kernel_order(), "group": r.group.name(), "order": r.group.order() });
        let _ = writeln!(text, "reduced modulo a normal subgroup of order {} to {}", r.kernel_order(), r.group.name());
    }
    if candidates {
        json["candidates"] = Value::Array(cands.iter().map(|(n, c)| candidate_json(n, c)).collect());
        for (name, c) in &cands {
            let _ = match c {
                Ok(c) => writeln!(text, "candidate {name}: {} (bound {})", float_text(c.value), float_text(c.bound)),
                Err(e) => writeln!(text, "candidate {name}: unavailable ({e})"),
            };
        }
    }
    let csv = {
        let mut s = csv_line(&["schema_version".into(), "class".into(), "re".into(), "im".into()]);
        for c in 0..h.class_count() {
            let z = sol.f_star.value(c);
            s.push_str(&csv_line(&[SCHEMA_VERSION.to_string(), class_label(h, c), float_text(z.re), float_text(z.im)]));
        }
        s
    };
    Ok(Output::new(json, text).with_csv(csv))
}

/// Splits `a;b;c` and parses each generator as an element of `g`.
fn parse_generators(g: &Group, list: &str) -> Result<Vec<usize>> {
    list.split(';').filter(|s| !s.trim().is_empty()).map(|s| g.parse_element(s)).collect()
}

fn borel(g: &Group) -> Result<(SubgroupHandle, SubgroupHandle)> {
    let mut h_elems = Vec::new();
    let mut u_elems = Vec::new();
    for x in 0..g.order() {
        let (m, n, _) = g.as_matrix(x).ok_or_else(|| Error::Invalid(format!("{} is not a matrix group", g.name())))?;
        if n != 2 {
            return Err(Error::Invalid("--borel needs 2×2 matrices".into()));
        }
        if m[2] == 0 {
            h_elems.push(x);
            if m[0] == 1 && m[3] == 1 {
                u_elems.push(x);
            }
        }
    }
    let h = g.subgroup(&h_elems)?;
    let local: Vec<usize> = u_elems.iter().map(|&x| h.local(x).expect("unipotent elements are upper triangular")).collect();
    let u = h.group().subgroup(&local)?;
    Ok((h, u))
}

fn serre(cfg: &Config, spec: &str, set: &str, use_borel: bool, h: Option<&str>, u: Option<&str>) -> Result<Output> {
    let g = build_group(cfg, spec)?;
    let t = auto_table(&g)?;
    let d = ClassSet::parse(&g, set)?;
    let (hs, us) = if use_borel {
        borel(&g)?
    } else {
        let (Some(h), Some(u)) = (h, u) else {
            return Err(Error::Parse("serre needs --borel or both --h and --u".into()));
        };
        let hs = g.subgroup(&parse_generators(&g, h)?)?;
        let local = parse_generators(&g, u)?
            .into_iter()
            .map(|x| hs.local(x).ok_or_else(|| Error::Invalid(format!("{} is not in H", g.format_element(x)))))
            .collect::<Result<Vec<_>>>()?;
        let us = hs.group().subgroup(&local)?;
        (hs, us)
    };
    let r = serre_reduce(&t, &d, &hs, &us)?;
    let json = json!({
        "group": g.name(),
        "h_order": hs.order(),
        "u_order": us.order(),
        "hypotheses": {
            "class_sizes_uniform": r.class_sizes_uniform,
            "intersections_uniform": r.intersections_uniform,
            "kernel_stable": r.kernel_stable,
        },
        "factor": r.factor.as_ref().map_or(Value::Null, rational),
        "quotient_lambda": opt_float(r.quotient_lambda),
        "bound": opt_float(r.bound),
        "lambda": float(r.lambda),
        "argument_condition": r.argument_condition,
        "equality": r.equality,
    });
    let mut text = format!("|H| = {}, |U| = {}\n", hs.order(), us.order());
    let _ = writeln!(text, "λ(D) = {}", float_text(r.lambda));
    let _ = writeln!(
        text,
        "hypotheses: class sizes {}, intersections {}, U-stable {}",
        r.class_sizes_uniform, r.intersections_uniform, r.kernel_stable
    );
    if let (Some(f), Some(ql), Some(b)) = (&r.factor, r.quotient_lambda, r.bound) {
        let _ = writeln!(text, "bound: {} × {} = {}", rational_text(f), float_text(ql), float_text(b));
    }
    if let Some(eq) = r.equality {
        let _ = writeln!(text, "equality: {eq}");
    }
    Ok(Output::new(json, text))
}

fn density_json(r: &DensityReport) -> Value {
    let rows: Vec<Value> = (0..r.labels.len())
        .map(|i| {
            json!({
                "label": r.labels[i],
                "count": r.counts[i],
                "frequency": float(r.frequencies[i]),
                "density": float(r.densities[i]),
                "deviation": float(r.deviations[i]),
                "error_ratio": opt_float(r.error_ratios.as_ref().map(|v| v[i])),
            })
        })
        .collect();
    json!({
        "x": r.x,
        "total": r.total,
        "skipped": r.skipped,
        "tv_distance": float(r.tv_distance),
        "max_deviation": float(r.max_deviation()),
        "rows": rows,
    })
}

fn density_text(r: &DensityReport, out: &mut String) {
    let _ = writeln!(out, "{:<16} {:>10} {:>20} {:>20}", "block", "count", "frequency", "density");
    for i in 0..r.labels.len() {
        let _ = writeln!(
            out,
            "{:<16} {:>10} {:>20} {:>20}",
            r.labels[i],
            r.counts[i],
            float_text(r.frequencies[i]),
            float_text(r.densities[i])
        );
    }
    let _ = writeln!(out, "counted {}, skipped {}, total variation {}", r.total, r.skipped, float_text(r.tv_distance));
}

fn density_csv(r: &DensityReport) -> String {
    let mut s = csv_line(&[
        "schema_version".into(),
        "x".into(),
        "label".into(),
        "count".into(),
        "frequency".into(),
        "density".into(),
        "deviation".into(),
    ]);
    for i in 0..r.labels.len() {
        s.push_str(&csv_line(&[
            SCHEMA_VERSION.to_string(),
            r.x.to_string(),
            r.labels[i].clone(),
            r.counts[i].to_string(),
            float_text(r.frequencies[i]),
            float_text(r.densities[i]),
            float_text(r.deviations[i]),
        ]));
    }
    s
}

fn chebotarev(cfg: &Config, sampler: &str, set: &str, x: u64) -> Result<Output> {
    let x = within(cfg, x)?;
    let s = FrobSampler::parse(sampler)?;
    check_order(cfg, s.group())?;
    let d = ClassSet::parse(s.group(), set)?;
    let count = pi_set(&s, &d, x)?;
    let density = d.size() as f64 / s.group().order() as f64;
    let report = chebotarev_density(&s, x, false)?;
    let err = if x >= 3 && !d.is_empty() { Some(error_term(&s, &ClassFunction::indicator(&d), x)?) } else { None };
    let mut json = json!({
        "sampler": sampler,
        "group": s.group().name(),
        "modulus": s.modulus(),
        "ramification": s.ramification_convention(),
        "x": x,
        "pi": count,
        "density": float(density),
        "frequency": float(if report.total == 0 { 0.0 } else { count as f64 / report.total as f64 }),
        "blocks": density_json(&report),
    });
    let mut text = format!("{} primes below {} with Frobenius in the set (density {})\n", count, x, float_text(density));
    if let Some(e) = &err {
        json["error_term"] = json!({
            "li": float(e.li),
            "expected": float(e.mu.re * e.li),
            "deviation": float(e.deviation),
            "scale": float(e.scale),
            "ratio": float(e.ratio),
            "lambda": float(e.lambda),
        });
        let _ = writeln!(
            text,
            "μ·Li(x) = {}, deviation {}, ratio to √x λ (log x + log M + log|G|) = {}",
            float_text(e.mu.re * e.li),
            float_text(e.deviation),
            float_text(e.ratio)
        );
    }
    let _ = writeln!(text, "ramified primes: {}", s.ramification_convention());
    density_text(&report, &mut text);
    Ok(Output::new(json, text).with_csv(density_csv(&report)))
}

fn least_output(r: &LeastPrimeReport, mut json: Value) -> Output {
    json["prime"] = json!(r.prime);
    json["searched_to"] = json!(r.searched_to);
    json["log_m"] = float(r.log_m);
    json["bound_shape"] = opt_float(r.bound_shape);
    json["ratio"] = opt_float(r.ratio);
    json["verified"] = json!(r.verified);
    json["shape"] = json!(r.shape);
    let mut text = match r.prime {
        Some(p) => format!("least prime: {p}\n"),
        None => format!("no qualifying prime below {}\n", r.searched_to),
    };
    if let Some(b) = r.bound_shape {
        let _ = writeln!(text, "shape {} = {}", r.shape, float_text(b));
    } else {
        let _ = writeln!(text, "shape {} is undefined here", r.shape);
    }
    if let Some(ratio) = r.ratio {
        let _ = writeln!(text, "ratio: {}", float_text(ratio));
    }
    let csv = csv_line(&["schema_version".into(), "prime".into(), "searched_to".into(), "bound_shape".into(), "ratio".into()])
        + &csv_line(&[
            SCHEMA_VERSION.to_string(),
            r.prime.map_or(String::new(), |p| p.to_string()),
            r.searched_to.to_string(),
            r.bound_shape.map_or(String::new(), float_text),
            r.ratio.map_or(String::new(), float_text),
        ]);
    Output::new(json, text).with_csv(csv).failed(!r.verified)
}

fn lang_trotter_cmd(cfg: &Config, curve: &str, a: i64, x: u64, ell: Option<u64>) -> Result<Output> {
    let x = within(cfg, x)?;
    let e: ECurve = curve.parse()?;
    let count = lang_trotter(&e, a, x)?;
    let xf = x as f64;
    let shape = if x >= 3 { xf.sqrt() / xf.ln() } else { f64::NAN };
    let mut json = json!({
        "curve": e.to_string(),
        "a": a,
        "x": x,
        "count": count,
        "sqrt_x_over_log_x": float(shape),
    });
    let mut text = format!("{count} good primes below {x} with a_p = {a} (√x/log x = {})\n", float_text(shape));
    let mut csv = None;
    if let Some(l) = ell {
        let r = ap_mod_distribution(&e, l, x)?;
        json["mod_ell"] = density_json(&r);
        json["ell"] = json!(l);
        let _ = writeln!(text, "a_p mod {l} against GL2 trace densities:");
        density_text(&r, &mut text);
        csv = Some(density_csv(&r));
    }
    let out = Output::new(json, text);
    Ok(match csv {
        Some(c) => out.with_csv(c),
        None => out,
    })
}

fn verify(cfg: &Config, cases: usize) -> Result<Output> {
    if cases == 0 {
        return Err(Error::Invalid("--cases must be positive".into()));
    }
    let board = run_suite(cfg.seed, cases)?;
    let rows: Vec<Value> = board
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "name": o.name,
                "cases": o.cases,
                "failures": o.failures,
                "passed": o.passed(),
                "first_failure": o.first_failure,
            })
        })
        .collect();
    let json = json!({ "seed": board.seed, "passed": board.all_passed(), "properties": rows });
    let mut csv = csv_line(&["schema_version".into(), "property".into(), "cases".into(), "failures".into()]);
    for o in &board.outcomes {
        csv.push_str(&csv_line(&[SCHEMA_VERSION.to_string(), o.name.to_string(), o.cases.to_string(), o.failures.to_string()]));
    }
    Ok(Output::new(json, board.render()).with_csv(csv).failed(!board.all_passed()))
}
