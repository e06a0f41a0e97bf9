//! One function per subcommand. Each returns the JSON record and the table
//! rendering of the same library results.

use std::fmt::Write as _;

use serde_json::{json, Value};
use sesh_core::acceptance::{self, Check};
use sesh_core::curves::sigma_degree;
use sesh_core::polarizations::{self, classify, enumerate_pp_forms, seshadri_of_pp};
use sesh_core::seshadri::{self, no_submaximal_certificate, seshadri_report};
use sesh_core::{BigInt, BigRational, Error, NSClass, SeshadriValue, SurfaceContext};

use crate::Basis;

const PER_BUNDLE_CAVEAT: &str = "eps(L) = eps*(L) uses the per-bundle reading: an elliptic curve \
    N with (L.N)^2 <= L^2 is taken to compute the Seshadri constant of this bundle";
const BOUNDS_ONLY_CAVEAT: &str = "no elliptic curve is weakly submaximal, so eps(L) is not \
    determined; only bounds are reported";

pub struct Output {
    pub record: Value,
    pub text: String,
    pub status: u8,
}

pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = Result<Output, Failure>;

pub fn render_json(record: &Value) -> String {
    serde_json::to_string_pretty(record).expect("records serialize")
}

fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn ints<'a>(ns: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(ns.into_iter().map(int).collect())
}

fn class_json(l: &NSClass) -> Value {
    ints([&l.a1, &l.a2, &l.a3])
}

fn pair_json(p: &(BigInt, BigInt)) -> Value {
    ints([&p.0, &p.1])
}

fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

fn record(command: &str, inputs: Value, results: Value, caveats: &[&str]) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "caveats": caveats,
    })
}

fn ok(record: Value, text: String) -> CmdResult {
    Ok(Output {
        record,
        text,
        status: 0,
    })
}

pub fn eps(d: &BigInt, coeffs: &[BigInt; 3], basis: Basis) -> CmdResult {
    let ctx = SurfaceContext::new(d.clone())?;
    let [x, y, z] = coeffs.clone();
    let l = match basis {
        Basis::Nabla => NSClass::new(x, y, z),
        Basis::Delta => ctx.from_delta_basis(x, y, z),
    };
    let report = seshadri_report(&ctx, &l)?;
    let (c1, c2, c3) = ctx.to_delta_basis(&l);
    let deg = sigma_degree(&ctx, &report.witness.0, &report.witness.1)?;
    // The closed formula on the positive cone, when it applies.
    let cone = match basis {
        Basis::Delta => ctx.eps_positive_cone(c1.clone(), c2.clone(), c3.clone()).ok(),
        Basis::Nabla => None,
    };

    let eps_json = match &report.eps {
        SeshadriValue::Exact(v) => json!({ "kind": "exact", "value": rational(v) }),
        SeshadriValue::Bounded {
            lower,
            upper_squared,
        } => json!({
            "kind": "bounded",
            "lower": rational(lower),
            "upper_squared": int(upper_squared),
        }),
    };
    let mut results = json!({
        "class_nabla": class_json(&l),
        "class_delta": ints([&c1, &c2, &c3]),
        "l_squared": int(&report.l_squared),
        "sqrt_l_squared_is_integer": report.sqrt_is_integer,
        "eps_star": int(&report.eps_star),
        "witness": pair_json(&report.witness),
        "witness_sigma_degree": int(&deg),
        "has_weakly_submaximal": report.has_submaximal,
        "eps": eps_json,
    });
    if let Some(v) = &cone {
        results["positive_cone_eps"] = int(v);
    }
    let basis_name = match basis {
        Basis::Nabla => "nabla",
        Basis::Delta => "delta",
    };
    let inputs = json!({ "d": int(d), "class": ints(coeffs), "basis": basis_name });
    let mut caveats = Vec::new();
    if report.per_bundle_reading {
        caveats.push(PER_BUNDLE_CAVEAT);
    }
    if !report.has_submaximal {
        caveats.push(BOUNDS_ONLY_CAVEAT);
    }

    let mut text = String::new();
    writeln!(text, "d = {d}").unwrap();
    writeln!(text, "class      {l}  (F1, F2, nabla)").unwrap();
    writeln!(text, "           ({c1}, {c2}, {c3})  (F1, F2, Delta)").unwrap();
    writeln!(text, "L^2        {}", report.l_squared).unwrap();
    writeln!(
        text,
        "eps*       {}  at N_{{{}, {}}} (deg sigma = {deg})",
        report.eps_star, report.witness.0, report.witness.1
    )
    .unwrap();
    let yes_no = if report.has_submaximal { "yes" } else { "no" };
    writeln!(text, "weakly submaximal elliptic curve: {yes_no}").unwrap();
    match &report.eps {
        SeshadriValue::Exact(v) => writeln!(text, "eps        {v}").unwrap(),
        SeshadriValue::Bounded {
            lower,
            upper_squared,
        } => writeln!(text, "eps        in [{lower}, sqrt({upper_squared})]").unwrap(),
    }
    if let Some(v) = &cone {
        writeln!(text, "positive-cone formula: {v}").unwrap();
    }
    write_caveats(&mut text, &caveats);
    ok(record("eps", inputs, results, &caveats), text)
}

pub fn survey(d: &BigInt, bound: &BigInt) -> CmdResult {
    let ctx = SurfaceContext::new(d.clone())?;
    let s = seshadri::survey(&ctx, bound)?;
    let histogram: Vec<Value> = s
        .eps_star_histogram
        .iter()
        .map(|(k, v)| json!({ "eps_star": int(k), "count": v.to_string() }))
        .collect();
    let results = json!({
        "ample_classes": s.ample_classes.to_string(),
        "with_weakly_submaximal": s.with_submaximal.to_string(),
        "without_weakly_submaximal": s.without_submaximal.to_string(),
        "eps_star_histogram": histogram,
        "classes_without_weakly_submaximal":
            s.no_submaximal_classes.iter().map(class_json).collect::<Vec<_>>(),
    });
    let inputs = json!({ "d": int(d), "bound": int(bound) });

    let mut text = String::new();
    writeln!(text, "d = {d}, |a_i| <= {bound}").unwrap();
    writeln!(text, "ample classes                      {}", s.ample_classes).unwrap();
    writeln!(text, "  with a weakly submaximal curve   {}", s.with_submaximal).unwrap();
    writeln!(text, "  without                          {}", s.without_submaximal).unwrap();
    writeln!(text, "eps*   count").unwrap();
    for (k, v) in &s.eps_star_histogram {
        writeln!(text, "{k:>4}   {v}").unwrap();
    }
    for l in &s.no_submaximal_classes {
        writeln!(text, "no weakly submaximal curve: {l}").unwrap();
    }
    ok(record("survey", inputs, results, &[]), text)
}

pub fn pp(d: &BigInt) -> CmdResult {
    let forms = enumerate_pp_forms(d)?;
    let rows: Vec<Value> = forms
        .iter()
        .map(|p| {
            json!({
                "form": ints([p.a(), p.b(), p.c()]),
                "type": classify(p).to_string(),
                "eps": rational(&seshadri_of_pp(p)),
            })
        })
        .collect();
    let results = json!({ "classes": rows });
    let inputs = json!({ "d": int(d) });

    let mut text = String::new();
    writeln!(text, "{:<24} {:<12} eps", "(A, B, C)", "type").unwrap();
    for p in &forms {
        writeln!(
            text,
            "{:<24} {:<12} {}",
            p.to_string(),
            classify(p).to_string(),
            seshadri_of_pp(p)
        )
        .unwrap();
    }
    ok(record("pp", inputs, results, &[]), text)
}

pub fn kani(limit: &BigInt) -> CmdResult {
    let list = polarizations::kani_list(limit)?;
    let results = json!({ "values": ints(&list.values) });
    let inputs = json!({ "limit": int(limit) });
    let mut text = String::new();
    writeln!(text, "d <= {limit} without an irreducible principal polarization:").unwrap();
    writeln!(text, "{}", join(&list.values)).unwrap();
    write_caveats(&mut text, &[list.caveat]);
    ok(record("kani", inputs, results, &[list.caveat]), text)
}

pub fn idoneal(limit: &BigInt) -> CmdResult {
    let values = polarizations::idoneal_numbers(limit)?;
    let results = json!({ "values": ints(&values) });
    let inputs = json!({ "limit": int(limit) });
    let mut text = String::new();
    writeln!(text, "idoneal numbers <= {limit}:").unwrap();
    writeln!(text, "{}", join(&values)).unwrap();
    ok(record("idoneal", inputs, results, &[]), text)
}

pub fn counterexample(d: &BigInt) -> CmdResult {
    let ctx = SurfaceContext::new(d.clone())?;
    let cert = no_submaximal_certificate(d)?;
    let l = seshadri::counterexample_bundle(&ctx)?;
    let report = seshadri_report(&ctx, &l)?;
    let checked: Vec<Value> = cert
        .checked
        .iter()
        .map(|c| {
            json!({
                "pair": pair_json(&c.pair),
                "value": int(&c.value),
                "divisor": int(&c.divisor),
            })
        })
        .collect();
    let results = json!({
        "bundle": class_json(&l),
        "l_squared": int(&report.l_squared),
        "l_squared_is_square": report.sqrt_is_integer,
        "eps_star": int(&report.eps_star),
        "witness": pair_json(&report.witness),
        "has_weakly_submaximal": report.has_submaximal,
        "certificate": {
            "form": ints([&cert.form.a, &cert.form.b, &cert.form.c]),
            "shift": int(&cert.shift),
            "checked": checked,
            "holds": cert.holds,
        },
    });
    let inputs = json!({ "d": int(d) });

    let mut text = String::new();
    writeln!(text, "d = {d}").unwrap();
    writeln!(text, "bundle     {l}  (F1, F2, nabla)").unwrap();
    writeln!(text, "L^2        {}  (square: {})", report.l_squared, report.sqrt_is_integer).unwrap();
    writeln!(
        text,
        "eps*       {}  at N_{{{}, {}}}",
        report.eps_star, report.witness.0, report.witness.1
    )
    .unwrap();
    writeln!(text, "weakly submaximal elliptic curve: {}", if report.has_submaximal { "yes" } else { "no" })
        .unwrap();
    writeln!(
        text,
        "certificate on {} with shift {}: {}",
        cert.form,
        cert.shift,
        if cert.holds { "holds" } else { "FAILS" }
    )
    .unwrap();
    writeln!(text, "  pair          Q   gcd").unwrap();
    for c in &cert.checked {
        let pair = format!("({}, {})", c.pair.0, c.pair.1);
        writeln!(text, "  {pair:<12} {:>3}   {}", c.value, c.divisor).unwrap();
    }
    ok(record("counterexample", inputs, results, &[]), text)
}

pub fn verify(suite: &str) -> CmdResult {
    let checks: Vec<Check> = if suite == "all" {
        Check::ALL.to_vec()
    } else if let Some(check) = Check::from_name(suite) {
        vec![check]
    } else if let Some(check) = suite
        .parse::<usize>()
        .ok()
        .and_then(|n| Check::ALL.into_iter().find(|c| c.number() == n))
    {
        vec![check]
    } else {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        return Err(Failure::Usage(format!(
            "unknown suite `{suite}`; expected `all`, 1-{}, or one of {}",
            Check::ALL.len(),
            names.join(", ")
        )));
    };
    let outcomes: Vec<acceptance::Outcome> = checks.into_iter().map(Check::run).collect();
    let results = json!({
        "checks": outcomes.iter().map(|o| json!({
            "number": o.check.number().to_string(),
            "name": o.check.name(),
            "description": o.check.description(),
            "passed": o.passed,
            "detail": o.detail,
        })).collect::<Vec<_>>(),
        "all_passed": outcomes.iter().all(|o| o.passed),
    });
    let mut text = String::new();
    for o in &outcomes {
        writeln!(text, "{o}").unwrap();
    }
    let status = if outcomes.iter().all(|o| o.passed) { 0 } else { 3 };
    Ok(Output {
        record: record("verify", json!({ "suite": suite }), results, &[]),
        text,
        status,
    })
}

fn join(values: &[BigInt]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn write_caveats(text: &mut String, caveats: &[&str]) {
    for c in caveats {
        writeln!(text, "note: {c}").unwrap();
    }
}
