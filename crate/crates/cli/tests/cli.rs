use std::process::{Command, Output};

use serde_json::Value;

fn sesh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sesh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = sesh(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_owned())
        .collect()
}

#[test]
fn product_polarization_has_eps_one() {
    let r = json(&["eps", "--d", "1", "--class", "1,1,0"]);
    assert_eq!(r["command"], "eps");
    assert_eq!(r["results"]["eps"]["kind"], "exact");
    assert_eq!(r["results"]["eps"]["value"], "1");
    assert_eq!(r["results"]["eps_star"], "1");
}

#[test]
fn delta_basis_input_matches_positive_cone_formula() {
    let r = json(&["eps", "--d", "3", "--class", "1,1,1", "--basis", "delta"]);
    assert_eq!(r["results"]["eps"]["value"], "2");
    assert_eq!(r["results"]["positive_cone_eps"], "2");
    assert_eq!(strings(&r["results"]["class_nabla"]), ["4", "2", "1"]);
    assert_eq!(r["inputs"]["basis"], "delta");
}

#[test]
fn counterexample_bundle_reports_bounds_only() {
    let r = json(&["eps", "--d", "3", "--class", "12,18,7"]);
    assert_eq!(r["results"]["l_squared"], "138");
    assert_eq!(r["results"]["has_weakly_submaximal"], false);
    assert_eq!(r["results"]["eps"]["kind"], "bounded");
    assert_eq!(r["results"]["eps"]["upper_squared"], "138");
    assert!(!r["caveats"].as_array().unwrap().is_empty());

    let c = json(&["counterexample", "--d", "5"]);
    assert_eq!(strings(&c["results"]["bundle"]), ["20", "40", "11"]);
    assert_eq!(c["results"]["l_squared"], "390");
    assert_eq!(c["results"]["certificate"]["holds"], true);
    assert_eq!(c["results"]["has_weakly_submaximal"], false);
}

#[test]
fn pp_tables() {
    let rows = |d: &str| json(&["pp", "--d", d])["results"]["classes"].as_array().unwrap().clone();
    let three = rows("3");
    assert_eq!(three.len(), 2);
    let irreducible: Vec<&Value> = three.iter().filter(|r| r["type"] == "irreducible").collect();
    assert_eq!(irreducible.len(), 1);
    assert_eq!(irreducible[0]["eps"], "4/3");
    for d in ["1", "2"] {
        let r = rows(d);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0]["type"], "reducible");
    }
    let text = stdout(&sesh(&["pp", "--d", "3"]));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn kani_and_idoneal_lists() {
    let k = json(&["kani", "--limit", "500"]);
    let values = strings(&k["results"]["values"]);
    assert_eq!(values.len(), 21);
    assert_eq!(values.last().map(String::as_str), Some("462"));
    assert_eq!(k["caveats"].as_array().unwrap().len(), 1);

    let i = json(&["idoneal", "--limit", "1848"]);
    let values = strings(&i["results"]["values"]);
    assert_eq!(values.len(), 65);
    assert_eq!(values.last().map(String::as_str), Some("1848"));
}

#[test]
fn survey_counts_add_up() {
    let r = json(&["survey", "--d", "2", "--bound", "6"])["results"].clone();
    let n = |k: &str| r[k].as_str().unwrap().parse::<u64>().unwrap();
    assert_eq!(n("ample_classes"), n("with_weakly_submaximal") + n("without_weakly_submaximal"));
    let hist: u64 = r["eps_star_histogram"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["count"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(hist, n("ample_classes"));
}

#[test]
fn verify_single_check() {
    let r = json(&["verify", "--suite", "intersection"]);
    assert_eq!(r["results"]["all_passed"], true);
    let text = stdout(&sesh(&["verify", "--suite", "1"]));
    assert!(text.starts_with("[PASS] criterion 1"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| sesh(args).status.code();
    assert_eq!(code(&["eps", "--d", "3", "--class", "1,1,1"]), Some(2));
    assert_eq!(code(&["eps", "--d", "0", "--class", "1,1,0"]), Some(2));
    assert_eq!(code(&["pp", "--d", "0"]), Some(2));
    assert_eq!(code(&["counterexample", "--d", "2"]), Some(2));
    assert_eq!(code(&["eps", "--d", "3", "--class", "1,1"]), Some(1));
    assert_eq!(code(&["eps", "--d", "3.5", "--class", "1,1,0"]), Some(1));
    assert_eq!(code(&["pp"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["verify", "--suite", "nonsense"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));

    let err = String::from_utf8(sesh(&["eps", "--d", "3", "--class", "0,1,0"]).stderr).unwrap();
    assert!(err.contains("a1 > 0"), "{err}");
    let err = String::from_utf8(sesh(&["eps", "--d", "3", "--class", "1,1,1"]).stderr).unwrap();
    assert!(err.contains("a1*a2 - d*a3^2 > 0"), "{err}");
}

#[test]
fn big_integers_are_not_truncated() {
    let big = "123456789012345678901234567890";
    let r = json(&["eps", "--d", "1", "--class", &format!("{big},{big},0")]);
    assert_eq!(r["results"]["eps_star"], big);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let cases: [&[&str]; 6] = [
        &["eps", "--d", "3", "--class", "12,18,7", "--json"],
        &["eps", "--d", "3", "--class", "1,1,1", "--basis", "delta", "--json"],
        &["pp", "--d", "30", "--json"],
        &["kani", "--limit", "100", "--json"],
        &["counterexample", "--d", "7", "--json"],
        &["survey", "--d", "1", "--bound", "4", "--json"],
    ];
    for args in cases {
        let first = stdout(&sesh(args));
        let second = stdout(&sesh(args));
        assert_eq!(first, second, "{args:?} is not deterministic");
        let parsed: Value = serde_json::from_str(&first).unwrap();
        let rendered = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(rendered, first.trim_end(), "{args:?}");
        for key in ["command", "inputs", "results", "caveats"] {
            assert!(parsed.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}
