use clap::Parser;
use proptest::prelude::*;
use rvbound_cli::{run, run_survey, threshold_rows, wilson_interval, Cli, SurveyConfig};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn invoke(args: &[&str]) -> (u8, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("rvbound").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (u8, serde_json::Value) {
    let (code, out, _) = invoke(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn pinched_surface_is_certified() {
    let (code, doc) = json(&["certify", &data("pinched_genus2.surf"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"], "negative_certified");
    assert_eq!(doc["k1"], 1);
    assert!(doc["mainthm_value"].as_f64().unwrap() < 0.0);
    assert_eq!(doc["scan"]["status"], "clean");
}

#[test]
fn moderate_surface_is_not_certified() {
    let (code, doc) = json(&["certify", &data("moderate_genus2.surf"), "--json"]);
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], "not_certified");
    assert!(doc["mainthm_value"].as_f64().unwrap() > 0.0);
    assert!(doc["comparator_value"].is_null());
}

#[test]
fn comparator_certifies_below_its_threshold() {
    let (code, doc) = json(&["certify", &data("moderate_genus2.surf"), "--json", "--comparator"]);
    assert_eq!(code, 0);
    assert!(doc["comparator_value"].as_f64().unwrap() < 0.0);
}

#[test]
fn json_document_has_the_documented_fields() {
    let (_, doc) = json(&["certify", &data("dumbbell_genus2.surf"), "--json"]);
    for key in [
        "schema_version",
        "tool_version",
        "genus",
        "k",
        "k1",
        "mainthm_value",
        "symmetric_value",
        "correction_value",
        "comparator_value",
        "thresholds",
        "verdict",
        "hypothesis_provenance",
        "constants",
        "scan",
    ] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn text_output_names_the_verdict() {
    let (code, out, _) = invoke(&["certify", &data("pinched_genus2.surf")]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: negative_certified"));
}

#[test]
fn tiny_curves_in_genus_three_are_scanned() {
    let (_, doc) = json(&["certify", &data("chain_genus3.surf"), "--json"]);
    assert_eq!(doc["scan"]["status"], "clean");
    assert_eq!(doc["k"], 2);
}

#[test]
fn undeclared_short_geodesic_overrides_the_assertion() {
    let (code, doc) = json(&["certify", &data("long_genus2.surf"), "--json"]);
    assert_eq!(code, 1);
    assert_eq!(doc["scan"]["status"], "undeclared_short_geodesic");
    let undeclared = doc["scan"]["undeclared"].as_array().unwrap();
    assert_eq!(undeclared.len(), 1);
    assert!((undeclared[0]["length"].as_f64().unwrap() - 0.930860113304328).abs() < 1e-8);
    let status = doc["hypothesis_provenance"]
        .as_array()
        .unwrap()
        .iter()
        .find(|h| h["name"] == "no_other_geodesic_of_length_at_most_1")
        .unwrap()["status"]
        .clone();
    assert_eq!(status, "unknown");
}

#[test]
fn disabled_scan_keeps_the_assertion() {
    let (code, doc) = json(&["certify", &data("pinched_genus2.surf"), "--json", "--scan-depth", "0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["scan"]["status"], "disabled");
}

#[test]
fn malformed_input_exits_two_with_position() {
    let dir = std::env::temp_dir().join(format!("rvbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.surf");
    std::fs::write(&path, "genus 2\npants A\ncurve a A.0 A.1 len=oops\n").unwrap();
    let (code, out, err) = invoke(&["certify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("bad.surf:3:"), "{err}");

    let (code, _, _) = invoke(&["certify", dir.join("missing.surf").to_str().unwrap()]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_rho_is_an_input_error() {
    let (code, _, err) = invoke(&["certify", &data("pinched_genus2.surf"), "--rho=-1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn threshold_table_covers_every_triple() {
    let rows = threshold_rows(4).unwrap();
    let expected: usize = (2..=4).map(|g| (1..=3 * g - 3).sum::<usize>()).sum();
    assert_eq!(rows.len(), expected);
    let first = &rows[0];
    assert_eq!((first.genus, first.k1, first.k), (2, 1, 1));
    assert!((0.00220..=0.00222).contains(&first.threshold));

    let (code, out, _) = invoke(&["thresholds", "--max-genus", "3", "--csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "genus,k1,k,threshold");
    assert_eq!(lines.len(), 1 + 6 + 21);
    let top: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|f| f[1] == f[2] && f[2].parse::<usize>().unwrap() == 3 * f[0].parse::<usize>().unwrap() - 3)
        .map(|f| f[3].parse().unwrap())
        .collect();
    assert_eq!(top.len(), 2);
    assert!((top[0] - top[1]).abs() < 1e-9 * top[0]);
}

#[test]
fn thresholds_reject_genus_below_two() {
    let (code, out, err) = invoke(&["thresholds", "--max-genus", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty() && !err.is_empty());
}

fn survey_args(workers: &str, extra: &[&'static str]) -> Vec<String> {
    let mut v: Vec<String> =
        ["survey", "--genus", "3", "--samples", "300", "--seed", "11", "--len-min", "0.0005", "--len-max", "2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    v.extend(["--workers".to_string(), workers.to_string()]);
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

#[test]
fn survey_output_ignores_worker_count() {
    for extra in [&[][..], &["--json"][..]] {
        let a = survey_args("1", extra);
        let b = survey_args("4", extra);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let b: Vec<&str> = b.iter().map(String::as_str).collect();
        let (ca, oa, _) = invoke(&a);
        let (cb, ob, _) = invoke(&b);
        assert_eq!((ca, cb), (0, 0));
        assert_eq!(oa, ob);
    }
}

#[test]
fn survey_extremes() {
    let cfg =
        |min, max| SurveyConfig { genus: 2, samples: 1000, seed: 3, len_min: min, len_max: max, short_count: None };
    let all = run_survey(&cfg(1e-4, 0.002), 2).unwrap();
    assert_eq!(all.fraction, 1.0);
    let none = run_survey(&cfg(1.5, 3.0), 2).unwrap();
    assert_eq!(none.fraction, 0.0);
    assert_eq!(none.k_histogram.get(&0), Some(&1000));
}

#[test]
fn survey_rejects_bad_config() {
    let (code, _, _) =
        invoke(&["survey", "--genus", "2", "--samples", "10", "--seed", "1", "--len-min", "2", "--len-max", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) =
        invoke(&["survey", "--genus", "1", "--samples", "10", "--seed", "1", "--len-min", "0.1", "--len-max", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn forced_short_count_fixes_k() {
    let cfg = SurveyConfig { genus: 3, samples: 200, seed: 5, len_min: 0.01, len_max: 0.5, short_count: Some(2) };
    let r = run_survey(&cfg, 1).unwrap();
    assert_eq!(r.k_histogram.len(), 1);
    assert_eq!(r.k_histogram.get(&2), Some(&200));
}

#[test]
fn wilson_interval_brackets_the_fraction() {
    let [lo, hi] = wilson_interval(0, 1000);
    assert_eq!(lo, 0.0);
    assert!((hi - 0.003827).abs() < 1e-6);
    let [lo, hi]: [f64; 2] = wilson_interval(500, 1000);
    assert!(lo < 0.5 && hi > 0.5 && (0.5 - lo - (hi - 0.5)).abs() < 1e-12);
}

proptest! {
    #[test]
    fn wilson_interval_contains_the_estimate(n in 1u64..100_000, frac in 0.0f64..=1.0) {
        let s = ((n as f64) * frac).floor() as u64;
        let p = s as f64 / n as f64;
        let [lo, hi] = wilson_interval(s, n);
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }

    #[test]
    fn survey_seed_and_workers_fix_the_report(seed in any::<u64>(), workers in 1usize..5) {
        let cfg = SurveyConfig { genus: 2, samples: 40, seed, len_min: 1e-3, len_max: 2.0, short_count: None };
        prop_assert_eq!(run_survey(&cfg, 1).unwrap(), run_survey(&cfg, workers).unwrap());
    }
}
