use std::collections::BTreeSet;

use clap::CommandFactory;
use fusioncat_cli::{run, Cli, COMMANDS};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fusioncat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

/// One successful invocation per subcommand.
const SAMPLES: &[&[&str]] = &[
    &["ring", "verify", "--ring", "ising"],
    &["ring", "dims", "--ring", "haagerup"],
    &["ring", "integral", "--ring", "rep_a4"],
    &["ring", "tensor", "--ring", "fibonacci", "--word", "τ,τ,τ"],
    &["ring", "regular", "--ring", "rep_s3"],
    &["ring", "show", "--ring", "ty_z3"],
    &["ring", "iso", "--ring", "vec_z2", "--other", "psu2_2"],
    &["catalog", "list"],
    &["catalog", "show", "--name", "fibonacci"],
    &["catalog", "pointed", "--factors", "2,2"],
    &["catalog", "ty", "--factors", "5", "--s", "2"],
    &["catalog", "psu2", "--k", "4"],
    &["center", "lagrangians", "--group", "Z/4"],
    &["center", "metric", "--group", "Z/3"],
    &["center", "pairs", "--group", "Z/2 x Z/2"],
    &["center", "anomaly", "--group", "Z/5", "--s", "2"],
    &["center", "boundaries", "--group", "s3"],
    &["center", "forced", "--count", "7", "--order", "3"],
    &["channels", "table", "--ring", "ising"],
    &["channels", "compose", "--ring", "rep_s3", "--left", "1/2*1 + 1/2*π", "--right", "π"],
    &["channels", "expectation", "--ring", "fibonacci"],
    &["chain", "dims", "--ring", "fibonacci", "--object", "τ", "--n", "5"],
    &["chain", "bigraded", "--ring", "rep_a4"],
    &["chain", "embed", "--ring", "vec_z3", "--k", "3"],
    &["chain", "kw-pauli", "--n", "6"],
    &["tl", "dim", "--m", "8"],
    &["tl", "semisimple", "--k", "3", "--m", "6"],
    &["tl", "jw", "--p", "3", "--k", "3"],
    &["tl", "kw-check", "--k", "2", "--m", "6"],
    &["tl", "relations", "--k", "4", "--m", "5"],
    &["lsm", "verdict", "--ring", "rep_s3"],
    &["lsm", "vacua", "--group", "Z/2", "--state", "1+m", "--ext", "1+e"],
    &["lsm", "duality", "--group", "Z/2", "--s", "1"],
    &["lsm", "realize", "--ring", "ty_z9"],
    &["lsm", "fiber", "--ring", "haagerup"],
];

/// Library operations and the subcommand that reaches each.
const OPERATIONS: &[(&str, &str)] = &[
    ("verify_ring", "ring verify"),
    ("fp_dimensions", "ring dims"),
    ("is_integral", "ring integral"),
    ("tensor_multiplicities", "ring tensor"),
    ("regular_object", "ring regular"),
    ("FusionRing::to_text", "ring show"),
    ("FusionRing::from_text", "ring verify"),
    ("ring_isomorphism", "ring iso"),
    ("standard_entries", "catalog list"),
    ("build_named", "catalog show"),
    ("build_pointed", "catalog pointed"),
    ("build_ty", "catalog ty"),
    ("build_psu2", "catalog psu2"),
    ("center_of_pointed", "center metric"),
    ("enumerate_lagrangians", "center lagrangians"),
    ("antisymmetric_bicharacters", "center pairs"),
    ("lagrangian_from_pair", "center pairs"),
    ("ty_duality_auto", "center anomaly"),
    ("anomaly_verdict", "center anomaly"),
    ("boundary_count_group", "center boundaries"),
    ("orbit_fixed_point_forced", "center forced"),
    ("lambda_compose", "channels table"),
    ("combo_compose", "channels compose"),
    ("conditional_expectation", "channels expectation"),
    ("chain_dims", "chain dims"),
    ("regular_bigraded", "chain bigraded"),
    ("embedding_dim_check", "chain embed"),
    ("pauli_kw_check", "chain kw-pauli"),
    ("tl_dim", "tl dim"),
    ("semisimple_dims", "tl semisimple"),
    ("jones_wenzl", "tl jw"),
    ("kw_shift_check", "tl kw-check"),
    ("jones_projection", "tl relations"),
    ("multiply", "tl relations"),
    ("lsm_verdict", "lsm verdict"),
    ("vacua_count", "lsm vacua"),
    ("duality_gapless_verdict", "lsm duality"),
    ("realizability_report", "lsm realize"),
    ("fiber_functor_verdict", "lsm fiber"),
];

#[test]
fn command_table_matches_parser() {
    let mut from_clap = BTreeSet::new();
    for group in Cli::command().get_subcommands() {
        for sub in group.get_subcommands() {
            from_clap.insert(format!("{} {}", group.get_name(), sub.get_name()));
        }
    }
    let listed: BTreeSet<String> = COMMANDS.iter().map(|s| s.to_string()).collect();
    assert_eq!(from_clap, listed);
}

#[test]
fn every_command_runs() {
    let sampled: BTreeSet<String> = SAMPLES.iter().map(|a| format!("{} {}", a[0], a[1])).collect();
    for c in COMMANDS {
        assert!(sampled.contains(*c), "no sample for `{c}`");
    }
    for args in SAMPLES {
        let v = json(args);
        assert_eq!(v["command"], format!("{} {}", args[0], args[1]));
        assert!(v.get("inputs").is_some() && v.get("result").is_some());
        assert_eq!(v.as_object().unwrap().len(), 3);
        ok(args);
    }
}

#[test]
fn every_operation_is_reachable() {
    for (op, cmd) in OPERATIONS {
        assert!(COMMANDS.contains(cmd), "{op} maps to unknown command `{cmd}`");
    }
}

#[test]
fn output_is_byte_identical() {
    for args in SAMPLES {
        assert_eq!(ok(args), ok(args), "{args:?}");
        let mut j = vec!["--json"];
        j.extend_from_slice(args);
        assert_eq!(ok(&j), ok(&j), "{args:?}");
    }
}

#[test]
fn documented_examples() {
    let out = ok(&["center", "lagrangians", "--group", "Z/2"]);
    assert!(out.contains("1+e") && out.contains("1+m"));
    assert!(out.contains("count: 2"));
    let v = json(&["center", "lagrangians", "--group", "Z/2"]);
    assert_eq!(v["result"]["count"], 2);

    let out = ok(&["center", "boundaries", "--group", "a4"]);
    assert!(out.contains("total: 7"));
    assert_eq!(json(&["center", "boundaries", "--group", "a4"])["result"]["total"], 7);

    assert_eq!(
        ok(&["lsm", "verdict", "--ring", "haagerup"]),
        "gapless (no fiber functor: d_ρ ≈ 3.3028)\n"
    );
}

#[test]
fn vacua_and_duality() {
    assert_eq!(json(&["lsm", "vacua", "--group", "Z/2", "--state", "1+e", "--ext", "1+e"])["result"]["vacua"], 2);
    assert_eq!(json(&["lsm", "vacua", "--group", "Z/2", "--state", "(0,1)", "--ext", "1+e"])["result"]["vacua"], 1);
    let v = json(&["lsm", "duality", "--group", "Z/2", "--s", "1"]);
    assert_eq!(v["result"]["verdict"]["kind"], "gapless");
    assert_eq!(v["result"]["anomaly"]["anomalous"], true);
}

#[test]
fn json_numbers() {
    let v = json(&["ring", "dims", "--ring", "fibonacci"]);
    let d = v["result"]["dims"][1].as_f64().unwrap();
    assert_eq!(d, 1.61803398875);
    assert!(v["result"]["dims"][0].is_f64() || v["result"]["dims"][0].is_u64());
    let v = json(&["tl", "semisimple", "--k", "40", "--m", "40"]);
    assert!(v["result"]["dim"].is_number());
    let v = json(&["chain", "dims", "--ring", "fibonacci", "--object", "τ", "--n", "60"]);
    assert!(v["result"]["dims"][59].to_string().len() > 20);
}

#[test]
fn exit_codes() {
    let (code, _, err) = invoke(&["ring", "regular", "--ring", "fibonacci"]);
    assert_eq!(code, 1);
    assert!(err.contains("NonIntegralRing"), "{err}");

    let (code, _, err) = invoke(&["catalog", "show", "--name", "nonsense"]);
    assert_eq!(code, 1);
    assert!(err.contains("UnknownName"));

    let (code, _, err) = invoke(&["center", "forced", "--count", "7", "--order", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("NonPrimeOrder"));

    assert_eq!(invoke(&["ring", "dims"]).0, 2);
    assert_eq!(invoke(&["ring", "dims", "--ring", "ising", "--bogus"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["tl", "dim", "--m", "many"]).0, 2);
    assert_eq!(invoke(&["center", "lagrangians", "--group", "Q/2"]).0, 2);

    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("fusioncat"));
}

#[test]
fn ring_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fib.ring");
    std::fs::write(&path, ok(&["ring", "show", "--ring", "fibonacci"])).unwrap();
    let p = path.to_str().unwrap();
    assert!(ok(&["ring", "verify", "--ring", p]).contains("all axioms hold"));
    assert!(ok(&["ring", "iso", "--ring", p, "--other", "psu2_3"]).starts_with("isomorphic"));
    assert!(ok(&["lsm", "verdict", "--ring", p]).starts_with("gapless"));

    // N^1_{ττ} = 2 breaks Frobenius reciprocity with N^τ_{1τ} = 1.
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("N 1 1 0 1"));
    let broken = text.replace("N 1 1 0 1", "N 1 1 0 2");
    let bad = dir.path().join("bad.ring");
    std::fs::write(&bad, broken).unwrap();
    let b = bad.to_str().unwrap();
    let v = json(&["ring", "verify", "--ring", b]);
    assert_eq!(v["result"]["passed"], false);
    let (code, _, err) = invoke(&["ring", "dims", "--ring", b]);
    assert_eq!(code, 1);
    assert!(err.contains("NonVerifiedRing"), "{err}");

    let (code, _, err) = invoke(&["ring", "dims", "--ring", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("UnknownName"), "{err}");
}
