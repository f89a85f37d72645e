use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sidigraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sidigraph")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const NEG_C4: &str = "# negative 4-cycle\n4\n0 1 +\n1 2 +\n2 3 +\n3 0 -\n";

#[test]
fn analyze_negative_four_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.txt", NEG_C4);
    let out = sidigraph(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["charpoly_text"], "x^4 + 1");
    for method in ["algebraic", "coulson"] {
        let e = v["energy"][method]["energy"].as_f64().unwrap();
        assert!((e - 8f64.sqrt()).abs() < 1e-6, "{method}: {e}");
    }
    assert_eq!(v["balance"]["balanced"], false);
    assert_eq!(v["walks"]["closed_walk_balance"][3], -4);
    assert_eq!(v["errors"].as_array().unwrap().len(), 0);
}

#[test]
fn analyze_acyclic_graph() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "dag.txt", "4\n0 1 -\n0 2 +\n1 3 -\n2 3 +\n");
    let out = sidigraph(&["analyze", &f, "--methods", "algebraic,coulson,coulson-log"]);
    let v = json(&out);
    assert_eq!(v["zero_energy_class"], "acyclic");
    assert_eq!(v["charpoly_text"], "x^4");
    assert_eq!(v["energy"]["algebraic"]["energy"].as_f64(), Some(0.0));
    assert_eq!(v["balance"]["balanced"], true);
}

#[test]
fn analyze_text_mode() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.txt", NEG_C4);
    let out = sidigraph(&["--format", "text", "analyze", &f]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("charpoly: x^4 + 1"), "{text}");
    assert!(text.contains("energy (algebraic): 2.828427124746"), "{text}");
    assert!(text.contains("balanced: no (negative cycle"), "{text}");
}

#[test]
fn log_form_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "star.txt", "3\n0 1 +\n1 0 -\n0 2 +\n2 0 -\n");
    let out = sidigraph(&["energy", &f, "--method", "coulson-log"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("imaginary"));
}

#[test]
fn bad_input_exits_two() {
    let out = sidigraph(&["analyze", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "loop.txt", "2\n0 0 +\n");
    assert_eq!(sidigraph(&["energy", &f]).status.code(), Some(2));
    let f = write(dir.path(), "dup.txt", "2\n0 1 +\n0 1 -\n");
    assert_eq!(sidigraph(&["charpoly", &f]).status.code(), Some(2));
}

#[test]
fn charpoly_methods_agree_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.txt", "4\n0 1 +\n1 0 -\n1 2 +\n2 3 -\n3 1 +\n2 0 +\n");
    let trace = json(&sidigraph(&["charpoly", &f]));
    let enumerate = json(&sidigraph(&["charpoly", &f, "--method", "enumerate", "--census"]));
    assert_eq!(trace["text"], enumerate["text"]);
    assert!(enumerate["census"].is_object() || enumerate["census"].is_array());
}

#[test]
fn balance_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bal.txt", "3\n0 1 -\n1 2 -\n2 0 +\n");
    let v = json(&sidigraph(&["balance", &f]));
    assert_eq!(v["balanced"], true);
    assert!(v["potential"].is_array());
    let f = write(dir.path(), "c4.txt", NEG_C4);
    let v = json(&sidigraph(&["balance", &f]));
    assert_eq!(v["balanced"], false);
    assert_eq!(v["negative_cycle"].as_array().unwrap().len(), 4);
}

#[test]
fn reproduce_groups() {
    for group in ["all", "3", "6"] {
        let out = sidigraph(&["reproduce", group]);
        assert_eq!(out.status.code(), Some(0), "group {group}");
        let v = json(&out);
        assert_eq!(v["all_pass"], true);
        assert!(v["total"].as_u64().unwrap() > 0);
    }
    let out = sidigraph(&["--format", "text", "reproduce", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    assert_eq!(sidigraph(&["reproduce", "7"]).status.code(), Some(2));
}

#[test]
fn corpus_is_deterministic_and_clean() {
    let a = sidigraph(&["corpus", "--seed", "42", "--count", "1000"]);
    let b = sidigraph(&["corpus", "--seed", "42", "--count", "1000"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["graphs"], 1000);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    for tally in v["per_property"].as_object().unwrap().values() {
        assert_eq!(tally["checked"], 1000);
    }
    let c = sidigraph(&["corpus", "--seed", "43", "--count", "50"]);
    assert_ne!(json(&c)["config"], v["config"]);
}

#[test]
fn corpus_all_properties_small() {
    let out = sidigraph(&[
        "corpus",
        "--count",
        "150",
        "--n-max",
        "6",
        "--properties",
        "bounds,additivity,coulson,balance,walks,charpoly,zero-energy",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn corpus_empty() {
    let out = sidigraph(&["corpus", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["graphs"], 0);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn symmetric_digon_search_hits_every_even_order() {
    let out = sidigraph(&[
        "corpus",
        "--family",
        "symmetric-k2",
        "--search",
        "energy-equals-n",
        "--count",
        "400",
        "--n-min",
        "2",
        "--n-max",
        "10",
        "--properties",
        "bounds",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let orders: Vec<u64> = v["search"]["orders_with_hits"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(orders, vec![2, 4, 6, 8, 10]);
    for hit in v["search"]["hits"].as_array().unwrap() {
        assert!((hit["energy"].as_f64().unwrap() - hit["n"].as_f64().unwrap()).abs() < 1e-9);
    }
}

#[test]
fn corpus_replay_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c4.txt", NEG_C4);
    let out = sidigraph(&["corpus", "--replay", &f, "--dump-dir", dir.path().join("dump").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["graphs"], 1);
}

#[test]
fn pair_emits_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("pair");
    let out = sidigraph(&["pair", "cycle-k2", "4", "--emit-dir", emit.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["cospectral"], false);
    let first = emit.join("first.txt");
    let second = emit.join("second.txt");
    let e1 = json(&sidigraph(&["energy", first.to_str().unwrap()]))["energy"].as_f64().unwrap();
    let e2 = json(&sidigraph(&["energy", second.to_str().unwrap()]))["energy"].as_f64().unwrap();
    assert!((e1 - 8.0).abs() < 1e-9 && (e2 - 8.0).abs() < 1e-9, "{e1} {e2}");

    let out = sidigraph(&["pair", "kron-skew", "3", "--m", "2"]);
    assert_eq!(json(&out)["passed"], true);
    assert_eq!(sidigraph(&["pair", "no-such-kind", "3"]).status.code(), Some(2));
    assert_eq!(sidigraph(&["pair", "odd-cycles", "4"]).status.code(), Some(2));
}

#[test]
fn neps_cartesian_of_two_digons() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write(dir.path(), "k2.txt", "2\n0 1 +\n1 0 +\n");
    let neg = write(dir.path(), "mixed.txt", "2\n0 1 +\n1 0 -\n");
    let v = json(&sidigraph(&["neps", "--basis", "10,01", &k2, &neg]));
    assert_eq!(v["order"], 4);
    assert_eq!(v["arc_count"], 8);
    assert_eq!(v["balanced"], false);

    let out = sidigraph(&["--format", "text", "neps", "--basis", "11", &k2, &k2]);
    let product = write(dir.path(), "prod.txt", &String::from_utf8(out.stdout).unwrap());
    let e = json(&sidigraph(&["energy", &product]))["energy"].as_f64().unwrap();
    assert!((e - 4.0).abs() < 1e-9);

    assert_eq!(sidigraph(&["neps", "--basis", "00", &k2, &k2]).status.code(), Some(2));
    assert_eq!(sidigraph(&["neps", "--basis", "101", &k2, &k2]).status.code(), Some(2));
}

#[test]
fn neps_converse_hits_replay_through_neps() {
    let out = sidigraph(&["corpus", "--search", "neps-converse", "--count", "500", "--n-max", "4", "--properties", "balance"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let hits = v["search"]["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    let dir = tempfile::tempdir().unwrap();
    for (k, hit) in hits.iter().enumerate() {
        let a = write(dir.path(), &format!("a{k}.txt"), hit["graph"].as_str().unwrap());
        let b = write(dir.path(), &format!("b{k}.txt"), hit["partner"].as_str().unwrap());
        let basis: Vec<&str> = hit["basis"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
        let product = json(&sidigraph(&["neps", "--basis", &basis.join(","), &a, &b]));
        assert_eq!(product["balanced"], true);
        let balanced = |f: &str| json(&sidigraph(&["balance", f]))["balanced"].as_bool().unwrap();
        assert!(!balanced(&a) || !balanced(&b));
    }
}
