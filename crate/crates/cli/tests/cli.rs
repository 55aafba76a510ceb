use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn synmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synmon")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

#[test]
fn syn_json_has_the_min_table() {
    let o = synmon(&["syn", "--alphabet", "a", "--regex", "a + a^6 a*", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 7);
    assert_eq!(v["identity"], 0);
    let names: Vec<String> = serde_json::from_value(v["names"].clone()).unwrap();
    let mult: Vec<Vec<usize>> = serde_json::from_value(v["mult"].clone()).unwrap();
    let exp = |i: usize| -> usize {
        match names[i].as_str() {
            "1" => 0,
            "a" => 1,
            s => s.trim_start_matches("a^").parse().unwrap(),
        }
    };
    for x in 0..7 {
        for y in 0..7 {
            assert_eq!(exp(mult[x][y]), (exp(x) + exp(y)).min(6));
        }
    }
}

#[test]
fn check_on_a_monoid_file() {
    let t = data("trivial.json");
    let o = synmon(&["check", "--monoid", &t, "--ineq", "x <= 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x <= 1: true\n");
}

#[test]
fn check_reports_counterexamples() {
    let o = synmon(&["check", "--alphabet", "a", "--regex", "1 + a", "--ineq", "1 <= x^2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["holds"], false);
    assert_eq!(v[0]["counterexample"]["assignment"]["x"], "a");
}

#[test]
fn stamp_modes_differ() {
    let args = |mode: &str| {
        let o = synmon(&["check", "--alphabet", "a", "--regex", "1 + a", "--mode", mode, "--ineq", "xy^(w+1) <= x^w y"]);
        stdout(&o)
    };
    assert!(args("lp").ends_with("true\n"));
    assert!(args("ld").contains("false"));
}

#[test]
fn downset_of_u1() {
    let o = synmon(&["downset", "--monoid", &data("u1.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 2);
}

#[test]
fn closure_count_and_expectation() {
    let ok = synmon(&["closure", "--alphabet", "a", "--regex", "1 + a", "--expect-count", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).ends_with("count: 4\n"));
    let off = synmon(&["closure", "--alphabet", "a", "--regex", "a + a^6 a*", "--expect-count", "20"]);
    assert_eq!(off.status.code(), Some(1));
    assert!(stdout(&off).ends_with("count: 19\n"));
}

#[test]
fn order_dot_draws_covering_edges() {
    let o = synmon(&["order", "--alphabet", "a", "--regex", "a + a^6 a*", "--dot"]);
    let edges = stdout(&o).lines().filter(|l| l.contains("->")).count();
    assert_eq!(edges, 6);
}

#[test]
fn language_operations() {
    let o = synmon(&["shuffle", "--lang", "a:a", "--lang", "b:b", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alphabet"], serde_json::json!(["a", "b"]));
    let o = synmon(&["rename", "--alphabet", "ab", "--regex", "(ab)*", "--morphism", "a=x,b=x"]);
    assert_eq!(stdout(&o).lines().next(), Some("(x^2)*"));
    let o = synmon(&["invhom", "--alphabet", "ab", "--regex", "(ab)*", "--source", "c", "--morphism", "c=ab"]);
    assert_eq!(stdout(&o).lines().next(), Some("c*"));
}

#[test]
fn decompose_lists_terms() {
    let o = synmon(&["decompose", "--alphabet", "ab", "--regex", "(a+b)*", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn numsg_verdicts_follow_membership() {
    let o = synmon(&["numsg", "--gens", "3,5", "--check-ineq", "12", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conductor"], 8);
    for row in v["shift_inequalities"].as_array().unwrap() {
        assert_eq!(row["holds"], row["m_in_semigroup"]);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(synmon(&["syn", "--alphabet", "a", "--regex", "a +"]).status.code(), Some(2));
    assert_eq!(synmon(&["syn", "--regex", "a"]).status.code(), Some(2));
    assert_eq!(synmon(&["check", "--monoid", "missing.json", "--ineq", "x <= 1"]).status.code(), Some(2));
    assert_eq!(synmon(&["decompose", "--alphabet", "ab", "--regex", "ab"]).status.code(), Some(1));
    assert_eq!(synmon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(synmon(&["reproduce", "--criterion", "1"]).status.code(), Some(0));
    assert_eq!(synmon(&["reproduce", "--criterion", "3"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["closure", "--alphabet", "a", "--regex", "a + (a^3 + a^4)(a^7)*", "--json"];
    assert_eq!(synmon(&args).stdout, synmon(&args).stdout);
}
