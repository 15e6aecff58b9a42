use std::process::Command;

use serde_json::Value;
use workbench_cli::main_with_args;

fn run(args: &[&str]) -> (i32, String, String) {
    main_with_args(std::iter::once("workbench").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn const2_fails_on_discrete2_with_a_witness() {
    let (code, r) = json(&["check-sheaf", "--presheaf", "const2", "--site", "discrete2"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "fail");
    let w = &r["witnesses"].as_array().unwrap()[..];
    assert_eq!(w.len(), 1);
    assert_eq!(w[0]["object"], "D");
    assert_eq!(w[0]["sieve"], "{{a}->D,{b}->D,{}->D}");
    assert_eq!((w[0]["sections"].as_u64(), w[0]["families"].as_u64()), (Some(2), Some(4)));
}

#[test]
fn literal_constant_presheaf_fails_only_over_the_empty_open() {
    let (code, r) = json(&["check-sheaf", "--presheaf", "const2-everywhere"]);
    assert_eq!(code, 1);
    let w = r["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0]["object"], "{}");
    assert_eq!((w[0]["sections"].as_u64(), w[0]["families"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn existence_is_forced_without_a_global_section() {
    let (code, r) = json(&["force", "--site", "pseudocircle", "--formula", "exists-section-P", "--at", "whole"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["forced"], true);
    assert_eq!(r["results"]["witnesses_here"], Value::Array(vec![]));
    let (code, r) = json(&["sections", "P", "whole"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["count"], 0);
}

#[test]
fn pullback_of_the_c2_cospan() {
    let (code, r) = json(&["pullback", "--fixture", "c2"]);
    assert_eq!(code, 0);
    let pairs: Vec<Vec<&str>> = r["results"]["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect())
        .collect();
    assert_eq!(pairs, [["1", "a"], ["1", "b"], ["2", "a"], ["2", "b"]]);
}

#[test]
fn sheafification_of_const2() {
    let (code, r) = json(&["sheafify", "--presheaf", "const2", "--certify", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["sizes_after"]["D"], 4);
    assert_eq!(r["results"]["second_unit_is_iso"], true);
    assert_eq!(r["results"]["factorization_failures"], 0);
}

#[test]
fn omega_on_sierpinski() {
    let (code, r) = json(&["omega", "--site", "sierpinski"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["sizes"], serde_json::json!({"S": 3, "{top}": 2, "{}": 1}));
}

#[test]
fn excluded_middle_fails_for_the_terminal_sheaf_on_sierpinski() {
    let (code, r) = json(&["heyting", "--presheaf", "sierpinski-one"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["boolean"], false);
    let (_, r) = json(&["heyting", "--presheaf", "discrete2-one"]);
    assert_eq!(r["results"]["boolean"], true);
}

#[test]
fn sign_torsor_round_trip() {
    let (code, r) = json(&["glue-torsor", "--cocycle", "sign", "--random", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["global_sections"], 0);
    assert_eq!(r["results"]["extracted_equivalent"], true);
    let (code, r) = json(&["cocycle-equiv", "--cocycle", "sign", "--with", "unit"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["equivalent"], false);
    let (code, _) = json(&["cocycle-equiv", "--cocycle", "unit", "--with", "unit"]);
    assert_eq!(code, 0);
}

#[test]
fn extraction_from_every_choice_of_sections() {
    let (code, r) = json(&["extract-cocycle", "--action", "P", "--all-choices"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["choices"], 4);
    assert_eq!(r["results"]["equivalent_to_first"], 4);
    let (code, _) = json(&["extract-cocycle", "--action", "trivial-torsor", "--target", "whole", "--member", "Ux", "--member", "Uy", "--section", "Ux=000", "--section", "Uy=111"]);
    assert_eq!(code, 0);
}

#[test]
fn glue_reports_the_failing_family() {
    let cover = ["glue", "--at", "D", "--cover", "{a}", "--cover", "{b}", "--section", "{a}=0", "--section", "{b}=1"];
    let (code, r) = json(&[&cover[..], &["--presheaf", "discrete2-functions"]].concat());
    assert_eq!(code, 0);
    assert_eq!(r["results"]["glued"][0]["section"], "01");
    let (code, r) = json(&[&cover[..], &["--presheaf", "const2"]].concat());
    assert_eq!(code, 1);
    assert!(r["witnesses"][0]["error"].as_str().unwrap().contains("fails at `D`"));
    let (code, r) = json(&["glue", "--presheaf", "discrete2-functions", "--at", "D", "--cover", "{a}", "--cover", "{b}"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["families"], 4);
}

#[test]
fn formulas_interpret_consistently() {
    for name in ["sierpinski-first-order", "discrete2-first-order", "discrete2-excluded-middle"] {
        let (code, r) = json(&["interpret", "--formula", name]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(r["results"]["agrees_with_forcing"], true);
    }
    let (code, r) = json(&["semantics", "--formula", "sierpinski-excluded-middle", "--depth", "2"]);
    assert_eq!(code, 0);
    assert!(r["results"]["formulas"].as_u64().unwrap() > 0);
}

#[test]
fn force_needs_every_context_variable() {
    let (code, _, err) = run(&["force", "--formula", "sierpinski-first-order", "--at", "S"]);
    assert_eq!(code, 2);
    assert!(err.contains("--bind x="), "{err}");
    let (code, _, _) = run(&["force", "--formula", "sierpinski-first-order", "--at", "S", "--bind", "x=p"]);
    assert_eq!(code, 0);
}

#[test]
fn limits_and_kan_extensions() {
    let (_, r) = json(&["limit", "--diagram", "c4-tower"]);
    assert_eq!(r["results"]["size"], 256);
    let (_, r) = json(&["colimit", "--diagram", "c2-span", "--certify"]);
    assert_eq!(r["results"]["size"], 2);
    let (_, r) = json(&["equalizer", "--diagram", "mod-pair"]);
    assert_eq!(r["results"]["size"], 2);
    let (_, r) = json(&["coequalizer", "--diagram", "mod-pair"]);
    assert_eq!(r["results"]["size"], 1);
    for dir in ["left", "right"] {
        let (code, _) = json(&["kan", "--direction", dir, "--random", "20", "--seed", "3"]);
        assert_eq!(code, 0);
    }
    let (code, _) = json(&["kan", "--direction", "left", "--diagram", "c2-span", "--along", "span-collapse"]);
    assert_eq!(code, 0);
}

#[test]
fn validate_commands_fail_on_broken_documents() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("loop.json"),
        r#"{"schema": 1, "kind": "category", "name": "loop", "objects": ["a"],
            "morphisms": [{"name": "e", "source": "a", "target": "a"}]}"#,
    )
    .unwrap();
    let load = dir.path().to_str().unwrap();
    let (code, r) = json(&["validate-category", "--category", "loop", "--load", load]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["valid"], false);
    let (code, _) = json(&["validate-category", "--category", "cospan"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["validate-topology", "--topology", "arrow-dense"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["omega", "--site", "sierpinski"]).0, 0);
    assert_eq!(run(&["check-sheaf", "--presheaf", "const2"]).0, 1);
    assert_eq!(run(&["omega", "--site", "nowhere"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check-sheaf"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, _, err) = run(&["yoneda", "--category", "sierpinski", "--max-size", "3", "--bound", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("intractable"), "{err}");
}

#[test]
fn unreadable_load_paths_are_load_errors() {
    let (code, _, err) = run(&["list", "--load", "/nonexistent/docs"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: /nonexistent/docs"), "{err}");
}

#[test]
fn loaded_documents_shadow_the_gallery() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("const2.json"),
        r#"{"schema": 1, "kind": "presheaf", "name": "const2", "site": "discrete2", "construction": {"type": "locally-constant", "values": ["0", "1"]}}"#,
    )
    .unwrap();
    let (code, _) = json(&["check-sheaf", "--presheaf", "const2", "--load", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn reports_record_input_digests() {
    let (_, r) = json(&["check-sheaf", "--presheaf", "const2"]);
    let inputs = r["inputs"].as_array().unwrap();
    let names: Vec<&str> = inputs.iter().map(|i| i["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["const2", "discrete2"]);
    assert!(inputs.iter().all(|i| i["sha256"].as_str().unwrap().len() == 64));
    assert!(r.get("timing_ms").is_none());
    let (_, r) = json(&["check-sheaf", "--presheaf", "const2", "--timing"]);
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn bound_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_workbench");
    let out = Command::new(bin)
        .args(["yoneda", "--category", "sierpinski", "--max-size", "3"])
        .env("WORKBENCH_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["omega", "--site", "sierpinski"]).env_remove("WORKBENCH_BOUND").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("command: omega\nverdict: pass\n"));
}

#[test]
fn sequential_and_parallel_reports_match() {
    for args in [
        &["classify", "--site", "sierpinski", "--all-max", "2"][..],
        &["semantics", "--formula", "discrete2-first-order", "--depth", "3"][..],
        &["yoneda", "--category", "arrow", "--max-size", "3"][..],
    ] {
        let par = run(args);
        let mut seq_args = args.to_vec();
        seq_args.push("--sequential");
        assert_eq!(run(&seq_args), par, "{args:?}");
    }
}

#[test]
fn fmt_check_flags_non_canonical_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"schema":1,"kind":"category","name":"c","objects":["a"]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["fmt", p]).0, 1);
    assert_eq!(run(&["fmt", p, "--write"]).0, 0);
    assert_eq!(run(&["fmt", p]).0, 0);
    assert_eq!(run(&["load", p]).0, 0);
}
