use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyckgrid"))
        .args(args)
        .env_remove("DYCKGRID_CAPS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dyckgrid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn gen_graph6_golden() {
    let o = run(&["gen", "dyck:h=0,c=0,k=3", "--format", "graph6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap().trim(),
        "chCGGC@?G?o@_?O?c?G_@A?CC?GC?GA?C?_@?C?G?O?_?o@??_???O?_?C?G??_@??A?C??C?G??C?G??A?C???_@???C?G???O?_???o@"
    );
}

#[test]
fn gen_formats_agree() {
    let o = run(&["gen", "cyl:m=3,n=4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["n"], 12);
    assert_eq!(v["edges"].as_array().unwrap().len(), 20);
    let dot = run(&["gen", "cyl:m=3,n=4", "--format", "dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.matches("--").count(), 20);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["gen", "dyck:c=1,h=1,k=3"])), 2);
    assert_eq!(code(&run(&["gen", "torus:k=3"])), 2);
    assert_eq!(code(&run(&["gen", "cyl:m=2,n=3"])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let tight = Command::new(env!("CARGO_BIN_EXE_dyckgrid"))
        .args(["td", "treewidth", "--spec", "cyl:m=3,n=8"])
        .env("DYCKGRID_CAPS", "treewidth=10")
        .output()
        .unwrap();
    assert_eq!(code(&tight), 4);
}

#[test]
fn transform_then_verify() {
    let o = run(&["transform", "--lemma", "swap", "--spec", "msg:k=27,h={2},c={3}", "--pos", "2", "--k", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["target_spec"], "msg:k=3,h={3},c={2}");
    assert_eq!(v["plan"][0]["kind"], "swap_left");
    let cert = v["certificate"].clone();
    let good = scratch("good.json", &cert.to_string());
    let out = run(&["verify", "--model", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["valid"], true);

    let mut bad = cert.clone();
    let sets = bad["branch_sets"].as_array_mut().unwrap();
    sets.swap(0, 1);
    let bad = scratch("bad.json", &bad.to_string());
    let out = run(&["verify", "--model", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["violation"].is_object());

    let text = cert.to_string();
    let cut = scratch("cut.json", &text[..text.len() / 2]);
    assert_eq!(code(&run(&["verify", "--model", cut.to_str().unwrap()])), 2);
}

#[test]
fn transform_rejects_wrong_order() {
    let o = run(&["transform", "--lemma", "swap", "--spec", "msg:k=27,h={2},c={3}", "--pos", "2", "--k", "4"]);
    assert_eq!(code(&o), 3);
    let o = run(&["transform", "--lemma", "merge", "--spec", "msg:k=18,h={},c={2,3,4}"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn normalize_reaches_dyck() {
    let o = run(&["transform", "--lemma", "normalize", "--spec", "msg:k=54,h={},c={2,3,4}", "--k", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["target_spec"], "msg:k=3,h={2},c={3}");
    let cert = scratch("norm.json", &v["certificate"].to_string());
    assert_eq!(code(&run(&["verify", "--model", cert.to_str().unwrap()])), 0);
}

#[test]
fn society_commands() {
    let o = run(&["random-society", "--vertices", "9", "--boundary", "5", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let soc = scratch("soc.json", &String::from_utf8(o.stdout).unwrap());
    let soc = soc.to_str().unwrap();
    let cross = stdout_json(&run(&["society", "cross", "--input", soc]));
    assert_eq!(cross["consistent"], true);
    let depth = stdout_json(&run(&["society", "depth", "--input", soc]))["depth"].as_u64().unwrap();
    let lin = stdout_json(&run(&["society", "lindec", "--input", soc, "--theta", &depth.to_string()]));
    assert_eq!(lin["report"]["valid"], true);
    assert!(lin["report"]["adhesion"].as_u64().unwrap() <= depth);
    if depth > 0 {
        let t = stdout_json(&run(&["society", "lindec", "--input", soc, "--theta", &(depth - 1).to_string()]));
        assert!(t["order"].as_u64().unwrap() >= depth);
    }
    let broken = scratch("broken.json", r#"{"graph":{"n":3,"edges":[[0,1]]},"omega":[0,0]}"#);
    assert_eq!(code(&run(&["society", "depth", "--input", broken.to_str().unwrap()])), 2);
}

#[test]
fn tangle_commands() {
    let o = run(&["tangle", "axioms", "--source", "wall", "--spec", "wall:k=3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["tangle"], true);
    let set: Vec<String> = (0..36).map(|v| v.to_string()).collect();
    let g = scratch("grid.g6", "");
    let grid = run(&["gen", "cyl:m=6,n=6", "--format", "graph6"]);
    std::fs::write(&g, &grid.stdout).unwrap();
    let o = run(&["tangle", "stronglinked", "--graph", g.to_str().unwrap(), "--set", "0,7,14"]);
    assert_eq!(code(&o), 0);
    let o = run(&["tangle", "growwall", "--spec", "cyl:m=6,n=6", "--set", &set.join(","), "--k", "3", "--q", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["linkage"]["paths"].as_array().unwrap().len(), 3);
    assert_eq!(code(&run(&["tangle", "sfree", "--spec", "wall:k=3", "--set", "0,1", "--k", "2", "--alpha", "x"])), 2);
}

#[test]
fn td_commands() {
    let o = run(&["td", "treewidth", "--spec", "cyl:m=3,n=4"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let td = scratch("td.json", &v["decomposition"].to_string());
    let ok = run(&["td", "validate", "--spec", "cyl:m=3,n=4", "--td", td.to_str().unwrap()]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout_json(&ok)["width"], v["treewidth"]);
    let mut bad = v["decomposition"].clone();
    bad["bags"][0] = Value::Array(vec![]);
    let bad = scratch("td-bad.json", &bad.to_string());
    assert_eq!(code(&run(&["td", "validate", "--spec", "cyl:m=3,n=4", "--td", bad.to_str().unwrap()])), 1);
}
