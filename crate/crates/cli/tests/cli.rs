use std::process::{Command, Output};

fn lieop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieop")).args(args).output().expect("run lieop")
}

fn stdout(args: &[&str]) -> String {
    let out = lieop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn lie_basis_lists_two_words() {
    let v = json(&["lie", "basis", "3"]);
    assert_eq!(v, serde_json::json!(["[x1,[x2,x3]]", "[x2,[x1,x3]]"]));
}

#[test]
fn homology_of_pi4() {
    assert_eq!(stdout(&["pc", "homology", "4", "--json"]), r#"{"degree":1,"rank":6,"torsion":[]}"#);
    assert_eq!(stdout(&["pc", "homology", "3"]), "H_0 = Z^2");
    let all = json(&["pc", "homology", "5", "--all"]);
    assert_eq!(all.as_array().unwrap().len(), 4);
}

#[test]
fn ungraft_splits_the_root() {
    let v = json(&["tree", "ungraft", "((1:1/2,2:1/2):1/2)", "--s1", "1", "--s2", "2"]);
    assert_eq!(v["t0"], "1/2");
    assert_eq!(v["left"], "(1:1)");
    assert_eq!(v["right"], "(2:1)");
    let g = json(&["tree", "graft", "1/2", "(1:1)", "(2:1)"]);
    assert_eq!(g["tree"], "((1:1/2,2:1/2):1/2)");
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &["pc", "equivariance", "4", "--json"][..],
        &["lie", "matrix", "4", "(1 2 3)", "--json"],
        &["tree", "tmatrix", "((1:1/3,(2:1/3,3:1/3):1/3):1/3)", "--json"],
    ] {
        assert_eq!(lieop(args).stdout, lieop(args).stdout);
    }
}

#[test]
fn numbers_render_as_strings() {
    let m = json(&["lie", "matrix", "3", "(1 2)"]);
    assert_eq!(m, serde_json::json!([["0", "1"], ["1", "0"]]));
    assert_eq!(json(&["lie", "character", "2", "(1 2)"])["character"], "-1");
    assert_eq!(json(&["lie", "character", "2", "(1 2)", "--shift", "1"])["character"], "1");
    assert_eq!(json(&["hm", "rank", "--c", "2", "--ranks", "1,1,1"]), serde_json::json!({"degree": 9, "rank": "2"}));
    assert_eq!(
        json(&["hm", "rank-group", "--c", "2", "--ranks", "1,1,1", "--order", "inf"]),
        serde_json::json!({"degree": 9, "rank_expr": "2*|G|^3"})
    );
}

#[test]
fn grasper_uses_the_group_file() {
    let dir = std::env::temp_dir().join(format!("lieop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c2.json");
    std::fs::write(&path, r#"{"order":2,"table":[[0,1],[1,0]]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(json(&["grasper", "rank", "3", "--group-file", p])["rank"], "16");
    let b = json(&["grasper", "bracket", "[x1,x2]@(g1,g0)", "x3@(g1)", "--group-file", p]);
    assert_eq!(b["terms"].as_array().unwrap().len(), 2);
    assert_eq!(lieop(&["grasper", "reduce", "x1@(g2)", "--group-file", p]).status.code(), Some(1));
}

#[test]
fn verify_module_runs_its_criteria() {
    let v = json(&["verify", "module", "weighted_trees", "--seed", "7"]);
    let ids: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [6, 7]);
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn exit_codes() {
    assert_eq!(lieop(&["bogus"]).status.code(), Some(2));
    assert_eq!(lieop(&["lie", "basis"]).status.code(), Some(2));
    assert_eq!(lieop(&["pc", "nerve", "2"]).status.code(), Some(1));
    assert_eq!(lieop(&["lie", "graft", "[x1,x2]", "[x2,x3]"]).status.code(), Some(1));
    assert_eq!(lieop(&["verify", "module", "nope"]).status.code(), Some(1));
}
