use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbrauer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn subgroups_formats() {
    let out = run(&["subgroups", "--group", "2:[1,1,1]", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 16);

    let out = run(&["subgroups", "--group", "2:[2]", "--format", "dot"]);
    assert_eq!(code(&out), 0);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" [label=").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);

    let out = run(&["subgroups", "--group", "3:[1,1]", "--format", "csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6);

    let out = run(&["subgroups", "--group", "2:[1,1]", "--format", "pretty"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("2:[1,1]: 5 subgroups"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&run(&["subgroups", "--group", "9:[1]"])), 2);
    assert_eq!(code(&run(&["subgroups", "--group", "2[1]"])), 2);
    assert_eq!(code(&run(&["verify", "--group", "2:[1,1,1,1,1,1,1]"])), 2);
    assert_eq!(code(&run(&["kernel", "--group", "2:[1]", "--format", "dot"])), 2);
    assert_eq!(code(&run(&["sweep", "--prime", "4", "--max-order", "16"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn kernel_ranks() {
    let rank = |args: &[&str]| json(&run(args))["rank"].as_u64().unwrap();
    assert_eq!(rank(&["kernel", "--group", "2:[1,1]", "--relative"]), 4);
    assert_eq!(rank(&["kernel", "--group", "3:[1,1]", "--relative"]), 9);
    assert_eq!(rank(&["kernel", "--group", "2:[3]"]), 0);
    assert_eq!(rank(&["kernel", "--group", "2:[1,1]"]), 1);
    let out = run(&["kernel", "--group", "2:[1,1]", "--relative", "--format", "pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("rank 4\n"));
    assert!(text.contains("e12"));
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--group", "2:[1,1]", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["ranks"]["kGamma"], 8);
    assert_eq!(report["ranks"]["kRel"], 4);
    assert_eq!(report["ranks"]["bG"], 5);
    assert_eq!(report["generation"]["equal"], true);
    assert_eq!(report["selection"]["saturation_equal"], true);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn sweep_lists_every_group() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ranks.csv");
    let out = run(&[
        "sweep",
        "--prime",
        "2",
        "--max-order",
        "16",
        "--csv",
        csv.to_str().unwrap(),
        "--certificates",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["group_count"], 12);
    assert_eq!(report["passed"], true);
    let groups = report["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 12);
    assert!(groups
        .iter()
        .all(|g| g["certificates"]["failures"].as_array().unwrap().is_empty()));
    let table = fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().count(), 13);
    assert!(table.contains("\"2:[1,1]\",8,16,8,8,4,true,2"));

    let out = run(&["sweep", "--prime", "3", "--max-order", "9", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 4);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["verify", "--group", "3:[1,1]"]);
    let b = run(&["verify", "--group", "3:[1,1]"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decompose_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    };

    let zero = write("zero.json", r#"{"group": "2:[1,1]", "coefficients": {}}"#);
    let out = run(&["decompose", "--element", &zero]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert_eq!(cert["terms"].as_array().unwrap().len(), 0);
    assert_eq!(cert["valid"], true);

    let basis = json(&run(&["kernel", "--group", "2:[2,1]", "--relative"]));
    let mut sum = serde_json::Map::new();
    for b in basis["basis"].as_array().unwrap() {
        for (k, v) in b["coefficients"].as_object().unwrap() {
            let prev = sum.get(k).and_then(Value::as_i64).unwrap_or(0);
            sum.insert(k.clone(), Value::from(prev + v.as_i64().unwrap()));
        }
    }
    let body = serde_json::json!({"group": "2:[2,1]", "coefficients": sum}).to_string();
    let rel = write("rel.json", &body);
    let out = run(&["decompose", "--element", &rel]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert_eq!(cert["valid"], true);
    assert!(!cert["terms"].as_array().unwrap().is_empty());
    for t in cert["terms"].as_array().unwrap() {
        assert_eq!(t["record"]["kind"], "induft");
    }

    let e1 = write("e1.json", r#"{"group": "2:[1,1]", "coefficients": {"0": 1}}"#);
    assert_eq!(code(&run(&["decompose", "--element", &e1])), 1);

    let bad = write("bad.json", r#"{"group": "2:[1,1]", "coefficients": {"99": 1}}"#);
    assert_eq!(code(&run(&["decompose", "--element", &bad])), 2);
    let garbled = write("garbled.json", "not json");
    assert_eq!(code(&run(&["decompose", "--element", &garbled])), 2);
    assert_eq!(code(&run(&["decompose", "--element", "/nonexistent/element.json"])), 2);
}

#[test]
fn example_kahn_report() {
    let out = run(&["example-kahn"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["subgroup_count"], 16);
    assert_eq!(r["rank_k_gamma"], 8);
    assert_eq!(r["rank_k_rel"], 4);
    assert_eq!(r["generators"].as_array().unwrap().len(), 14);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let out = run(&["example-kahn", "--format", "pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("E4 − E3 = "));
}
