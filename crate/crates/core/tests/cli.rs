use std::process::{Command, Output};

fn antibch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antibch"))
        .args(args)
        .env_remove("ANTIBCH_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn distance_json_is_exact() {
    let out = antibch(&["distance", "--q", "9", "--m", "2", "--delta", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exact"], true);
    assert_eq!(v["lower"]["value"], 62);
    assert_eq!(v["upper"]["value"], 62);
    assert_eq!(v["code"]["n"], 82);
}

#[test]
fn open_case_reports_an_interval() {
    let out = antibch(&["distance", "--q", "3", "--m", "8", "--delta", "3", "--b", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exact"], false);
    assert!(v["lower"]["value"].as_u64().unwrap() >= 6);
}

#[test]
fn cosets_formats() {
    let out = antibch(&["cosets", "--q", "8", "--m", "2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["leaders"].as_array().unwrap().len(), 17);
    assert_eq!(v["closed_form_agrees"], true);

    let table = antibch(&["cosets", "--q", "8", "--m", "2", "--format", "table"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("leaders") && l.ends_with("19 20 21 28")), "{text}");

    let csv = antibch(&["cosets", "--q", "8", "--m", "2", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("key,value"));
    assert!(text.lines().any(|l| l == "n,65"));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("antibch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("code.json");
    let out = antibch(&["code", "--q", "4", "--m", "2", "--delta", "2", "--b", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dimension"], 13);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(antibch(&["distance", "--q", "6", "--m", "2", "--delta", "3"]).status.code(), Some(2));
    assert_eq!(antibch(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(antibch(&["cosets", "--q", "2"]).status.code(), Some(2));
    assert_eq!(antibch(&["distance", "--q", "2", "--m", "3", "--delta", "3", "--threads", "0"]).status.code(), Some(2));
    // the leader enumeration alone needs more than 10 residues
    let out = antibch(&["cosets", "--q", "3", "--m", "3", "--codeword-budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(antibch(&["zetterberg", "--p", "2", "--m", "10", "--wmax", "6", "--subset-budget", "1000"]).status.code(), Some(3));
}

#[test]
fn verify_suite_passes() {
    let out = antibch(&["verify", "--suite", "paper-examples", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["failures"], 0);
}

#[test]
fn property_suite_is_seed_deterministic() {
    let a = antibch(&["verify", "--suite", "properties", "--seed", "7"]);
    let b = antibch(&["verify", "--suite", "properties", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_env_var_and_flag() {
    let args = ["distance", "--q", "3", "--m", "4", "--delta", "4"];
    let baseline = antibch(&args).stdout;
    let env = Command::new(env!("CARGO_BIN_EXE_antibch"))
        .args(args)
        .env("ANTIBCH_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    assert_eq!(env.stdout, baseline);
    let flag = antibch(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(flag.stdout, baseline);
    let bad = Command::new(env!("CARGO_BIN_EXE_antibch"))
        .args(args)
        .env("ANTIBCH_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn esp_and_zetterberg() {
    let v = json(&antibch(&["esp", "--q", "8", "--k", "4", "--l", "1"]));
    assert_eq!(v["cardinality"], 0);
    let csv = antibch(&["esp", "--q", "5", "--k", "3", "--l", "1", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "0,2,4\n1,3,5\n");
    let v = json(&antibch(&["zetterberg", "--p", "2", "--m", "4", "--wmax", "4"]));
    assert_eq!(v["counts"], serde_json::json!([1, 0, 0, 0, 0]));
}
