use std::io::Write;
use std::process::{Command, Output, Stdio};

fn isoform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoform")).args(args).env_remove("ISOFORM_CAP").output().unwrap()
}

fn pair(name: &str) -> String {
    format!("{}/pairs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn su3_circle_text_report() {
    let o = isoform(&["analyze", &pair("su3_circle_123.json")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.ends_with("equivariantly formal: NO (4 ≠ 2)"), "{last}");
    assert!(last.starts_with("[fixed-point-count]"));
}

#[test]
fn expect_formal_sets_exit_code() {
    let o = isoform(&["analyze", "--expect-formal", &pair("su3_circle_123.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = isoform(&["analyze", "--expect-formal", &pair("d4_triality.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn triality_json_report() {
    let o = isoform(&["analyze", "--json", &pair("d4_triality.json")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with(r#"{"dim_quotient":4,"fp_dim":4,"formal":true,"ncz":true,"#), "{text}");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["fp_components"], 1);
    assert_eq!(v["k"], "G2");
}

#[test]
fn identity_fold_is_trivially_formal() {
    let o = isoform(&["analyze", "--json", &pair("a2_identity_fold.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["dim_quotient"].as_u64(), v["formal"].as_bool()), (Some(1), Some(true)));
    assert_eq!(v["k"], v["g"]);
}

#[test]
fn shipped_pair_files_analyze() {
    for name in ["g2_long_a2.json", "spin8_squared_diagonal_g2.json"] {
        let o = isoform(&["analyze", "--expect-formal", &pair(name)]);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_isoform"))
        .args(["analyze", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"construction":"regular","group":"A2","extra_center":2}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim_quotient"], 6);
}

#[test]
fn schema_errors_exit_one_with_position() {
    let dir = std::env::temp_dir().join(format!("isoform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"construction\": \"fold\",\n  \"type\": \"A2\",\n  \"automorphism\": [2, 1],\n  \"colour\": 3\n}\n").unwrap();
    let o = isoform(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("colour") && err.contains("line 5"), "{err}");

    let o = isoform(&["analyze", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_round_trips_byte_identical() {
    for name in ["spin8_squared_diagonal_g2.json", "su3_circle_123.json"] {
        let o = isoform(&["analyze", "--json", &pair(name)]);
        let text = stdout(&o);
        let text = text.trim_end();
        let report: isoform_core::FormalityReport = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&report).unwrap(), text);
        assert!(!text.contains('.'), "no floats in reports");
    }
}

#[test]
fn catalog_check_and_filter() {
    let o = isoform(&["catalog", "--check"]);
    assert!(o.status.success(), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    let rows = stdout(&o).lines().count() - 1;
    assert!(rows >= 25, "{rows} rows");

    let o = isoform(&["catalog", "--filter", "fold", "--json"]);
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v.is_empty());
    assert!(v.iter().all(|r| r["construction"] == "fold"));

    assert_eq!(isoform(&["catalog", "--filter", "spiral"]).status.code(), Some(1));
}

#[test]
fn catalog_is_deterministic() {
    let a = stdout(&isoform(&["catalog", "--json"]));
    let b = stdout(&Command::new(env!("CARGO_BIN_EXE_isoform")).args(["catalog", "--json"]).env("RAYON_NUM_THREADS", "1").output().unwrap());
    assert_eq!(a, b);
}

#[test]
fn cap_flag_and_environment() {
    let o = isoform(&["analyze", "--json", "--cap", "10", &pair("d4_triality.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fp_dim"], serde_json::Value::Null);
    assert_eq!(v["formal_license"], "theorem-backed, fixed-point side unverified");

    let o = Command::new(env!("CARGO_BIN_EXE_isoform"))
        .args(["analyze", "--json", &pair("d4_triality.json")])
        .env("ISOFORM_CAP", "10")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fp_dim"], serde_json::Value::Null);

    // The flag wins over the environment.
    let o = Command::new(env!("CARGO_BIN_EXE_isoform"))
        .args(["analyze", "--json", "--cap", "1000", &pair("d4_triality.json")])
        .env("ISOFORM_CAP", "10")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fp_dim"], 4);
}
