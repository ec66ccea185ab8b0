use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scrollfam"))
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [&["dims"][..], &["gonality", "--n", "4", "--trials", "0"], &["rnc", "--n", "4", "--field", "fp:10"], &["bogus"]] {
        let out = bin().args(args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn json_report_shape_and_out_file() {
    let dir = std::env::temp_dir().join(format!("scrollfam-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dims.json");
    let st = bin().args(["dims", "--n", "4", "--d", "2", "--out"]).arg(&path).status().unwrap();
    assert!(st.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["tool"], "scrollfam");
    assert_eq!(v["config"]["n"], 4);
    assert!(v["elapsed_ms"].is_u64());
    assert_eq!(v["table"]["columns"][2], "a");
    assert_eq!(v["summary"]["dim_all"], 18);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_columns_fixed() {
    let out = bin().args(["incidence", "--a", "1,2", "--k", "1", "--trials", "2", "--format", "csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "trial,rank,measured,predicted,incidence_rank,fiber_dim");
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 3);
    assert!(body.iter().all(|l| !l.contains('.')), "no decimal numbers expected:\n{text}");
}
