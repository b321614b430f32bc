use std::process::Command;

fn pichar(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pichar"))
        .args(args)
        .env_remove("PICHAR_CACHE")
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

const GL23: &str = r#"{"construct":"builtin","name":"gl2_3"}"#;

#[test]
fn verify_prints_one_report() {
    let (code, out) = pichar(&["verify", "--check", "CHK-EX2", "--group", GL23]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["status"], "verified");
    assert_eq!(v["timing_ms"], 0);
}

#[test]
fn operational_errors_exit_two() {
    assert_eq!(pichar(&["verify", "--check", "CHK-EX2", "--group", "{nonsense"]).0, 2);
    assert_eq!(pichar(&["verify", "--check", "CHK-NOPE", "--group", GL23]).0, 2);
    assert_eq!(
        pichar(&["verify", "--check", "CHK-PLIFTS", "--group", GL23, "--pi", "4"]).0,
        2
    );
}

#[test]
fn table_command() {
    let (code, out) = pichar(&["table", "--group", GL23]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn corpus_is_deterministic_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for f in [&a, &b] {
        let (code, _) = pichar(&[
            "corpus",
            "--max-order",
            "60",
            "--checks",
            "CHK-MONLIFT,CHK-PRIMILIFT,CHK-MAINTHM",
            "--out",
            f.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (code, out) = pichar(&["witness-replay", "--report", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\"failures\":0"));

    let text = std::fs::read_to_string(&a).unwrap();
    let tampered = text.replacen("\"value\":true", "\"value\":false", 1);
    assert_ne!(tampered, text);
    std::fs::write(&b, tampered).unwrap();
    assert_eq!(pichar(&["witness-replay", "--report", b.to_str().unwrap()]).0, 1);
}

#[test]
fn lift_profile_probe() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("r.jsonl");
    let (code, out) = pichar(&[
        "corpus",
        "--max-order",
        "30",
        "--odd-only",
        "--checks",
        "CHK-PLIFTS",
        "--out",
        out_file.to_str().unwrap(),
        "--probe",
        "lift-profile",
    ]);
    assert_eq!(code, 0);
    let probes: Vec<serde_json::Value> = out
        .lines()
        .filter(|l| l.contains("lift-profile"))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!probes.is_empty());
    assert!(probes.iter().all(|p| p["order"].as_u64().unwrap() % 2 == 1));
}
