use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn weylext(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylext"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .env_remove("WEYLEXT_MAX_I")
        .env_remove("WEYLEXT_NO_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ext_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = weylext(&["ext", "2,1", "3"], dir.path());
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.lines().any(|l| l.contains("\"i\":1") && l.contains("\"torsion\":[3]")), "{text}");

    let cached = weylext(&["ext", "2,1", "3"], dir.path());
    assert_eq!(stdout(&cached), text);
    let fresh = weylext(&["ext", "2,1", "3", "--no-cache"], dir.path());
    assert_eq!(stdout(&fresh), text);

    let file = dir.path().join("results.jsonl");
    let mut raw = fs::read_to_string(&file).unwrap();
    raw.insert_str(0, "{\"key\": broken\n");
    fs::write(&file, raw).unwrap();
    let again = weylext(&["ext", "2,1", "3"], dir.path());
    assert_eq!(stdout(&again), text);
    assert!(String::from_utf8_lossy(&again.stderr).contains("corrupt cache line 1"));
}

#[test]
fn vanishing_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&weylext(&["ext", "2,1", "2,1", "--no-cache"], dir.path()));
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].contains("\"free_rank\":1"));
    assert!(lines[1].contains("\"free_rank\":0") && lines[1].contains("\"torsion\":[]"));
}

#[test]
fn env_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_weylext"))
        .args(["ext", "2,1", "3"])
        .env("WEYLEXT_MAX_I", "1")
        .env("WEYLEXT_NO_CACHE", "true")
        .env("WEYLEXT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(stdout(&out).lines().count(), 2);
    assert!(!dir.path().join("results.jsonl").exists());
}

#[test]
fn verify_thm21_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = weylext(&["verify", "thm21", "--max-degree", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert_eq!(last, r#"{"summary":{"failed":0,"passed":8,"total":8}}"#);
}

#[test]
fn parallel_and_serial_sweeps_agree() {
    let dir = tempfile::tempdir().unwrap();
    let serial = weylext(&["sweep", "--max-degree", "3", "--jobs", "1", "--no-cache"], dir.path());
    let parallel = weylext(&["sweep", "--max-degree", "3", "--jobs", "4", "--no-cache"], dir.path());
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(stdout(&serial), stdout(&parallel));
    let cached = weylext(&["sweep", "--max-degree", "3", "--jobs", "4"], dir.path());
    let replay = weylext(&["sweep", "--max-degree", "3", "--jobs", "4"], dir.path());
    assert_eq!(stdout(&cached), stdout(&serial));
    assert_eq!(stdout(&replay), stdout(&serial));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["ext", "2,x", "3"][..],
        &["ext", "2,1", "2"],
        &["ext", "1,2", "3"],
        &["verify", "thm99"],
        &["basis", "2,1", "--n", "1"],
        &["straighten", "2,1", "1 1 1 | 2"],
        &["ext", "2,1", "3", "--max-i", "0"],
    ] {
        assert_eq!(weylext(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn basis_straighten_hom() {
    let dir = tempfile::tempdir().unwrap();
    let b = stdout(&weylext(&["basis", "2,1", "--n", "3"], dir.path()));
    assert!(b.contains("\"rank\":8"));
    let s = stdout(&weylext(&["straighten", "2,1", "1 2 | 1"], dir.path()));
    assert_eq!(s.trim(), r#"{"n":2,"shape":"2,1","terms":[{"coefficient":-1,"tableau":"1^2 | 2"}],"weight":[2,1]}"#);
    let h = stdout(&weylext(&["hom", "2,1", "2,1"], dir.path()));
    assert!(h.contains("\"free_rank\":1"));
    let skew = stdout(&weylext(&["basis", "3,2/1", "--format", "table"], dir.path()));
    assert!(skew.trim_end().ends_with("rank 4"), "{skew}");
}
