//! The `mss` binary end to end: exit codes, determinism and regeneration.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn mss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mss"))
        .args(args)
        .env("MSS_LOG", "off")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn align_is_deterministic_and_regenerates() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (data("scenes/office-a.json"), data("scenes/office-b.json"));
    let (r1, r2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    for r in [&r1, &r2] {
        let o = mss(&["align", s(&a), s(&b), "--gens", "20", "--seed", "3", "-o", s(r)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    let o = mss(&["regenerate", s(&r1)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn changed_input_fails_regeneration() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    std::fs::copy(data("scenes/office-a.json"), &a).unwrap();
    std::fs::copy(data("scenes/living-c.json"), &b).unwrap();
    let r = dir.path().join("r.json");
    assert_eq!(code(&mss(&["align", s(&a), s(&b), "--gens", "5", "-o", s(&r)])), 0);
    std::fs::copy(data("scenes/office-b.json"), &b).unwrap();
    let o = mss(&["regenerate", s(&r)]);
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("b.json"));
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let a = data("scenes/office-a.json");
    let out = dir.path().join("out.json");

    // Usage: unknown flag, and too few scenes.
    assert_eq!(code(&mss(&["align", s(&a), s(&a), "--frobnicate", "-o", s(&out)])), 2);
    assert_eq!(code(&mss(&["align", s(&a), "-o", s(&out)])), 2);

    // File system.
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&mss(&["extract", s(&missing), "-o", s(&out)])), 3);

    // Malformed scene: broken JSON, then a schema violation.
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&mss(&["extract", s(&bad), "-o", s(&out)])), 5);
    let text = std::fs::read_to_string(&a).unwrap().replacen("\"boundary\"", "\"bounds\"", 1);
    std::fs::write(&bad, text).unwrap();
    assert_eq!(code(&mss(&["extract", s(&bad), "-o", s(&out)])), 5);

    // Infeasible constraint; the report names the shortfall.
    let b = data("scenes/office-b.json");
    let o = mss(&["align", s(&a), s(&b), "--gens", "10", "--constraint", "sittable>=50", "-o", s(&out)]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("shortfall"));
    assert!(!out.exists());
}

#[test]
fn synth_requires_a_choice_on_a_multi_solution_front() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (data("scenes/office-a.json"), data("scenes/office-b.json"));
    let r = dir.path().join("front.json");
    let o = mss(&["align", s(&a), s(&b), "--objective", "walkable", "--objective", "sittable", "-o", s(&r)]);
    assert_eq!(code(&o), 0);
    let solutions = serde_json::from_slice::<serde_json::Value>(&std::fs::read(&r).unwrap()).unwrap()["solutions"]
        .as_array()
        .unwrap()
        .len();
    let scene = dir.path().join("scene.json");
    let o = mss(&["synth", s(&r), "-o", s(&scene)]);
    if solutions > 1 {
        assert_eq!(code(&o), 2);
        assert!(!scene.exists());
    } else {
        assert_eq!(code(&o), 0);
    }
    assert_eq!(code(&mss(&["synth", s(&r), "--auto-first", "-o", s(&scene)])), 0);
    let svg = dir.path().join("scene.svg");
    assert_eq!(code(&mss(&["render", s(&scene), "-o", s(&svg)])), 0);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}
