use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_charstack"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("charstack-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn flagship_count_via_binary() {
    let out = bin()
        .args(["count", "--nonorientable", "--r", "3", "--n", "1", "--q", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["groupoid_count"], "36");
    assert_eq!(v["match"], true);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(code(&["verify-counterexample", "--n", "2", "--d", "2"]), Some(0));
    assert_eq!(code(&["verify-counterexample", "--n", "2", "--d", "3"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["count", "--nonorientable", "--r", "3", "--n", "3", "--q", "13"]), Some(3));
    assert_eq!(code(&["count", "--nonorientable", "--r", "2", "--n", "2", "--q", "3", "--zeta", "-1", "--cap", "10"]), Some(3));
}

#[test]
fn config_file_defaults_and_flag_precedence() {
    let dir = scratch("config");
    let cfg = dir.join("charstack.toml");
    std::fs::write(&cfg, "format = \"text\"\niteration_cap = 10\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let out = bin().args(["--config", cfg, "hlv", "--mu", "(1)", "--m", "2"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "z^2 - 2*z*w + w^2");

    let out = bin()
        .args(["--config", cfg, "--format", "latex", "hlv", "--mu", "(2)", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "\\frac{1}{z^{2} + 1}");

    let count = ["count", "--nonorientable", "--r", "2", "--n", "2", "--q", "3", "--zeta", "-1"];
    let capped = bin().args(["--config", cfg]).args(count).output().unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let lifted = bin().args(["--config", cfg]).args(count).args(["--cap", "1000000"]).output().unwrap();
    assert_eq!(lifted.status.code(), Some(0));

    std::fs::write(dir.join("bad.toml"), "colour = 1\n").unwrap();
    let bad = bin().args(["--config", dir.join("bad.toml").to_str().unwrap(), "hlv", "--mu", "(1)", "--m", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cache_directory_round_trip() {
    let dir = scratch("cache");
    let args = ["eseries", "--nonorientable", "--r", "2", "--mu", "(2,1)"];
    let first = bin().env("CHARSTACK_CACHE_DIR", &dir).args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    let dump = std::fs::read_to_string(dir.join("macdonald.txt")).unwrap();
    assert!(dump.contains("[(2,1)]"), "{dump}");

    let second = bin().env("CHARSTACK_CACHE_DIR", &dir).args(args).output().unwrap();
    assert_eq!(first.stdout, second.stdout);

    std::fs::write(dir.join("macdonald.txt"), "[(2)]\ngarbage\n").unwrap();
    let broken = bin().env("CHARSTACK_CACHE_DIR", &dir).args(args).output().unwrap();
    assert_eq!(broken.status.code(), Some(2));
}
