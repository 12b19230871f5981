use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mst3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mst3"))
        .args(args)
        .env_remove("MST3_SEED")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn keygen(dir: &Path, name: &str, profile: &str, seed: &str) -> (String, String) {
    let base = dir.join(name);
    let out = mst3(&[
        "keygen",
        "--profile",
        profile,
        "--seed",
        seed,
        "--out",
        path(&base),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    (
        format!("{}.pub", path(&base)),
        format!("{}.sec", path(&base)),
    )
}

#[test]
fn demo_reproduces_worked_example() {
    let out = mst3(&["demo", "--paper-example"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("y1 = a86:a186:a113 ... OK"));
    assert!(text.contains("R1 = 29 ... OK"));
    assert!(text.contains("result: all values match"));
    assert!(!text.contains("MISMATCH"));
    assert_eq!(mst3(&["demo", "--paper-example"]).stdout, text.as_bytes());
}

#[test]
fn toy_round_trip_1kb() {
    let dir = tempfile::tempdir().unwrap();
    let (pk, sk) = keygen(dir.path(), "k", "toy", "00112233");
    let payload: Vec<u8> = (0..1024u32)
        .map(|i| (i.wrapping_mul(2654435761) >> 13) as u8)
        .collect();
    let (input, ct, back) = (
        dir.path().join("in"),
        dir.path().join("in.ct"),
        dir.path().join("out"),
    );
    fs::write(&input, &payload).unwrap();
    assert!(mst3(&[
        "encrypt",
        "--pub",
        &pk,
        "--in",
        path(&input),
        "--out",
        path(&ct)
    ])
    .status
    .success());
    assert!(mst3(&[
        "decrypt",
        "--sec",
        &sk,
        "--in",
        path(&ct),
        "--out",
        path(&back)
    ])
    .status
    .success());
    assert_eq!(fs::read(&back).unwrap(), payload);
}

#[test]
fn wrong_key_fails_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let (pk, _) = keygen(dir.path(), "a", "paper", "01");
    let (_, other_sk) = keygen(dir.path(), "b", "paper", "02");
    let (input, ct, back) = (
        dir.path().join("in"),
        dir.path().join("in.ct"),
        dir.path().join("out"),
    );
    fs::write(&input, b"attack at dawn").unwrap();
    assert!(mst3(&[
        "encrypt",
        "--pub",
        &pk,
        "--in",
        path(&input),
        "--out",
        path(&ct)
    ])
    .status
    .success());
    let out = mst3(&[
        "decrypt",
        "--sec",
        &other_sk,
        "--in",
        path(&ct),
        "--out",
        path(&back),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!back.exists());
    let leftovers = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 6); // a.pub a.sec b.pub b.sec in in.ct
}

#[test]
fn seeded_keygen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, s1) = keygen(dir.path(), "x", "toy", "deadbeef");
    let base = dir.path().join("y");
    let out = Command::new(env!("CARGO_BIN_EXE_mst3"))
        .args(["keygen", "--profile", "toy", "--out", path(&base)])
        .env("MST3_SEED", "deadbeef")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        fs::read(p1).unwrap(),
        fs::read(format!("{}.pub", path(&base))).unwrap()
    );
    assert_eq!(
        fs::read(s1).unwrap(),
        fs::read(format!("{}.sec", path(&base))).unwrap()
    );
}

#[test]
fn fresh_randomness_per_block() {
    let dir = tempfile::tempdir().unwrap();
    let (pk, _) = keygen(dir.path(), "k", "paper", "03");
    let (input, ct) = (dir.path().join("in"), dir.path().join("in.ct"));
    fs::write(&input, [7u8; 64]).unwrap();
    assert!(mst3(&[
        "encrypt",
        "--pub",
        &pk,
        "--in",
        path(&input),
        "--out",
        path(&ct)
    ])
    .status
    .success());
    let text = fs::read_to_string(&ct).unwrap();
    let lines: Vec<&str> = text.lines().skip(4).take(64).collect();
    let distinct: std::collections::HashSet<_> = lines.iter().collect();
    assert!(distinct.len() >= 60, "{}", distinct.len());

    let fixed = dir.path().join("fixed.ct");
    let args = [
        "encrypt",
        "--pub",
        &pk,
        "--in",
        path(&input),
        "--out",
        path(&fixed),
        "--r1",
        "29",
        "--r2",
        "31",
    ];
    assert_eq!(mst3(&args).status.code(), Some(2));
    let mut insecure = args.to_vec();
    insecure.push("--insecure-test");
    assert!(mst3(&insecure).status.success());
    let text = fs::read_to_string(&fixed).unwrap();
    let distinct: std::collections::HashSet<_> = text.lines().skip(4).take(64).collect();
    assert_eq!(distinct.len(), 1);
}

#[test]
fn attacks_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (pk, sk) = keygen(dir.path(), "k", "toy", "04");
    let (input, ct, csv) = (
        dir.path().join("in"),
        dir.path().join("in.ct"),
        dir.path().join("r.csv"),
    );
    fs::write(&input, b"hi").unwrap();
    assert!(mst3(&[
        "encrypt",
        "--pub",
        &pk,
        "--in",
        path(&input),
        "--out",
        path(&ct)
    ])
    .status
    .success());
    for kind in ["pair", "split"] {
        let out = mst3(&[
            "attack",
            kind,
            "--pub",
            &pk,
            "--ct",
            path(&ct),
            "--csv",
            path(&csv),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = fs::read_to_string(&csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("attack,q,tried,succeeded,wall_time_ms"));
        let rows: Vec<_> = lines.collect();
        assert_eq!(rows.len(), 3);
        assert!(rows
            .iter()
            .all(|r| r.starts_with(&format!("{kind},27,")) && r.contains(",true,")));
    }
    let out = mst3(&["attack", "tkey", "--sec", &sk, "--ct", path(&ct)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("recovered: translations"));
    assert_eq!(
        mst3(&["attack", "tkey", "--pub", &pk, "--ct", path(&ct)])
            .status
            .code(),
        Some(2)
    );

    let (ppk, psk) = keygen(dir.path(), "p", "paper", "05");
    let pct = dir.path().join("p.ct");
    assert!(mst3(&[
        "encrypt",
        "--pub",
        &ppk,
        "--in",
        path(&input),
        "--out",
        path(&pct)
    ])
    .status
    .success());
    assert_eq!(
        mst3(&["attack", "tkey", "--sec", &psk, "--ct", path(&pct)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn format_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let (pk, _) = keygen(dir.path(), "k", "toy", "06");
    let text = fs::read_to_string(&pk)
        .unwrap()
        .replacen("MST3-REE/1", "MST3-REE/9", 1);
    let bad = dir.path().join("bad.pub");
    fs::write(&bad, text).unwrap();
    let input = dir.path().join("in");
    fs::write(&input, b"x").unwrap();
    let out = mst3(&[
        "encrypt",
        "--pub",
        path(&bad),
        "--in",
        path(&input),
        "--out",
        path(&dir.path().join("c")),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported format version"));
    let missing = mst3(&[
        "encrypt",
        "--pub",
        path(&dir.path().join("none")),
        "--in",
        path(&input),
        "--out",
        "c",
    ]);
    assert_eq!(missing.status.code(), Some(3));
    assert_eq!(
        mst3(&["keygen", "--profile", "huge", "--out", "x"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sizing_reports_warning() {
    let out = mst3(&["sizing"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rows per signature (s * r): 1944"));
    assert!(text.contains("warning: type (243)^8 covers 3^40 elements, not q = 3^80"));
}
